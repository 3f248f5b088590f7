#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "madbounds/sums.hpp"

using namespace madb;

namespace {
MarginalSet three_parts() {
    MarginalSet s;
    s.parts = {{2.0, 1.0, 0.25}, {2.0, 1.0, 0.25}, {2.0, 1.0, 0.25}};
    return s;
}
}  // namespace

TEST_CASE("aggregate tail bound") {
    MarginalSet s = three_parts();
    CHECK(s.mu_bar() == doctest::Approx(3.0));
    CHECK(s.b_bar() == doctest::Approx(6.0));
    CHECK(s.d_hat() == doctest::Approx(0.75));
    CHECK(sum_tail_bound(s, 2.0) == 1.0);  // below the mean
    CHECK(sum_tail_bound(s, 4.0) == doctest::Approx(0.375));
    CHECK(sum_tail_bound(s, 5.5) == doctest::Approx(0.15));
    // near the aggregate support edge the Markov part takes over
    CHECK(sum_tail_bound(s, 5.9) == doctest::Approx(0.375 / 2.9));
    CHECK(sum_tail_bound(s, 40.0) == 0.0);  // beyond the support
    s.d_hat_override = 0.3;
    CHECK(sum_tail_bound(s, 4.0) == doctest::Approx(0.15));
}

TEST_CASE("value-at-risk inverts the tail bound") {
    MarginalSet s = three_parts();
    VarBound v = var_bound(s, 0.8);
    CHECK_FALSE(v.alpha_trivial);
    CHECK(sum_tail_bound(s, v.value) == doctest::Approx(0.2).epsilon(1e-6));
    CHECK(v.value == doctest::Approx(4.875).epsilon(1e-6));
    // a level below the best bound at the support edge gets capped there
    v = var_bound(s, 0.95);
    CHECK(v.capped_at_support);
    CHECK(v.value == doctest::Approx(6.0));
    v = var_bound(s, 0.0);
    CHECK(v.alpha_trivial);
    CHECK(v.value == doctest::Approx(3.0));
    // an unreachable level pins the answer at the support edge
    v = var_bound(s, 1.0 - 1e-15);
    CHECK(v.capped_at_support);
    CHECK(v.value == doctest::Approx(6.0));
}

TEST_CASE("aggregate layer bound") {
    MarginalSet s = three_parts();
    CHECK(sum_stoploss_bound(s, {4.0, 1.0}) == doctest::Approx(0.1875));
    // the layer clamps at the aggregate support
    CHECK(sum_stoploss_bound(s, {5.0, 10.0}) ==
          sum_stoploss_bound(s, {5.0, 1.0}));
    // wide layers below the mean cannot pay more than the width
    double wide = sum_stoploss_bound(s, {1.0, 2.0});
    CHECK(wide <= 2.0 + 1e-12);
    CHECK(wide >= 0.0);
}

TEST_CASE("normal quantile accuracy") {
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(normal_quantile(0.001) == doctest::Approx(-3.090232306167813).epsilon(1e-11));
    CHECK(normal_quantile(1e-10) == doctest::Approx(-6.361340902404056).epsilon(1e-9));
    CHECK(normal_quantile(0.7) == doctest::Approx(-normal_quantile(0.3)).epsilon(1e-12));
}

TEST_CASE("lognormal moments") {
    LognormalMarginal ln{0.0, 1.0};
    CHECK(ln.mean() == doctest::Approx(std::exp(0.5)).epsilon(1e-14));
    // MAD/mean = 2(2 Phi(v/2) - 1); at v = 1 that is 2(2 Phi(0.5) - 1)
    CHECK(ln.mad() / ln.mean() == doctest::Approx(0.7662
    ).epsilon(1e-3));
    CHECK(ln.quantile(0.5) == doctest::Approx(1.0));
    CHECK(ln.quantile(0.975) == doctest::Approx(std::exp(1.959963984540054)));
}

TEST_CASE("simulation is deterministic and thread-count independent") {
    std::vector<std::function<double(double)>> qs;
    LognormalMarginal ln{0.0, 0.5};
    for (int i = 0; i < 3; ++i) qs.push_back([ln](double u) { return ln.quantile(u); });
    auto par = simulate_sums(qs, Copula::Independent, 20000, 99);
    auto ser = simulate_sums_serial(qs, Copula::Independent, 20000, 99);
    REQUIRE(par.size() == 20000);
    CHECK(par == ser);  // bitwise equal by construction
    auto par2 = simulate_sums(qs, Copula::Independent, 20000, 100);
    CHECK(par != par2);  // the seed matters
}

TEST_CASE("comonotonic coupling dominates independent in the tail") {
    std::vector<std::function<double(double)>> qs;
    LognormalMarginal ln{0.0, 0.5};
    for (int i = 0; i < 4; ++i) qs.push_back([ln](double u) { return ln.quantile(u); });
    auto ind = simulate_sums(qs, Copula::Independent, 200000, 7);
    auto com = simulate_sums(qs, Copula::Comonotonic, 200000, 7);
    double mean_i = 0, mean_c = 0;
    for (double x : ind) mean_i += x;
    for (double x : com) mean_c += x;
    mean_i /= ind.size();
    mean_c /= com.size();
    // same marginals, same mean...
    CHECK(mean_i == doctest::Approx(mean_c).epsilon(0.01));
    // ...but the comonotonic tail is heavier
    double t = 4.0 * ln.mean() * 1.8;
    CHECK(empirical_tail(com, t).estimate > empirical_tail(ind, t).estimate);
}

TEST_CASE("empirical estimators") {
    std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
    SimEstimate e = empirical_tail(xs, 2.5);
    CHECK(e.estimate == doctest::Approx(0.5));
    CHECK(e.n == 4);
    CHECK(e.std_error == doctest::Approx(std::sqrt(0.25 / 4.0)));
    e = empirical_stoploss(xs, {2.0, 1.5});
    // payouts: 0, 0, 1, 1.5
    CHECK(e.estimate == doctest::Approx(2.5 / 4.0));
}

TEST_CASE("marginal validation") {
    MarginalSet s = three_parts();
    s.parts[1].d = 1.2;  // above the marginal d_max = 1
    CHECK_THROWS_AS(sum_tail_bound(s, 4.0), std::invalid_argument);
}
