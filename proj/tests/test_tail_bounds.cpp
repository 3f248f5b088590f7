#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "madbounds/lp_oracle.hpp"
#include "madbounds/tail_bounds.hpp"

using namespace madb;
using madb::testing::random_set;
using madb::testing::random_t;

static const AmbiguitySet kRef{0.0, 1.0, 0.5, 0.1875};

TEST_CASE("upper tail bound: reference values and knots") {
    Knots k = tail_knots(kRef);
    CHECK(k.tau1 == doctest::Approx(0.5 - 0.1875 * 0.5 / 0.8125).epsilon(1e-14));
    CHECK(k.tau1 == doctest::Approx(0.384615384615).epsilon(1e-9));
    CHECK(k.tau2 == doctest::Approx(0.615384615385).epsilon(1e-9));

    CHECK(sup_tail(kRef, 0.5).value == doctest::Approx(0.8125).epsilon(1e-15));
    CHECK(sup_tail(kRef, 0.8).value == doctest::Approx(0.3125).epsilon(1e-15));
    CHECK(sup_tail(kRef, 0.4).value == doctest::Approx(0.96875).epsilon(1e-15));
    CHECK(sup_tail(kRef, 0.1).value == 1.0);
    CHECK(sup_tail(kRef, 0.1).branch == Branch::BelowTau1);
    CHECK(sup_tail(kRef, 0.4).branch == Branch::Tau1ToMu);
    CHECK(sup_tail(kRef, 0.5).branch == Branch::MuToTau2);
    CHECK(sup_tail(kRef, 0.8).branch == Branch::Tau2ToB);
}

TEST_CASE("lower tail bound: reference values") {
    CHECK(inf_tail(kRef, 0.3).value == doctest::Approx(0.53125).epsilon(1e-15));
    CHECK(inf_tail(kRef, 0.5).value == doctest::Approx(0.1875).epsilon(1e-15));
    CHECK(inf_tail(kRef, 0.8).value == 0.0);
    CHECK(inf_tail(kRef, 1.0).value == 0.0);
}

TEST_CASE("beta bounds: reference values") {
    AmbiguitySet s = kRef;
    s.beta = 0.5;
    CHECK(sup_tail_beta(s, 0.4).value == doctest::Approx(0.890625).epsilon(1e-15));
    CHECK(inf_tail_beta(s, 0.6).value == doctest::Approx(0.109375).epsilon(1e-15));
    CHECK(inf_tail_beta(s, 0.2).value == doctest::Approx(0.6875).epsilon(1e-15));
    CHECK(sup_tail_beta(s, 0.5).value == doctest::Approx(0.5).epsilon(1e-15));
    Knots k = tail_knots_beta(s);
    CHECK(k.tau1 == doctest::Approx(0.3125));
    CHECK(k.tau2 == doctest::Approx(0.6875));
}

TEST_CASE("support shift leaves the bounds invariant") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        AmbiguitySet s = random_set(rng);
        double t = random_t(rng, s);
        AmbiguitySet moved = s;
        double off = 1.7;
        moved.a += off;
        moved.b += off;
        moved.mu += off;
        CHECK(sup_tail(moved, t + off).value ==
              doctest::Approx(sup_tail(s, t).value).epsilon(1e-12));
        CHECK(inf_tail(moved, t + off).value ==
              doctest::Approx(inf_tail(s, t).value).epsilon(1e-12));
    }
}

TEST_CASE("bounds agree with the discretized LP") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 30; ++i) {
        AmbiguitySet s = random_set(rng, true);
        double t = random_t(rng, s);
        for (TheoremId id : {TheoremId::SupTail, TheoremId::InfTail,
                             TheoremId::SupTailBeta, TheoremId::InfTailBeta}) {
            VerifyReport rep = verify_bound(s, id, {t, 0.0}, 501);
            REQUIRE(rep.status == LpStatus::Optimal);
            INFO("theorem " << theorem_name(id) << " t=" << t);
            CHECK(rep.gap <= 1e-7);
        }
    }
}

TEST_CASE("ordering: inf <= sup and beta tightens both sides") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) {
        AmbiguitySet s = random_set(rng, true);
        double t = random_t(rng, s);
        double lo = inf_tail(s, t).value;
        double hi = sup_tail(s, t).value;
        CHECK(lo <= hi + 1e-12);
        double lob = inf_tail_beta(s, t).value;
        double hib = sup_tail_beta(s, t).value;
        CHECK(lob <= hib + 1e-12);
        CHECK(hib <= hi + 1e-12);
        CHECK(lob >= lo - 1e-12);
    }
}

TEST_CASE("continuity across the knots") {
    std::mt19937_64 rng(17);
    const double h = 1e-9;
    for (int i = 0; i < 100; ++i) {
        AmbiguitySet s = random_set(rng);
        Knots k = tail_knots(s);
        for (double knot : {k.tau1, s.mu, k.tau2}) {
            double scale = s.b - s.a;
            CHECK(sup_tail(s, knot - h * scale).value ==
                  doctest::Approx(sup_tail(s, knot + h * scale).value)
                      .epsilon(1e-6));
            CHECK(inf_tail(s, knot - h * scale).value ==
                  doctest::Approx(inf_tail(s, knot + h * scale).value)
                      .epsilon(1e-6));
        }
    }
}

TEST_CASE("worst-case distributions are feasible and attain the bound") {
    std::mt19937_64 rng(19);
    for (int i = 0; i < 100; ++i) {
        AmbiguitySet s = random_set(rng);
        double t = random_t(rng, s);
        for (TailSide side : {TailSide::Sup, TailSide::Inf}) {
            DiscreteDistribution w = worst_case_distribution(s, t, side);
            CHECK(std::abs(w.total_mass() - 1.0) <= 1e-12);
            CHECK(std::abs(w.mean() - s.mu) <= 1e-12);
            CHECK(std::abs(w.mad_about(s.mu) - s.d) <= 1e-12);
            for (const auto& at : w.atoms) {
                CHECK(at.x >= s.a - 1e-12);
                CHECK(at.x <= s.b + 1e-12);
                CHECK(at.p >= -1e-15);
            }
            double achieved = (side == TailSide::Sup) ? w.mass_at_least(t)
                                                      : w.mass_above(t);
            double bound = (side == TailSide::Sup) ? sup_tail(s, t).value
                                                   : inf_tail(s, t).value;
            CHECK(std::abs(achieved - bound) <= 1e-12);
        }
    }
}

TEST_CASE("three-point worst case matches the known example") {
    AmbiguitySet s{0.0, 3.0, 1.0, 1.0};
    DiscreteDistribution w = worst_case_distribution(s, 0.5, TailSide::Sup);
    REQUIRE(w.atoms.size() == 3);
    CHECK(w.atoms[0].x == doctest::Approx(0.0));
    CHECK(w.atoms[0].p == doctest::Approx(0.25));
    CHECK(w.atoms[1].x == doctest::Approx(0.5));
    CHECK(w.atoms[1].p == doctest::Approx(0.5));
    CHECK(w.atoms[2].x == doctest::Approx(3.0));
    CHECK(w.atoms[2].p == doctest::Approx(0.25));
}

TEST_CASE("Markov bound is recovered at the dispersion that maximizes the tail") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        AmbiguitySet s = random_set(rng);
        double t = s.mu + (s.b - s.mu) * (0.05 + 0.9 * unif(rng));
        double got = markov_consistency(s.mu, s.a, s.b, t);
        CHECK(std::abs(got - (s.mu - s.a) / (t - s.a)) <= 1e-12);
    }
}

TEST_CASE("variance-based comparisons") {
    // Coincidence at t = mu when the variance sits at its ceiling d*b/2.
    double mu = 0.5, b = 1.0, d = 0.1875;
    double sig = std::sqrt(d * b / 2.0);
    CHECK(std::abs(de_schepper_sup(mu, b, sig, mu) - (1.0 - d / (2.0 * mu))) <=
          1e-12);
    // Cantelli never undercuts the variance bound beyond the mean.
    for (int i = 1; i <= 100; ++i) {
        double t = mu + (b - mu) * double(i) / 100.0;
        CHECK(de_schepper_sup(mu, b, sig, t) <= cantelli(sig, mu, t) + 1e-12);
    }
    Interval sr = sigma_range(0.25, 2.0, 0.5);
    CHECK(sr.lo == doctest::Approx(0.0625));
    CHECK(sr.hi == doctest::Approx(0.25));
}

TEST_CASE("relaxed-MAD bound caps at the Markov bound") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        AmbiguitySet s = random_set(rng);
        double t = s.mu + (s.b - s.mu) * (0.05 + 0.9 * unif(rng));
        double v = sup_tail_ineq_mad(s, t);
        double markov = (s.mu - s.a) / (t - s.a);
        CHECK(v <= markov + 1e-12);
        CHECK(v >= sup_tail(s, t).value - 1e-12);
        CHECK(v <= 1.0);
    }
}
