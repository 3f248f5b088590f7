#include <cmath>
#include <limits>
#include <random>

#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "madbounds/lp_oracle.hpp"
#include "madbounds/stoploss.hpp"

using namespace madb;
using madb::testing::random_set;

namespace {
const AmbiguitySet kClaims{0.0, 20.0, 5.0, 1.77};
}

TEST_CASE("retention bound reference values") {
    CHECK(retention_bound(kClaims, 4.0) == doctest::Approx(4.0));
    CHECK(retention_bound(kClaims, 4.5) ==
          doctest::Approx(5.0 - 1.77 * 15.5 / 30.0).epsilon(1e-12));
    CHECK(retention_bound(kClaims, 6.0) ==
          doctest::Approx(6.0 * (1.0 - 1.77 / 10.0)).epsilon(1e-12));
    CHECK(retention_bound(kClaims, 18.0) == doctest::Approx(5.0));
    // outside the support the bound saturates
    CHECK(retention_bound(kClaims, -1.0) == doctest::Approx(-1.0));
    CHECK(retention_bound(kClaims, 25.0) == doctest::Approx(5.0));
}

TEST_CASE("layer payout reference values") {
    CHECK(reinsurer_benefit_bound(kClaims, {6.0, 3.0}) ==
          doctest::Approx(0.66375).epsilon(1e-9));
    CHECK(reinsurer_benefit_bound(kClaims, {3.0, 3.0}) ==
          doctest::Approx(2.469).epsilon(1e-3));
    // unlimited cover above the mean
    double inf = std::numeric_limits<double>::infinity();
    CHECK(reinsurer_benefit_bound(kClaims, {6.0, inf}) ==
          doctest::Approx(1.77 * 14.0 / 30.0).epsilon(1e-12));
    // unlimited cover below the mean
    CHECK(reinsurer_benefit_bound(kClaims, {4.0, inf}) ==
          doctest::Approx(5.0 - 4.0 + 4.0 * 1.77 / 10.0).epsilon(1e-12));
    CHECK_THROWS_AS(reinsurer_benefit_bound(kClaims, {6.0, 0.0}),
                    std::domain_error);
    CHECK_THROWS_AS(reinsurer_benefit_bound(kClaims, {-1.0, 2.0}),
                    std::domain_error);
}

TEST_CASE("retention is monotone and concave-shaped in z") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        AmbiguitySet s = random_set(rng);
        double prev = s.a;
        for (int k = 0; k <= 40; ++k) {
            double z = s.a + (s.b - s.a) * k / 40.0;
            double v = retention_bound(s, z);
            CHECK(v >= prev - 1e-12);  // nondecreasing
            CHECK(v <= std::min(z, s.mu) + 1e-12);
            prev = v;
        }
        // a layer never pays more than the expected overshoot bound
        double z = s.a + (s.b - s.a) * unif(rng);
        double m = (s.b - s.a) * unif(rng) + 1e-6;
        double ben = reinsurer_benefit_bound(s, {z, m});
        CHECK(ben >= -1e-12);
        CHECK(ben <= m + 1e-12);
    }
}

TEST_CASE("closed forms agree with the discretized LP") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> unif(0.05, 0.95);
    for (int i = 0; i < 40; ++i) {
        AmbiguitySet s = random_set(rng);
        double z = s.a + (s.b - s.a) * unif(rng);
        VerifyReport rep = verify_bound(s, TheoremId::Retention, {z, 0.0}, 501);
        REQUIRE(rep.status == LpStatus::Optimal);
        CHECK(rep.gap <= 1e-7);

        double m = (s.b - z) * unif(rng) + 1e-3;
        rep = verify_bound(s, TheoremId::ReinsurerBenefit, {z, m}, 501);
        REQUIRE(rep.status == LpStatus::Optimal);
        CHECK(rep.gap <= 1e-7);
    }
}

TEST_CASE("retention plus unlimited benefit recovers the mean") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> unif(0.05, 0.95);
    double inf = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 50; ++i) {
        AmbiguitySet s = random_set(rng);
        double z = s.a + (s.b - s.a) * unif(rng);
        // min(S,z) + min((S-z)^+, inf) == S; the tight bounds share the
        // extremal distribution, so the identity survives the sup
        double lhs = retention_bound(s, z) + reinsurer_benefit_bound(s, {z, inf});
        CHECK(lhs >= s.mu - 1e-12);
    }
}
