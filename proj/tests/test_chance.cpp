#include <array>
#include <cmath>

#include <stdexcept>

#include "doctest.h"
#include "madbounds/chance.hpp"
#include "madbounds/tail_bounds.hpp"

using namespace madb;

TEST_CASE("safety margin for symmetric support") {
    CHECK(reform_rhs(0.25, 0.2) == doctest::Approx(0.625));
    CHECK(reform_rhs(0.25, 0.1) == doctest::Approx(1.0));  // capped at the support
    CHECK(reform_rhs(0.0, 0.2) == doctest::Approx(0.0));
    CHECK_THROWS_AS(reform_rhs(0.25, 0.6), std::domain_error);
    CHECK_THROWS_AS(reform_rhs(1.5, 0.2), std::domain_error);
}

TEST_CASE("margin matches the tight tail bound") {
    // g + kappa <= 0 must be exactly the condition sup P(Z > -g) <= eps
    for (double d : {0.05, 0.2, 0.4}) {
        for (double eps : {0.05, 0.1, 0.3}) {
            if (eps >= 0.5) continue;
            double kappa = reform_rhs(d, eps);
            AmbiguitySet z{-1.0, 1.0, 0.0, d};
            // just inside and just outside the reformulated constraint
            CHECK(sup_tail(z, kappa + 1e-9).value <= eps + 1e-9);
            if (kappa < 1.0)
                CHECK(sup_tail(z, kappa - 1e-6).value >= eps - 1e-5);
        }
    }
}

TEST_CASE("asymmetric support caps the margin at u") {
    CHECK(reform_rhs_asym(3.0, 0.5, 0.05) == doctest::Approx(3.0));
    CHECK(reform_rhs_asym(3.0, 0.5, 0.2) == doctest::Approx(1.25));
    CHECK_THROWS_AS(reform_rhs_asym(3.0, 0.5, 0.3), std::domain_error);
    CHECK_THROWS_AS(reform_rhs_asym(-1.0, 0.5, 0.1), std::domain_error);
}

TEST_CASE("bilinear uncertainty becomes two linear rows") {
    BilinearReform rf = reform_bilinear({1.0, 2.0}, {0.5, -0.5}, 3.0, 0.25, 0.2);
    CHECK(rf.kappa == doctest::Approx(0.625));
    std::array<double, 2> x{1.0, 1.0};
    auto [lo, hi] = rf.rows(x);
    CHECK(lo == doctest::Approx(3.0 - 0.625 * 0.0));
    CHECK(hi == doctest::Approx(3.0 + 0.625 * 0.0));
    CHECK(rf.feasible(x));
    std::array<double, 2> y{2.0, 1.0};
    auto [up, dn] = rf.rows(y);
    CHECK(up == doctest::Approx(4.0 + 0.625 * 0.5));
    CHECK(dn == doctest::Approx(4.0 - 0.625 * 0.5));
    CHECK_FALSE(rf.feasible(y));  // 4.3125 > 3
}

TEST_CASE("joint constraints") {
    // one row reduces to the single-constraint test
    std::array<double, 1> g{-0.7};
    std::array<double, 1> d{0.25};
    CHECK(reform_joint_shared({g.data(), 1}, 0.25, 0.2));
    std::array<double, 1> g2{-0.5};
    CHECK_FALSE(reform_joint_shared({g2.data(), 1}, 0.25, 0.2));

    // shared-source joint: every row needs slack kappa
    std::array<double, 3> gs{-0.7, -0.9, -0.63};
    CHECK(reform_joint_shared({gs.data(), 3}, 0.25, 0.2));
    std::array<double, 3> gs2{-0.7, -0.9, -0.6};
    CHECK_FALSE(reform_joint_shared({gs2.data(), 3}, 0.25, 0.2));

    // independent sources: the certificate is conservative, never permissive
    std::array<double, 2> gi{-1.5, -1.5};
    std::array<double, 2> di{0.25, 0.25};
    CHECK(reform_joint_indep({gi.data(), 2}, {di.data(), 2}, 0.2));
    std::array<double, 2> gi2{-0.2, -0.2};
    CHECK_FALSE(reform_joint_indep({gi2.data(), 2}, {di.data(), 2}, 0.2));
}

TEST_CASE("dose plan reproduces the reference fraction doses") {
    RadiotherapyProblem p;
    RadiotherapySolution nominal = radiotherapy_solve_nominal(p, p.rho2.mu);
    CHECK(nominal.x1 == doctest::Approx(20.0998).epsilon(5e-4));
    CHECK(nominal.x2 == doctest::Approx(nominal.x1).epsilon(1e-3));

    p.eps = 0.1;
    RadiotherapySolution s = radiotherapy_solve(p);
    CHECK(s.x1 == doctest::Approx(19.7795).epsilon(5e-4));
    CHECK(s.x2 == doctest::Approx(s.x1).epsilon(1e-3));
    CHECK(s.constraint_slack >= -1e-9);
    CHECK(radiotherapy_constraint(p, s.x1, s.x2) <= 1e-9);

    p.eps = 0.05;
    CHECK(radiotherapy_solve(p).x1 == doctest::Approx(19.4323).epsilon(5e-4));

    p.eps = 0.01;
    s = radiotherapy_solve(p);
    CHECK(s.x1 == doctest::Approx(14.6704).epsilon(5e-4));
    CHECK(s.margin_exceeds_support);  // d/(2 eps) = 12.5 > b - mu = 2

    // ambiguity can only cost dose
    CHECK(s.objective < nominal.objective);
}

TEST_CASE("feasible-region boundary is monotone in eps") {
    RadiotherapyProblem tight;
    tight.eps = 0.05;
    RadiotherapyProblem loose;
    loose.eps = 0.2;
    auto bt = radiotherapy_boundary(tight, 40);
    REQUIRE(bt.size() >= 35);  // columns with no feasible dose are skipped
    // every point on the tight boundary stays feasible when eps is relaxed
    for (const auto& [x1, x2] : bt)
        CHECK(radiotherapy_constraint(loose, x1, x2) <= 1e-6);
}
