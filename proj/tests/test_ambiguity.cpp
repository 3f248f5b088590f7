#include <cmath>
#include <sstream>

#include "doctest.h"
#include "madbounds/ambiguity.hpp"

using namespace madb;

TEST_CASE("d_max formula and the infinite-b limit") {
    AmbiguitySet s{0.0, 1.0, 0.5, 0.0};
    CHECK(s.d_max() == doctest::Approx(0.5).epsilon(1e-15));
    s.b = std::numeric_limits<double>::infinity();
    CHECK(s.d_max() == doctest::Approx(1.0));
    s.a = -1.0;
    CHECK(s.d_max() == doctest::Approx(3.0));
}

TEST_CASE("validation catches each invariant") {
    CHECK(validate({0, 1, 0.5, 0.1}).ok);
    CHECK_FALSE(validate({1, 0, 0.5, 0.0}).ok);      // a < b
    CHECK_FALSE(validate({0, 1, 1.5, 0.0}).ok);      // mu inside
    CHECK_FALSE(validate({0, 1, 0.5, -0.1}).ok);     // d >= 0
    CHECK_FALSE(validate({0, 1, 0.5, 0.51}).ok);     // d <= d_max
    CHECK_FALSE(validate({0, 1, 0.0, 0.1}).ok);      // degenerate mean
    CHECK(validate({0, 1, 0.0, 0.0}).ok);
    CHECK_FALSE(validate({0, 1, 0.5, 0.1, 1.5}).ok); // beta range
    CHECK_FALSE(validate({0, 1, 0.5, 0.4, 0.3}).ok); // d <= 2 beta (b-mu)
    CHECK_FALSE(validate({0, 1, 0.5, 0.4, 0.7}).ok); // d <= 2(1-beta)(mu-a)
    CHECK(validate({0, 1, 0.5, 0.4, 0.5}).ok);
    CHECK_THROWS_AS(require_valid({0, 1, 2.0, 0.0}), std::invalid_argument);
}

TEST_CASE("estimate_from_samples reproduces hand moments") {
    std::vector<double> xs{0.0, 1.0, 1.0, 2.0};
    auto [set, m] = estimate_from_samples(xs);
    CHECK(m.mean == doctest::Approx(1.0));
    CHECK(m.mad == doctest::Approx(0.5));
    CHECK(m.beta_hat == doctest::Approx(0.75));
    CHECK(set.a == 0.0);
    CHECK(set.b == 2.0);
    CHECK(validate(set).ok);

    CHECK_THROWS_AS(estimate_from_samples({}), std::invalid_argument);
    CHECK_THROWS_AS(estimate_from_samples(xs, {{0.5, 3.0}}), std::invalid_argument);
}

TEST_CASE("shift_to_zero preserves width and dispersion") {
    AmbiguitySet s{-1.0, 1.0, 0.25, 0.3};
    auto [sh, off] = shift_to_zero(s);
    CHECK(off == -1.0);
    CHECK(sh.a == 0.0);
    CHECK(sh.b == 2.0);
    CHECK(sh.mu == doctest::Approx(1.25));
    CHECK(sh.d == s.d);
}

TEST_CASE("csv ingestion reports the offending row") {
    std::istringstream ok("value\n1.5\n2.5,99\n-3\n");
    auto v = read_csv_column(ok);
    REQUIRE(v.size() == 3);
    CHECK(v[1] == 2.5);

    std::istringstream bad("1.0\n2.0\noops\n");
    try {
        read_csv_column(bad);
        FAIL("expected a parse error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }
}
