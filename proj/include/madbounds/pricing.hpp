#pragma once

#include <optional>

#include "madbounds/ambiguity.hpp"

namespace madb {

/** Worst-case expected revenue r * inf P(B > r) of posting price r when the
 *  valuation B lies in the mean-MAD set.  Requires a == 0. */
double worst_case_profit(const AmbiguitySet& set, double r);

enum class PriceRegime { R1, Mu, R2, NumericTie };

struct PricingSolution {
    double r_star = 0.0;
    double profit = 0.0;
    PriceRegime regime = PriceRegime::R1;
    double d1 = 0.0;  // dispersion thresholds for the regime switches
    double d2 = 0.0;
    double d_max = 0.0;
};

/** Dispersion level where the low-price candidate ties with posting mu.
 *  Solved by bisection; the closed form degenerates at b == 2 mu. */
double threshold_d1(double mu, double b);

/** Dispersion level where posting mu ties with the high-price candidate:
 *  2 mu (b - mu) / (2 b - mu). */
double threshold_d2(double mu, double b);

/** For b > 5 mu the low- and high-price candidates swap winners at some
 *  dispersion in (d2, d_max); found numerically, nullopt when b <= 5 mu. */
std::optional<double> tie_dispersion(double mu, double b);

/** Maximizer of the worst-case revenue over r in (0, b).  Requires a == 0;
 *  d == 0 degenerates to posting just under mu with revenue mu. */
PricingSolution optimal_price(const AmbiguitySet& set);

}  // namespace madb
