#include "madbounds/pricing.hpp"

#include <cmath>
#include <stdexcept>

#include "madbounds/tail_bounds.hpp"

namespace madb {

namespace {

void check_zero_based(const AmbiguitySet& set) {
    require_valid(set);
    if (set.a != 0.0)
        throw std::invalid_argument("pricing assumes support starting at 0");
    if (std::isinf(set.b)) throw std::invalid_argument("pricing needs finite b");
}

// Revenue of the low-price candidate r1 = mu - sqrt(d mu / 2).
double low_profit(double mu, double d) {
    return mu + d / 2.0 - std::sqrt(2.0 * d * mu);
}

double high_price(double mu, double b, double d) {
    double inner = b * (2.0 * mu - d) * (2.0 * mu * (b - mu) - b * d);
    return b - std::sqrt(std::max(inner, 0.0)) / (2.0 * mu - d);
}

}  // namespace

double worst_case_profit(const AmbiguitySet& set, double r) {
    check_zero_based(set);
    if (r < 0.0 || r > set.b) throw std::domain_error("price outside [0, b]");
    return r * inf_tail(set, r).value;
}

double threshold_d2(double mu, double b) {
    return 2.0 * mu * (b - mu) / (2.0 * b - mu);
}

double threshold_d1(double mu, double b) {
    // Root of (mu + d/2 - sqrt(2 d mu)) - d mu / (2(b - mu)) in d; the
    // expression is positive at 0+ and nonpositive at d_max.
    auto g = [mu, b](double d) {
        return low_profit(mu, d) - d * mu / (2.0 * (b - mu));
    };
    double lo = 0.0, hi = 2.0 * mu * (b - mu) / b;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::optional<double> tie_dispersion(double mu, double b) {
    if (b <= 5.0 * mu) return std::nullopt;
    AmbiguitySet set{0.0, b, mu, 0.0};
    auto h = [&](double d) {
        set.d = d;
        double r2 = high_price(mu, b, d);
        double p2 = (r2 < b) ? r2 * inf_tail(set, r2).value : 0.0;
        return low_profit(mu, d) - p2;
    };
    double lo = threshold_d2(mu, b);
    double hi = set.d_max() * (1.0 - 1e-12);
    double flo = h(lo);
    if (flo * h(hi) > 0.0) return std::nullopt;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (h(mid) * flo > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

PricingSolution optimal_price(const AmbiguitySet& set) {
    check_zero_based(set);
    double mu = set.mu, b = set.b, d = set.d;
    PricingSolution sol;
    sol.d_max = set.d_max();
    sol.d1 = threshold_d1(mu, b);
    sol.d2 = threshold_d2(mu, b);
    if (d == 0.0) {
        // Limit of r1 as d -> 0: post just under the mean.
        sol.r_star = mu;
        sol.profit = mu;
        sol.regime = PriceRegime::R1;
        return sol;
    }

    double r1 = mu - std::sqrt(d * mu / 2.0);
    auto eval_high = [&](PricingSolution& s) {
        s.r_star = high_price(mu, b, d);
        s.profit = (s.r_star < b) ? worst_case_profit(set, s.r_star)
                                  : mu;  // supremum at r -> b when d == d_max
    };

    if (b <= 5.0 * mu) {
        if (d <= sol.d1) {
            sol.regime = PriceRegime::R1;
            sol.r_star = r1;
            sol.profit = low_profit(mu, d);
        } else if (d <= sol.d2) {
            sol.regime = PriceRegime::Mu;
            sol.r_star = mu;
            sol.profit = d * mu / (2.0 * (b - mu));
        } else {
            sol.regime = PriceRegime::R2;
            eval_high(sol);
        }
    } else {
        if (d <= sol.d2) {
            sol.regime = PriceRegime::R1;
            sol.r_star = r1;
            sol.profit = low_profit(mu, d);
        } else {
            // Both candidates are locally optimal; take the numeric winner.
            sol.regime = PriceRegime::NumericTie;
            PricingSolution high = sol;
            eval_high(high);
            double p1 = low_profit(mu, d);
            if (p1 >= high.profit) {
                sol.r_star = r1;
                sol.profit = p1;
            } else {
                sol.r_star = high.r_star;
                sol.profit = high.profit;
            }
        }
    }
    return sol;
}

}  // namespace madb
