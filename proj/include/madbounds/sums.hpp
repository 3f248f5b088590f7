#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "madbounds/stoploss.hpp"

namespace madb {

/** One summand: support [0, b_i], mean mu_i, MAD d_i. */
struct Marginal {
    double b = 1.0;
    double mu = 0.5;
    double d = 0.0;
};

/** Marginals of a sum S = X_1 + ... + X_n with arbitrary dependence.  The
 *  aggregate MAD bound defaults to the sum of the marginal MADs and can be
 *  overridden when a sharper value is known. */
struct MarginalSet {
    std::vector<Marginal> parts;
    std::optional<double> d_hat_override{};

    double b_bar() const;   // sum of b_i
    double mu_bar() const;  // sum of mu_i
    double d_hat() const;   // aggregate MAD bound
};

/** Upper bound on P(S >= t): 1 for t <= mu_bar, else
 *  min{ d_hat / (2(t - mu_bar)), mu_bar / t }. */
double sum_tail_bound(const MarginalSet& sum, double t);

struct VarBound {
    double value = 0.0;
    bool capped_at_support = false;  // requested level unreachable below b_bar
    bool alpha_trivial = false;      // alpha <= 0: the mean already suffices
};

/** Smallest t with sum_tail_bound <= 1 - alpha, by bisection on
 *  [mu_bar, b_bar] to 1e-9. */
VarBound var_bound(const MarginalSet& sum, double alpha);

/** Upper bound on the expected layer payout E[min((S - z)^+, m)]. */
double sum_stoploss_bound(const MarginalSet& sum, const Layer& layer);

enum class Copula { Independent, Comonotonic };

/** Inverse standard normal CDF (refined Acklam approximation). */
double normal_quantile(double p);

/** Lognormal with log-location m and log-scale v > 0. */
struct LognormalMarginal {
    double m = 0.0;
    double v = 1.0;

    double mean() const;               // exp(m + v^2/2)
    double mad() const;                // 2 mean (2 Phi(v/2) - 1)
    double quantile(double u) const;   // exp(m + v Phi^{-1}(u))
};

/** Simulates n draws of the sum.  Marginals are sampled through their
 *  quantile functions; Comonotonic feeds one shared uniform per draw.
 *  Work splits into `chunks` independent substreams seeded by (seed, chunk),
 *  so the result depends on seed and chunk count but not the thread count. */
std::vector<double> simulate_sums(
    const std::vector<std::function<double(double)>>& quantiles, Copula copula,
    std::size_t n, std::uint64_t seed, std::size_t chunks = 64);

std::vector<double> simulate_sums_serial(
    const std::vector<std::function<double(double)>>& quantiles, Copula copula,
    std::size_t n, std::uint64_t seed, std::size_t chunks = 64);

struct SimEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t n = 0;
};

SimEstimate empirical_tail(const std::vector<double>& sums, double t);
SimEstimate empirical_stoploss(const std::vector<double>& sums, const Layer& layer);

}  // namespace madb
