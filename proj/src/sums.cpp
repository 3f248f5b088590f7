#include "madbounds/sums.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace madb {

double MarginalSet::b_bar() const {
    double s = 0;
    for (const auto& p : parts) s += p.b;
    return s;
}

double MarginalSet::mu_bar() const {
    double s = 0;
    for (const auto& p : parts) s += p.mu;
    return s;
}

double MarginalSet::d_hat() const {
    if (d_hat_override) return *d_hat_override;
    double s = 0;
    for (const auto& p : parts) s += p.d;
    return s;
}

namespace {

void check_marginals(const MarginalSet& sum) {
    if (sum.parts.empty()) throw std::invalid_argument("no marginals");
    for (const auto& p : sum.parts) {
        AmbiguitySet s{0.0, p.b, p.mu, p.d};
        require_valid(s, 1e-9);
    }
    if (sum.d_hat() < 0) throw std::invalid_argument("negative aggregate MAD");
}

}  // namespace

double sum_tail_bound(const MarginalSet& sum, double t) {
    check_marginals(sum);
    double mu = sum.mu_bar();
    if (t <= mu) return 1.0;
    if (t > sum.b_bar()) return 0.0;
    return std::min(sum.d_hat() / (2.0 * (t - mu)), mu / t);
}

VarBound var_bound(const MarginalSet& sum, double alpha) {
    check_marginals(sum);
    VarBound out;
    double mu = sum.mu_bar(), b = sum.b_bar();
    double target = 1.0 - alpha;
    if (target >= 1.0) {
        out.value = mu;
        out.alpha_trivial = true;
        return out;
    }
    if (sum_tail_bound(sum, b) > target) {
        out.value = b;
        out.capped_at_support = true;
        return out;
    }
    double lo = mu, hi = b;
    while (hi - lo > 1e-9) {
        double mid = 0.5 * (lo + hi);
        (sum_tail_bound(sum, mid) <= target ? hi : lo) = mid;
    }
    out.value = hi;
    return out;
}

double sum_stoploss_bound(const MarginalSet& sum, const Layer& layer) {
    check_marginals(sum);
    if (!(layer.m > 0.0)) throw std::domain_error("layer width m must be positive");
    if (layer.z < 0.0) throw std::domain_error("attachment z must be nonnegative");
    double mu = sum.mu_bar(), b = sum.b_bar(), d = sum.d_hat();
    double z = layer.z;
    if (z >= b) return 0.0;
    double m = std::min(layer.m, b - z);  // the support caps the payout anyway
    if (z + m <= mu) return m;
    if (z <= mu)
        return std::min(m * mu / (m + z), z * (d / (2.0 * mu) - 1.0) + mu);
    return std::min(m * mu / (m + z), d * m / (2.0 * (m + z - mu)));
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0) return -std::numeric_limits<double>::infinity();
        if (p == 1.0) return std::numeric_limits<double>::infinity();
        throw std::domain_error("probability outside [0, 1]");
    }
    // Acklam's rational approximation, then one Halley step.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double dd[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1 - plow;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1);
    } else if (p > phigh) {
        double q = std::sqrt(-2 * std::log(1 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((dd[0] * q + dd[1]) * q + dd[2]) * q + dd[3]) * q + 1);
    } else {
        double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
    }
    double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

double LognormalMarginal::mean() const { return std::exp(m + v * v / 2.0); }

double LognormalMarginal::mad() const {
    double phi = 0.5 * std::erfc(-(v / 2.0) / std::sqrt(2.0));
    return 2.0 * mean() * (2.0 * phi - 1.0);
}

double LognormalMarginal::quantile(double u) const {
    double uc = std::clamp(u, 1e-16, 1.0 - 1e-16);
    return std::exp(m + v * normal_quantile(uc));
}

namespace {

void fill_chunk(const std::vector<std::function<double(double)>>& quantiles,
                Copula copula, std::uint64_t seed, std::size_t chunk,
                double* out, std::size_t count) {
    std::seed_seq sq{seed, std::uint64_t(chunk)};
    std::mt19937_64 rng(sq);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (std::size_t i = 0; i < count; ++i) {
        double s = 0.0;
        if (copula == Copula::Comonotonic) {
            double u = unif(rng);
            for (const auto& q : quantiles) s += q(u);
        } else {
            for (const auto& q : quantiles) s += q(unif(rng));
        }
        out[i] = s;
    }
}

std::vector<double> simulate_impl(
    const std::vector<std::function<double(double)>>& quantiles, Copula copula,
    std::size_t n, std::uint64_t seed, std::size_t chunks, bool parallel) {
    if (quantiles.empty()) throw std::invalid_argument("no marginals");
    chunks = std::max<std::size_t>(1, std::min(chunks, std::max<std::size_t>(n, 1)));
    std::vector<double> out(n);
    std::vector<std::size_t> offset(chunks + 1, 0);
    for (std::size_t c = 0; c < chunks; ++c)
        offset[c + 1] = offset[c] + n / chunks + (c < n % chunks ? 1 : 0);
    if (parallel) {
        const std::int64_t nc = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(static)
        for (std::int64_t c = 0; c < nc; ++c)
            fill_chunk(quantiles, copula, seed, std::size_t(c),
                       out.data() + offset[std::size_t(c)],
                       offset[std::size_t(c) + 1] - offset[std::size_t(c)]);
    } else {
        for (std::size_t c = 0; c < chunks; ++c)
            fill_chunk(quantiles, copula, seed, c, out.data() + offset[c],
                       offset[c + 1] - offset[c]);
    }
    return out;
}

}  // namespace

std::vector<double> simulate_sums(
    const std::vector<std::function<double(double)>>& quantiles, Copula copula,
    std::size_t n, std::uint64_t seed, std::size_t chunks) {
    return simulate_impl(quantiles, copula, n, seed, chunks, true);
}

std::vector<double> simulate_sums_serial(
    const std::vector<std::function<double(double)>>& quantiles, Copula copula,
    std::size_t n, std::uint64_t seed, std::size_t chunks) {
    return simulate_impl(quantiles, copula, n, seed, chunks, false);
}

SimEstimate empirical_tail(const std::vector<double>& sums, double t) {
    SimEstimate e;
    e.n = sums.size();
    if (e.n == 0) return e;
    std::size_t hits = 0;
    for (double s : sums)
        if (s >= t) ++hits;
    double p = double(hits) / double(e.n);
    e.estimate = p;
    e.std_error = std::sqrt(p * (1.0 - p) / double(e.n));
    return e;
}

SimEstimate empirical_stoploss(const std::vector<double>& sums, const Layer& layer) {
    SimEstimate e;
    e.n = sums.size();
    if (e.n == 0) return e;
    double sum = 0.0, sumsq = 0.0;
    for (double s : sums) {
        double pay = std::clamp(s - layer.z, 0.0, layer.m);
        sum += pay;
        sumsq += pay * pay;
    }
    double n = double(e.n);
    e.estimate = sum / n;
    double var = std::max(0.0, (sumsq - sum * sum / n) / (n - 1.0));
    e.std_error = std::sqrt(var / n);
    return e;
}

}  // namespace madb
