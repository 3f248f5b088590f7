#include "madbounds/tail_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace madb {

namespace {

constexpr double kDenomGuard = 1e-14;

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

double guarded_div(double num, double den) {
    if (std::abs(den) < kDenomGuard)
        throw std::domain_error("degenerate denominator in tail bound");
    return num / den;
}

}  // namespace

Knots tail_knots(const AmbiguitySet& set) {
    if (set.d == 0.0) return {set.mu, set.mu};
    double up = set.b - set.mu;   // distance to the upper endpoint
    double lo = set.mu - set.a;
    double tau1 = set.mu - guarded_div(set.d * up, 2.0 * up - set.d);
    double tau2 = set.mu + guarded_div(set.d * lo, 2.0 * lo - set.d);
    return {tau1, tau2};
}

Knots tail_knots_beta(const AmbiguitySet& set) {
    if (!set.beta) throw std::invalid_argument("set has no beta");
    if (set.d == 0.0) return {set.mu, set.mu};
    double beta = *set.beta;
    double tau1 = set.mu - guarded_div(set.d, 2.0 * (1.0 - beta));
    double tau2 = set.mu + guarded_div(set.d, 2.0 * beta);
    return {tau1, tau2};
}

BoundValue sup_tail(const AmbiguitySet& set, double t) {
    require_valid(set);
    Knots k = tail_knots(set);
    if (t > set.b) return {0.0, Branch::Tau2ToB, k.tau1, k.tau2};
    auto [s, a] = shift_to_zero(set);
    double ts = t - a;
    double mu = s.mu, b = s.b, d = s.d;
    if (d == 0.0) {
        if (ts <= mu) return {1.0, Branch::BelowTau1, k.tau1, k.tau2};
        return {0.0, Branch::Tau2ToB, k.tau1, k.tau2};
    }
    double v;
    Branch br;
    if (t <= k.tau1) {
        v = 1.0;
        br = Branch::BelowTau1;
    } else if (ts < mu) {
        v = mu / ts - d * (b - ts) / (2.0 * ts * (b - mu));
        br = Branch::Tau1ToMu;
    } else if (t <= k.tau2) {
        v = 1.0 - d / (2.0 * mu);
        br = Branch::MuToTau2;
    } else {
        v = d / (2.0 * (ts - mu));
        br = Branch::Tau2ToB;
    }
    return {clamp01(v), br, k.tau1, k.tau2};
}

BoundValue inf_tail(const AmbiguitySet& set, double t) {
    require_valid(set);
    Knots k = tail_knots(set);
    if (t < set.a) return {1.0, Branch::BelowTau1, k.tau1, k.tau2};
    auto [s, a] = shift_to_zero(set);
    double ts = t - a;
    double mu = s.mu, b = s.b, d = s.d;
    if (d == 0.0) {
        if (ts < mu) return {1.0, Branch::BelowTau1, k.tau1, k.tau2};
        return {0.0, Branch::Tau2ToB, k.tau1, k.tau2};
    }
    double v;
    Branch br;
    if (t <= k.tau1) {
        v = 1.0 - d / (2.0 * (mu - ts));
        br = Branch::BelowTau1;
    } else if (ts < mu) {
        v = d / (2.0 * (b - mu));
        br = Branch::Tau1ToMu;
    } else if (t <= k.tau2) {
        v = (mu - ts) / (b - ts) + d * ts / (2.0 * mu * (b - ts));
        br = Branch::MuToTau2;
    } else {
        v = 0.0;
        br = Branch::Tau2ToB;
    }
    return {clamp01(v), br, k.tau1, k.tau2};
}

BoundValue sup_tail_beta(const AmbiguitySet& set, double t) {
    require_valid(set);
    if (!set.beta) throw std::invalid_argument("set has no beta");
    double beta = *set.beta;
    Knots k = tail_knots_beta(set);
    if (t > set.b) return {0.0, Branch::Tau2ToB, k.tau1, k.tau2};
    auto [s, a] = shift_to_zero(set);
    double ts = t - a;
    double mu = s.mu, d = s.d;
    double v;
    Branch br;
    if (t <= k.tau1) {
        v = 1.0;
        br = Branch::BelowTau1;
    } else if (ts < mu) {
        v = ((1.0 - beta) * mu + beta * ts) / ts - d / (2.0 * ts);
        br = Branch::Tau1ToMu;
    } else if (t <= k.tau2) {
        v = beta;
        br = Branch::MuToTau2;
    } else {
        v = d / (2.0 * (ts - mu));
        br = Branch::Tau2ToB;
    }
    return {clamp01(v), br, k.tau1, k.tau2};
}

BoundValue inf_tail_beta(const AmbiguitySet& set, double t) {
    require_valid(set);
    if (!set.beta) throw std::invalid_argument("set has no beta");
    double beta = *set.beta;
    Knots k = tail_knots_beta(set);
    if (t < set.a) return {1.0, Branch::BelowTau1, k.tau1, k.tau2};
    auto [s, a] = shift_to_zero(set);
    double ts = t - a;
    double mu = s.mu, b = s.b, d = s.d;
    double v;
    Branch br;
    if (t <= k.tau1 && ts < mu) {
        v = 1.0 - d / (2.0 * (mu - ts));
        br = Branch::BelowTau1;
    } else if (ts < mu) {
        v = beta;
        br = Branch::Tau1ToMu;
    } else if (t <= k.tau2) {
        v = beta * (mu - ts) / (b - ts) + d / (2.0 * (b - ts));
        br = Branch::MuToTau2;
    } else {
        v = 0.0;
        br = Branch::Tau2ToB;
    }
    return {clamp01(v), br, k.tau1, k.tau2};
}

double DiscreteDistribution::total_mass() const {
    double s = 0;
    for (const auto& a : atoms) s += a.p;
    return s;
}

double DiscreteDistribution::mean() const {
    double s = 0;
    for (const auto& a : atoms) s += a.p * a.x;
    return s;
}

double DiscreteDistribution::mad_about(double mu) const {
    double s = 0;
    for (const auto& a : atoms) s += a.p * std::abs(a.x - mu);
    return s;
}

double DiscreteDistribution::mad() const { return mad_about(mean()); }

double DiscreteDistribution::mass_at_least(double t) const {
    double s = 0;
    for (const auto& a : atoms)
        if (a.x >= t - 1e-12) s += a.p;
    return s;
}

double DiscreteDistribution::mass_above(double t) const {
    double s = 0;
    for (const auto& a : atoms)
        if (a.x > t + 1e-12) s += a.p;
    return s;
}

namespace {

// Sup-side construction on a set already shifted to a == 0.
DiscreteDistribution worst_case_sup_shifted(const AmbiguitySet& s, double t) {
    DiscreteDistribution out;
    double mu = s.mu, b = s.b, d = s.d;
    if (d == 0.0) {
        out.atoms = {{mu, 1.0}};
        return out;
    }
    Knots k = tail_knots(s);
    double pb = d / (2.0 * (b - mu));
    if (t <= k.tau1) {
        // All mass may sit at or above t; smallest support is {tau1, b}.
        out.atoms = {{k.tau1, 1.0 - pb}, {b, pb}};
        if (t < k.tau1) out.free_interval = {{std::max(t, 0.0), b}};
    } else if (t <= mu) {
        double pt = mu / t - b * d / (2.0 * t * (b - mu));
        out.atoms = {{0.0, 1.0 - pt - pb}, {t, pt}, {b, pb}};
    } else if (t <= k.tau2) {
        double p0 = d / (2.0 * mu);
        out.atoms = {{0.0, p0}, {k.tau2, 1.0 - p0}};
        if (t < k.tau2) out.free_interval = {{t, b}};
    } else if (t <= b) {
        double pt = d / (2.0 * (t - mu));
        double m = (mu - pt * t) / (1.0 - pt);
        out.atoms = {{m, 1.0 - pt}, {t, pt}};
        out.free_interval = {{0.0, mu}};
    } else {
        // t beyond the support: every member attains the (zero) bound.
        out.atoms = {{k.tau1, 1.0 - pb}, {b, pb}};
    }
    return out;
}

}  // namespace

DiscreteDistribution worst_case_distribution(const AmbiguitySet& set, double t,
                                             TailSide side) {
    require_valid(set);
    if (side == TailSide::Sup) {
        auto [s, a] = shift_to_zero(set);
        DiscreteDistribution d = worst_case_sup_shifted(s, t - a);
        for (auto& at : d.atoms) at.x += a;
        if (d.free_interval) {
            d.free_interval->lo += a;
            d.free_interval->hi += a;
        }
        return d;
    }
    // Minimizing P(X > t) is maximizing P(2mu - X >= 2mu - t) on the
    // reflected set, which has the same mean and MAD.
    AmbiguitySet refl = set;
    refl.a = 2.0 * set.mu - set.b;
    refl.b = 2.0 * set.mu - set.a;
    auto [s, a] = shift_to_zero(refl);
    DiscreteDistribution d = worst_case_sup_shifted(s, (2.0 * set.mu - t) - a);
    for (auto& at : d.atoms) at.x = 2.0 * set.mu - (at.x + a);
    std::reverse(d.atoms.begin(), d.atoms.end());
    if (d.free_interval) {
        double lo = 2.0 * set.mu - (d.free_interval->hi + a);
        double hi = 2.0 * set.mu - (d.free_interval->lo + a);
        d.free_interval = {{lo, hi}};
    }
    return d;
}

double markov_consistency(double mu, double a, double b, double t) {
    if (!(t > mu && t <= b)) throw std::domain_error("need mu < t <= b");
    AmbiguitySet set{a, b, mu, 2.0 * (mu - a) * (t - mu) / (t - a)};
    return sup_tail(set, t).value;
}

double cantelli(double sigma, double mu, double t) {
    if (sigma < 0) throw std::domain_error("sigma >= 0");
    if (t <= mu) return 1.0;
    double s2 = sigma * sigma;
    return s2 / (s2 + (t - mu) * (t - mu));
}

double de_schepper_sup(double mu, double b, double sigma, double t) {
    if (!(0 < mu && mu < b) || sigma < 0) throw std::domain_error("need 0 < mu < b");
    double s2 = sigma * sigma;
    double k1 = mu - s2 / (b - mu);
    double k2 = mu + s2 / mu;
    if (t > b) return 0.0;
    if (t <= k1) return 1.0;
    if (t <= k2) return clamp01(1.0 - (s2 + (b - mu) * (t - mu)) / (b * t));
    return clamp01(s2 / (s2 + (t - mu) * (t - mu)));
}

double de_schepper_inf(double mu, double b, double sigma, double t) {
    if (!(0 < mu && mu < b) || sigma < 0) throw std::domain_error("need 0 < mu < b");
    double s2 = sigma * sigma;
    double k1 = mu - s2 / (b - mu);
    double k2 = mu + s2 / mu;
    if (t < 0) return 1.0;
    if (t <= k1) {
        double g = (mu - t) * (mu - t);
        return clamp01(g / (g + s2));
    }
    if (t <= k2) return clamp01((s2 + mu * (mu - t)) / (b * (b - t)));
    return 0.0;
}

CantelliThresholds cantelli_thresholds(double mu, double a, double b, double d,
                                       double sigma) {
    if (d <= 0) throw std::domain_error("need d > 0");
    if (sigma < d) throw std::domain_error("tau_low/tau_high need sigma >= d");
    double s2 = sigma * sigma;
    double tau_hat = mu + std::sqrt(d * s2 / (2.0 * (mu - a) - d));
    double half = sigma * std::sqrt(s2 / (d * d) - 1.0);
    double tau_low = mu + s2 / d - half;
    double tau_high = std::min(b, mu + s2 / d + half);
    return {tau_hat, tau_low, tau_high};
}

Interval sigma_range(double d, double b, double beta) {
    if (!(beta > 0.0 && beta < 1.0)) throw std::domain_error("need 0 < beta < 1");
    return {d * d / (4.0 * beta * (1.0 - beta)), d * b / 2.0};
}

double sup_tail_ineq_mad(const AmbiguitySet& set, double t) {
    require_valid(set);
    if (t <= set.mu) return 1.0;
    if (t > set.b) return 0.0;
    AmbiguitySet relaxed = set;
    relaxed.d = std::min(set.d, 2.0 * (set.mu - set.a) * (t - set.mu) / (t - set.a));
    return sup_tail(relaxed, t).value;
}

}  // namespace madb
