#pragma once

#include <vector>

#include "madbounds/ambiguity.hpp"

namespace madb {

enum class Branch { BelowTau1, Tau1ToMu, MuToTau2, Tau2ToB };

struct BoundValue {
    double value;
    Branch branch;
    double tau1;  // breakpoints in original coordinates
    double tau2;
};

struct Knots {
    double tau1;
    double tau2;
};

/** Breakpoints of the mean-MAD tail bounds:
 *  tau1 = mu - d(b-mu)/(2(b-mu)-d), tau2 = mu + d(mu-a)/(2(mu-a)-d).
 *  Both collapse to mu when d == 0. */
Knots tail_knots(const AmbiguitySet& set);

/** Breakpoints when beta is pinned:
 *  tau1 = mu - d/(2(1-beta)), tau2 = mu + d/(2 beta). */
Knots tail_knots_beta(const AmbiguitySet& set);

/** Tight upper bound on P(X >= t) over the mean-MAD set.  Intervals are
 *  left-closed; first matching branch wins. */
BoundValue sup_tail(const AmbiguitySet& set, double t);

/** Tight lower bound on P(X > t). */
BoundValue inf_tail(const AmbiguitySet& set, double t);

/** Tight upper bound on P(X >= t) when beta = P(X >= mu) is pinned.
 *  The plateau interval [tau1, mu) is half-open at mu. */
BoundValue sup_tail_beta(const AmbiguitySet& set, double t);

/** Tight lower bound on P(X > t) with beta pinned. */
BoundValue inf_tail_beta(const AmbiguitySet& set, double t);

struct DiscreteDistribution {
    struct Atom {
        double x;
        double p;
    };
    std::vector<Atom> atoms;  // sorted by x, probabilities summing to one

    // Region where extra support would remain extremal (cases where the
    // worst case is not unique); canonical atoms above already carry all mass.
    struct FreeInterval {
        double lo, hi;
    };
    std::optional<FreeInterval> free_interval{};

    double total_mass() const;
    double mean() const;
    double mad() const;                        // about the given mu
    double mad_about(double mu) const;
    double mass_at_least(double t) const;      // P(X >= t)
    double mass_above(double t) const;         // P(X > t)
};

enum class TailSide { Sup, Inf };

/** A distribution in the set attaining sup P(X >= t) (Sup) or
 *  inf P(X > t) (Inf); smallest-support canonical member. */
DiscreteDistribution worst_case_distribution(const AmbiguitySet& set, double t,
                                             TailSide side);

/** sup_tail evaluated at d = 2(mu-a)(t-mu)/(t-a); equals the Markov-type
 *  bound (mu-a)/(t-a) for t > mu. */
double markov_consistency(double mu, double a, double b, double t);

/** One-sided Chebyshev bound sigma^2/(sigma^2+(t-mu)^2) for t > mu, else 1. */
double cantelli(double sigma, double mu, double t);

/** Tight mean-variance tail bounds on support [0, b]. */
double de_schepper_sup(double mu, double b, double sigma, double t);
double de_schepper_inf(double mu, double b, double sigma, double t);

struct CantelliThresholds {
    double tau_hat;   // where the MAD bound's plateau meets Cantelli
    double tau_low;   // crossings of d/(2(t-mu)) with Cantelli, offset by mu
    double tau_high;  // clipped at b
};

/** Requires sigma >= d (else the square root leaves the real line;
 *  std::domain_error). */
CantelliThresholds cantelli_thresholds(double mu, double a, double b, double d,
                                       double sigma);

struct Interval {
    double lo;
    double hi;
};

/** Range of variances compatible with MAD d and P(X >= mu) = beta on a
 *  support of width b: [d^2/(4 beta (1-beta)), d b / 2]. */
Interval sigma_range(double d, double b, double beta);

/** Upper tail bound under the relaxed set where MAD <= d: caps d at the
 *  value that recovers the Markov bound. */
double sup_tail_ineq_mad(const AmbiguitySet& set, double t);

}  // namespace madb
