#pragma once

#include <array>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "madbounds/tail_bounds.hpp"

namespace madb {

enum class LpStatus { Optimal, Infeasible, NumericalBreakdown };

/** Dense LP in equality standard form: optimize c'p s.t. A p = rhs, p >= 0.
 *  Row count is tiny (<= 4 here); columns are the grid atoms. */
struct DenseLp {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> A;  // row-major rows x cols
    std::vector<double> rhs;
    std::vector<double> c;
    bool maximize = true;
};

struct SimplexResult {
    LpStatus status = LpStatus::Optimal;
    double objective = 0.0;
    std::vector<double> x;     // primal, size cols
    std::vector<double> dual;  // one multiplier per row
    std::size_t iterations = 0;
};

/** Two-phase revised simplex with Bland's rule; deterministic for a given
 *  input.  Basis matrices are refactorized every iteration (rows <= 4). */
SimplexResult simplex_solve(const DenseLp& lp);

/** Moment LP over distributions supported on a fixed grid: optimize
 *  E[objective(X)] subject to total mass 1, E[X] = mean, E|X - mean| = mad,
 *  and optionally P(X >= beta_threshold) = beta. */
struct MomentLp {
    std::vector<double> grid;
    std::function<double(double)> objective;
    double mean = 0.0;
    double mad = 0.0;
    std::optional<double> beta{};
    double beta_threshold = 0.0;
    bool maximize = true;
};

struct LpCertificate {
    LpStatus status = LpStatus::Optimal;
    double optimal_value = 0.0;
    DiscreteDistribution primal;
    // Multipliers for (mass, mean, mad[, beta]); the implied dual function is
    // dual[0] + dual[1] x + dual[2]|x - mean| (+ dual[3] 1{x >= threshold}).
    std::array<double, 4> dual{};
    bool has_beta_row = false;
    double duality_gap = 0.0;  // |primal objective - dual objective|
    std::size_t iterations = 0;
};

LpCertificate solve_moment_lp(const MomentLp& problem);

/** Uniform n-point grid on [a, b] merged with the set's knots and any extra
 *  breakpoints; sorted and deduplicated. */
std::vector<double> make_grid(const AmbiguitySet& set,
                              std::initializer_list<double> breakpoints,
                              std::size_t n_uniform = 501);

enum class TheoremId {
    SupTail,
    InfTail,
    SupTailBeta,
    InfTailBeta,
    Retention,         // E[min(X, z)] maximized
    ReinsurerBenefit,  // E[min((X - z)^+, m)] maximized
};

struct VerifyReport {
    TheoremId theorem;
    LpStatus status = LpStatus::Optimal;
    double closed_form = 0.0;
    double lp_value = 0.0;
    double gap = 0.0;  // |closed_form - lp_value|
};

struct VerifyParams {
    double t = 0.0;  // threshold, or retention/attachment level z
    double m = 0.0;  // layer width for ReinsurerBenefit
};

/** Re-derives a closed-form bound through the discretized LP.  The grid
 *  always contains the relevant knots, so the two routes agree to
 *  floating-point accuracy on feasible inputs. */
VerifyReport verify_bound(const AmbiguitySet& set, TheoremId theorem,
                          const VerifyParams& params, std::size_t grid_size = 501);

const char* theorem_name(TheoremId id);

}  // namespace madb
