#pragma once

#include <span>
#include <utility>
#include <vector>

#include "madbounds/ambiguity.hpp"

namespace madb {

/** Safety margin for the chance constraint g(x) + Z <= 0 with Z on [-1, 1],
 *  mean 0 and MAD d: the constraint holds with worst-case probability
 *  1 - eps iff g(x) + kappa <= 0.  Requires eps in (0, 1/2), d in [0, 1]. */
double reform_rhs(double d, double eps);

/** Same for support [-1, u]: kappa = min{u, d/(2 eps)}.  Requires u > 0,
 *  eps in (0, 1/(1+u)), d in [0, 2u/(1+u)]. */
double reform_rhs_asym(double u, double d, double eps);

/** Bilinear left-hand side uncertainty (a_bar + Z a_hat)'x <= h with Z on
 *  [-1, 1], mean 0, MAD d.  Feasibility is equivalent to the two linear
 *  constraints a_bar'x +- kappa a_hat'x <= h. */
struct BilinearReform {
    std::vector<double> a_bar;
    std::vector<double> a_hat;
    double h = 0.0;
    double kappa = 0.0;

    bool feasible(std::span<const double> x) const;
    /** The pair of left-hand sides a_bar'x +- kappa a_hat'x. */
    std::pair<double, double> rows(std::span<const double> x) const;
};

BilinearReform reform_bilinear(std::vector<double> a_bar,
                               std::vector<double> a_hat, double h, double d,
                               double eps);

/** Safe approximation for a joint constraint with independent Z_i on
 *  [-1, 1]: true means the log-sum certificate accepts the point. */
bool reform_joint_indep(std::span<const double> g, std::span<const double> d,
                        double eps);

/** Exact reformulation for a joint constraint sharing a single Z. */
bool reform_joint_shared(std::span<const double> g, double d, double eps);

/** Two-fraction dose optimization: maximize the tumor dose
 *  x1 + x2 + (x1^2 + x2^2)/rho1 subject to a chance constraint on the
 *  healthy-tissue dose, whose sensitivity rho2 is ambiguous. */
struct RadiotherapyProblem {
    double rho1 = 10.0;
    double sigma = 0.9;
    double phi = 2.0;
    double D = 27.0;
    double T = 5.0;
    double x_min = 1.5;
    AmbiguitySet rho2{3.0, 6.0, 4.0, 0.25};
    double eps = 0.1;
};

struct RadiotherapySolution {
    double x1 = 0.0;
    double x2 = 0.0;
    double objective = 0.0;
    double constraint_slack = 0.0;  // rhs - lhs at the solution, >= 0
    // The margin d/(2 eps) can exceed the support width b - mu; the
    // reformulation stays valid but is conservative beyond that point.
    bool margin_exceeds_support = false;
};

/** Ambiguous-constraint left-hand side minus right-hand side (<= 0 means
 *  feasible). */
double radiotherapy_constraint(const RadiotherapyProblem& p, double x1, double x2);
/** Nominal constraint with rho2 known exactly. */
double radiotherapy_constraint_nominal(const RadiotherapyProblem& p, double rho2,
                                       double x1, double x2);

/** Grid search with step <= 0.05 and two 10x refinement passes around the
 *  incumbent; deterministic lowest-index tie break. */
RadiotherapySolution radiotherapy_solve(const RadiotherapyProblem& p);
RadiotherapySolution radiotherapy_solve_nominal(const RadiotherapyProblem& p,
                                                double rho2);

/** Largest feasible x2 for each x1 on a grid (bisection per column); useful
 *  for plotting the feasible region boundary. */
std::vector<std::pair<double, double>> radiotherapy_boundary(
    const RadiotherapyProblem& p, std::size_t n_points = 200);

}  // namespace madb
