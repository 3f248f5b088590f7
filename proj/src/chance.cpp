#include "madbounds/chance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>

namespace madb {

double reform_rhs(double d, double eps) {
    if (!(eps > 0.0 && eps < 0.5)) throw std::domain_error("eps must lie in (0, 1/2)");
    if (d < 0.0 || d > 1.0) throw std::domain_error("d must lie in [0, 1]");
    return std::min(1.0, d / (2.0 * eps));
}

double reform_rhs_asym(double u, double d, double eps) {
    if (!(u > 0.0)) throw std::domain_error("u must be positive");
    if (!(eps > 0.0 && eps < 1.0 / (1.0 + u)))
        throw std::domain_error("eps must lie in (0, 1/(1+u))");
    if (d < 0.0 || d > 2.0 * u / (1.0 + u) + 1e-12)
        throw std::domain_error("d must lie in [0, 2u/(1+u)]");
    return std::min(u, d / (2.0 * eps));
}

std::pair<double, double> BilinearReform::rows(std::span<const double> x) const {
    double bar = 0.0, hat = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        bar += a_bar[i] * x[i];
        hat += a_hat[i] * x[i];
    }
    return {bar + kappa * hat, bar - kappa * hat};
}

bool BilinearReform::feasible(std::span<const double> x) const {
    auto [up, dn] = rows(x);
    return up <= h && dn <= h;
}

BilinearReform reform_bilinear(std::vector<double> a_bar,
                               std::vector<double> a_hat, double h, double d,
                               double eps) {
    if (a_bar.size() != a_hat.size())
        throw std::invalid_argument("coefficient size mismatch");
    BilinearReform r;
    r.kappa = reform_rhs(d, eps);
    r.a_bar = std::move(a_bar);
    r.a_hat = std::move(a_hat);
    r.h = h;
    return r;
}

bool reform_joint_indep(std::span<const double> g, std::span<const double> d,
                        double eps) {
    if (g.size() != d.size()) throw std::invalid_argument("size mismatch");
    if (!(eps > 0.0 && eps < 0.5)) throw std::domain_error("eps must lie in (0, 1/2)");
    double logsum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (d[i] < 0.0 || d[i] > 1.0) throw std::domain_error("d must lie in [0, 1]");
        if (d[i] / (2.0 * eps) > 1.0) {
            if (!(g[i] + 1.0 <= 0.0)) return false;
        } else {
            if (!(g[i] < 0.0)) return false;
            double arg = 1.0 - d[i] / (-2.0 * g[i]);
            if (!(arg > 0.0)) return false;
            logsum += std::log(arg);
        }
    }
    return logsum >= std::log1p(-eps);
}

bool reform_joint_shared(std::span<const double> g, double d, double eps) {
    if (g.empty()) throw std::invalid_argument("no constraints");
    double gmax = *std::max_element(g.begin(), g.end());
    return gmax + reform_rhs(d, eps) <= 0.0;
}

double radiotherapy_constraint(const RadiotherapyProblem& p, double x1, double x2) {
    const AmbiguitySet& r = p.rho2;
    require_valid(r);
    double lo_frac = (r.mu - r.a) / (r.b - r.a);
    if (!(p.eps > 0.0 && p.eps < lo_frac))
        throw std::domain_error("eps must lie in (0, (mu-a)/(b-a))");
    double s = p.sigma * (x1 + x2);
    double q = p.sigma * p.sigma * (x1 * x1 + x2 * x2);
    double phiD = p.phi * p.D;
    double lhs = r.mu * s + q + r.d / (2.0 * p.eps) * std::abs(s - phiD);
    double rhs = r.mu * phiD + phiD * phiD / p.T;
    return lhs - rhs;
}

double radiotherapy_constraint_nominal(const RadiotherapyProblem& p, double rho2,
                                       double x1, double x2) {
    double s = p.sigma * (x1 + x2);
    double q = p.sigma * p.sigma * (x1 * x1 + x2 * x2);
    double phiD = p.phi * p.D;
    double tol = phiD * (1.0 + phiD / (p.T * rho2));
    return s + q / rho2 - tol;
}

namespace {

using Constraint = std::function<double(double, double)>;

double tumor_bed(const RadiotherapyProblem& p, double x1, double x2) {
    return x1 + x2 + (x1 * x1 + x2 * x2) / p.rho1;
}

// Largest x with f(...) <= 0 along a ray, by bisection.
double feasible_reach(const Constraint& f, double x_min, bool diagonal) {
    auto probe = [&](double x) {
        return diagonal ? f(x, x) : f(x, x_min);
    };
    if (probe(x_min) > 0.0) return x_min;
    double lo = x_min, hi = x_min + 1.0;
    while (probe(hi) <= 0.0 && hi < 1e6) hi = x_min + (hi - x_min) * 2.0;
    for (int i = 0; i < 100; ++i) {
        double mid = 0.5 * (lo + hi);
        (probe(mid) <= 0.0 ? lo : hi) = mid;
    }
    return lo;
}

struct GridBest {
    double obj = -std::numeric_limits<double>::infinity();
    double x1 = 0.0, x2 = 0.0;
    bool found = false;
};

// Best feasible x2 for a fixed column.  The objective grows strictly in x2
// (1 + 2 x2 / rho1 > 0) and the constraint is convex in x2, so the column
// optimum is the largest feasible x2, located by bisection.
GridBest column_best(const RadiotherapyProblem& p, const Constraint& f,
                     double x1, double x2_cap) {
    GridBest best;
    if (f(x1, p.x_min) > 0.0) return best;
    double lo = p.x_min, hi = x2_cap;
    if (f(x1, hi) <= 0.0) {
        lo = hi;
    } else {
        for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (lo + hi);
            (f(x1, mid) <= 0.0 ? lo : hi) = mid;
        }
    }
    return {tumor_bed(p, x1, lo), x1, lo, true};
}

GridBest grid_pass(const RadiotherapyProblem& p, const Constraint& f, double lo1,
                   double hi1, double step, double x2_cap) {
    const std::size_t n1 =
        std::size_t(std::floor((hi1 - lo1) / step + 1e-9)) + 1;
    std::vector<GridBest> col_best(n1);
    const std::int64_t n1s = static_cast<std::int64_t>(n1);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n1s; ++i)
        col_best[std::size_t(i)] = column_best(p, f, lo1 + double(i) * step, x2_cap);
    GridBest best;
    for (const GridBest& cb : col_best) {
        if (!cb.found) continue;
        if (!best.found || cb.obj > best.obj) best = cb;  // lowest column wins ties
    }
    return best;
}

RadiotherapySolution solve_impl(const RadiotherapyProblem& p, const Constraint& f) {
    double reach = std::max(feasible_reach(f, p.x_min, true),
                            feasible_reach(f, p.x_min, false)) +
                   0.1;
    double step = 0.05;
    GridBest best = grid_pass(p, f, p.x_min, reach, step, reach + 1.0);
    if (!best.found) throw std::runtime_error("no feasible dose found");
    for (int pass = 0; pass < 2; ++pass) {
        double window = 10.0 * step;
        step /= 10.0;
        GridBest refined =
            grid_pass(p, f, std::max(p.x_min, best.x1 - window),
                      best.x1 + window, step, reach + 1.0);
        if (refined.found && refined.obj > best.obj) best = refined;
    }
    RadiotherapySolution sol;
    sol.x1 = best.x1;
    sol.x2 = best.x2;
    sol.objective = best.obj;
    sol.constraint_slack = -f(best.x1, best.x2);
    return sol;
}

}  // namespace

RadiotherapySolution radiotherapy_solve(const RadiotherapyProblem& p) {
    RadiotherapySolution sol = solve_impl(p, [&p](double x1, double x2) {
        return radiotherapy_constraint(p, x1, x2);
    });
    sol.margin_exceeds_support =
        p.rho2.d / (2.0 * p.eps) > p.rho2.b - p.rho2.mu;
    return sol;
}

RadiotherapySolution radiotherapy_solve_nominal(const RadiotherapyProblem& p,
                                                double rho2) {
    return solve_impl(p, [&p, rho2](double x1, double x2) {
        return radiotherapy_constraint_nominal(p, rho2, x1, x2);
    });
}

std::vector<std::pair<double, double>> radiotherapy_boundary(
    const RadiotherapyProblem& p, std::size_t n_points) {
    Constraint f = [&p](double x1, double x2) {
        return radiotherapy_constraint(p, x1, x2);
    };
    double reach = std::max(feasible_reach(f, p.x_min, true),
                            feasible_reach(f, p.x_min, false)) +
                   0.1;
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < n_points; ++i) {
        double x1 = p.x_min + (reach - p.x_min) * double(i) / double(n_points - 1);
        if (f(x1, p.x_min) > 0.0) continue;
        double lo = p.x_min, hi = reach + 1.0;
        if (f(x1, hi) <= 0.0) {
            out.emplace_back(x1, hi);
            continue;
        }
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            (f(x1, mid) <= 0.0 ? lo : hi) = mid;
        }
        out.emplace_back(x1, lo);
    }
    return out;
}

}  // namespace madb
