#include "madbounds/lp_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "madbounds/stoploss.hpp"

namespace madb {

namespace {

constexpr double kPivotTol = 1e-13;
constexpr double kReducedCostTol = 1e-9;
constexpr double kRatioTol = 1e-11;
constexpr std::size_t kMaxIter = 50000;

// Inverts an m x m matrix (m <= 4) in place via Gauss-Jordan with partial
// pivoting.  Returns false when a pivot falls below kPivotTol.
bool invert(std::vector<double>& M, std::size_t m) {
    std::vector<double> inv(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) inv[i * m + i] = 1.0;
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < m; ++r)
            if (std::abs(M[r * m + col]) > std::abs(M[piv * m + col])) piv = r;
        if (std::abs(M[piv * m + col]) < kPivotTol) return false;
        if (piv != col) {
            for (std::size_t j = 0; j < m; ++j) {
                std::swap(M[piv * m + j], M[col * m + j]);
                std::swap(inv[piv * m + j], inv[col * m + j]);
            }
        }
        double p = M[col * m + col];
        for (std::size_t j = 0; j < m; ++j) {
            M[col * m + j] /= p;
            inv[col * m + j] /= p;
        }
        for (std::size_t r = 0; r < m; ++r) {
            if (r == col) continue;
            double f = M[r * m + col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < m; ++j) {
                M[r * m + j] -= f * M[col * m + j];
                inv[r * m + j] -= f * inv[col * m + j];
            }
        }
    }
    M = std::move(inv);
    return true;
}

struct Core {
    std::size_t m, n_total;            // n_total includes artificials
    const std::vector<double>* A;      // m x n_real row-major
    std::size_t n_real;
    std::vector<double> rhs;
    std::vector<int> art_sign;         // +-1 per row (artificial column sign)
    std::vector<std::size_t> basis;

    double col(std::size_t row, std::size_t j) const {
        if (j < n_real) return (*A)[row * n_real + j];
        return (j - n_real == row) ? double(art_sign[row]) : 0.0;
    }
};

// Runs Bland-rule simplex iterations for max cost'p with entering columns
// restricted to [0, limit).  Returns Optimal or NumericalBreakdown; fills y
// with the final dual multipliers.  Degenerate bases are tolerated.
LpStatus iterate(Core& core, const std::vector<double>& cost, std::size_t limit,
                 std::vector<double>& y, std::vector<double>& xB,
                 std::size_t& iter_count) {
    const std::size_t m = core.m;
    std::vector<double> B(m * m), u(m);
    for (std::size_t iter = 0; iter < kMaxIter; ++iter) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t r = 0; r < m; ++r)
                B[r * m + i] = core.col(r, core.basis[i]);
        if (!invert(B, m)) return LpStatus::NumericalBreakdown;
        // B now holds B^{-1}
        for (std::size_t i = 0; i < m; ++i) {
            xB[i] = 0.0;
            for (std::size_t r = 0; r < m; ++r) xB[i] += B[i * m + r] * core.rhs[r];
        }
        for (std::size_t r = 0; r < m; ++r) {
            y[r] = 0.0;
            for (std::size_t i = 0; i < m; ++i)
                y[r] += cost[core.basis[i]] * B[i * m + r];
        }
        std::size_t enter = limit;
        for (std::size_t j = 0; j < limit; ++j) {
            if (std::find(core.basis.begin(), core.basis.end(), j) != core.basis.end())
                continue;
            double rc = cost[j];
            for (std::size_t r = 0; r < m; ++r) rc -= y[r] * core.col(r, j);
            if (rc > kReducedCostTol) {
                enter = j;
                break;  // Bland: smallest improving index
            }
        }
        if (enter == limit) {
            iter_count += iter;
            return LpStatus::Optimal;
        }
        for (std::size_t i = 0; i < m; ++i) {
            u[i] = 0.0;
            for (std::size_t r = 0; r < m; ++r)
                u[i] += B[i * m + r] * core.col(r, enter);
        }
        std::size_t leave = m;
        double best = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            // Roundoff in u[i] scales with |B^-1| * |a_enter|; an entry that
            // small is cancellation noise, not a usable pivot.
            double scale = 0.0;
            for (std::size_t r = 0; r < m; ++r)
                scale += std::abs(B[i * m + r]) * std::abs(core.col(r, enter));
            if (u[i] <= std::max(kRatioTol, 1e-12 * scale)) continue;
            double ratio = std::max(xB[i], 0.0) / u[i];
            if (leave == m || ratio < best - 1e-15 ||
                (ratio < best + 1e-15 && core.basis[i] < core.basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) return LpStatus::NumericalBreakdown;  // unbounded
        core.basis[leave] = enter;
    }
    return LpStatus::NumericalBreakdown;  // iteration cap
}

}  // namespace

SimplexResult simplex_solve(const DenseLp& lp) {
    SimplexResult res;
    const std::size_t m = lp.rows, n = lp.cols;
    if (lp.A.size() != m * n || lp.rhs.size() != m || lp.c.size() != n)
        throw std::invalid_argument("inconsistent LP dimensions");

    Core core;
    core.m = m;
    core.n_real = n;
    core.n_total = n + m;
    core.A = &lp.A;
    core.rhs = lp.rhs;
    core.art_sign.assign(m, 1);
    for (std::size_t r = 0; r < m; ++r)
        if (core.rhs[r] < 0.0) core.art_sign[r] = -1;

    core.basis.resize(m);
    for (std::size_t r = 0; r < m; ++r) core.basis[r] = n + r;

    std::vector<double> y(m), xB(m);

    // Phase 1: drive the artificial mass to zero.
    std::vector<double> cost1(core.n_total, 0.0);
    for (std::size_t r = 0; r < m; ++r) cost1[n + r] = -1.0;
    res.status = iterate(core, cost1, core.n_total, y, xB, res.iterations);
    if (res.status != LpStatus::Optimal) return res;
    double art = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        if (core.basis[i] >= n) art += std::abs(xB[i]);
    if (art > 1e-9) {
        res.status = LpStatus::Infeasible;
        return res;
    }

    // Phase 2 with artificials barred from entering.
    std::vector<double> cost2(core.n_total, 0.0);
    double sign = lp.maximize ? 1.0 : -1.0;
    for (std::size_t j = 0; j < n; ++j) cost2[j] = sign * lp.c[j];
    res.status = iterate(core, cost2, n, y, xB, res.iterations);
    if (res.status != LpStatus::Optimal) return res;

    res.x.assign(n, 0.0);
    double obj = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (core.basis[i] < n) {
            double v = std::max(xB[i], 0.0);
            res.x[core.basis[i]] = v;
            obj += lp.c[core.basis[i]] * v;
        }
    }
    res.objective = obj;
    res.dual.assign(m, 0.0);
    for (std::size_t r = 0; r < m; ++r) res.dual[r] = sign * y[r];
    return res;
}

LpCertificate solve_moment_lp(const MomentLp& p) {
    if (p.grid.empty()) throw std::invalid_argument("empty grid");
    const std::size_t n = p.grid.size();
    const std::size_t m = p.beta ? 4 : 3;

    DenseLp lp;
    lp.rows = m;
    lp.cols = n;
    lp.maximize = p.maximize;
    lp.A.resize(m * n);
    lp.c.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        double x = p.grid[j];
        lp.A[0 * n + j] = 1.0;
        lp.A[1 * n + j] = x;
        lp.A[2 * n + j] = std::abs(x - p.mean);
        if (m == 4) lp.A[3 * n + j] = (x >= p.beta_threshold) ? 1.0 : 0.0;
        lp.c[j] = p.objective(x);
    }
    lp.rhs = {1.0, p.mean, p.mad};
    if (m == 4) lp.rhs.push_back(*p.beta);

    SimplexResult r = simplex_solve(lp);
    LpCertificate cert;
    cert.status = r.status;
    cert.has_beta_row = (m == 4);
    cert.iterations = r.iterations;
    if (r.status != LpStatus::Optimal) return cert;
    cert.optimal_value = r.objective;
    for (std::size_t j = 0; j < n; ++j)
        if (r.x[j] > 1e-12) cert.primal.atoms.push_back({p.grid[j], r.x[j]});
    for (std::size_t i = 0; i < m; ++i) cert.dual[i] = r.dual[i];
    double dual_obj = 0.0;
    for (std::size_t i = 0; i < m; ++i) dual_obj += r.dual[i] * lp.rhs[i];
    cert.duality_gap = std::abs(dual_obj - r.objective);
    return cert;
}

std::vector<double> make_grid(const AmbiguitySet& set,
                              std::initializer_list<double> breakpoints,
                              std::size_t n_uniform) {
    std::vector<double> g;
    g.reserve(n_uniform + 8);
    for (std::size_t i = 0; i < n_uniform; ++i)
        g.push_back(set.a + (set.b - set.a) * double(i) / double(n_uniform - 1));
    g.push_back(set.a);
    g.push_back(set.b);
    g.push_back(set.mu);
    Knots k = tail_knots(set);
    g.push_back(k.tau1);
    g.push_back(k.tau2);
    for (double x : breakpoints)
        if (x >= set.a && x <= set.b) g.push_back(x);
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

const char* theorem_name(TheoremId id) {
    switch (id) {
        case TheoremId::SupTail: return "sup-tail";
        case TheoremId::InfTail: return "inf-tail";
        case TheoremId::SupTailBeta: return "sup-tail-beta";
        case TheoremId::InfTailBeta: return "inf-tail-beta";
        case TheoremId::Retention: return "retention";
        case TheoremId::ReinsurerBenefit: return "reinsurer-benefit";
    }
    return "?";
}

VerifyReport verify_bound(const AmbiguitySet& set, TheoremId theorem,
                          const VerifyParams& params, std::size_t grid_size) {
    require_valid(set);
    VerifyReport rep;
    rep.theorem = theorem;
    double t = params.t;

    MomentLp p;
    p.mean = set.mu;
    p.mad = set.d;
    switch (theorem) {
        case TheoremId::SupTail:
            p.grid = make_grid(set, {t}, grid_size);
            p.objective = [t](double x) { return x >= t ? 1.0 : 0.0; };
            p.maximize = true;
            rep.closed_form = sup_tail(set, t).value;
            break;
        case TheoremId::InfTail:
            p.grid = make_grid(set, {t}, grid_size);
            p.objective = [t](double x) { return x > t ? 1.0 : 0.0; };
            p.maximize = false;
            rep.closed_form = inf_tail(set, t).value;
            break;
        case TheoremId::SupTailBeta:
        case TheoremId::InfTailBeta: {
            Knots kb = tail_knots_beta(set);
            // Extremal members may park mass just below the mean, where the
            // indicator row still reads zero.
            double mu_minus = set.mu - 1e-9 * (set.b - set.a);
            p.grid = make_grid(set, {t, kb.tau1, kb.tau2, mu_minus}, grid_size);
            p.beta = set.beta;
            p.beta_threshold = set.mu;
            if (theorem == TheoremId::SupTailBeta) {
                p.objective = [t](double x) { return x >= t ? 1.0 : 0.0; };
                p.maximize = true;
                rep.closed_form = sup_tail_beta(set, t).value;
            } else {
                p.objective = [t](double x) { return x > t ? 1.0 : 0.0; };
                p.maximize = false;
                rep.closed_form = inf_tail_beta(set, t).value;
            }
            break;
        }
        case TheoremId::Retention:
            p.grid = make_grid(set, {t}, grid_size);
            p.objective = [t](double x) { return std::min(x, t); };
            p.maximize = true;
            rep.closed_form = retention_bound(set, t);
            break;
        case TheoremId::ReinsurerBenefit: {
            double m = params.m;
            p.grid = make_grid(set, {t, t + m}, grid_size);
            p.objective = [t, m](double x) {
                return std::clamp(x - t, 0.0, m);
            };
            p.maximize = true;
            rep.closed_form = reinsurer_benefit_bound(set, {t, m});
            break;
        }
    }

    LpCertificate cert = solve_moment_lp(p);
    rep.status = cert.status;
    if (cert.status == LpStatus::Optimal) {
        rep.lp_value = cert.optimal_value;
        rep.gap = std::abs(rep.lp_value - rep.closed_form);
    }
    return rep;
}

}  // namespace madb
