#include "madbounds/curve.hpp"

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace madb {

const char* bound_kind_name(BoundKind kind) {
    switch (kind) {
        case BoundKind::SupTail: return "sup";
        case BoundKind::InfTail: return "inf";
        case BoundKind::SupTailBeta: return "sup-beta";
        case BoundKind::InfTailBeta: return "inf-beta";
        case BoundKind::Cantelli: return "cantelli";
        case BoundKind::DeSchepperSup: return "deschepper-sup";
        case BoundKind::DeSchepperInf: return "deschepper-inf";
        case BoundKind::IneqMadSup: return "ineq-mad";
    }
    return "?";
}

double eval_bound(BoundKind kind, const AmbiguitySet& set, double sigma, double t) {
    switch (kind) {
        case BoundKind::SupTail: return sup_tail(set, t).value;
        case BoundKind::InfTail: return inf_tail(set, t).value;
        case BoundKind::SupTailBeta: return sup_tail_beta(set, t).value;
        case BoundKind::InfTailBeta: return inf_tail_beta(set, t).value;
        case BoundKind::Cantelli: return cantelli(sigma, set.mu, t);
        case BoundKind::DeSchepperSup: return de_schepper_sup(set.mu, set.b, sigma, t);
        case BoundKind::DeSchepperInf: return de_schepper_inf(set.mu, set.b, sigma, t);
        case BoundKind::IneqMadSup: return sup_tail_ineq_mad(set, t);
    }
    throw std::invalid_argument("unknown bound kind");
}

BoundCurve make_curve(BoundKind kind, const AmbiguitySet& set,
                      const std::vector<double>& grid, double sigma) {
    BoundCurve c{kind, set, sigma, grid, std::vector<double>(grid.size())};
    const std::int64_t n = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i)
        c.value[std::size_t(i)] = eval_bound(kind, set, sigma, grid[std::size_t(i)]);
    return c;
}

BoundCurve make_curve_serial(BoundKind kind, const AmbiguitySet& set,
                             const std::vector<double>& grid, double sigma) {
    BoundCurve c{kind, set, sigma, grid, std::vector<double>(grid.size())};
    for (std::size_t i = 0; i < grid.size(); ++i)
        c.value[i] = eval_bound(kind, set, sigma, grid[i]);
    return c;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return {lo};
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = lo + (hi - lo) * double(i) / double(n - 1);
    g.back() = hi;
    return g;
}

namespace {
std::string fmt(double v, int digits) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}
}  // namespace

void write_dat(std::ostream& out, const BoundCurve& c) {
    for (std::size_t i = 0; i < c.t.size(); ++i)
        out << fmt(c.t[i], 6) << ' ' << fmt(c.value[i], 6) << '\n';
}

void write_csv(std::ostream& out, const BoundCurve& c) {
    out << "t," << bound_kind_name(c.kind) << '\n';
    for (std::size_t i = 0; i < c.t.size(); ++i)
        out << fmt(c.t[i], 17) << ',' << fmt(c.value[i], 17) << '\n';
}

void write_json(std::ostream& out, const BoundCurve& c) {
    nlohmann::json j;
    j["kind"] = bound_kind_name(c.kind);
    j["set"] = {{"a", c.set.a}, {"b", c.set.b}, {"mu", c.set.mu}, {"d", c.set.d}};
    if (c.set.beta) j["set"]["beta"] = *c.set.beta;
    if (c.kind == BoundKind::Cantelli || c.kind == BoundKind::DeSchepperSup ||
        c.kind == BoundKind::DeSchepperInf)
        j["sigma"] = c.sigma;
    j["t"] = c.t;
    j["value"] = c.value;
    out << j.dump(2) << '\n';
}

}  // namespace madb
