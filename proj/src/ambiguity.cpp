#include "madbounds/ambiguity.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace madb {

double AmbiguitySet::d_max() const {
    if (std::isinf(b)) return 2.0 * (mu - a);
    if (b <= a) return 0.0;
    return 2.0 * (mu - a) * (b - mu) / (b - a);
}

ValidationReport validate(const AmbiguitySet& s, double tol) {
    auto fail = [](std::string msg) { return ValidationReport{false, std::move(msg)}; };
    if (std::isnan(s.a) || std::isnan(s.b) || std::isnan(s.mu) || std::isnan(s.d))
        return fail("parameter is NaN");
    if (std::isinf(s.a)) return fail("a must be finite");
    if (!(s.a < s.b)) return fail("a < b");
    if (s.mu < s.a - tol || s.mu > s.b + tol) return fail("a <= mu <= b");
    if (s.d < -tol) return fail("d >= 0");
    if (s.d > s.d_max() + tol) return fail("d <= 2(mu-a)(b-mu)/(b-a)");
    if ((s.mu - s.a <= tol || (!std::isinf(s.b) && s.b - s.mu <= tol)) && s.d > tol)
        return fail("degenerate mean (mu == a or mu == b) requires d == 0");
    if (s.beta) {
        double beta = *s.beta;
        if (std::isnan(beta)) return fail("beta is NaN");
        if (beta < -tol || beta > 1.0 + tol) return fail("0 <= beta <= 1");
        double up = std::isinf(s.b) ? std::numeric_limits<double>::infinity()
                                    : 2.0 * beta * (s.b - s.mu);
        if (s.d > up + tol) return fail("d <= 2 beta (b - mu)");
        if (s.d > 2.0 * (1.0 - beta) * (s.mu - s.a) + tol)
            return fail("d <= 2 (1 - beta) (mu - a)");
    }
    return {};
}

void require_valid(const AmbiguitySet& s, double tol) {
    ValidationReport r = validate(s, tol);
    if (!r.ok) throw std::invalid_argument("infeasible ambiguity set: " + r.violation);
}

std::pair<AmbiguitySet, SampleMoments> estimate_from_samples(
    std::span<const double> values,
    std::optional<std::pair<double, double>> support) {
    if (values.empty()) throw std::invalid_argument("empty sample");
    SampleMoments m;
    m.n = values.size();
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    m.min = *lo;
    m.max = *hi;
    m.mean = std::accumulate(values.begin(), values.end(), 0.0) / double(m.n);
    double abssum = 0.0;
    std::size_t above = 0;
    for (double v : values) {
        abssum += std::abs(v - m.mean);
        if (v >= m.mean) ++above;
    }
    m.mad = abssum / double(m.n);
    m.beta_hat = double(above) / double(m.n);

    AmbiguitySet set;
    if (support) {
        set.a = support->first;
        set.b = support->second;
        if (m.min < set.a || m.max > set.b)
            throw std::invalid_argument("sample leaves the given support");
    } else {
        set.a = m.min;
        set.b = m.max;
    }
    set.mu = m.mean;
    set.d = m.mad;
    set.beta = m.beta_hat;
    // The plug-in MAD can exceed d_max by rounding on tiny samples; clip.
    set.d = std::min(set.d, set.d_max());
    return {set, m};
}

ShiftedSet shift_to_zero(const AmbiguitySet& s) {
    AmbiguitySet out = s;
    out.a = 0.0;
    out.b = s.b - s.a;
    out.mu = s.mu - s.a;
    return {out, s.a};
}

std::vector<double> read_csv_column(std::istream& in) {
    std::vector<double> out;
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        std::string field = line.substr(0, line.find(','));
        // trim whitespace and a possible CR
        auto b = field.find_first_not_of(" \t\r");
        if (b == std::string::npos) {
            if (out.empty()) continue;  // leading blank lines
            throw std::runtime_error("row " + std::to_string(row) + ": empty field");
        }
        auto e = field.find_last_not_of(" \t\r");
        field = field.substr(b, e - b + 1);
        try {
            std::size_t used = 0;
            double v = std::stod(field, &used);
            if (used != field.size()) throw std::invalid_argument(field);
            out.push_back(v);
        } catch (const std::exception&) {
            if (row == 1) continue;  // header line
            throw std::runtime_error("row " + std::to_string(row) +
                                     ": cannot parse '" + field + "'");
        }
    }
    return out;
}

}  // namespace madb
