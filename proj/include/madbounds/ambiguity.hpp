#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace madb {

// Default absolute slack used by feasibility checks.
inline constexpr double kFeasTol = 1e-12;

/** Mean-MAD ambiguity set on [a, b]: all distributions with the given mean
 *  and mean absolute deviation.  When beta is set, P(X >= mu) = beta is
 *  additionally pinned.  b may be +infinity (used by the order-quantity
 *  bounds); a must be finite. */
struct AmbiguitySet {
    double a = 0.0;
    double b = 1.0;
    double mu = 0.5;
    double d = 0.0;
    std::optional<double> beta{};

    double width() const { return b - a; }
    bool has_beta() const { return beta.has_value(); }

    /** Largest feasible MAD: 2(mu-a)(b-mu)/(b-a), limit 2(mu-a) for b=inf. */
    double d_max() const;
};

struct ValidationReport {
    bool ok = true;
    std::string violation;  // first violated invariant, empty when ok
};

/** Checks, in order: a < b, a <= mu <= b, d >= 0, d <= d_max,
 *  degenerate mu == a or mu == b forces d == 0, and when beta is present
 *  beta in [0,1], d <= 2*beta*(b-mu), d <= 2*(1-beta)*(mu-a).
 *  All comparisons use absolute slack tol. */
ValidationReport validate(const AmbiguitySet& set, double tol = kFeasTol);

/** Throws std::invalid_argument naming the violated invariant. */
void require_valid(const AmbiguitySet& set, double tol = kFeasTol);

struct SampleMoments {
    std::size_t n = 0;
    double mean = 0;
    double mad = 0;      // mean absolute deviation about the sample mean
    double beta_hat = 0; // fraction of samples >= sample mean
    double min = 0;
    double max = 0;
};

/** Plug-in estimate of an ambiguity set from data.  Support defaults to
 *  [min, max] of the sample unless overridden.  Throws std::invalid_argument
 *  on an empty sample or a sample leaving the overridden support. */
std::pair<AmbiguitySet, SampleMoments> estimate_from_samples(
    std::span<const double> values,
    std::optional<std::pair<double, double>> support = {});

struct ShiftedSet {
    AmbiguitySet set;  // same set translated so a == 0
    double offset;     // original lower endpoint; add back to x-coordinates
};

ShiftedSet shift_to_zero(const AmbiguitySet& set);

/** Reads one numeric value per line (first comma-separated field if the line
 *  has several; a non-numeric first line is treated as a header).  Throws
 *  std::runtime_error naming the 1-based row on a parse failure. */
std::vector<double> read_csv_column(std::istream& in);

}  // namespace madb
