#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "madbounds/tail_bounds.hpp"

namespace madb {

enum class BoundKind {
    SupTail,
    InfTail,
    SupTailBeta,
    InfTailBeta,
    Cantelli,        // needs sigma
    DeSchepperSup,   // needs sigma, a == 0
    DeSchepperInf,
    IneqMadSup,
};

const char* bound_kind_name(BoundKind kind);

struct BoundCurve {
    BoundKind kind;
    AmbiguitySet set;
    double sigma = 0.0;  // only used by the variance-based kinds
    std::vector<double> t;
    std::vector<double> value;
};

double eval_bound(BoundKind kind, const AmbiguitySet& set, double sigma, double t);

/** Evaluates the bound on the grid.  The OpenMP path fills a preallocated
 *  vector in index order, so parallel and serial results are bitwise equal. */
BoundCurve make_curve(BoundKind kind, const AmbiguitySet& set,
                      const std::vector<double>& grid, double sigma = 0.0);
BoundCurve make_curve_serial(BoundKind kind, const AmbiguitySet& set,
                             const std::vector<double>& grid, double sigma = 0.0);

std::vector<double> linspace(double lo, double hi, std::size_t n);

/** Two space-separated columns, no header, 6 significant digits. */
void write_dat(std::ostream& out, const BoundCurve& curve);
/** Header "t,<kind>", 17 significant digits. */
void write_csv(std::ostream& out, const BoundCurve& curve);
void write_json(std::ostream& out, const BoundCurve& curve);

}  // namespace madb
