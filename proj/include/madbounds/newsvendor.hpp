#pragma once

#include "madbounds/ambiguity.hpp"
#include "madbounds/tail_bounds.hpp"

namespace madb {

/** Interval of order quantities that are optimal for some distribution in
 *  the mean-MAD set, at critical ratio eta = (p - c)/p.  The set's b may be
 *  +infinity.  Requires 0 < eta < 1. */
Interval order_interval_mad(const AmbiguitySet& set, double eta);

/** Same with beta = P(X >= mu) pinned.  The interval collapses to {mu} at
 *  eta = 1 - beta. */
Interval order_interval_beta(const AmbiguitySet& set, double eta);

/** Scarf's mean-variance order quantity; 0 below the critical ratio
 *  sigma^2/(mu^2 + sigma^2), diverges as eta -> 1. */
double scarf_quantity(double mu, double sigma, double eta);

}  // namespace madb
