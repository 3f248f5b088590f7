#pragma once

#include "madbounds/ambiguity.hpp"

namespace madb {

/** Reinsurance layer: pays (S - z)^+ capped at m.  m may be +infinity
 *  (unlimited cover). */
struct Layer {
    double z = 0.0;
    double m = 0.0;
};

/** Tight upper bound on the expected retained loss E[min(S, z)] over the
 *  mean-MAD set.  z below a or above b is handled by the obvious limits. */
double retention_bound(const AmbiguitySet& set, double z);

/** Tight upper bound on the expected layer payout E[min((S - z)^+, m)].
 *  Requires z >= a and m > 0. */
double reinsurer_benefit_bound(const AmbiguitySet& set, const Layer& layer);

}  // namespace madb
