#pragma once

#include <random>

#include "madbounds/ambiguity.hpp"

namespace madb::testing {

/** Draws a strictly feasible mean-MAD set: a in [-2, 2], width in [0.5, 4],
 *  mu away from the endpoints, d well inside (0, d_max). */
inline AmbiguitySet random_set(std::mt19937_64& rng, bool with_beta = false) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    AmbiguitySet s;
    s.a = -2.0 + 4.0 * unif(rng);
    double width = 0.5 + 3.5 * unif(rng);
    s.b = s.a + width;
    s.mu = s.a + width * (0.1 + 0.8 * unif(rng));
    s.d = (0.05 + 0.9 * unif(rng)) * s.d_max();
    if (with_beta) {
        // beta range implied by d <= 2 beta (b - mu) and d <= 2(1-beta)(mu - a)
        double lo = s.d / (2.0 * (s.b - s.mu));
        double hi = 1.0 - s.d / (2.0 * (s.mu - s.a));
        s.beta = lo + (hi - lo) * (0.05 + 0.9 * unif(rng));
    }
    return s;
}

inline double random_t(std::mt19937_64& rng, const AmbiguitySet& s) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    return s.a + (s.b - s.a) * unif(rng);
}

}  // namespace madb::testing
