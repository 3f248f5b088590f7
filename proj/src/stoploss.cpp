#include "madbounds/stoploss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "madbounds/tail_bounds.hpp"

namespace madb {

double retention_bound(const AmbiguitySet& set, double z) {
    require_valid(set);
    if (z <= set.a) return z;
    if (z >= set.b) return set.mu;
    auto [s, a] = shift_to_zero(set);
    double zs = z - a;
    double mu = s.mu, b = s.b, d = s.d;
    if (d == 0.0) return a + std::min(zs, mu);
    Knots k = tail_knots(s);
    double v;
    if (zs <= k.tau1)
        v = zs;
    else if (zs <= mu)
        v = mu - d * (b - zs) / (2.0 * (b - mu));
    else if (zs <= k.tau2)
        v = zs * (1.0 - d / (2.0 * mu));
    else
        v = mu;
    return a + v;
}

double reinsurer_benefit_bound(const AmbiguitySet& set, const Layer& layer) {
    require_valid(set);
    if (!(layer.m > 0.0)) throw std::domain_error("layer width m must be positive");
    if (layer.z < set.a || layer.z > set.b)
        throw std::domain_error("attachment z must lie in [a, b]");
    auto [s, a] = shift_to_zero(set);
    double zs = layer.z - a;
    double m = layer.m;
    double mu = s.mu, b = s.b, d = s.d;
    if (d == 0.0) return std::clamp(mu - zs, 0.0, m);
    if (std::isinf(m) || zs + m > b) {
        // Cap never binds within the support.
        if (zs <= mu) return mu - zs + zs * d / (2.0 * mu);
        return d * (b - zs) / (2.0 * (b - mu));
    }
    if (zs + m <= mu)
        return std::min(m, (m / (m + zs)) *
                               (mu - d * (b - (m + zs)) / (2.0 * (b - mu))));
    if (zs <= mu)
        return std::min(m * (1.0 - d / (2.0 * mu)),
                        mu - zs + zs * d / (2.0 * mu));
    return std::min(m * (1.0 - d / (2.0 * mu)),
                    d * m / (2.0 * (m + zs - mu)));
}

}  // namespace madb
