#include "madbounds/newsvendor.hpp"

#include <cmath>
#include <stdexcept>

namespace madb {

namespace {

void check_eta(double eta) {
    if (!(eta > 0.0 && eta < 1.0))
        throw std::domain_error("critical ratio eta must lie in (0, 1)");
}

}  // namespace

Interval order_interval_mad(const AmbiguitySet& set, double eta) {
    require_valid(set);
    check_eta(eta);
    auto [s, a] = shift_to_zero(set);
    double mu = s.mu, b = s.b, d = s.d;
    Interval q;
    if (d > 0.0 && eta < d / (2.0 * mu)) {
        q.lo = 0.0;
        q.hi = std::isinf(b)
                   ? (mu - d / 2.0) / (1.0 - eta)
                   : (2.0 * mu * (b - mu) - b * d) /
                         (2.0 * (b - mu) * (1.0 - eta) - d);
    } else if (std::isinf(b) || eta < 1.0 - d / (2.0 * (b - mu)) || d == 0.0) {
        q.lo = mu - d / (2.0 * eta);
        q.hi = mu + d / (2.0 * (1.0 - eta));
    } else {
        q.lo = (mu - b * (1.0 - eta)) / (eta - d / (2.0 * mu));
        q.hi = b;
    }
    return {q.lo + a, q.hi + a};
}

Interval order_interval_beta(const AmbiguitySet& set, double eta) {
    require_valid(set);
    check_eta(eta);
    if (!set.beta) throw std::invalid_argument("set has no beta");
    double beta = *set.beta;
    auto [s, a] = shift_to_zero(set);
    double mu = s.mu, b = s.b, d = s.d;
    Interval q;
    if (d > 0.0 && eta < d / (2.0 * mu)) {
        q.lo = 0.0;
        q.hi = ((1.0 - beta) * mu - d / 2.0) / (1.0 - eta - beta);
    } else if (eta < 1.0 - beta) {
        q.lo = mu - d / (2.0 * eta);
        q.hi = mu;
    } else if (eta == 1.0 - beta) {
        q.lo = q.hi = mu;
    } else if (std::isinf(b) || eta < 1.0 - d / (2.0 * (b - mu))) {
        q.lo = mu;
        q.hi = mu + d / (2.0 * (1.0 - eta));
    } else {
        q.lo = (b * (1.0 - eta) - beta * mu - d / 2.0) / (1.0 - eta - beta);
        q.hi = b;
    }
    return {q.lo + a, q.hi + a};
}

double scarf_quantity(double mu, double sigma, double eta) {
    check_eta(eta);
    if (sigma < 0.0 || mu < 0.0) throw std::domain_error("need mu, sigma >= 0");
    if (eta <= sigma * sigma / (mu * mu + sigma * sigma)) return 0.0;
    return mu + 0.5 * sigma * (std::sqrt(eta / (1.0 - eta)) -
                               std::sqrt((1.0 - eta) / eta));
}

}  // namespace madb
