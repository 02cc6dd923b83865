#include "gridloc/propagation.hpp"

#include <cmath>

namespace gridloc {

void PathLossModel::validate() const {
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw ValidationError("path loss exponent n must be finite and > 0");
    }
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw ValidationError("sigma must be finite and >= 0");
    }
    if (!std::isfinite(a_ref)) {
        throw ValidationError("a_ref must be finite");
    }
    if (d0 != 1.0) {
        throw ValidationError("reference distance d0 is fixed to 1 meter");
    }
}

double rss_at_distance(const PathLossModel& model, double d) {
    if (!(d > 0.0) || !std::isfinite(d)) {
        throw DomainError("distance must be finite and > 0");
    }
    return model.a_ref - 10.0 * model.n * std::log10(d);
}

double rss_at_distance_noisy(const PathLossModel& model, double d, Rng& rng) {
    const double rss = rss_at_distance(model, d);
    if (model.sigma == 0.0) {
        return rss;
    }
    return rss + model.sigma * rng.next_gaussian();
}

double distance_from_rss(const PathLossModel& model, double rss) {
    return std::pow(10.0, (model.a_ref - rss) / (10.0 * model.n));
}

double rss_from_register(const RegisterReading& reading) {
    return static_cast<double>(reading.rssi_val) + reading.offset;
}

}  // namespace gridloc
