#include "gridloc/refiner.hpp"

#include <algorithm>

namespace gridloc {

Point refine(const CellCorners& corners, const CornerDistances& d) {
    const double x1 = corners.x1;
    const double x2 = corners.x2;
    const double y1 = corners.y1;
    const double y2 = corners.y2;
    if (x1 == x2 || y1 == y2) {
        throw DomainError("degenerate cell: coincident corner coordinates");
    }
    const double d1s = d.d1 * d.d1;
    const double d2s = d.d2 * d.d2;
    const double d3s = d.d3 * d.d3;
    const double d4s = d.d4 * d.d4;
    const double x = 0.5 * (x1 + x2 - ((d1s + d4s) - (d2s + d3s)) / (2.0 * (x1 - x2)));
    const double y = 0.5 * (y1 + y2 - ((d1s + d2s) - (d3s + d4s)) / (2.0 * (y1 - y2)));
    return {x, y};
}

Point refine_from_rssi(const PathLossModel& model, const CellCorners& corners, double rssi_a,
                       double rssi_b, double rssi_c, double rssi_d) {
    CornerDistances d;
    d.d1 = distance_from_rss(model, rssi_a);
    d.d2 = distance_from_rss(model, rssi_b);
    d.d3 = distance_from_rss(model, rssi_c);
    d.d4 = distance_from_rss(model, rssi_d);
    return refine(corners, d);
}

Point clamp_to_cell(Point p, const CellCorners& corners, ClampPolicy policy) {
    if (policy == ClampPolicy::kOff) {
        return p;
    }
    const auto [x_lo, x_hi] = std::minmax(corners.x1, corners.x2);
    const auto [y_lo, y_hi] = std::minmax(corners.y1, corners.y2);
    return {std::clamp(p.x, x_lo, x_hi), std::clamp(p.y, y_lo, y_hi)};
}

}  // namespace gridloc
