#pragma once

#include "gridloc/geometry.hpp"
#include "gridloc/propagation.hpp"

namespace gridloc {

// Ranged distances to the four cell corners, in A,B,C,D order.
struct CornerDistances {
    double d1 = 0.0;  // to A = (x1, y1)
    double d2 = 0.0;  // to B = (x2, y1)
    double d3 = 0.0;  // to C = (x2, y2)
    double d4 = 0.0;  // to D = (x1, y2)
};

enum class ClampPolicy { kOff, kClamp };

// Closed-form in-cell position from the corner distances:
//   x = 1/2 * [x1 + x2 - ((d1^2 + d4^2) - (d2^2 + d3^2)) / (2 (x1 - x2))]
//   y = 1/2 * [y1 + y2 - ((d1^2 + d2^2) - (d3^2 + d4^2)) / (2 (y1 - y2))]
// The result is not clamped to the cell; inconsistent distance sets are
// accepted (only squared-distance differences enter the formula).
// Throws DomainError when x1 == x2 or y1 == y2.
Point refine(const CellCorners& corners, const CornerDistances& d);

// RSSI-domain wrapper: inverts each corner RSSI through the model, then
// applies refine.
Point refine_from_rssi(const PathLossModel& model, const CellCorners& corners, double rssi_a,
                       double rssi_b, double rssi_c, double rssi_d);

// Per-axis projection of p onto the closed cell extent (policy kClamp) or p
// unchanged (policy kOff).
Point clamp_to_cell(Point p, const CellCorners& corners, ClampPolicy policy);

}  // namespace gridloc
