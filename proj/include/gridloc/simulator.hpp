#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "gridloc/geometry.hpp"
#include "gridloc/propagation.hpp"
#include "gridloc/resolver.hpp"

namespace gridloc {

// Serpentine-free row-major lattice sweep over the margin-inset region.
struct SweepMotion {
    int nx = 1;
    int ny = 1;
    double margin = 0.0;
};

// Constant-speed piecewise-linear path, sampled once per window.
struct WaypointMotion {
    std::vector<Point> points;
    double speed_mps = 1.0;
};

using Motion = std::variant<SweepMotion, WaypointMotion>;

struct Scenario {
    Deployment deployment;
    PathLossModel model;
    std::uint64_t seed = 0;
    Motion motion;
    double window_seconds = 0.2;
    int samples_per_window = 1;

    void validate() const;
};

struct TruthPoint {
    std::int64_t window_id = 0;
    Point position;
};

using TruthTrace = std::vector<TruthPoint>;

struct SimulationResult {
    TruthTrace truth;
    std::vector<RssiWindow> windows;
};

// Distance floor applied when the blind node sits on top of an anchor (the
// path loss model diverges as d -> 0).
inline constexpr double kMinAnchorDistance = 0.01;

// Row-major nx x ny lattice over the region inset by `margin` on every side.
// Throws ValidationError for margins that leave no lattice.
std::vector<Point> sweep_points(const Region& region, int nx, int ny, double margin);

// Positions along the waypoint path at t = 0, w, 2w, ... including the final
// path endpoint when the duration divides evenly.
TruthTrace waypoint_positions(const std::vector<Point>& waypoints, double speed_mps,
                              double window_seconds);

// Deterministic scenario run: every anchor hears every window (ideal
// connectivity); per-(window, anchor) noise comes from an independent
// sub-stream of the scenario seed, so anchor order never changes a value.
SimulationResult run(const Scenario& scenario);

}  // namespace gridloc
