#include "gridloc/simulator.hpp"

#include <cmath>

#include "gridloc/rng.hpp"

namespace gridloc {

void Scenario::validate() const {
    model.validate();
    if (samples_per_window < 1) {
        throw ValidationError("samples_per_window must be >= 1");
    }
    if (!(window_seconds > 0.0)) {
        throw ValidationError("window_seconds must be > 0");
    }
    if (const auto* sweep = std::get_if<SweepMotion>(&motion)) {
        if (sweep->nx < 1 || sweep->ny < 1) {
            throw ValidationError("sweep counts must be >= 1");
        }
        if (sweep->margin < 0.0) {
            throw ValidationError("sweep margin must be >= 0");
        }
    } else {
        const auto& wp = std::get<WaypointMotion>(motion);
        if (wp.points.size() < 2) {
            throw ValidationError("waypoint motion needs at least two waypoints");
        }
        if (!(wp.speed_mps > 0.0)) {
            throw ValidationError("waypoint speed must be > 0");
        }
    }
}

std::vector<Point> sweep_points(const Region& region, int nx, int ny, double margin) {
    if (nx < 1 || ny < 1) {
        throw ValidationError("sweep counts must be >= 1");
    }
    const double x_lo = region.min.x + margin;
    const double x_hi = region.max.x - margin;
    const double y_lo = region.min.y + margin;
    const double y_hi = region.max.y - margin;
    if (x_lo > x_hi || y_lo > y_hi) {
        throw ValidationError("sweep margin leaves an empty lattice");
    }
    std::vector<Point> points;
    points.reserve(static_cast<std::size_t>(nx) * ny);
    for (int iy = 0; iy < ny; ++iy) {
        const double y =
            ny == 1 ? 0.5 * (y_lo + y_hi) : y_lo + iy * (y_hi - y_lo) / (ny - 1);
        for (int ix = 0; ix < nx; ++ix) {
            const double x =
                nx == 1 ? 0.5 * (x_lo + x_hi) : x_lo + ix * (x_hi - x_lo) / (nx - 1);
            points.push_back({x, y});
        }
    }
    return points;
}

TruthTrace waypoint_positions(const std::vector<Point>& waypoints, double speed_mps,
                              double window_seconds) {
    if (waypoints.size() < 2) {
        throw ValidationError("need at least two waypoints");
    }
    if (!(speed_mps > 0.0) || !(window_seconds > 0.0)) {
        throw ValidationError("speed and window duration must be > 0");
    }
    std::vector<double> cumulative{0.0};
    for (std::size_t i = 1; i < waypoints.size(); ++i) {
        cumulative.push_back(cumulative.back() + distance(waypoints[i - 1], waypoints[i]));
    }
    const double total_length = cumulative.back();
    if (total_length <= 0.0) {
        throw ValidationError("zero-length waypoint path");
    }
    const double total_time = total_length / speed_mps;
    const auto count = static_cast<std::int64_t>(
        std::floor(total_time / window_seconds * (1.0 + 1e-12)) + 1);

    TruthTrace trace;
    trace.reserve(count);
    std::size_t seg = 1;
    for (std::int64_t k = 0; k < count; ++k) {
        const double s = std::min(k * window_seconds * speed_mps, total_length);
        while (seg + 1 < cumulative.size() && cumulative[seg] < s) {
            ++seg;
        }
        const double seg_len = cumulative[seg] - cumulative[seg - 1];
        const double t = seg_len > 0.0 ? (s - cumulative[seg - 1]) / seg_len : 0.0;
        const Point p = waypoints[seg - 1] + t * (waypoints[seg] - waypoints[seg - 1]);
        trace.push_back({k, p});
    }
    return trace;
}

SimulationResult run(const Scenario& scenario) {
    scenario.validate();

    TruthTrace truth;
    if (const auto* sweep = std::get_if<SweepMotion>(&scenario.motion)) {
        const auto points = sweep_points(scenario.deployment.region(), sweep->nx, sweep->ny,
                                         sweep->margin);
        truth.reserve(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) {
            truth.push_back({static_cast<std::int64_t>(i), points[i]});
        }
    } else {
        const auto& wp = std::get<WaypointMotion>(scenario.motion);
        truth = waypoint_positions(wp.points, wp.speed_mps, scenario.window_seconds);
    }

    SimulationResult result;
    result.truth = std::move(truth);
    result.windows.reserve(result.truth.size());

    const double ws = scenario.window_seconds;
    const int spw = scenario.samples_per_window;
    for (const auto& tp : result.truth) {
        std::vector<RawSample> samples;
        samples.reserve(scenario.deployment.anchors().size() * spw);
        const double t0 = static_cast<double>(tp.window_id) * ws;
        for (const auto& [anchor_id, vertex] : scenario.deployment.anchors()) {
            const Point anchor = scenario.deployment.grid().vertex_position(vertex);
            const double d =
                std::max(distance(tp.position, anchor), kMinAnchorDistance);
            Rng rng(substream_seed(scenario.seed,
                                   static_cast<std::uint64_t>(tp.window_id), anchor_id));
            for (int k = 0; k < spw; ++k) {
                double rss = rss_at_distance_noisy(scenario.model, d, rng);
                if (scenario.model.quantize) {
                    rss = std::round(rss);
                }
                samples.push_back({anchor_id, rss, t0 + (k + 0.5) * ws / spw});
            }
        }
        result.windows.push_back(average_window(samples, ws, tp.window_id));
    }
    return result;
}

}  // namespace gridloc
