#include "gridloc/pipeline.hpp"

#include <cmath>

namespace gridloc {

std::string to_string(Method method) {
    switch (method) {
        case Method::kRefined: return "refined";
        case Method::kEdgePair: return "edge-pair";
        case Method::kNearNode: return "near-node";
        case Method::kCentroidBaseline: return "centroid-baseline";
    }
    throw DomainError("unknown method");
}

Method method_from_string(const std::string& name) {
    if (name == "refined") return Method::kRefined;
    if (name == "edge-pair") return Method::kEdgePair;
    if (name == "near-node") return Method::kNearNode;
    if (name == "centroid-baseline") return Method::kCentroidBaseline;
    throw ValidationError("unknown method '" + name + "'");
}

void EstimatorConfig::validate() const {
    if (!(window_seconds > 0.0)) {
        throw ValidationError("window_seconds must be > 0");
    }
    if (!(near_radius_fraction > 0.0) || !(near_radius_fraction < 1.0)) {
        throw ValidationError("near_radius_fraction must lie in (0, 1)");
    }
}

StepResult step(const EstimatorConfig& config, const Deployment& deployment,
                const PathLossModel& model, TrackerMemory& memory, const RssiWindow& window) {
    CellResolution res;
    try {
        res = resolve(window, deployment, model, memory, config.near_radius_fraction);
    } catch (const InsufficientAnchorsError& e) {
        return SkipRecord{window.window_id, e.what()};
    }

    Estimate est;
    est.window_id = window.window_id;
    est.cell = res.cell;
    est.side_hint = res.side_hint;
    switch (res.kind) {
        case ResolutionKind::kRectangle: {
            const CellGeometry geom = corners_of_cell(deployment.grid(), *res.cell);
            const auto rssis = corner_rssis(deployment, window, geom);
            const Point raw =
                refine_from_rssi(model, geom.corners, rssis[0], rssis[1], rssis[2], rssis[3]);
            est.position = clamp_to_cell(raw, geom.corners, config.clamp_policy);
            est.method = Method::kRefined;
            break;
        }
        case ResolutionKind::kEdgePair:
            est.position = *res.position_hint;
            est.method = Method::kEdgePair;
            break;
        case ResolutionKind::kNearNode:
            est.position = *res.position_hint;
            est.method = Method::kNearNode;
            break;
    }
    return est;
}

BatchResult run_batch(const EstimatorConfig& config, const Deployment& deployment,
                      const PathLossModel& model, std::span<const RssiWindow> windows) {
    config.validate();
    BatchResult result;
    TrackerMemory memory;
    std::int64_t last_id = 0;
    bool first = true;
    for (const auto& window : windows) {
        if (!first && window.window_id <= last_id) {
            throw ValidationError("windows must arrive in ascending window_id order");
        }
        first = false;
        last_id = window.window_id;

        if (config.baseline_enabled) {
            try {
                result.estimates.push_back(centroid_baseline(deployment, window));
            } catch (const EmptyWindowError& e) {
                result.skips.push_back({window.window_id, e.what()});
            }
            continue;
        }
        StepResult sr = step(config, deployment, model, memory, window);
        if (std::holds_alternative<Estimate>(sr)) {
            result.estimates.push_back(std::get<Estimate>(std::move(sr)));
        } else {
            result.skips.push_back(std::get<SkipRecord>(std::move(sr)));
        }
    }
    return result;
}

Estimate centroid_baseline(const Deployment& deployment, const RssiWindow& window) {
    if (window.readings.empty()) {
        throw EmptyWindowError("window " + std::to_string(window.window_id) +
                               " heard no anchors");
    }
    double wx = 0.0;
    double wy = 0.0;
    double wsum = 0.0;
    for (const auto& [id, rssi] : window.readings) {
        const Point p = anchor_position(deployment, id);
        const double w = std::pow(10.0, rssi / 10.0);
        wx += w * p.x;
        wy += w * p.y;
        wsum += w;
    }
    Estimate est;
    est.window_id = window.window_id;
    est.position = {wx / wsum, wy / wsum};
    est.method = Method::kCentroidBaseline;
    return est;
}

}  // namespace gridloc
