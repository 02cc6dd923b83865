#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gridloc/refiner.hpp"
#include "gridloc/resolver.hpp"

namespace gridloc {

enum class Method { kRefined, kEdgePair, kNearNode, kCentroidBaseline };

std::string to_string(Method method);
Method method_from_string(const std::string& name);

struct Estimate {
    std::int64_t window_id = 0;
    Point position;
    Method method = Method::kRefined;
    std::optional<GridCell> cell;
    std::optional<SideHint> side_hint;
};

struct SkipRecord {
    std::int64_t window_id = 0;
    std::string reason;
};

using StepResult = std::variant<Estimate, SkipRecord>;

struct EstimatorConfig {
    double window_seconds = 0.2;
    double near_radius_fraction = kDefaultNearRadiusFraction;
    ClampPolicy clamp_policy = ClampPolicy::kOff;
    bool baseline_enabled = false;

    void validate() const;
};

struct BatchResult {
    std::vector<Estimate> estimates;
    std::vector<SkipRecord> skips;
};

// One window through the two-phase estimator: resolve the cell, then refine
// inside it from the four corner RSSIs (mapped by anchor identity). Degenerate
// windows return the resolver's position hint; windows with fewer than four
// anchors come back as a SkipRecord.
StepResult step(const EstimatorConfig& config, const Deployment& deployment,
                const PathLossModel& model, TrackerMemory& memory, const RssiWindow& window);

// Folds step (or the centroid baseline, when config.baseline_enabled) over the
// windows with a single tracker. Windows must arrive in ascending window_id
// order.
BatchResult run_batch(const EstimatorConfig& config, const Deployment& deployment,
                      const PathLossModel& model, std::span<const RssiWindow> windows);

// RSSI-weighted centroid of all heard anchors, weights 10^(rssi/10).
// Throws EmptyWindowError when the window heard nothing.
Estimate centroid_baseline(const Deployment& deployment, const RssiWindow& window);

}  // namespace gridloc
