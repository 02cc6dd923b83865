#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gridloc/geometry.hpp"
#include "gridloc/propagation.hpp"

namespace gridloc {

// One received broadcast: which anchor heard it, at what strength, when.
struct RawSample {
    std::string anchor_id;
    double rssi_dbm = 0.0;
    double timestamp_s = 0.0;
};

// Per-anchor averaged RSSI for one broadcast window.
struct RssiWindow {
    std::int64_t window_id = 0;
    std::map<std::string, double> readings;
};

struct AnchorRssi {
    std::string id;
    double rssi = 0.0;
};

// The four strongest anchors of a window, descending RSSI, ties broken by
// ascending anchor id.
struct QuadSelection {
    std::array<AnchorRssi, 4> entries;

    const AnchorRssi& strongest() const { return entries[0]; }
};

// Half-cell indicator from the corner-RSSI comparisons. Both axes may fire
// (quadrant); neither firing reads as "center".
struct SideHint {
    enum class XHalf { kNone, kX1, kX2 };
    enum class YHalf { kNone, kY1, kY2 };
    XHalf x = XHalf::kNone;
    YHalf y = YHalf::kNone;

    bool is_center() const { return x == XHalf::kNone && y == YHalf::kNone; }
    friend bool operator==(const SideHint&, const SideHint&) = default;
};

std::string to_string(const SideHint& hint);

enum class ResolutionKind { kRectangle, kEdgePair, kNearNode };

struct CellResolution {
    ResolutionKind kind = ResolutionKind::kRectangle;
    std::optional<GridCell> cell;
    std::optional<Point> position_hint;
    std::optional<SideHint> side_hint;
};

// Which cell the tracked node resolved to last; one instance per blind node.
struct TrackerMemory {
    std::optional<GridCell> last_cell;
};

inline constexpr double kDefaultNearRadiusFraction = 0.25;

// Per-anchor arithmetic mean over one accumulation window.
// Throws EmptyWindowError for an empty sample list and ValidationError when
// the timestamps straddle more than one window span.
RssiWindow average_window(std::span<const RawSample> samples, double window_seconds,
                          std::int64_t window_id = 0);

// The four largest mean RSSI values. Throws InsufficientAnchorsError when the
// window heard fewer than four anchors.
QuadSelection select_top4(const RssiWindow& window);

// The cell whose four corners are exactly the selected anchors, or nullopt
// when the selection is degenerate (Fig-2 style).
std::optional<GridCell> classify_quad(const QuadSelection& selection,
                                      const Deployment& deployment);

// Degenerate-quad resolution: near-node when the strongest anchor ranges
// within near_radius_fraction of the cell spacing, otherwise the edge-pair
// construction over the minimal-|dRSSI| pair grouping.
CellResolution resolve_degenerate(const QuadSelection& selection, const Deployment& deployment,
                                  const PathLossModel& model, const TrackerMemory& memory,
                                  double near_radius_fraction = kDefaultNearRadiusFraction);

// Corner-comparison side test; rssi values must be mapped to the canonical
// A/B/C/D corners of `corners_of_cell`.
SideHint side_test(const CellCorners& corners, double rssi_a, double rssi_b, double rssi_c,
                   double rssi_d);

// Corner RSSIs of a cell pulled from the window by anchor identity, A,B,C,D
// order. Throws LookupError when a corner anchor is missing from the window.
std::array<double, 4> corner_rssis(const Deployment& deployment, const RssiWindow& window,
                                   const CellGeometry& geometry);

// Full partition phase: select_top4 -> classify_quad -> side test or
// degenerate resolution. Updates memory.last_cell on Rectangle resolutions.
CellResolution resolve(const RssiWindow& window, const Deployment& deployment,
                       const PathLossModel& model, TrackerMemory& memory,
                       double near_radius_fraction = kDefaultNearRadiusFraction);

}  // namespace gridloc
