#include "gridloc/resolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace gridloc {

namespace {

struct MeanAccumulator {
    double sum = 0.0;
    int count = 0;
};

// Index pairings of four entries: the three ways to split into two pairs.
constexpr std::array<std::array<int, 4>, 3> kPairings = {{
    {0, 1, 2, 3},
    {0, 2, 1, 3},
    {0, 3, 1, 2},
}};

// Normalized id pair (smaller id first) for tie-breaking.
std::pair<const std::string*, const std::string*> normalized_pair(const QuadSelection& sel,
                                                                  int i, int j) {
    const std::string& a = sel.entries[i].id;
    const std::string& b = sel.entries[j].id;
    return a <= b ? std::make_pair(&a, &b) : std::make_pair(&b, &a);
}

// The lexicographically smallest normalized id pair of a pairing.
std::pair<const std::string*, const std::string*> pairing_key(const QuadSelection& sel,
                                                              const std::array<int, 4>& p) {
    auto first = normalized_pair(sel, p[0], p[1]);
    auto second = normalized_pair(sel, p[2], p[3]);
    const bool first_smaller =
        *first.first < *second.first ||
        (*first.first == *second.first && *first.second <= *second.second);
    return first_smaller ? first : second;
}

bool key_less(const std::pair<const std::string*, const std::string*>& a,
              const std::pair<const std::string*, const std::string*>& b) {
    if (*a.first != *b.first) return *a.first < *b.first;
    return *a.second < *b.second;
}

// Estimate contributed by one pair of anchors, when they share a grid axis:
// the shared coordinate on that axis, the midpoint on the other.
struct PairEstimate {
    bool valid = false;
    bool shares_x = false;
    Point position;
};

PairEstimate pair_estimate(const Deployment& deployment, const AnchorRssi& a,
                           const AnchorRssi& b) {
    const VertexIndex va = deployment.vertex_of(a.id);
    const VertexIndex vb = deployment.vertex_of(b.id);
    const Point pa = deployment.grid().vertex_position(va);
    const Point pb = deployment.grid().vertex_position(vb);
    PairEstimate est;
    if (va.col == vb.col) {
        est.valid = true;
        est.shares_x = true;
        est.position = {pa.x, 0.5 * (pa.y + pb.y)};
    } else if (va.row == vb.row) {
        est.valid = true;
        est.shares_x = false;
        est.position = {0.5 * (pa.x + pb.x), pa.y};
    }
    return est;
}

Point weighted_centroid(const Deployment& deployment,
                        std::span<const AnchorRssi> anchors) {
    double wx = 0.0;
    double wy = 0.0;
    double wsum = 0.0;
    for (const auto& entry : anchors) {
        const Point p = anchor_position(deployment, entry.id);
        const double w = std::pow(10.0, entry.rssi / 10.0);
        wx += w * p.x;
        wy += w * p.y;
        wsum += w;
    }
    return {wx / wsum, wy / wsum};
}

}  // namespace

std::string to_string(const SideHint& hint) {
    if (hint.is_center()) return "center";
    std::string out;
    if (hint.x == SideHint::XHalf::kX1) out += "x1";
    if (hint.x == SideHint::XHalf::kX2) out += "x2";
    if (hint.y == SideHint::YHalf::kY1) out += "y1";
    if (hint.y == SideHint::YHalf::kY2) out += "y2";
    return out;
}

RssiWindow average_window(std::span<const RawSample> samples, double window_seconds,
                          std::int64_t window_id) {
    if (!(window_seconds > 0.0)) {
        throw ValidationError("window duration must be > 0");
    }
    if (samples.empty()) {
        throw EmptyWindowError("no samples in window");
    }
    double t_min = samples.front().timestamp_s;
    double t_max = t_min;
    std::map<std::string, MeanAccumulator> acc;
    for (const auto& s : samples) {
        if (!std::isfinite(s.rssi_dbm)) {
            throw ValidationError("non-finite rssi sample for anchor '" + s.anchor_id + "'");
        }
        t_min = std::min(t_min, s.timestamp_s);
        t_max = std::max(t_max, s.timestamp_s);
        auto& a = acc[s.anchor_id];
        a.sum += s.rssi_dbm;
        a.count += 1;
    }
    if (t_max - t_min > window_seconds * (1.0 + 1e-9)) {
        throw ValidationError("samples span more than one window");
    }
    RssiWindow window;
    window.window_id = window_id;
    for (const auto& [id, a] : acc) {
        window.readings.emplace(id, a.sum / a.count);
    }
    return window;
}

QuadSelection select_top4(const RssiWindow& window) {
    if (window.readings.size() < 4) {
        throw InsufficientAnchorsError("window " + std::to_string(window.window_id) +
                                       " heard " + std::to_string(window.readings.size()) +
                                       " anchors, need 4");
    }
    std::vector<AnchorRssi> all;
    all.reserve(window.readings.size());
    for (const auto& [id, rssi] : window.readings) {
        all.push_back({id, rssi});
    }
    // Descending rssi; the map already orders ids ascending, so a stable sort
    // leaves ties in ascending id order.
    std::stable_sort(all.begin(), all.end(),
                     [](const AnchorRssi& a, const AnchorRssi& b) { return a.rssi > b.rssi; });
    QuadSelection sel;
    std::copy_n(all.begin(), 4, sel.entries.begin());
    return sel;
}

std::optional<GridCell> classify_quad(const QuadSelection& selection,
                                      const Deployment& deployment) {
    std::array<VertexIndex, 4> v;
    for (int i = 0; i < 4; ++i) {
        v[i] = deployment.vertex_of(selection.entries[i].id);
    }
    int c0 = v[0].col;
    int r0 = v[0].row;
    for (const auto& vi : v) {
        c0 = std::min(c0, vi.col);
        r0 = std::min(r0, vi.row);
    }
    std::array<VertexIndex, 4> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    const std::array<VertexIndex, 4> expected = {
        VertexIndex{c0, r0},
        VertexIndex{c0, r0 + 1},
        VertexIndex{c0 + 1, r0},
        VertexIndex{c0 + 1, r0 + 1},
    };
    if (sorted != expected) {
        return std::nullopt;
    }
    return GridCell{c0, r0};
}

CellResolution resolve_degenerate(const QuadSelection& selection, const Deployment& deployment,
                                  const PathLossModel& model, const TrackerMemory& memory,
                                  double near_radius_fraction) {
    const GridSpec& grid = deployment.grid();
    const double near_radius =
        near_radius_fraction * std::min(grid.spacing_x, grid.spacing_y);
    const double r = distance_from_rss(model, selection.strongest().rssi);

    if (r <= near_radius) {
        const Point anchor = anchor_position(deployment, selection.strongest().id);
        CellResolution res;
        res.kind = ResolutionKind::kNearNode;
        res.position_hint = anchor;
        if (memory.last_cell) {
            res.cell = memory.last_cell;
            const CellGeometry geom = corners_of_cell(grid, *memory.last_cell);
            const Point dir = geom.corners.centroid() - anchor;
            const double len = dir.norm();
            if (len > 0.0) {
                res.position_hint = anchor + (r / len) * dir;
            }
        }
        return res;
    }

    // Pick the pairing minimizing the summed within-pair |dRSSI|; ties go to
    // the pairing holding the lexicographically smallest id pair.
    int best = -1;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 3; ++k) {
        const auto& p = kPairings[k];
        const double cost =
            std::abs(selection.entries[p[0]].rssi - selection.entries[p[1]].rssi) +
            std::abs(selection.entries[p[2]].rssi - selection.entries[p[3]].rssi);
        if (cost < best_cost ||
            (cost == best_cost &&
             key_less(pairing_key(selection, p), pairing_key(selection, kPairings[best])))) {
            best = k;
            best_cost = cost;
        }
    }
    const auto& pairing = kPairings[best];

    const PairEstimate first =
        pair_estimate(deployment, selection.entries[pairing[0]], selection.entries[pairing[1]]);
    const PairEstimate second =
        pair_estimate(deployment, selection.entries[pairing[2]], selection.entries[pairing[3]]);

    CellResolution res;
    res.kind = ResolutionKind::kEdgePair;
    if (first.valid && second.valid) {
        if (first.shares_x == second.shares_x) {
            res.position_hint = 0.5 * (first.position + second.position);
        } else {
            // Pairs constrain different axes; the pair holding the strongest
            // anchor is the near pair and wins. The strongest entry sits in
            // the first pair of every kPairings row (index 0).
            res.position_hint = first.position;
        }
    } else if (first.valid) {
        res.position_hint = first.position;
    } else if (second.valid) {
        res.position_hint = second.position;
    } else {
        res.position_hint = weighted_centroid(deployment, selection.entries);
    }
    return res;
}

SideHint side_test(const CellCorners&, double rssi_a, double rssi_b, double rssi_c,
                   double rssi_d) {
    SideHint hint;
    if (rssi_a > rssi_b && rssi_d > rssi_c) {
        hint.x = SideHint::XHalf::kX1;
    } else if (rssi_b > rssi_a && rssi_c > rssi_d) {
        hint.x = SideHint::XHalf::kX2;
    }
    if (rssi_a > rssi_d && rssi_b > rssi_c) {
        hint.y = SideHint::YHalf::kY1;
    } else if (rssi_d > rssi_a && rssi_c > rssi_b) {
        hint.y = SideHint::YHalf::kY2;
    }
    return hint;
}

std::array<double, 4> corner_rssis(const Deployment& deployment, const RssiWindow& window,
                                   const CellGeometry& geometry) {
    std::array<double, 4> rssis{};
    for (int i = 0; i < 4; ++i) {
        const std::string& id = deployment.anchor_at(geometry.vertices[i]);
        const auto it = window.readings.find(id);
        if (it == window.readings.end()) {
            throw LookupError("corner anchor '" + id + "' missing from window " +
                              std::to_string(window.window_id));
        }
        rssis[i] = it->second;
    }
    return rssis;
}

CellResolution resolve(const RssiWindow& window, const Deployment& deployment,
                       const PathLossModel& model, TrackerMemory& memory,
                       double near_radius_fraction) {
    const QuadSelection selection = select_top4(window);
    if (const auto cell = classify_quad(selection, deployment)) {
        const CellGeometry geom = corners_of_cell(deployment.grid(), *cell);
        const auto rssis = corner_rssis(deployment, window, geom);
        CellResolution res;
        res.kind = ResolutionKind::kRectangle;
        res.cell = cell;
        res.side_hint = side_test(geom.corners, rssis[0], rssis[1], rssis[2], rssis[3]);
        memory.last_cell = cell;
        return res;
    }
    return resolve_degenerate(selection, deployment, model, memory, near_radius_fraction);
}

}  // namespace gridloc
