#include "gridloc/geometry.hpp"

#include <cmath>
#include <utility>

namespace gridloc {

void GridSpec::validate() const {
    if (!is_finite(origin)) {
        throw ValidationError("grid origin must be finite");
    }
    if (!(spacing_x > 0.0) || !std::isfinite(spacing_x)) {
        throw ValidationError("grid spacing_x must be finite and > 0");
    }
    if (!(spacing_y > 0.0) || !std::isfinite(spacing_y)) {
        throw ValidationError("grid spacing_y must be finite and > 0");
    }
    if (cols < 1 || rows < 1) {
        throw ValidationError("grid needs at least one cell per axis");
    }
}

Deployment::Deployment(GridSpec grid, std::map<std::string, VertexIndex> anchors)
    : grid_(grid), by_id_(std::move(anchors)) {
    grid_.validate();
    for (const auto& [id, v] : by_id_) {
        if (!grid_.vertex_in_bounds(v)) {
            throw ValidationError("anchor '" + id + "' sits outside the grid");
        }
        auto [it, inserted] = by_vertex_.emplace(v, id);
        if (!inserted) {
            throw ValidationError("vertex (" + std::to_string(v.col) + "," +
                                  std::to_string(v.row) + ") hosts more than one anchor");
        }
    }
    if (static_cast<int>(by_id_.size()) != grid_.vertex_count()) {
        throw ValidationError("deployment must place exactly one anchor on every vertex: have " +
                              std::to_string(by_id_.size()) + " anchors for " +
                              std::to_string(grid_.vertex_count()) + " vertices");
    }
}

Deployment Deployment::with_auto_anchors(GridSpec grid) {
    grid.validate();
    std::map<std::string, VertexIndex> anchors;
    for (int row = 0; row <= grid.rows; ++row) {
        for (int col = 0; col <= grid.cols; ++col) {
            anchors.emplace("a" + std::to_string(col) + "_" + std::to_string(row),
                            VertexIndex{col, row});
        }
    }
    return Deployment(grid, std::move(anchors));
}

VertexIndex Deployment::vertex_of(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) {
        throw LookupError("unknown anchor id '" + id + "'");
    }
    return it->second;
}

const std::string& Deployment::anchor_at(VertexIndex v) const {
    auto it = by_vertex_.find(v);
    if (it == by_vertex_.end()) {
        throw LookupError("no anchor at vertex (" + std::to_string(v.col) + "," +
                          std::to_string(v.row) + ")");
    }
    return it->second;
}

Point anchor_position(const Deployment& deployment, const std::string& anchor_id) {
    return deployment.grid().vertex_position(deployment.vertex_of(anchor_id));
}

GridCell cell_of_point(const GridSpec& grid, Point p) {
    const Region region = grid.region();
    if (!is_finite(p) || !region.contains(p)) {
        throw OutOfRegionError("point outside the deployed region");
    }
    int col = static_cast<int>(std::floor((p.x - grid.origin.x) / grid.spacing_x));
    int row = static_cast<int>(std::floor((p.y - grid.origin.y) / grid.spacing_y));
    // Maximal-boundary rule: the region's far edges belong to the last cell.
    col = std::min(col, grid.cols - 1);
    row = std::min(row, grid.rows - 1);
    return {col, row};
}

CellGeometry corners_of_cell(const GridSpec& grid, GridCell cell) {
    if (!grid.cell_in_bounds(cell)) {
        throw BoundsError("cell (" + std::to_string(cell.col) + "," +
                          std::to_string(cell.row) + ") outside the grid");
    }
    const VertexIndex va{cell.col, cell.row + 1};
    const VertexIndex vb{cell.col + 1, cell.row + 1};
    const VertexIndex vc{cell.col + 1, cell.row};
    const VertexIndex vd{cell.col, cell.row};
    CellCorners corners;
    corners.x1 = grid.origin.x + cell.col * grid.spacing_x;
    corners.x2 = grid.origin.x + (cell.col + 1) * grid.spacing_x;
    corners.y1 = grid.origin.y + (cell.row + 1) * grid.spacing_y;
    corners.y2 = grid.origin.y + cell.row * grid.spacing_y;
    return {corners, {va, vb, vc, vd}};
}

}  // namespace gridloc
