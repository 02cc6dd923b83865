#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <map>
#include <string>

#include "gridloc/errors.hpp"

namespace gridloc {

// Planar position in meters.
struct Point {
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
    friend bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }

    double norm() const { return std::hypot(x, y); }
};

inline double distance(Point a, Point b) { return (a - b).norm(); }

inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Grid vertex index (anchors live on vertices).
struct VertexIndex {
    int col = 0;
    int row = 0;
    auto operator<=>(const VertexIndex&) const = default;
};

// Cell index; cell (c, r) spans vertices (c, r) .. (c+1, r+1).
struct GridCell {
    int col = 0;
    int row = 0;
    auto operator<=>(const GridCell&) const = default;
};

// Axis-aligned rectangular region.
struct Region {
    Point min;
    Point max;

    bool contains(Point p) const {
        return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
    }
    double width() const { return max.x - min.x; }
    double height() const { return max.y - min.y; }
};

// Uniform rectangular grid: `cols` x `rows` cells, (cols+1) x (rows+1) vertices.
struct GridSpec {
    Point origin;
    double spacing_x = 1.0;
    double spacing_y = 1.0;
    int cols = 1;
    int rows = 1;

    void validate() const;

    int vertex_count() const { return (cols + 1) * (rows + 1); }
    Point vertex_position(VertexIndex v) const {
        return {origin.x + v.col * spacing_x, origin.y + v.row * spacing_y};
    }
    Region region() const {
        return {origin, {origin.x + cols * spacing_x, origin.y + rows * spacing_y}};
    }
    bool cell_in_bounds(GridCell c) const {
        return c.col >= 0 && c.col < cols && c.row >= 0 && c.row < rows;
    }
    bool vertex_in_bounds(VertexIndex v) const {
        return v.col >= 0 && v.col <= cols && v.row >= 0 && v.row <= rows;
    }
};

// Cell corner coordinates in the canonical orientation:
//   A = (x1, y1)  B = (x2, y1)  C = (x2, y2)  D = (x1, y2)
// with x1 < x2 and y2 < y1 (A/B on the high-y edge, D/C on the low-y edge), so
// A and D share x1, B and C share x2, A and B share y1, C and D share y2.
struct CellCorners {
    double x1 = 0.0;
    double x2 = 0.0;
    double y1 = 0.0;
    double y2 = 0.0;

    Point a() const { return {x1, y1}; }
    Point b() const { return {x2, y1}; }
    Point c() const { return {x2, y2}; }
    Point d() const { return {x1, y2}; }
    Point centroid() const { return {0.5 * (x1 + x2), 0.5 * (y1 + y2)}; }
};

// Corners of one cell plus the owning vertex of each corner, ordered A, B, C, D.
struct CellGeometry {
    CellCorners corners;
    std::array<VertexIndex, 4> vertices;
};

// Anchor deployment: every grid vertex hosts exactly one anchor (a bijection
// between opaque string ids and vertex indices).
class Deployment {
public:
    Deployment(GridSpec grid, std::map<std::string, VertexIndex> anchors);

    // Auto-generates ids "a<col>_<row>" for every vertex.
    static Deployment with_auto_anchors(GridSpec grid);

    const GridSpec& grid() const { return grid_; }
    const std::map<std::string, VertexIndex>& anchors() const { return by_id_; }

    bool has_anchor(const std::string& id) const { return by_id_.count(id) != 0; }
    VertexIndex vertex_of(const std::string& id) const;
    const std::string& anchor_at(VertexIndex v) const;
    Region region() const { return grid_.region(); }

private:
    GridSpec grid_;
    std::map<std::string, VertexIndex> by_id_;
    std::map<VertexIndex, std::string> by_vertex_;
};

// Position of the named anchor. Throws LookupError for unknown ids.
Point anchor_position(const Deployment& deployment, const std::string& anchor_id);

// Cell containing p under half-open extents [x_lo, x_hi) x [y_lo, y_hi); points on
// the region's maximal boundary map to the last cell. Throws OutOfRegionError.
GridCell cell_of_point(const GridSpec& grid, Point p);

// Corner coordinates and corner vertices of a cell, canonical A/B/C/D order:
// A = vertex (col, row+1), B = (col+1, row+1), C = (col+1, row), D = (col, row).
// Throws BoundsError for cells outside the grid.
CellGeometry corners_of_cell(const GridSpec& grid, GridCell cell);

}  // namespace gridloc
