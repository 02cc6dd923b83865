#include <doctest.h>

#include "gridloc/geometry.hpp"
#include "gridloc/rng.hpp"

using namespace gridloc;

namespace {

Deployment square_deployment(double spacing = 4.0, int cells = 2) {
    return Deployment::with_auto_anchors(GridSpec{{0.0, 0.0}, spacing, spacing, cells, cells});
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("anchor positions follow the vertex lattice") {
    const auto dep = square_deployment();
    CHECK(anchor_position(dep, "a0_0") == Point{0.0, 0.0});
    CHECK(anchor_position(dep, "a1_1") == Point{4.0, 4.0});

    const Deployment skewed = Deployment::with_auto_anchors(
        GridSpec{{2.0, 3.0}, 4.0, 5.0, 2, 2});
    CHECK(anchor_position(skewed, "a2_1") == Point{10.0, 8.0});
}

TEST_CASE("anchor lookup rejects unknown ids") {
    const auto dep = square_deployment();
    CHECK_THROWS_AS(anchor_position(dep, "nope"), LookupError);
    CHECK_THROWS_AS(dep.vertex_of("a3_0"), LookupError);
}

TEST_CASE("deployment requires a bijection onto the vertices") {
    GridSpec grid{{0.0, 0.0}, 4.0, 4.0, 1, 1};
    std::map<std::string, VertexIndex> too_few = {
        {"a", {0, 0}}, {"b", {1, 0}}, {"c", {0, 1}}};
    CHECK_THROWS_AS(Deployment(grid, too_few), ValidationError);

    std::map<std::string, VertexIndex> doubled = {
        {"a", {0, 0}}, {"b", {1, 0}}, {"c", {0, 1}}, {"d", {0, 1}}};
    CHECK_THROWS_AS(Deployment(grid, doubled), ValidationError);

    std::map<std::string, VertexIndex> outside = {
        {"a", {0, 0}}, {"b", {1, 0}}, {"c", {0, 1}}, {"d", {2, 2}}};
    CHECK_THROWS_AS(Deployment(grid, outside), ValidationError);
}

TEST_CASE("grid spec validation") {
    CHECK_THROWS_AS((GridSpec{{0, 0}, 0.0, 4.0, 2, 2}.validate()), ValidationError);
    CHECK_THROWS_AS((GridSpec{{0, 0}, 4.0, -1.0, 2, 2}.validate()), ValidationError);
    CHECK_THROWS_AS((GridSpec{{0, 0}, 4.0, 4.0, 0, 2}.validate()), ValidationError);
    CHECK_NOTHROW((GridSpec{{0, 0}, 4.0, 4.0, 1, 1}.validate()));
}

TEST_CASE("cell_of_point half-open extents") {
    const GridSpec grid{{0.0, 0.0}, 4.0, 4.0, 2, 2};
    CHECK(cell_of_point(grid, {1.0, 1.0}) == GridCell{0, 0});
    CHECK(cell_of_point(grid, {4.0, 1.0}) == GridCell{1, 0});
    // Maximal boundary belongs to the last cell.
    CHECK(cell_of_point(grid, {8.0, 8.0}) == GridCell{1, 1});
    CHECK(cell_of_point(grid, {0.0, 8.0}) == GridCell{0, 1});

    CHECK_THROWS_AS(cell_of_point(grid, {-0.1, 1.0}), OutOfRegionError);
    CHECK_THROWS_AS(cell_of_point(grid, {1.0, 8.1}), OutOfRegionError);
}

TEST_CASE("corners_of_cell canonical orientation") {
    const GridSpec grid{{0.0, 0.0}, 4.0, 4.0, 2, 2};
    const CellGeometry g = corners_of_cell(grid, {0, 0});
    CHECK(g.corners.a() == Point{0.0, 4.0});
    CHECK(g.corners.b() == Point{4.0, 4.0});
    CHECK(g.corners.c() == Point{4.0, 0.0});
    CHECK(g.corners.d() == Point{0.0, 0.0});
    CHECK(g.vertices[0] == VertexIndex{0, 1});
    CHECK(g.vertices[1] == VertexIndex{1, 1});
    CHECK(g.vertices[2] == VertexIndex{1, 0});
    CHECK(g.vertices[3] == VertexIndex{0, 0});

    const CellGeometry g10 = corners_of_cell(grid, {1, 0});
    CHECK(g10.corners.a() == Point{4.0, 4.0});
    CHECK(g10.corners.b() == Point{8.0, 4.0});
    CHECK(g10.corners.c() == Point{8.0, 0.0});
    CHECK(g10.corners.d() == Point{4.0, 0.0});

    const GridSpec rect{{0.0, 0.0}, 4.0, 5.0, 2, 2};
    const CellGeometry g01 = corners_of_cell(rect, {0, 1});
    CHECK(g01.corners.a() == Point{0.0, 10.0});
    CHECK(g01.corners.b() == Point{4.0, 10.0});
    CHECK(g01.corners.c() == Point{4.0, 5.0});
    CHECK(g01.corners.d() == Point{0.0, 5.0});

    CHECK_THROWS_AS(corners_of_cell(grid, {2, 0}), BoundsError);
    CHECK_THROWS_AS(corners_of_cell(grid, {0, -1}), BoundsError);
}

TEST_CASE("corner pairing invariants over random grids") {
    Rng rng(20260810);
    for (int iter = 0; iter < 200; ++iter) {
        GridSpec grid;
        grid.origin = {rng.next_unit() * 20.0 - 10.0, rng.next_unit() * 20.0 - 10.0};
        grid.spacing_x = 0.5 + 0.5 * static_cast<double>(rng.next_u64() % 16);
        grid.spacing_y = 0.5 + 0.5 * static_cast<double>(rng.next_u64() % 16);
        grid.cols = 1 + static_cast<int>(rng.next_u64() % 5);
        grid.rows = 1 + static_cast<int>(rng.next_u64() % 5);
        const GridCell cell{static_cast<int>(rng.next_u64() % grid.cols),
                            static_cast<int>(rng.next_u64() % grid.rows)};
        const CellGeometry g = corners_of_cell(grid, cell);
        CHECK(g.corners.x1 < g.corners.x2);
        CHECK(g.corners.y2 < g.corners.y1);
        CHECK(g.corners.x2 - g.corners.x1 == doctest::Approx(grid.spacing_x).epsilon(1e-12));
        CHECK(g.corners.y1 - g.corners.y2 == doctest::Approx(grid.spacing_y).epsilon(1e-12));
        // A/D share x1, B/C share x2, A/B share y1, C/D share y2.
        CHECK(g.corners.a().x == g.corners.d().x);
        CHECK(g.corners.b().x == g.corners.c().x);
        CHECK(g.corners.a().y == g.corners.b().y);
        CHECK(g.corners.c().y == g.corners.d().y);
        // Cell round trip through the centroid.
        CHECK(cell_of_point(grid, g.corners.centroid()) == cell);
    }
}

TEST_CASE("half-spacing corners stay exact") {
    const GridSpec grid{{0.0, 0.0}, 0.5, 0.25, 8, 8};
    for (int col = 0; col < 8; ++col) {
        const CellGeometry g = corners_of_cell(grid, {col, 3});
        CHECK(g.corners.x2 - g.corners.x1 == 0.5);
        CHECK(g.corners.y1 - g.corners.y2 == 0.25);
    }
}

TEST_CASE("anchor_position is injective") {
    const auto dep = square_deployment();
    std::map<std::pair<double, double>, std::string> seen;
    for (const auto& [id, v] : dep.anchors()) {
        const Point p = anchor_position(dep, id);
        const auto [it, inserted] = seen.emplace(std::make_pair(p.x, p.y), id);
        CHECK(inserted);
    }
    CHECK(seen.size() == 9);
}

TEST_CASE("vertex reverse lookup") {
    const auto dep = square_deployment();
    CHECK(dep.anchor_at({1, 1}) == "a1_1");
    CHECK(dep.anchor_at({2, 0}) == "a2_0");
    CHECK_THROWS_AS(dep.anchor_at({3, 3}), LookupError);
}

}  // TEST_SUITE
