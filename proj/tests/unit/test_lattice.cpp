#include "doctest.h"

#include "percolab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <set>

using namespace percolab;

namespace {

Lattice bond_grid(double w, double h, double mesh = 1.0) {
    return Lattice::build(
        {LatticeKind::SquareBond, mesh, RectRegion::from_corner(0, 0, w, h)});
}

Lattice tri_grid(double w, double h, double mesh = 1.0) {
    return Lattice::build({LatticeKind::TriangularSite, mesh,
                           RectRegion::from_corner(0, 0, w, h)});
}

} // namespace

TEST_CASE("square-bond 2x2 window has the 12 bonds of the 3x3 vertex grid") {
    const Lattice lat = bond_grid(2, 2);
    CHECK(lat.tile_count() == 12);
    int horizontal = 0;
    for (TileId t = 0; t < lat.tile_count(); ++t)
        horizontal += lat.is_horizontal_bond(t);
    CHECK(horizontal == 6);
}

TEST_CASE("triangular window of one site") {
    const Lattice lat = tri_grid(0.3, 0.2);
    CHECK(lat.tile_count() == 1);
    CHECK(lat.position(0).x == 0.0);
    CHECK(lat.position(0).y == 0.0);
}

TEST_CASE("degenerate window") {
    CHECK_THROWS_WITH(bond_grid(0.4, 0.4), "degenerate window");
    CHECK_THROWS_AS(
        Lattice::build({LatticeKind::SquareBond, -1.0,
                        RectRegion::from_corner(0, 0, 1, 1)}),
        std::invalid_argument);
}

TEST_CASE("deterministic enumeration") {
    const Lattice a = tri_grid(7, 5), b = tri_grid(7, 5);
    REQUIRE(a.tile_count() == b.tile_count());
    for (TileId t = 0; t < a.tile_count(); ++t) {
        CHECK(a.position(t).x == b.position(t).x);
        CHECK(a.position(t).y == b.position(t).y);
    }
}

TEST_CASE("triangular adjacency is 6-regular away from the boundary") {
    const Lattice lat = tri_grid(10, 9);
    int sixes = 0;
    for (TileId t = 0; t < lat.tile_count(); ++t) {
        const auto nb = lat.neighbors(t, Color::Blue);
        CHECK(nb.size() <= 6);
        sixes += nb.size() == 6;
        const Point p = lat.position(t);
        for (TileId o : nb)
            CHECK(dist(p, lat.position(o)) == doctest::Approx(1.0));
        // both colors share the adjacency on the triangular lattice
        CHECK(lat.neighbors(t, Color::Yellow).data() == nb.data());
    }
    CHECK(sixes > 0);
}

TEST_CASE("square-bond adjacency: primal for blue, dual for yellow") {
    const Lattice lat = bond_grid(2, 2);
    // find the horizontal bond (0.5, 1) and its relations
    auto find_tile = [&](double x, double y) {
        for (TileId t = 0; t < lat.tile_count(); ++t) {
            const Point p = lat.position(t);
            if (p.x == x && p.y == y) return t;
        }
        REQUIRE(false);
        return TileId{-1};
    };
    const TileId h = find_tile(0.5, 1.0);   // horizontal, middle row
    const TileId h2 = find_tile(1.5, 1.0);  // collinear neighbor
    const TileId hup = find_tile(0.5, 2.0); // parallel, one row up
    const TileId v = find_tile(0.0, 0.5);   // vertical, shares vertex (0,1)

    auto contains = [](std::span<const TileId> s, TileId t) {
        return std::find(s.begin(), s.end(), t) != s.end();
    };
    CHECK(contains(lat.neighbors(h, Color::Blue), h2));     // shared vertex
    CHECK(!contains(lat.neighbors(h, Color::Yellow), h2));  // no shared face
    CHECK(!contains(lat.neighbors(h, Color::Blue), hup));   // no shared vertex
    CHECK(contains(lat.neighbors(h, Color::Yellow), hup));  // shared face
    CHECK(contains(lat.neighbors(h, Color::Blue), v));
    CHECK(contains(lat.neighbors(h, Color::Yellow), v));
}

TEST_CASE("tiles_in_disk: ordering, monotonicity, bond example") {
    const Lattice lat = bond_grid(4, 4);
    // bonds incident to the vertex (2,2), by midpoint distance
    const auto four = lat.tiles_in_disk({2, 2}, 0.6);
    CHECK(four.size() == 4);
    CHECK(std::is_sorted(four.begin(), four.end()));

    const auto again = lat.tiles_in_disk({2, 2}, 0.6);
    CHECK(four == again);

    const auto more = lat.tiles_in_disk({2, 2}, 1.1);
    CHECK(std::includes(more.begin(), more.end(), four.begin(), four.end()));

    const auto none = lat.tiles_in_disk({2.26, 2.26}, 0.05);
    CHECK(none.empty());
}

TEST_CASE("tiles_in_disk density constant") {
    // |disk| >= c4 (rho/eta)^2 once rho >= 4 eta; c4 frozen per lattice kind
    const double c4_tri = 3.0, c4_bond = 5.0;
    const Lattice tri = tri_grid(40, 40);
    const Lattice bond = bond_grid(40, 40);
    for (double rho : {4.0, 6.0, 9.5}) {
        CHECK(tri.tiles_in_disk({20, 20}, rho).size() >= c4_tri * rho * rho);
        CHECK(bond.tiles_in_disk({20, 20}, rho).size() >= c4_bond * rho * rho);
    }
}

TEST_CASE("tiles_in_annulus membership and errors") {
    const Lattice lat = bond_grid(4, 4);
    // midpoint-distance membership, hand-enumerated: around vertex (2,2),
    // radii 0.4..1.6 catch the 4 incident bonds (d=0.5), 8 bonds at
    // d=sqrt(1.25) and 4 bonds at d=1.5
    const auto got = lat.tiles_in_annulus({{2, 2}, 0.4, 1.6});
    CHECK(got.size() == 16);
    for (TileId t : got) {
        const double d = dist(lat.position(t), {2, 2});
        CHECK(d >= 0.4);
        CHECK(d <= 1.6);
    }

    CHECK_THROWS_WITH((void)lat.tiles_in_annulus({{2, 2}, 0.4, 3.0}),
                      "region outside lattice");
    CHECK_THROWS_AS((void)lat.tiles_in_annulus({{2, 2}, 1.0, 0.5}),
                    std::invalid_argument);

    // r ~ R with no tile reference point in between
    const auto empty = lat.tiles_in_annulus({{2.25, 2.25}, 0.1, 0.2});
    CHECK(empty.empty());
}

TEST_CASE("reference points stay inside the window") {
    for (const Lattice& lat : {tri_grid(5.5, 4.3), bond_grid(5.5, 4.3)}) {
        for (TileId t = 0; t < lat.tile_count(); ++t)
            CHECK(lat.window().contains(lat.position(t), lat.eps()));
    }
}
