#include "doctest.h"

#include "percolab/connectivity.hpp"
#include "percolab/oracle.hpp"
#include "reference_arms.hpp"

#include <cmath>

using namespace percolab;

namespace {

Lattice tri_corner(double w, double h) {
    return Lattice::build({LatticeKind::TriangularSite, 1.0,
                           RectRegion::from_corner(0, 0, w, h)});
}

Lattice bond_corner(double w, double h) {
    return Lattice::build({LatticeKind::SquareBond, 1.0,
                           RectRegion::from_corner(0, 0, w, h)});
}

Lattice tri_centered(double side) {
    return Lattice::build(
        {LatticeKind::TriangularSite, 1.0, RectRegion::square({0, 0}, side)});
}

Configuration fill(const Lattice& lat, Color c) {
    return Configuration(lat.tile_count(), c);
}

void set_mask(Configuration& cfg, std::uint64_t mask) {
    for (TileId t = 0; t < cfg.tile_count(); ++t)
        cfg.set(t, (mask >> t) & 1 ? Color::Blue : Color::Yellow);
}

} // namespace

TEST_CASE("crossing basics") {
    const Lattice lat = tri_corner(6, 5);
    const CrossingQuery qh{lat.window(), Color::Blue, Direction::Horizontal};
    const CrossingQuery qv{lat.window(), Color::Blue, Direction::Vertical};
    CHECK(has_crossing(lat, fill(lat, Color::Blue), qh));
    CHECK(has_crossing(lat, fill(lat, Color::Blue), qv));
    CHECK(!has_crossing(lat, fill(lat, Color::Yellow), qh));
    CHECK(has_crossing(lat, fill(lat, Color::Yellow),
                       {lat.window(), Color::Yellow, Direction::Horizontal}));

    CHECK_THROWS_WITH(
        (void)has_crossing(lat, fill(lat, Color::Blue),
                           {RectRegion::from_corner(0.2, 0.2, 0.2, 0.2),
                            Color::Blue, Direction::Horizontal}),
        "empty query");
    CHECK_THROWS_WITH(
        (void)has_crossing(lat, fill(lat, Color::Blue),
                           {RectRegion::from_corner(-1, 0, 3, 3), Color::Blue,
                            Direction::Horizontal}),
        "region outside lattice");
}

TEST_CASE("one-arm basics and a painted spoke") {
    const Lattice lat = tri_centered(14);
    const AnnulusRegion ann{{0, 0}, 1.0, 5.0};
    CHECK(has_one_arm(lat, fill(lat, Color::Blue), ann, Color::Blue));
    CHECK(!has_one_arm(lat, fill(lat, Color::Blue), ann, Color::Yellow));

    Configuration cfg = fill(lat, Color::Yellow);
    for (TileId t = 0; t < lat.tile_count(); ++t) {
        const Point p = lat.position(t);
        if (std::abs(p.y) <= 0.6 && p.x >= 0.0) cfg.set(t, Color::Blue);
    }
    CHECK(has_one_arm(lat, cfg, ann, Color::Blue));
    CHECK(has_one_arm(lat, cfg, ann, Color::Yellow));
    CHECK(!has_four_arm_alternating(lat, cfg, ann));
}

TEST_CASE("four and five arms on pinwheels") {
    const Lattice lat = tri_centered(16);
    const AnnulusRegion ann{{0, 0}, 2.0, 7.0};

    auto paint_sectors = [&](int sectors) {
        Configuration cfg = fill(lat, Color::Yellow);
        for (TileId t = 0; t < lat.tile_count(); ++t) {
            const Point p = lat.position(t);
            const double a = std::atan2(p.y, p.x) + 3.14159265358979323846;
            const int s = std::min<int>(
                sectors - 1,
                static_cast<int>(a / (2.0 * 3.14159265358979323846 / sectors)));
            cfg.set(t, s % 2 == 0 ? Color::Blue : Color::Yellow);
        }
        return cfg;
    };

    const Configuration four = paint_sectors(4);
    CHECK(has_four_arm_alternating(lat, four, ann));
    CHECK(!has_five_arm_alternating(lat, four, ann));
    CHECK(refarms::reference_four_arm(lat, ann, four));

    const Configuration six = paint_sectors(6);
    CHECK(has_four_arm_alternating(lat, six, ann));
    CHECK(has_five_arm_alternating(lat, six, ann));

    CHECK(!has_four_arm_alternating(lat, fill(lat, Color::Blue), ann));
}

TEST_CASE("cyclic pattern search") {
    using V = std::vector<std::pair<std::int32_t, std::uint8_t>>;
    CHECK(cyclic_alternating_pattern(V{{1, 1}, {2, 0}, {3, 1}, {4, 0}}, 4));
    // rotation
    CHECK(cyclic_alternating_pattern(V{{2, 0}, {3, 1}, {4, 0}, {1, 1}}, 4));
    // repeated cluster may not serve two arms
    CHECK(!cyclic_alternating_pattern(V{{1, 1}, {2, 0}, {1, 1}, {4, 0}}, 4));
    CHECK(!cyclic_alternating_pattern(V{{1, 1}, {2, 0}, {3, 1}, {2, 0}}, 4));
    CHECK(!cyclic_alternating_pattern(V{{1, 1}, {2, 0}, {3, 1}}, 4));
    CHECK(cyclic_alternating_pattern(
        V{{1, 1}, {2, 0}, {3, 1}, {4, 0}, {5, 1}}, 5));
    CHECK(!cyclic_alternating_pattern(
        V{{1, 1}, {2, 0}, {3, 1}, {4, 0}, {1, 1}}, 5));
    // extra noise between pattern entries is fine
    CHECK(cyclic_alternating_pattern(
        V{{1, 1}, {9, 1}, {2, 0}, {3, 1}, {8, 0}, {4, 0}}, 4));
}

TEST_CASE("square-bond duality: exhaustive on small windows") {
    for (const auto& [w, h] : {std::pair{2.0, 2.0}, std::pair{3.0, 2.0}}) {
        const Lattice lat = bond_corner(w, h);
        REQUIRE(lat.tile_count() <= 17);
        const CrossRegion primal(
            lat, {lat.window(), Color::Blue, Direction::Horizontal});
        const CrossRegion dual(
            lat, {RectRegion::from_corner(0.5, 0, w - 1.0, h), Color::Yellow,
                  Direction::Vertical});
        ConnScratch s;
        Configuration cfg(lat.tile_count(), Color::Yellow);
        for (std::uint64_t mask = 0;
             mask < (std::uint64_t{1} << lat.tile_count()); ++mask) {
            set_mask(cfg, mask);
            const bool b = primal.eval(cfg, s);
            const bool y = dual.eval(cfg, s);
            REQUIRE(b != y);
        }
    }
}

TEST_CASE("square-bond duality: sampled on a larger window") {
    const Lattice lat = bond_corner(12, 9);
    const CrossRegion primal(
        lat, {lat.window(), Color::Blue, Direction::Horizontal});
    const CrossRegion dual(lat, {RectRegion::from_corner(0.5, 0, 11, 9),
                                 Color::Yellow, Direction::Vertical});
    ConnScratch s;
    for (double p : {0.35, 0.5, 0.62}) {
        const ProbabilityField f = ProbabilityField::uniform(p);
        for (std::uint64_t rep = 0; rep < 400; ++rep) {
            const Configuration cfg = sample_configuration(lat, f, 31, rep);
            REQUIRE(primal.eval(cfg, s) != dual.eval(cfg, s));
        }
    }
}

TEST_CASE("pivotality identity on both lattices") {
    ConnScratch s;

    const auto check_identity = [&](const Lattice& lat, const RectRegion& Q,
                                    TileId t, double p, int reps) {
        const CrossRegion cross(lat, {Q, Color::Blue, Direction::Horizontal});
        const PivotalRegion piv(lat, Q, t);
        std::int32_t tm = -1;
        for (std::size_t i = 0; i < cross.members().size(); ++i)
            if (cross.members()[i] == t) tm = static_cast<std::int32_t>(i);
        REQUIRE(tm >= 0);
        const ProbabilityField f = ProbabilityField::uniform(p);
        std::vector<std::uint8_t> colors;
        int pivotal_seen = 0;
        for (int rep = 0; rep < reps; ++rep) {
            const Configuration cfg = sample_configuration(lat, f, 77, rep);
            cross.load_colors(cfg, colors);
            const bool arms = piv.eval(colors.data(), s);
            colors[tm] = 1;
            const bool with_blue = cross.eval(colors.data(), s);
            colors[tm] = 0;
            const bool with_yellow = cross.eval(colors.data(), s);
            REQUIRE(arms == (with_blue && !with_yellow));
            pivotal_seen += arms;
        }
        CHECK(pivotal_seen > 0); // the identity was exercised on both sides
    };

    const Lattice bond = bond_corner(4, 4);
    check_identity(bond, bond.window(),
                   bond.tiles_in_disk({2, 2}, 0.6).front(), 0.5, 10000);

    const Lattice tri = tri_corner(5, 4.4);
    check_identity(tri, tri.window(),
                   tri.tiles_in_disk({2.5, 2.2}, 1.0).front(), 0.5, 10000);
}

TEST_CASE("four-arm-to-sides constructions and errors") {
    // blue row through t, all else yellow
    const Lattice tri = tri_corner(5, 4.4);
    Configuration cfg = fill(tri, Color::Yellow);
    TileId t = -1;
    for (TileId i = 0; i < tri.tile_count(); ++i) {
        const Point p = tri.position(i);
        if (p.y == doctest::Approx(2 * 0.8660254037844386)) {
            cfg.set(i, Color::Blue);
            if (p.x == 2.0) t = i;
        }
    }
    REQUIRE(t >= 0);
    CHECK(has_four_arm_to_sides(tri, cfg, t, tri.window()));
    CHECK(!has_four_arm_to_sides(tri, fill(tri, Color::Blue), t,
                                 tri.window()));

    // corner tile violates the R/4 centrality precondition
    CHECK_THROWS_WITH(
        (void)has_four_arm_to_sides(tri, cfg, 0, tri.window()),
        "tile not central");
}

TEST_CASE("four-arm event containment across scales, per sample") {
    const Lattice lat = tri_centered(26);
    const AnnulusIndex big(lat, {{0, 0}, 1.0, 12.0});
    const AnnulusIndex in(lat, {{0, 0}, 1.0, 5.0});
    const AnnulusIndex out(lat, {{0, 0}, 5.0, 12.0});
    ConnScratch s;
    int hits = 0;
    for (std::uint64_t rep = 0; rep < 400; ++rep) {
        const Configuration cfg =
            sample_configuration(lat, ProbabilityField::critical(), 5, rep);
        if (big.eval(cfg, s).four_arm) {
            ++hits;
            CHECK(in.eval(cfg, s).four_arm);
            CHECK(out.eval(cfg, s).four_arm);
        }
    }
    CHECK(hits > 0);
}

TEST_CASE("detector matches the disjoint-path reference") {
    // annuli wide enough that the inner and outer bands are disjoint
    const Lattice tri = tri_centered(10);
    const AnnulusRegion ann_tri{{0, 0}, 0.9, 3.2};
    const ProbabilityField f = ProbabilityField::critical();
    int four_seen = 0;
    for (std::uint64_t rep = 0; rep < 1200; ++rep) {
        const Configuration cfg = sample_configuration(tri, f, 13, rep);
        const bool fast = has_four_arm_alternating(tri, cfg, ann_tri);
        REQUIRE(fast == refarms::reference_four_arm(tri, ann_tri, cfg));
        four_seen += fast;
    }
    CHECK(four_seen > 0);

    const Lattice bond = Lattice::build(
        {LatticeKind::SquareBond, 1.0, RectRegion::square({0, 0}, 10)});
    const AnnulusRegion ann_bond{{0, 0}, 0.9, 3.2};
    four_seen = 0;
    for (std::uint64_t rep = 0; rep < 1200; ++rep) {
        const Configuration cfg = sample_configuration(bond, f, 14, rep);
        const bool fast = has_four_arm_alternating(bond, cfg, ann_bond);
        REQUIRE(fast == refarms::reference_four_arm(bond, ann_bond, cfg));
        four_seen += fast;
    }
    CHECK(four_seen > 0);
}

TEST_CASE("crossing monotone under adding blue") {
    const Lattice lat = tri_corner(7, 6);
    const CrossRegion cross(
        lat, {lat.window(), Color::Blue, Direction::Horizontal});
    ConnScratch s;
    std::vector<std::uint8_t> colors;
    for (std::uint64_t rep = 0; rep < 300; ++rep) {
        const Configuration cfg =
            sample_configuration(lat, ProbabilityField::uniform(0.45), 3, rep);
        cross.load_colors(cfg, colors);
        const bool before = cross.eval(colors.data(), s);
        // flip one yellow tile to blue
        for (std::size_t i = 0; i < colors.size(); ++i)
            if (!colors[i]) {
                colors[i] = 1;
                break;
            }
        const bool after = cross.eval(colors.data(), s);
        REQUIRE((!before || after));
    }
}
