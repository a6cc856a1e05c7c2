#pragma once

#include "geometry.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace percolab {

using TileId = std::int64_t;

enum class LatticeKind { TriangularSite, SquareBond };

struct LatticeSpec {
    LatticeKind kind = LatticeKind::TriangularSite;
    double mesh = 1.0;
    RectRegion window;
};

// A finite percolation geometry: the set of random tiles (sites of the
// triangular lattice, or bonds of the square lattice) whose reference points
// lie in the window, with per-color adjacency.
//
// Reference points: site centers for triangular-site, bond midpoints for
// square-bond. All region membership uses the reference point.
//
// Square-bond adjacency is color dependent: blue paths connect bonds sharing
// a primal vertex, yellow paths connect bonds bordering a common face (dual
// adjacency). This makes blue/yellow crossing duality exact on vertex-aligned
// rectangles, which the pivotality checks rely on.
class Lattice {
  public:
    static Lattice build(const LatticeSpec& spec);

    const LatticeSpec& spec() const { return spec_; }
    LatticeKind kind() const { return spec_.kind; }
    double mesh() const { return spec_.mesh; }
    const RectRegion& window() const { return spec_.window; }

    std::int64_t tile_count() const {
        return static_cast<std::int64_t>(xs_.size());
    }
    Point position(TileId t) const { return {xs_[t], ys_[t]}; }

    // Geometric comparison slack; all boundary ties resolve inclusively.
    double eps() const { return 1e-9 * spec_.mesh; }

    // Boundary-band widths for side touching (one tile spacing per axis).
    double band_x() const { return spec_.mesh; }
    double band_y() const { return band_y_; }

    std::span<const TileId> neighbors(TileId t, Color c) const;

    // All tiles with reference point within rho of z, ascending TileId.
    std::vector<TileId> tiles_in_disk(Point z, double rho) const;

    // All tiles with reference point in the closed annulus, ascending TileId.
    // Throws if the annulus is invalid or escapes the window.
    std::vector<TileId> tiles_in_annulus(const AnnulusRegion& a) const;

    std::vector<TileId> tiles_in_rect(const RectRegion& r) const;

    bool in_rect(TileId t, const RectRegion& r) const {
        return r.contains(position(t), eps());
    }

    // Whether tile t counts as touching the given side of the rectangle for
    // a path of the given color.
    bool side_touch(TileId t, const RectRegion& r, Side s, Color c) const;

    bool is_horizontal_bond(TileId t) const {
        return kind() == LatticeKind::SquareBond && t < n_horizontal_;
    }

  private:
    Lattice() = default;

    void build_triangular();
    void build_square_bond();
    void push_neighbor_lists(const std::vector<std::vector<TileId>>& blue,
                             const std::vector<std::vector<TileId>>& yellow);

    LatticeSpec spec_;
    double band_y_ = 0.0;
    std::int64_t n_horizontal_ = 0; // square-bond: ids below are horizontal

    std::vector<double> xs_, ys_;

    // CSR adjacency. Triangular shares one table for both colors.
    std::vector<std::int64_t> blue_off_;
    std::vector<TileId> blue_adj_;
    std::vector<std::int64_t> yellow_off_;
    std::vector<TileId> yellow_adj_;
};

} // namespace percolab
