#pragma once

#include "lattice.hpp"
#include "sampling.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace percolab {

struct CrossingQuery {
    RectRegion rect;
    Color color = Color::Blue;
    Direction dir = Direction::Horizontal;
};

class UnionFind {
  public:
    void reset(std::int64_t n) { p_.assign(n, -1); }
    std::int32_t find(std::int32_t x) {
        while (p_[x] >= 0) {
            if (p_[p_[x]] >= 0) p_[x] = p_[p_[x]];
            x = p_[x];
        }
        return x;
    }
    void unite(std::int32_t a, std::int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (p_[a] > p_[b]) std::swap(a, b); // a keeps the larger set
        p_[a] += p_[b];
        p_[b] = a;
    }

  private:
    std::vector<std::int32_t> p_;
};

// Reusable per-worker buffers for the detectors.
struct ConnScratch {
    UnionFind uf;
    std::vector<std::uint8_t> flags;
    std::vector<std::uint8_t> colors;
    std::vector<std::uint8_t> colors2;
    std::vector<std::pair<std::int32_t, std::uint8_t>> visits;
    std::vector<std::int32_t> arc_tiles;  // inner-band tiles per visit arc
    std::vector<std::int32_t> arc_begin;  // per visit, range into arc_tiles
    std::vector<std::int32_t> arc_end;
};

// Index over the tiles of one rectangular crossing query, reused across many
// configurations. colors arrays are indexed by member position, 1 = blue.
class CrossRegion {
  public:
    CrossRegion(const Lattice& lat, const CrossingQuery& q);

    const std::vector<TileId>& members() const { return members_; }
    const CrossingQuery& query() const { return query_; }

    bool eval(const std::uint8_t* colors, ConnScratch& s) const;
    bool eval(const Configuration& cfg, ConnScratch& s) const;

    void load_colors(const Configuration& cfg,
                     std::vector<std::uint8_t>& out) const;

  private:
    CrossingQuery query_;
    std::vector<TileId> members_;
    std::vector<std::pair<std::int32_t, std::int32_t>> pairs_;
    std::vector<std::int32_t> band_a_, band_b_;
};

struct ArmEvents {
    bool one_arm_blue = false;
    bool one_arm_yellow = false;
    bool four_arm = false; // alternating B,Y,B,Y crossings, distinct clusters
    bool five_arm = false; // B,Y,B,Y,B with five distinct clusters
};

struct ArmQuery {
    AnnulusRegion annulus;
    enum class Pattern { OneArm, FourAlternating } pattern =
        Pattern::FourAlternating;
    Color color = Color::Blue; // used by OneArm
};

// Index over the tiles of an annulus. Detects one-arm events and the
// alternating four/five-arm events via the cyclic sequence of crossing
// clusters around the inner boundary.
class AnnulusIndex {
  public:
    AnnulusIndex(const Lattice& lat, const AnnulusRegion& a);

    const std::vector<TileId>& members() const { return members_; }
    const AnnulusRegion& annulus() const { return annulus_; }

    ArmEvents eval(const std::uint8_t* colors, ConnScratch& s) const;
    ArmEvents eval(const Configuration& cfg, ConnScratch& s) const;

    void load_colors(const Configuration& cfg,
                     std::vector<std::uint8_t>& out) const;

  private:
    bool arm_pattern(int arms, const std::uint8_t* colors,
                     ConnScratch& s) const;
    bool disjoint_paths_in_cluster(
        std::int32_t root, const std::uint8_t* colors, ConnScratch& s,
        const std::vector<std::int32_t>& arc_ids) const;

    AnnulusRegion annulus_;
    bool same_adjacency_ = true;
    std::vector<TileId> members_;
    std::vector<std::pair<std::int32_t, std::int32_t>> blue_pairs_;
    std::vector<std::pair<std::int32_t, std::int32_t>> yellow_pairs_;
    // full adjacency over member indices, per color class
    std::vector<std::int32_t> adj_off_[2];
    std::vector<std::int32_t> adj_lst_[2];
    std::vector<std::int32_t> inner_band_, outer_band_;
    std::vector<std::uint8_t> is_outer_;     // per member
    std::vector<std::int32_t> inner_visits_; // inner band, by angle
};

// Four-sides pivotality event A4'(t, dQ): with t forced blue its blue
// cluster in Q reaches the left and right sides; with t forced yellow its
// yellow cluster reaches top and bottom. Equivalent to t being pivotal for
// the horizontal blue crossing of Q.
class PivotalRegion {
  public:
    PivotalRegion(const Lattice& lat, const RectRegion& rect, TileId t);

    // Anchors the four-sides event at any tile of the rect, skipping the
    // R/4 centrality precondition (used by full-coverage switch schedules).
    struct AnyTile {};
    PivotalRegion(const Lattice& lat, const RectRegion& rect, TileId t,
                  AnyTile);

    const std::vector<TileId>& members() const { return members_; }
    std::int32_t pivot_member() const { return pivot_; }

    bool eval(const std::uint8_t* colors, ConnScratch& s) const;
    bool eval(const Configuration& cfg, ConnScratch& s) const;

    void load_colors(const Configuration& cfg,
                     std::vector<std::uint8_t>& out) const;

  private:
    RectRegion rect_;
    std::int32_t pivot_ = -1;
    std::vector<TileId> members_;
    std::vector<std::pair<std::int32_t, std::int32_t>> blue_pairs_;
    std::vector<std::pair<std::int32_t, std::int32_t>> yellow_pairs_;
    std::vector<std::int32_t> left_blue_, right_blue_;
    std::vector<std::int32_t> top_yellow_, bottom_yellow_;
};

// Cyclic visit sequence search: does the collapsed sequence of (cluster,
// color) visits contain `arms` entries in cyclic order with colors
// B,Y,B,Y(,B) and pairwise distinct clusters? Exposed for tests.
bool cyclic_alternating_pattern(
    const std::vector<std::pair<std::int32_t, std::uint8_t>>& visits,
    int arms);

// One-shot conveniences.
bool has_crossing(const Lattice& lat, const Configuration& cfg,
                  const CrossingQuery& q);
bool has_one_arm(const Lattice& lat, const Configuration& cfg,
                 const AnnulusRegion& a, Color color);
bool has_four_arm_alternating(const Lattice& lat, const Configuration& cfg,
                              const AnnulusRegion& a);
bool has_five_arm_alternating(const Lattice& lat, const Configuration& cfg,
                              const AnnulusRegion& a);
bool has_four_arm_to_sides(const Lattice& lat, const Configuration& cfg,
                           TileId t, const RectRegion& rect);

} // namespace percolab
