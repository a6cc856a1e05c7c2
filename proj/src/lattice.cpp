#include "percolab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace percolab {

namespace {

constexpr double kSqrt3Half = 0.8660254037844386;

// floor((len + eps) / step), guarded against tiny negative lengths
long grid_steps(double len, double step, double eps) {
    if (len < -eps) return -1;
    return static_cast<long>(std::floor((len + eps) / step));
}

} // namespace

Lattice Lattice::build(const LatticeSpec& spec) {
    if (!(spec.mesh > 0.0))
        throw std::invalid_argument("invalid lattice spec: mesh must be > 0");
    if (!spec.window.valid())
        throw std::invalid_argument(
            "invalid lattice spec: window must have positive extent");

    Lattice lat;
    lat.spec_ = spec;
    switch (spec.kind) {
    case LatticeKind::TriangularSite: lat.build_triangular(); break;
    case LatticeKind::SquareBond: lat.build_square_bond(); break;
    }
    if (lat.tile_count() == 0) throw std::runtime_error("degenerate window");
    return lat;
}

void Lattice::build_triangular() {
    const double m = spec_.mesh;
    const double pitch = m * kSqrt3Half;
    band_y_ = pitch;
    const RectRegion& w = spec_.window;
    const double e = eps();

    const long nrows = grid_steps(w.height, pitch, e);
    if (nrows < 0) return;

    // Row j sits at y0 + j*pitch, odd rows offset half a spacing in x.
    std::vector<long> row_count(nrows + 1, 0);
    std::vector<std::int64_t> row_start(nrows + 2, 0);
    for (long j = 0; j <= nrows; ++j) {
        const double off = (j & 1) ? 0.5 * m : 0.0;
        row_count[j] = grid_steps(w.width - off, m, e) + 1;
        if (row_count[j] < 0) row_count[j] = 0;
        row_start[j + 1] = row_start[j] + row_count[j];
    }

    const std::int64_t n = row_start[nrows + 1];
    xs_.reserve(n);
    ys_.reserve(n);
    for (long j = 0; j <= nrows; ++j) {
        const double off = (j & 1) ? 0.5 * m : 0.0;
        for (long i = 0; i < row_count[j]; ++i) {
            xs_.push_back(w.x0() + off + i * m);
            ys_.push_back(w.y0() + j * pitch);
        }
    }

    std::vector<std::vector<TileId>> adj(n);
    auto id_at = [&](long j, long i) -> TileId {
        if (j < 0 || j > nrows || i < 0 || i >= row_count[j]) return -1;
        return row_start[j] + i;
    };
    for (long j = 0; j <= nrows; ++j) {
        for (long i = 0; i < row_count[j]; ++i) {
            const TileId t = row_start[j] + i;
            // same row, then the two sites in each adjacent row
            const long lo = (j & 1) ? 0 : -1;
            const TileId cand[6] = {id_at(j, i - 1),      id_at(j, i + 1),
                                    id_at(j - 1, i + lo), id_at(j - 1, i + lo + 1),
                                    id_at(j + 1, i + lo), id_at(j + 1, i + lo + 1)};
            for (TileId c : cand)
                if (c >= 0) adj[t].push_back(c);
        }
    }
    push_neighbor_lists(adj, {});
}

void Lattice::build_square_bond() {
    const double m = spec_.mesh;
    band_y_ = m;
    const RectRegion& w = spec_.window;
    const double e = eps();

    // Vertex grid (i,j), i in 0..vx, j in 0..vy. Keep bonds whose midpoint
    // lies in the closed window.
    const long vx = grid_steps(w.width, m, e);
    const long vy = grid_steps(w.height, m, e);
    if (vx < 0 || vy < 0) return;

    const long h_cols = vx;      // H(i,j): (i,j)-(i+1,j), i<vx
    const long h_rows = vy + 1;
    const long v_cols = vx + 1;  // V(i,j): (i,j)-(i,j+1), j<vy
    const long v_rows = vy;

    n_horizontal_ = static_cast<std::int64_t>(h_cols) * h_rows;
    const std::int64_t n = n_horizontal_ +
                           static_cast<std::int64_t>(v_cols) * v_rows;
    if (n == 0) return;
    xs_.reserve(n);
    ys_.reserve(n);
    for (long j = 0; j < h_rows; ++j)
        for (long i = 0; i < h_cols; ++i) {
            xs_.push_back(w.x0() + (i + 0.5) * m);
            ys_.push_back(w.y0() + j * m);
        }
    for (long j = 0; j < v_rows; ++j)
        for (long i = 0; i < v_cols; ++i) {
            xs_.push_back(w.x0() + i * m);
            ys_.push_back(w.y0() + (j + 0.5) * m);
        }

    auto h_id = [&](long i, long j) -> TileId {
        if (i < 0 || i >= h_cols || j < 0 || j >= h_rows) return -1;
        return j * h_cols + i;
    };
    auto v_id = [&](long i, long j) -> TileId {
        if (i < 0 || i >= v_cols || j < 0 || j >= v_rows) return -1;
        return n_horizontal_ + j * v_cols + i;
    };

    std::vector<std::vector<TileId>> blue(n), yellow(n);

    // Blue: bonds sharing a primal vertex. Vertex (i,j) meets H(i-1,j),
    // H(i,j), V(i,j-1), V(i,j).
    auto vertex_bonds = [&](long i, long j, TileId out[4]) {
        out[0] = h_id(i - 1, j);
        out[1] = h_id(i, j);
        out[2] = v_id(i, j - 1);
        out[3] = v_id(i, j);
    };
    for (long j = 0; j <= vy; ++j)
        for (long i = 0; i <= vx; ++i) {
            TileId b[4];
            vertex_bonds(i, j, b);
            for (int a = 0; a < 4; ++a)
                for (int c = 0; c < 4; ++c)
                    if (a != c && b[a] >= 0 && b[c] >= 0)
                        blue[b[a]].push_back(b[c]);
        }

    // Yellow: bonds bordering a common face. Face (i,j) is bordered by
    // H(i,j), H(i,j+1), V(i,j), V(i+1,j).
    for (long j = 0; j < vy; ++j)
        for (long i = 0; i < vx; ++i) {
            const TileId b[4] = {h_id(i, j), h_id(i, j + 1), v_id(i, j),
                                 v_id(i + 1, j)};
            for (int a = 0; a < 4; ++a)
                for (int c = 0; c < 4; ++c)
                    if (a != c && b[a] >= 0 && b[c] >= 0)
                        yellow[b[a]].push_back(b[c]);
        }

    for (auto* lists : {&blue, &yellow})
        for (auto& v : *lists) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
    push_neighbor_lists(blue, yellow);
}

void Lattice::push_neighbor_lists(
    const std::vector<std::vector<TileId>>& blue,
    const std::vector<std::vector<TileId>>& yellow) {
    auto fill = [](const std::vector<std::vector<TileId>>& src,
                   std::vector<std::int64_t>& off, std::vector<TileId>& adj) {
        off.assign(src.size() + 1, 0);
        std::int64_t total = 0;
        for (std::size_t i = 0; i < src.size(); ++i) {
            total += static_cast<std::int64_t>(src[i].size());
            off[i + 1] = total;
        }
        adj.reserve(total);
        for (const auto& v : src) adj.insert(adj.end(), v.begin(), v.end());
    };
    fill(blue, blue_off_, blue_adj_);
    if (!yellow.empty()) fill(yellow, yellow_off_, yellow_adj_);
}

std::span<const TileId> Lattice::neighbors(TileId t, Color c) const {
    const bool dual = c == Color::Yellow && kind() == LatticeKind::SquareBond;
    const auto& off = dual ? yellow_off_ : blue_off_;
    const auto& adj = dual ? yellow_adj_ : blue_adj_;
    return {adj.data() + off[t], static_cast<std::size_t>(off[t + 1] - off[t])};
}

std::vector<TileId> Lattice::tiles_in_disk(Point z, double rho) const {
    if (!(rho > 0.0)) throw std::invalid_argument("tiles_in_disk: rho <= 0");
    const double r2 = (rho + eps()) * (rho + eps());
    std::vector<TileId> out;
    for (TileId t = 0; t < tile_count(); ++t)
        if (dist2(position(t), z) <= r2) out.push_back(t);
    return out;
}

std::vector<TileId> Lattice::tiles_in_annulus(const AnnulusRegion& a) const {
    if (!a.valid()) throw std::invalid_argument("invalid annulus");
    if (!spec_.window.contains_disk(a.center, a.r_out, eps()))
        throw std::runtime_error("region outside lattice");
    const double lo2 = (a.r_in - eps()) * (a.r_in - eps());
    const double hi2 = (a.r_out + eps()) * (a.r_out + eps());
    std::vector<TileId> out;
    for (TileId t = 0; t < tile_count(); ++t) {
        const double d2 = dist2(position(t), a.center);
        if (d2 >= lo2 && d2 <= hi2) out.push_back(t);
    }
    return out;
}

std::vector<TileId> Lattice::tiles_in_rect(const RectRegion& r) const {
    std::vector<TileId> out;
    for (TileId t = 0; t < tile_count(); ++t)
        if (in_rect(t, r)) out.push_back(t);
    return out;
}

bool Lattice::side_touch(TileId t, const RectRegion& r, Side s, Color c) const {
    const Point p = position(t);
    const double e = eps();
    double gap = 0.0;
    bool x_axis = false;
    switch (s) {
    case Side::Left: gap = p.x - r.x0(); x_axis = true; break;
    case Side::Right: gap = r.x1() - p.x; x_axis = true; break;
    case Side::Bottom: gap = p.y - r.y0(); break;
    case Side::Top: gap = r.y1() - p.y; break;
    }

    if (kind() == LatticeKind::TriangularSite) {
        const double band = x_axis ? band_x() : band_y();
        return gap < band - e;
    }

    // Square-bond: a tile touches a side when its segment reaches the side's
    // line. Blue uses the bond segment, yellow its dual segment; each spans
    // half a spacing along its own orientation and nothing across it.
    const bool horiz = is_horizontal_bond(t);
    const bool seg_along_x = (c == Color::Blue) ? horiz : !horiz;
    const double reach = (seg_along_x == x_axis) ? 0.5 * spec_.mesh : 0.0;
    return gap <= reach + e;
}

} // namespace percolab
