#include "percolab/connectivity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace percolab {

namespace {

std::vector<std::int32_t> build_member_map(const Lattice& lat,
                                           const std::vector<TileId>& members) {
    std::vector<std::int32_t> map(lat.tile_count(), -1);
    for (std::size_t i = 0; i < members.size(); ++i)
        map[members[i]] = static_cast<std::int32_t>(i);
    return map;
}

void build_pairs(const Lattice& lat, const std::vector<TileId>& members,
                 const std::vector<std::int32_t>& map, Color c,
                 std::vector<std::pair<std::int32_t, std::int32_t>>& pairs) {
    for (std::size_t i = 0; i < members.size(); ++i) {
        const auto m = static_cast<std::int32_t>(i);
        for (TileId nb : lat.neighbors(members[i], c)) {
            const std::int32_t m2 = map[nb];
            if (m2 > m) pairs.emplace_back(m, m2);
        }
    }
}

void load_member_colors(const std::vector<TileId>& members,
                        const Configuration& cfg,
                        std::vector<std::uint8_t>& out) {
    out.resize(members.size());
    for (std::size_t i = 0; i < members.size(); ++i)
        out[i] = cfg.blue(members[i]) ? 1 : 0;
}

} // namespace

// ---------------------------------------------------------------- CrossRegion

CrossRegion::CrossRegion(const Lattice& lat, const CrossingQuery& q)
    : query_(q) {
    if (!q.rect.valid()) throw std::invalid_argument("invalid crossing rect");
    if (!lat.window().contains_rect(q.rect, lat.eps()))
        throw std::runtime_error("region outside lattice");
    members_ = lat.tiles_in_rect(q.rect);
    if (members_.empty()) throw std::runtime_error("empty query");
    const auto map = build_member_map(lat, members_);
    build_pairs(lat, members_, map, q.color, pairs_);

    const Side a = q.dir == Direction::Horizontal ? Side::Left : Side::Bottom;
    const Side b = q.dir == Direction::Horizontal ? Side::Right : Side::Top;
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (lat.side_touch(members_[i], q.rect, a, q.color))
            band_a_.push_back(static_cast<std::int32_t>(i));
        if (lat.side_touch(members_[i], q.rect, b, q.color))
            band_b_.push_back(static_cast<std::int32_t>(i));
    }
}

bool CrossRegion::eval(const std::uint8_t* colors, ConnScratch& s) const {
    const auto n = static_cast<std::int32_t>(members_.size());
    const std::uint8_t target = query_.color == Color::Blue ? 1 : 0;
    s.uf.reset(n + 2);
    const std::int32_t va = n, vb = n + 1;
    for (const auto& [a, b] : pairs_)
        if (colors[a] == target && colors[b] == target) s.uf.unite(a, b);
    for (std::int32_t m : band_a_)
        if (colors[m] == target) s.uf.unite(m, va);
    for (std::int32_t m : band_b_)
        if (colors[m] == target) s.uf.unite(m, vb);
    return s.uf.find(va) == s.uf.find(vb);
}

bool CrossRegion::eval(const Configuration& cfg, ConnScratch& s) const {
    load_member_colors(members_, cfg, s.colors);
    return eval(s.colors.data(), s);
}

void CrossRegion::load_colors(const Configuration& cfg,
                              std::vector<std::uint8_t>& out) const {
    load_member_colors(members_, cfg, out);
}

// --------------------------------------------------------------- AnnulusIndex

AnnulusIndex::AnnulusIndex(const Lattice& lat, const AnnulusRegion& a)
    : annulus_(a) {
    members_ = lat.tiles_in_annulus(a); // validates the annulus
    if (members_.empty()) throw std::runtime_error("empty query");
    const auto map = build_member_map(lat, members_);
    same_adjacency_ = lat.kind() != LatticeKind::SquareBond;
    build_pairs(lat, members_, map, Color::Blue, blue_pairs_);
    if (!same_adjacency_)
        build_pairs(lat, members_, map, Color::Yellow, yellow_pairs_);

    for (int cls = 0; cls < (same_adjacency_ ? 1 : 2); ++cls) {
        const Color c = cls == 0 ? Color::Blue : Color::Yellow;
        adj_off_[cls].assign(members_.size() + 1, 0);
        for (std::size_t i = 0; i < members_.size(); ++i) {
            std::int32_t deg = 0;
            for (TileId nb : lat.neighbors(members_[i], c))
                deg += map[nb] >= 0;
            adj_off_[cls][i + 1] = adj_off_[cls][i] + deg;
        }
        adj_lst_[cls].resize(adj_off_[cls].back());
        for (std::size_t i = 0; i < members_.size(); ++i) {
            std::int32_t at = adj_off_[cls][i];
            for (TileId nb : lat.neighbors(members_[i], c))
                if (map[nb] >= 0) adj_lst_[cls][at++] = map[nb];
        }
    }

    const double band = lat.mesh();
    const double e = lat.eps();
    is_outer_.assign(members_.size(), 0);
    for (std::size_t i = 0; i < members_.size(); ++i) {
        const double d = dist(lat.position(members_[i]), a.center);
        if (d < a.r_in + band - e)
            inner_band_.push_back(static_cast<std::int32_t>(i));
        if (d > a.r_out - band + e) {
            outer_band_.push_back(static_cast<std::int32_t>(i));
            is_outer_[i] = 1;
        }
    }

    inner_visits_ = inner_band_;
    std::vector<double> angle(inner_visits_.size());
    for (std::size_t i = 0; i < inner_visits_.size(); ++i) {
        const Point p = lat.position(members_[inner_visits_[i]]);
        angle[i] = std::atan2(p.y - a.center.y, p.x - a.center.x);
    }
    std::vector<std::size_t> order(inner_visits_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t u, std::size_t v) {
        if (angle[u] != angle[v]) return angle[u] < angle[v];
        return inner_visits_[u] < inner_visits_[v];
    });
    std::vector<std::int32_t> sorted(inner_visits_.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        sorted[i] = inner_visits_[order[i]];
    inner_visits_ = std::move(sorted);
}

ArmEvents AnnulusIndex::eval(const std::uint8_t* colors, ConnScratch& s) const {
    const auto n = static_cast<std::int32_t>(members_.size());
    s.uf.reset(n);
    if (same_adjacency_) {
        for (const auto& [a, b] : blue_pairs_)
            if (colors[a] == colors[b]) s.uf.unite(a, b);
    } else {
        for (const auto& [a, b] : blue_pairs_)
            if (colors[a] == 1 && colors[b] == 1) s.uf.unite(a, b);
        for (const auto& [a, b] : yellow_pairs_)
            if (colors[a] == 0 && colors[b] == 0) s.uf.unite(a, b);
    }

    s.flags.assign(n, 0);
    for (std::int32_t m : inner_band_) s.flags[s.uf.find(m)] |= 1;
    for (std::int32_t m : outer_band_) s.flags[s.uf.find(m)] |= 2;

    ArmEvents ev;
    s.visits.clear();
    for (std::int32_t m : inner_visits_) {
        const std::int32_t r = s.uf.find(m);
        if (s.flags[r] != 3) continue;
        (colors[m] ? ev.one_arm_blue : ev.one_arm_yellow) = true;
        if (!s.visits.empty() && s.visits.back().first == r) continue;
        s.visits.emplace_back(r, colors[m]);
    }
    if (s.visits.size() > 1 && s.visits.front().first == s.visits.back().first)
        s.visits.pop_back();

    ev.four_arm = cyclic_alternating_pattern(s.visits, 4);
    if (ev.four_arm) ev.five_arm = cyclic_alternating_pattern(s.visits, 5);
    return ev;
}

ArmEvents AnnulusIndex::eval(const Configuration& cfg, ConnScratch& s) const {
    load_member_colors(members_, cfg, s.colors);
    return eval(s.colors.data(), s);
}

void AnnulusIndex::load_colors(const Configuration& cfg,
                               std::vector<std::uint8_t>& out) const {
    load_member_colors(members_, cfg, out);
}

// -------------------------------------------------------------- PivotalRegion

PivotalRegion::PivotalRegion(const Lattice& lat, const RectRegion& rect,
                             TileId t)
    : PivotalRegion(lat, rect, t, AnyTile{}) {
    const double r = std::min(rect.width, rect.height);
    if (dist(lat.position(t), rect.center) > 0.25 * r + lat.eps())
        throw std::invalid_argument("tile not central");
}

PivotalRegion::PivotalRegion(const Lattice& lat, const RectRegion& rect,
                             TileId t, AnyTile)
    : rect_(rect) {
    if (!rect.valid()) throw std::invalid_argument("invalid rect");
    if (!lat.window().contains_rect(rect, lat.eps()))
        throw std::runtime_error("region outside lattice");
    members_ = lat.tiles_in_rect(rect);
    if (members_.empty()) throw std::runtime_error("empty query");

    const auto map = build_member_map(lat, members_);
    pivot_ = map[t];
    if (pivot_ < 0) throw std::invalid_argument("tile not in rect");

    build_pairs(lat, members_, map, Color::Blue, blue_pairs_);
    if (lat.kind() == LatticeKind::SquareBond)
        build_pairs(lat, members_, map, Color::Yellow, yellow_pairs_);

    for (std::size_t i = 0; i < members_.size(); ++i) {
        const auto m = static_cast<std::int32_t>(i);
        if (lat.side_touch(members_[i], rect, Side::Left, Color::Blue))
            left_blue_.push_back(m);
        if (lat.side_touch(members_[i], rect, Side::Right, Color::Blue))
            right_blue_.push_back(m);
        if (lat.side_touch(members_[i], rect, Side::Top, Color::Yellow))
            top_yellow_.push_back(m);
        if (lat.side_touch(members_[i], rect, Side::Bottom, Color::Yellow))
            bottom_yellow_.push_back(m);
    }
}

bool PivotalRegion::eval(const std::uint8_t* colors, ConnScratch& s) const {
    const auto n = static_cast<std::int32_t>(members_.size());
    const auto& ypairs = yellow_pairs_.empty() ? blue_pairs_ : yellow_pairs_;

    s.colors2.assign(colors, colors + n);

    // Blue arms to left and right with t forced blue.
    s.colors2[pivot_] = 1;
    s.uf.reset(n + 2);
    const std::int32_t va = n, vb = n + 1;
    for (const auto& [a, b] : blue_pairs_)
        if (s.colors2[a] == 1 && s.colors2[b] == 1) s.uf.unite(a, b);
    for (std::int32_t m : left_blue_)
        if (s.colors2[m] == 1) s.uf.unite(m, va);
    for (std::int32_t m : right_blue_)
        if (s.colors2[m] == 1) s.uf.unite(m, vb);
    {
        const std::int32_t rt = s.uf.find(pivot_);
        if (rt != s.uf.find(va) || rt != s.uf.find(vb)) return false;
    }

    // Yellow arms to top and bottom with t forced yellow.
    s.colors2[pivot_] = 0;
    s.uf.reset(n + 2);
    for (const auto& [a, b] : ypairs)
        if (s.colors2[a] == 0 && s.colors2[b] == 0) s.uf.unite(a, b);
    for (std::int32_t m : top_yellow_)
        if (s.colors2[m] == 0) s.uf.unite(m, va);
    for (std::int32_t m : bottom_yellow_)
        if (s.colors2[m] == 0) s.uf.unite(m, vb);
    const std::int32_t rt = s.uf.find(pivot_);
    return rt == s.uf.find(va) && rt == s.uf.find(vb);
}

bool PivotalRegion::eval(const Configuration& cfg, ConnScratch& s) const {
    load_member_colors(members_, cfg, s.colors);
    return eval(s.colors.data(), s);
}

void PivotalRegion::load_colors(const Configuration& cfg,
                                std::vector<std::uint8_t>& out) const {
    load_member_colors(members_, cfg, out);
}

// ------------------------------------------------------------ pattern search

namespace {

bool pattern_rec(const std::vector<std::pair<std::int32_t, std::uint8_t>>& v,
                 int arms, int slot, std::size_t start, std::size_t pos,
                 std::int32_t* chosen) {
    if (slot >= arms || slot >= 8) return slot >= arms;
    const std::size_t L = v.size();
    const std::uint8_t want = (slot % 2 == 0) ? 1 : 0; // B,Y,B,Y,(B)
    for (std::size_t q = pos; q < start + L; ++q) {
        const auto& [root, color] = v[q % L];
        if (color != want) continue;
        bool used = false;
        for (int i = 0; i < slot; ++i)
            if (chosen[i] == root) used = true;
        if (used) continue;
        chosen[slot] = root;
        if (pattern_rec(v, arms, slot + 1, start, q + 1, chosen)) return true;
    }
    return false;
}

} // namespace

bool cyclic_alternating_pattern(
    const std::vector<std::pair<std::int32_t, std::uint8_t>>& visits,
    int arms) {
    const std::size_t L = visits.size();
    if (static_cast<int>(L) < arms) return false;
    std::int32_t chosen[8];
    for (std::size_t s = 0; s < L; ++s) {
        if (visits[s].second != 1) continue; // anchor on a blue visit
        chosen[0] = visits[s].first;
        if (pattern_rec(visits, arms, 1, s, s + 1, chosen)) return true;
    }
    return false;
}

// ------------------------------------------------------------------ one-shots

bool has_crossing(const Lattice& lat, const Configuration& cfg,
                  const CrossingQuery& q) {
    ConnScratch s;
    return CrossRegion(lat, q).eval(cfg, s);
}

bool has_one_arm(const Lattice& lat, const Configuration& cfg,
                 const AnnulusRegion& a, Color color) {
    ConnScratch s;
    const ArmEvents ev = AnnulusIndex(lat, a).eval(cfg, s);
    return color == Color::Blue ? ev.one_arm_blue : ev.one_arm_yellow;
}

bool has_four_arm_alternating(const Lattice& lat, const Configuration& cfg,
                              const AnnulusRegion& a) {
    ConnScratch s;
    return AnnulusIndex(lat, a).eval(cfg, s).four_arm;
}

bool has_five_arm_alternating(const Lattice& lat, const Configuration& cfg,
                              const AnnulusRegion& a) {
    ConnScratch s;
    return AnnulusIndex(lat, a).eval(cfg, s).five_arm;
}

bool has_four_arm_to_sides(const Lattice& lat, const Configuration& cfg,
                           TileId t, const RectRegion& rect) {
    ConnScratch s;
    return PivotalRegion(lat, rect, t).eval(cfg, s);
}

} // namespace percolab
