#pragma once

// Test-only reference detector for the alternating four-arm event: explicit
// search for four pairwise tile-disjoint monochromatic inner-to-outer paths
// whose colors alternate in the cyclic order of their inner endpoints. Kept
// independent of the production cluster-sequence detector on purpose.

#include "percolab/connectivity.hpp"
#include "percolab/lattice.hpp"
#include "percolab/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace refarms {

using percolab::AnnulusRegion;
using percolab::Color;
using percolab::Configuration;
using percolab::Lattice;
using percolab::TileId;

struct Search {
    const Lattice& lat;
    const AnnulusRegion& ann;
    const Configuration& cfg;
    std::vector<TileId> members;
    std::vector<int> member_of; // tile -> member index or -1
    std::vector<char> inner, outer;
    std::vector<char> used;
    long budget = 0;

    Search(const Lattice& l, const AnnulusRegion& a, const Configuration& c)
        : lat(l), ann(a), cfg(c) {
        members = lat.tiles_in_annulus(a);
        member_of.assign(lat.tile_count(), -1);
        for (std::size_t i = 0; i < members.size(); ++i)
            member_of[members[i]] = static_cast<int>(i);
        inner.assign(members.size(), 0);
        outer.assign(members.size(), 0);
        const double band = lat.mesh(), e = lat.eps();
        for (std::size_t i = 0; i < members.size(); ++i) {
            const double d = percolab::dist(lat.position(members[i]), a.center);
            inner[i] = d < a.r_in + band - e;
            outer[i] = d > a.r_out - band + e;
        }
        used.assign(members.size(), 0);
    }

    // DFS a monochromatic path from member m to the outer band, then route
    // the remaining starts; backtracks across path shapes.
    bool extend(int m, const std::vector<int>& starts, std::size_t next) {
        if (--budget < 0) throw std::runtime_error("reference search budget");
        used[m] = 1;
        const Color col = cfg.color(members[m]);
        bool ok = false;
        if (outer[m])
            ok = route(starts, next);
        if (!ok) {
            for (TileId nb : lat.neighbors(members[m], col)) {
                const int w = member_of[nb];
                if (w < 0 || used[w] || cfg.color(nb) != col) continue;
                if (extend(w, starts, next)) {
                    ok = true;
                    break;
                }
            }
        }
        if (!ok) used[m] = 0; // keep the path marked only on success
        return ok;
    }

    bool route(const std::vector<int>& starts, std::size_t j) {
        if (j == starts.size()) return true;
        if (used[starts[j]]) return false;
        const std::vector<char> snapshot = used;
        if (extend(starts[j], starts, j + 1)) return true;
        used = snapshot;
        return false;
    }

    bool four_arm() {
        // inner-band members sorted by angle
        std::vector<int> ring;
        for (std::size_t i = 0; i < members.size(); ++i)
            if (inner[i]) ring.push_back(static_cast<int>(i));
        std::sort(ring.begin(), ring.end(), [&](int u, int v) {
            const auto pu = lat.position(members[u]);
            const auto pv = lat.position(members[v]);
            const double au = std::atan2(pu.y - ann.center.y,
                                         pu.x - ann.center.x);
            const double av = std::atan2(pv.y - ann.center.y,
                                         pv.x - ann.center.x);
            if (au != av) return au < av;
            return members[u] < members[v];
        });
        const std::size_t R = ring.size();
        std::vector<int> starts(4);
        for (std::size_t i1 = 0; i1 < R; ++i1)
            for (std::size_t i2 = i1 + 1; i2 < R; ++i2)
                for (std::size_t i3 = i2 + 1; i3 < R; ++i3)
                    for (std::size_t i4 = i3 + 1; i4 < R; ++i4) {
                        const bool c1 = cfg.blue(members[ring[i1]]);
                        const bool c2 = cfg.blue(members[ring[i2]]);
                        const bool c3 = cfg.blue(members[ring[i3]]);
                        const bool c4 = cfg.blue(members[ring[i4]]);
                        if (c1 == c2 || c2 == c3 || c3 == c4) continue;
                        starts = {ring[i1], ring[i2], ring[i3], ring[i4]};
                        std::fill(used.begin(), used.end(), 0);
                        budget = 4000000;
                        if (route(starts, 0)) return true;
                    }
        return false;
    }
};

inline bool reference_four_arm(const Lattice& lat, const AnnulusRegion& a,
                               const Configuration& cfg) {
    Search s(lat, a, cfg);
    return s.four_arm();
}

} // namespace refarms
