#include "percolab/sampling.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace percolab {

std::int64_t Configuration::blue_count() const {
    std::int64_t n = 0;
    for (std::uint64_t w : words_) n += __builtin_popcountll(w);
    return n;
}

bool Configuration::blue_subset_of(const Configuration& other) const {
    if (n_ != other.n_) return false;
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~other.words_[i]) return false;
    return true;
}

std::string Configuration::to_rle() const {
    std::string out;
    std::int64_t t = 0;
    while (t < n_) {
        const bool b = blue(t);
        std::int64_t run = 1;
        while (t + run < n_ && blue(t + run) == b) ++run;
        if (!out.empty()) out += ',';
        out += b ? 'b' : 'y';
        out += ':';
        out += std::to_string(run);
        t += run;
    }
    return out;
}

namespace {

// Shared inner loop: one Philox block covers tiles 2k and 2k+1.
template <typename Visit>
void for_each_uniform(const TileRng& rng, const std::vector<TileId>& tiles,
                      Visit&& visit) {
    std::uint64_t cached_pair = ~std::uint64_t{0};
    std::array<std::uint32_t, 4> w{};
    for (std::size_t i = 0; i < tiles.size(); ++i) {
        const TileId t = tiles[i];
        const std::uint64_t pair = static_cast<std::uint64_t>(t) >> 1;
        if (pair != cached_pair) {
            w = rng.block_for_pair(pair);
            cached_pair = pair;
        }
        const int off = (t & 1) ? 2 : 0;
        visit(i, t, TileRng::to_unit(w[off], w[off + 1]));
    }
}

std::vector<TileId> all_tiles(const Lattice& lat) {
    std::vector<TileId> tiles(lat.tile_count());
    for (TileId t = 0; t < lat.tile_count(); ++t) tiles[t] = t;
    return tiles;
}

} // namespace

Configuration sample_configuration(const Lattice& lat,
                                   const ProbabilityField& field,
                                   std::uint64_t seed, std::uint64_t stream) {
    const std::vector<double> p = bind_field(field, lat);
    Configuration cfg(lat.tile_count(), Color::Yellow, Provenance{seed, stream});
    const TileRng rng(seed, stream);
    for_each_uniform(rng, all_tiles(lat),
                     [&](std::size_t, TileId t, double u) {
                         if (u < p[t]) cfg.set(t, Color::Blue);
                     });
    return cfg;
}

CouplingSample sample_coupled_pair(const Lattice& lat,
                                   const ProbabilityField& mu,
                                   const ProbabilityField& lambda,
                                   std::uint64_t seed, std::uint64_t stream) {
    const std::vector<double> pm = bind_field(mu, lat);
    const std::vector<double> pl = bind_field(lambda, lat);
    CouplingSample s;
    s.prov = Provenance{seed, stream};
    s.omega1 = Configuration(lat.tile_count(), Color::Yellow, s.prov);
    s.omega2 = Configuration(lat.tile_count(), Color::Yellow, s.prov);
    const TileRng rng(seed, stream);
    for_each_uniform(rng, all_tiles(lat),
                     [&](std::size_t, TileId t, double u) {
                         if (u < pm[t]) s.omega1.set(t, Color::Blue);
                         if (u < pl[t]) s.omega2.set(t, Color::Blue);
                     });
    return s;
}

SwitchSchedule SwitchSchedule::central_disk(const Lattice& lat, Point z,
                                            double radius) {
    return SwitchSchedule{lat.tiles_in_disk(z, radius)};
}

void SwitchSchedule::validate(std::int64_t tile_count) const {
    std::unordered_set<TileId> seen;
    for (TileId t : tiles) {
        if (t < 0 || t >= tile_count)
            throw std::invalid_argument("switch schedule: tile out of range");
        if (!seen.insert(t).second)
            throw std::invalid_argument("switch schedule: duplicate tile");
    }
}

Configuration hybrid_configuration(const CouplingSample& c,
                                   const SwitchSchedule& sched,
                                   std::int64_t k) {
    if (k < 0 || k > sched.size())
        throw std::invalid_argument("hybrid index out of range");
    Configuration cfg = c.omega1;
    for (std::int64_t i = 0; i < k; ++i) {
        const TileId t = sched.tiles[i];
        cfg.set(t, c.omega2.color(t));
    }
    return cfg;
}

double switch_probability(const ProbabilityField& mu,
                          const ProbabilityField& lambda, const Lattice& lat,
                          TileId t) {
    const Point z = lat.position(t);
    const double a = mu.p_at(z), b = lambda.p_at(z);
    if (b < a) throw std::invalid_argument("non-monotone pair");
    return b - a;
}

void sample_colors_for(const Lattice& lat, const std::vector<double>& p,
                       const std::vector<TileId>& tiles, std::uint64_t seed,
                       std::uint64_t stream, std::vector<std::uint8_t>& out) {
    (void)lat;
    out.resize(tiles.size());
    const TileRng rng(seed, stream);
    for_each_uniform(rng, tiles, [&](std::size_t i, TileId t, double u) {
        out[i] = u < p[t] ? 1 : 0;
    });
}

void sample_coupled_colors_for(const Lattice& lat,
                               const std::vector<double>& p_mu,
                               const std::vector<double>& p_lambda,
                               const std::vector<TileId>& tiles,
                               std::uint64_t seed, std::uint64_t stream,
                               std::vector<std::uint8_t>& out1,
                               std::vector<std::uint8_t>& out2) {
    (void)lat;
    out1.resize(tiles.size());
    out2.resize(tiles.size());
    const TileRng rng(seed, stream);
    for_each_uniform(rng, tiles, [&](std::size_t i, TileId t, double u) {
        out1[i] = u < p_mu[t] ? 1 : 0;
        out2[i] = u < p_lambda[t] ? 1 : 0;
    });
}

} // namespace percolab
