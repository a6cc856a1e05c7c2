#pragma once

#include "field.hpp"
#include "lattice.hpp"
#include "rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace percolab {

struct Provenance {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

// One blue/yellow color per random tile, bit-packed, immutable once sampled.
class Configuration {
  public:
    Configuration() = default;
    Configuration(std::int64_t tiles, Color fill, Provenance prov = {})
        : n_(tiles), words_((tiles + 63) / 64,
                            fill == Color::Blue ? ~std::uint64_t{0} : 0),
          prov_(prov) {
        trim();
    }

    std::int64_t tile_count() const { return n_; }
    bool blue(TileId t) const {
        return (words_[t >> 6] >> (t & 63)) & 1u;
    }
    Color color(TileId t) const {
        return blue(t) ? Color::Blue : Color::Yellow;
    }
    void set(TileId t, Color c) {
        const std::uint64_t bit = std::uint64_t{1} << (t & 63);
        if (c == Color::Blue)
            words_[t >> 6] |= bit;
        else
            words_[t >> 6] &= ~bit;
    }
    std::int64_t blue_count() const;

    const std::vector<std::uint64_t>& words() const { return words_; }
    const Provenance& provenance() const { return prov_; }

    // True when every blue tile of *this is blue in other.
    bool blue_subset_of(const Configuration& other) const;

    bool operator==(const Configuration& o) const {
        return n_ == o.n_ && words_ == o.words_;
    }

    // Run-length encoding "color:count,..." used for debug exports.
    std::string to_rle() const;

  private:
    friend Configuration sample_configuration(const Lattice&,
                                              const ProbabilityField&,
                                              std::uint64_t, std::uint64_t);
    friend struct CouplingSample;
    friend class SampleKernel;
    void trim() {
        const int rem = static_cast<int>(n_ & 63);
        if (rem && !words_.empty())
            words_.back() &= (std::uint64_t{1} << rem) - 1;
    }

    std::int64_t n_ = 0;
    std::vector<std::uint64_t> words_;
    Provenance prov_;
};

Configuration sample_configuration(const Lattice& lat,
                                   const ProbabilityField& field,
                                   std::uint64_t seed, std::uint64_t stream);

// Monotone pair sampled from shared per-tile uniforms: wherever
// p_lambda(t) >= p_mu(t), omega1 blue implies omega2 blue.
struct CouplingSample {
    Configuration omega1; // law P^mu
    Configuration omega2; // law P^lambda
    Provenance prov;
};

CouplingSample sample_coupled_pair(const Lattice& lat,
                                   const ProbabilityField& mu,
                                   const ProbabilityField& lambda,
                                   std::uint64_t seed, std::uint64_t stream);

// Ordered switch set T = (t_1, ..., t_K); hybrid k uses omega2 on the first
// k tiles of T and omega1 elsewhere.
struct SwitchSchedule {
    std::vector<TileId> tiles;

    static SwitchSchedule central_disk(const Lattice& lat, Point z,
                                       double radius);
    void validate(std::int64_t tile_count) const;
    std::int64_t size() const { return static_cast<std::int64_t>(tiles.size()); }
};

Configuration hybrid_configuration(const CouplingSample& c,
                                   const SwitchSchedule& sched, std::int64_t k);

// Exact probability of the switch event Sw(t) under the coupling:
// p_lambda(t) - p_mu(t). Requires p_lambda(t) >= p_mu(t).
double switch_probability(const ProbabilityField& mu,
                          const ProbabilityField& lambda, const Lattice& lat,
                          TileId t);

// Fast path used by estimator kernels: fills colors (1 = blue) for exactly
// the listed tiles; entries agree bit-for-bit with sample_configuration at
// the same (seed, stream).
void sample_colors_for(const Lattice& lat, const std::vector<double>& p,
                       const std::vector<TileId>& tiles, std::uint64_t seed,
                       std::uint64_t stream, std::vector<std::uint8_t>& out);

// Coupled variant; out1/out2 follow p_mu/p_lambda from shared uniforms.
void sample_coupled_colors_for(const Lattice& lat,
                               const std::vector<double>& p_mu,
                               const std::vector<double>& p_lambda,
                               const std::vector<TileId>& tiles,
                               std::uint64_t seed, std::uint64_t stream,
                               std::vector<std::uint8_t>& out1,
                               std::vector<std::uint8_t>& out2);

} // namespace percolab
