#pragma once

#include <array>
#include <cstdint>

namespace percolab {

// Philox 4x32-10 counter-based generator (Salmon et al., SC 2011).
// Pure function of (key, counter): replicates can be evaluated in any order
// and in parallel without shared state.
namespace philox {

inline void round_once(std::array<std::uint32_t, 4>& ctr,
                       std::array<std::uint32_t, 2>& key) {
    constexpr std::uint32_t M0 = 0xD2511F53u;
    constexpr std::uint32_t M1 = 0xCD9E8D57u;
    const std::uint64_t p0 = static_cast<std::uint64_t>(M0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(M1) * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

inline void raise_key(std::array<std::uint32_t, 2>& key) {
    key[0] += 0x9E3779B9u;
    key[1] += 0xBB67AE85u;
}

inline std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                          std::array<std::uint32_t, 2> key) {
    for (int r = 0; r < 10; ++r) {
        round_once(ctr, key);
        if (r < 9) raise_key(key);
    }
    return ctr;
}

} // namespace philox

// Per-tile uniforms keyed on (seed, stream, tile index). One Philox block
// serves two consecutive tile indices; uniform(t) depends only on the triple,
// never on evaluation order.
class TileRng {
  public:
    TileRng(std::uint64_t seed, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(seed),
               static_cast<std::uint32_t>(seed >> 32)},
          stream_(stream) {}

    std::array<std::uint32_t, 4> block_for_pair(std::uint64_t pair) const {
        const std::array<std::uint32_t, 4> ctr = {
            static_cast<std::uint32_t>(stream_),
            static_cast<std::uint32_t>(stream_ >> 32),
            static_cast<std::uint32_t>(pair),
            static_cast<std::uint32_t>(pair >> 32)};
        return philox::block(ctr, key_);
    }

    static double to_unit(std::uint32_t w0, std::uint32_t w1) {
        const std::uint64_t v =
            (static_cast<std::uint64_t>(w1) << 32 | w0) >> 11;
        return static_cast<double>(v) * 0x1.0p-53;
    }

    // Uniform on [0,1) with 53 random bits.
    double uniform(std::int64_t tile) const {
        const auto w = block_for_pair(static_cast<std::uint64_t>(tile) >> 1);
        const int off = (tile & 1) ? 2 : 0;
        return to_unit(w[off], w[off + 1]);
    }

    std::uint64_t seed() const {
        return static_cast<std::uint64_t>(key_[0]) |
               (static_cast<std::uint64_t>(key_[1]) << 32);
    }
    std::uint64_t stream() const { return stream_; }

  private:
    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
};

} // namespace percolab
