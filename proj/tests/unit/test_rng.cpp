#include "doctest.h"

#include "percolab/rng.hpp"

#include <cmath>
#include <set>

using namespace percolab;

TEST_CASE("philox 4x32-10 known answers") {
    // Random123 distribution kat_vectors
    auto out = philox::block({0, 0, 0, 0}, {0, 0});
    CHECK(out[0] == 0x6627e8d5u);
    CHECK(out[1] == 0xe169c58du);
    CHECK(out[2] == 0xbc57ac4cu);
    CHECK(out[3] == 0x9b00dbd8u);

    out = philox::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                        {0xffffffffu, 0xffffffffu});
    CHECK(out[0] == 0x408f276du);
    CHECK(out[1] == 0x41c83b0eu);
    CHECK(out[2] == 0xa20bc7c6u);
    CHECK(out[3] == 0x6d5451fdu);

    out = philox::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                        {0xa4093822u, 0x299f31d0u});
    CHECK(out[0] == 0xd16cfe09u);
    CHECK(out[1] == 0x94fdccebu);
    CHECK(out[2] == 0x5001e420u);
    CHECK(out[3] == 0x24126ea1u);
}

TEST_CASE("tile uniforms: determinism and stream separation") {
    const TileRng a(12345, 7), b(12345, 7), c(12345, 8), d(54321, 7);
    for (std::int64_t t = 0; t < 100; ++t) {
        const double u = a.uniform(t);
        CHECK(u == b.uniform(t));
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(u != c.uniform(t));
        CHECK(u != d.uniform(t));
    }
}

TEST_CASE("tile uniforms look uniform") {
    const TileRng rng(99, 0);
    const int n = 200000;
    int buckets[10] = {0};
    double mean = 0.0;
    for (int t = 0; t < n; ++t) {
        const double u = rng.uniform(t);
        buckets[static_cast<int>(u * 10.0)]++;
        mean += u;
    }
    mean /= n;
    CHECK(std::abs(mean - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
    // chi-square with 9 dof, far beyond the 0.999 quantile (27.9)
    double chi2 = 0.0;
    for (int k = 0; k < 10; ++k) {
        const double e = n / 10.0;
        chi2 += (buckets[k] - e) * (buckets[k] - e) / e;
    }
    CHECK(chi2 < 40.0);
}
