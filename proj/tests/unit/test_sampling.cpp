#include "doctest.h"

#include "percolab/sampling.hpp"

#include <cmath>
#include <stdexcept>

using namespace percolab;

namespace {

Lattice tri(double w, double h) {
    return Lattice::build({LatticeKind::TriangularSite, 1.0,
                           RectRegion::from_corner(0, 0, w, h)});
}

} // namespace

TEST_CASE("extreme fields") {
    const Lattice lat = tri(6, 5);
    ProbabilityField hi = ProbabilityField::critical();
    hi.p_crit = 0.999999;
    // clamp drives p to 1 and 0 exactly
    hi.speed = 10.0;
    hi.default_iota = 1.0;
    const Configuration all_blue = sample_configuration(lat, hi, 1, 0);
    CHECK(all_blue.blue_count() == lat.tile_count());

    hi.default_iota = -1.0;
    hi.p_crit = 1e-6;
    const Configuration all_yellow = sample_configuration(lat, hi, 1, 0);
    CHECK(all_yellow.blue_count() == 0);
}

TEST_CASE("blue fraction concentrates at one half on a million tiles") {
    const Lattice lat = tri(1000, 866);
    REQUIRE(lat.tile_count() > 1000000);
    const Configuration cfg =
        sample_configuration(lat, ProbabilityField::critical(), 2024, 0);
    const double n = static_cast<double>(lat.tile_count());
    const double frac = static_cast<double>(cfg.blue_count()) / n;
    CHECK(std::abs(frac - 0.5) < 4.0 * std::sqrt(0.25 / n));
}

TEST_CASE("determinism and RLE") {
    const Lattice lat = tri(5, 4);
    const ProbabilityField f = ProbabilityField::uniform(0.37);
    const Configuration a = sample_configuration(lat, f, 7, 3);
    const Configuration b = sample_configuration(lat, f, 7, 3);
    CHECK(a == b);
    CHECK(a.provenance().seed == 7);
    CHECK(a.provenance().stream == 3);
    CHECK(!(a == sample_configuration(lat, f, 7, 4)));
    CHECK(a.to_rle().find(':') != std::string::npos);

    // kernel path agrees with the public sampler
    std::vector<TileId> some = {0, 3, 4, 9};
    std::vector<std::uint8_t> colors;
    sample_colors_for(lat, bind_field(f, lat), some, 7, 3, colors);
    for (std::size_t i = 0; i < some.size(); ++i)
        CHECK(colors[i] == (a.blue(some[i]) ? 1 : 0));
}

TEST_CASE("coupled pair: marginals agree and monotone everywhere") {
    const Lattice lat = tri(8, 6);
    ProbabilityField mu, lambda;
    mu.speed = lambda.speed = 0.05;
    mu.n0 = lambda.n0 = 1.0;
    mu.default_iota = -1.0;
    lambda.default_iota = 1.0;

    for (std::uint64_t s = 0; s < 100000; ++s) {
        const CouplingSample cs = sample_coupled_pair(lat, mu, lambda, 11, s);
        REQUIRE(cs.omega1.blue_subset_of(cs.omega2));
    }

    // identical fields produce identical configurations
    const CouplingSample same = sample_coupled_pair(lat, mu, mu, 11, 0);
    CHECK(same.omega1 == same.omega2);

    // coordinates reproduce the single-field sampler exactly
    const CouplingSample cs = sample_coupled_pair(lat, mu, lambda, 11, 5);
    CHECK(cs.omega1 == sample_configuration(lat, mu, 11, 5));
    CHECK(cs.omega2 == sample_configuration(lat, lambda, 11, 5));
}

TEST_CASE("hybrid configurations") {
    const Lattice lat = tri(6, 4);
    ProbabilityField mu, lambda;
    mu.speed = lambda.speed = 0.1;
    mu.default_iota = -1.0;
    lambda.default_iota = 1.0;
    const CouplingSample cs = sample_coupled_pair(lat, mu, lambda, 3, 9);
    const SwitchSchedule all =
        SwitchSchedule::central_disk(lat, {3, 2}, 100.0);
    REQUIRE(all.size() == lat.tile_count());
    all.validate(lat.tile_count());

    CHECK(hybrid_configuration(cs, all, 0) == cs.omega1);
    CHECK(hybrid_configuration(cs, all, all.size()) == cs.omega2);
    Configuration prev = cs.omega1;
    for (std::int64_t k = 1; k <= all.size(); ++k) {
        const Configuration cur = hybrid_configuration(cs, all, k);
        CHECK(prev.blue_subset_of(cur));
        prev = cur;
    }
    CHECK_THROWS_AS((void)hybrid_configuration(cs, all, all.size() + 1),
                    std::invalid_argument);
}

TEST_CASE("switch probability") {
    const Lattice lat = tri(0.5, 0.5);
    REQUIRE(lat.tile_count() == 1);
    ProbabilityField mu, lambda;
    mu.speed = lambda.speed = 0.01;
    mu.default_iota = -1.0;
    lambda.default_iota = 1.0;
    CHECK(switch_probability(mu, lambda, lat, 0) == doctest::Approx(0.02));
    CHECK(switch_probability(mu, mu, lat, 0) == 0.0);
    CHECK_THROWS_WITH((void)switch_probability(lambda, mu, lat, 0),
                      "non-monotone pair");

    // empirical switch frequency over one million coupled samples
    std::int64_t switches = 0;
    const std::int64_t n = 1000000;
    for (std::int64_t s = 0; s < n; ++s) {
        const CouplingSample cs = sample_coupled_pair(lat, mu, lambda, 5, s);
        const bool sw = !cs.omega1.blue(0) && cs.omega2.blue(0);
        CHECK(!(cs.omega1.blue(0) && !cs.omega2.blue(0)));
        switches += sw;
    }
    const double phat = static_cast<double>(switches) / n;
    CHECK(std::abs(phat - 0.02) < 4.0 * std::sqrt(0.02 * 0.98 / n));
}

TEST_CASE("independence across tiles: joint law on a 3-tile lattice") {
    const Lattice lat = tri(2.5, 0.5);
    REQUIRE(lat.tile_count() == 3);
    const double p = 0.4;
    const ProbabilityField f = ProbabilityField::uniform(p);
    const std::int64_t n = 100000;
    std::int64_t counts[8] = {0};
    for (std::int64_t s = 0; s < n; ++s) {
        const Configuration cfg = sample_configuration(lat, f, 17, s);
        const int idx = cfg.blue(0) | cfg.blue(1) << 1 | cfg.blue(2) << 2;
        counts[idx]++;
    }
    double chi2 = 0.0;
    for (int m = 0; m < 8; ++m) {
        double e = n;
        for (int t = 0; t < 3; ++t) e *= ((m >> t) & 1) ? p : 1.0 - p;
        chi2 += (counts[m] - e) * (counts[m] - e) / e;
    }
    CHECK(chi2 < 35.0); // dof 7; 0.999 quantile is 24.3
}
