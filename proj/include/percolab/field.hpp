#pragma once

#include "geometry.hpp"
#include "lattice.hpp"

#include <string>
#include <vector>

namespace percolab {

struct IotaPatch {
    RectRegion region;
    double value = 0.0;
};

// Per-tile blue probability p(t) = clamp(p_crit + iota(t) * speed, 0, 1).
// iota is declared as rectangular patches (first match wins) plus a default,
// capped at |iota| <= n0. speed is the factor eta^2 / alpha4 computed by the
// scaling layer and recorded verbatim in manifests.
struct ProbabilityField {
    double p_crit = 0.5;
    double speed = 0.0;
    double n0 = 1.0;
    double default_iota = 0.0;
    std::vector<IotaPatch> patches;
    std::string name;

    static ProbabilityField uniform(double p, std::string name = "");
    static ProbabilityField critical(double p_crit = 0.5);

    void validate() const;

    double iota_at(Point z) const {
        for (const auto& patch : patches)
            if (patch.region.contains(z)) return patch.value;
        return default_iota;
    }

    double p_at(Point z) const {
        const double p = p_crit + iota_at(z) * speed;
        return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
    }
};

// Field evaluated on every tile of a lattice.
std::vector<double> bind_field(const ProbabilityField& f, const Lattice& lat);

} // namespace percolab
