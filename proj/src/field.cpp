#include "percolab/field.hpp"

#include <cmath>
#include <stdexcept>

namespace percolab {

ProbabilityField ProbabilityField::uniform(double p, std::string name) {
    ProbabilityField f;
    f.p_crit = p;
    f.speed = 0.0;
    f.n0 = 1.0;
    f.name = name.empty() ? "uniform" : std::move(name);
    f.validate();
    return f;
}

ProbabilityField ProbabilityField::critical(double p_crit) {
    ProbabilityField f;
    f.p_crit = p_crit;
    f.speed = 0.0;
    f.n0 = 1.0;
    f.name = "critical";
    f.validate();
    return f;
}

void ProbabilityField::validate() const {
    if (!(p_crit > 0.0 && p_crit < 1.0))
        throw std::invalid_argument("field: p_crit must lie in (0,1)");
    if (!(speed >= 0.0) || !std::isfinite(speed))
        throw std::invalid_argument("field: speed must be finite and >= 0");
    if (!(n0 > 0.0))
        throw std::invalid_argument("field: n0 must be > 0");
    if (std::abs(default_iota) > n0)
        throw std::invalid_argument("field: |default iota| exceeds n0");
    for (const auto& patch : patches) {
        if (!patch.region.valid())
            throw std::invalid_argument("field: iota patch region invalid");
        if (std::abs(patch.value) > n0)
            throw std::invalid_argument("field: |iota| exceeds n0");
    }
}

std::vector<double> bind_field(const ProbabilityField& f, const Lattice& lat) {
    f.validate();
    std::vector<double> p(lat.tile_count());
    for (TileId t = 0; t < lat.tile_count(); ++t)
        p[t] = f.p_at(lat.position(t));
    return p;
}

} // namespace percolab
