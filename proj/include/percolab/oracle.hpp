#pragma once

#include "connectivity.hpp"
#include "field.hpp"
#include "lattice.hpp"
#include "sampling.hpp"

#include <memory>
#include <string>

namespace percolab {

// Event predicates evaluated by the enumeration oracle with caller-owned
// scratch, so enumeration may be partitioned across workers.
class OracleEvent {
  public:
    virtual ~OracleEvent() = default;
    virtual bool eval(const Configuration& cfg, ConnScratch& s) const = 0;
    virtual std::string describe() const = 0;
    // True when the event is increasing in the blue set; enables the exact
    // coupled-gap identity check.
    virtual bool increasing() const { return false; }
};

std::unique_ptr<OracleEvent> make_crossing_event(const Lattice& lat,
                                                 const CrossingQuery& q);
std::unique_ptr<OracleEvent> make_one_arm_event(const Lattice& lat,
                                                const AnnulusRegion& a,
                                                Color color);
std::unique_ptr<OracleEvent> make_four_arm_event(const Lattice& lat,
                                                 const AnnulusRegion& a);
std::unique_ptr<OracleEvent> make_five_arm_event(const Lattice& lat,
                                                 const AnnulusRegion& a);
std::unique_ptr<OracleEvent> make_pivotal_event(const Lattice& lat,
                                                const RectRegion& rect,
                                                TileId t);
std::unique_ptr<OracleEvent> make_tile_blue_event(TileId t);
std::unique_ptr<OracleEvent> make_and_event(std::unique_ptr<OracleEvent> a,
                                            std::unique_ptr<OracleEvent> b);
std::unique_ptr<OracleEvent> make_not_event(std::unique_ptr<OracleEvent> a);

// Exact probability by summation over all colorings (cap: 24 random tiles),
// evaluated with the production connectivity code and Kahan-compensated
// accumulation. Partitioning across workers does not change the result.
double exact_probability(const Lattice& lat, const ProbabilityField& field,
                         const OracleEvent& event, int workers = 1);

struct ExactGap {
    double p_mu = 0.0;
    double p_lambda = 0.0;
    double gap = 0.0;               // p_lambda - p_mu
    double coupled_one_sided = 0.0; // P[omega2 in E, omega1 not in E]
};

// Exact gap between two fields, plus the coupled one-sided probability
// obtained by integrating over the shared per-tile uniform (piecewise
// constant with breakpoints at p_mu(t), p_lambda(t)). When lambda >= mu
// everywhere and the event is increasing, equality of the two routes is
// asserted.
ExactGap exact_gap(const Lattice& lat, const ProbabilityField& mu,
                   const ProbabilityField& lambda, const OracleEvent& event);

} // namespace percolab
