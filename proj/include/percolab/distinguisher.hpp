#pragma once

#include "connectivity.hpp"
#include "estimate.hpp"
#include "field.hpp"
#include "lattice.hpp"
#include "scaling.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace percolab {

// K = ceil(a n^2) pairwise-disjoint squares of side 1/n packed row-major
// from the lower-left of D, separated by at least `gap`.
struct SquareGrid {
    RectRegion domain;
    std::int64_t n = 0;
    double a = 0.0;
    double gap = 0.0;
    std::vector<RectRegion> squares;

    std::int64_t K() const { return static_cast<std::int64_t>(squares.size()); }
};

SquareGrid build_square_grid(const RectRegion& D, std::int64_t n, double a,
                             double gap);

struct GapReport {
    RectRegion square;
    EstimatorResult direct_mu, direct_lambda;
    double direct_gap = 0.0, direct_se = 0.0;
    EstimatorResult coupled; // P[omega2 crosses, omega1 does not]
};

// Crossing-probability gap across Q two ways: difference of independent
// frequencies, and the coupled one-sided estimator (the primary value).
// Requires p_lambda >= p_mu on the tiles of Q.
GapReport estimate_crossing_gap(const Lattice& lat, const ProbabilityField& mu,
                                const ProbabilityField& lambda,
                                const RectRegion& Q, std::int64_t replicates,
                                std::uint64_t seed, StreamAllocator& streams,
                                int workers);

struct PivotalDecomposition {
    double sum = 0.0;    // sum_k P[A4'(t_k) under hybrid k] * P[Sw(t_k)]
    double se = 0.0;
    std::vector<double> pivotal_probs;
    std::vector<double> switch_probs;
    std::int64_t K = 0;
    std::int64_t flip_samples = 0;      // samples with a crossing flip in k
    std::int64_t one_sided_samples = 0; // samples with {w2 crosses, w1 not}
    std::int64_t replicates = 0;
};

// Pivotal-switch decomposition of the gap over the ordered schedule
// T = tiles_in_disk(z_Q, disk_radius) (default delta/4). The sum lower-bounds
// the coupled gap; when T covers all tiles of Q they agree. Every sample is
// hard-checked: the crossing flips for at most one k.
PivotalDecomposition estimate_pivotal_decomposition(
    const Lattice& lat, const ProbabilityField& mu,
    const ProbabilityField& lambda, const RectRegion& Q,
    std::int64_t replicates, std::uint64_t seed, StreamAllocator& streams,
    int workers, double disk_radius = -1.0);

struct GapCurveRow {
    double delta = 0.0;
    GapReport gap;
    EstimatorResult alpha4_eta_delta;
    double rhs = 0.0; // sigma * c * delta^2 * a4(eta,delta) / a4(eta,R0)
    double rhs_se = 0.0;
    bool bound_ok = false;
};

struct GapCurveReport {
    double eta = 0.0, R0 = 0.0, sigma = 0.0, c_product = 0.0;
    EstimatorResult alpha4_eta_R0;
    std::vector<GapCurveRow> rows; // delta descending
    bool monotone_ok = false;      // gap/delta increases as delta shrinks
};

GapCurveReport gap_lower_bound_curve(LatticeKind kind, double eta, double R0,
                                     double sigma, double n0, double speed,
                                     double c_product,
                                     const std::vector<double>& delta_grid,
                                     std::int64_t gap_replicates,
                                     std::int64_t arm_replicates,
                                     std::uint64_t seed,
                                     StreamAllocator& streams, int workers);

// Z_n = sum_k (crossing indicator of grid square k - means[k]).
double compute_z_statistic(const Lattice& lat, const Configuration& cfg,
                           const SquareGrid& grid,
                           const std::vector<double>& means);

struct DistinguisherReport {
    std::string label; // which measure the test configurations came from
    std::int64_t n = 0, K = 0;
    double a = 0.0, b = 1.0;
    double delta_n = 0.0;
    double threshold = 0.0;       // (a/2) n Delta_n
    double chebyshev_bound = 0.0; // 4(a+1) b^2 / (a^2 Delta_n^2)
    double mean_z = 0.0, var_z = 0.0;
    std::int64_t rejects = 0;
    std::int64_t replicates = 0;
    double rejection_rate = 0.0;
    double misclassification_rate = 0.0;
    std::string decision; // "consistent-with-P" or "rejects-P"
};

struct DistinguisherRun {
    SquareGrid grid;
    std::vector<double> means; // E_{P_mu}[X_k], phase 1
    std::vector<double> gaps;  // per-square coupled gap, phase 2
    double delta_n = 0.0;      // n * min_k gap_k (or the override)
    bool delta_overridden = false;
    DistinguisherReport under_mu, under_lambda;
};

// Three-phase distinguisher: reference means under mu, per-square gaps under
// the coupling, then fresh test configurations under each measure against
// the threshold (a/2) n Delta_n. Refuses when no gap is detectable unless a
// positive delta_override is supplied.
DistinguisherRun run_distinguisher(const Lattice& lat,
                                   const ProbabilityField& mu,
                                   const ProbabilityField& lambda,
                                   const RectRegion& D, std::int64_t n,
                                   double a, std::int64_t replicates_means,
                                   std::int64_t replicates_test,
                                   std::uint64_t seed, StreamAllocator& streams,
                                   int workers, double delta_override = 0.0);

} // namespace percolab
