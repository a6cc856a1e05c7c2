#pragma once

#include "connectivity.hpp"
#include "estimate.hpp"
#include "field.hpp"
#include "lattice.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace percolab {

// ---------------------------------------------------------------- estimators

struct ArmEstimates {
    EstimatorResult one_arm_blue, one_arm_yellow, four_arm, five_arm;
};

// One pass over independent configurations of `field`, counting all four arm
// events on the given annulus.
ArmEstimates estimate_arm_events(const Lattice& lat,
                                 const ProbabilityField& field,
                                 const AnnulusRegion& a,
                                 std::int64_t replicates, std::uint64_t seed,
                                 std::uint64_t stream_begin, int workers);

EstimatorResult estimate_crossing_probability(const Lattice& lat,
                                              const ProbabilityField& field,
                                              const CrossingQuery& q,
                                              std::int64_t replicates,
                                              std::uint64_t seed,
                                              std::uint64_t stream_begin,
                                              int workers);

EstimatorResult estimate_alpha4(const Lattice& lat, Point z, double r,
                                double R, std::int64_t replicates,
                                std::uint64_t seed, std::uint64_t stream_begin,
                                int workers);

// Builds a critical mesh-1 lattice just covering the annulus (1, n) at the
// origin and estimates the arm events there.
ArmEstimates estimate_critical_arms(LatticeKind kind, double r_in, double n,
                                    std::int64_t replicates,
                                    std::uint64_t seed, StreamAllocator& streams,
                                    int workers);

// speed factor eta^2 / alpha4
double speed_factor(double eta, double alpha4_estimate);

// ------------------------------------------------------- characteristic length

inline constexpr std::int64_t kInfiniteLength = -1;

struct CharLenRow {
    std::int64_t n = 0;
    EstimatorResult est;
    int resolution = 0; // -1: below threshold, +1: above, 0: unresolved
};

struct CharLenResult {
    double p = 0.5;
    double epsilon = 0.2;
    std::int64_t L = kInfiniteLength;
    bool unresolved = false;
    bool exhausted = false;
    std::vector<CharLenRow> table;
};

// L_eps(p): first n with crossing probability <= eps (p < 1/2) or >= 1-eps
// (p > 1/2), found by doubling then bisection with replicate escalation near
// the threshold. L(p_c) is infinite by definition.
CharLenResult characteristic_length(LatticeKind kind, double p, double epsilon,
                                    std::int64_t n_max,
                                    std::int64_t replicates,
                                    std::int64_t replicate_cap,
                                    std::uint64_t seed,
                                    StreamAllocator& streams, int workers);

// ------------------------------------------------------------------- checks

struct QuasiMultReport {
    double m = 0, n = 0;
    EstimatorResult a_m, a_mn, a_n;
    double ratio = 0, ratio_se = 0; // a_m * a_mn / a_n
    bool containment_ok = true;     // a_n <= min(a_m, a_mn) up to 4 SE
    bool underpowered = false;
};

QuasiMultReport check_quasi_multiplicativity(LatticeKind kind, double m,
                                             double n, std::int64_t replicates,
                                             std::uint64_t seed,
                                             StreamAllocator& streams,
                                             int workers);

struct PowerBoundRow {
    double m = 0, n = 0;
    EstimatorResult a_mn;
};

struct PowerBoundReport {
    std::vector<PowerBoundRow> rows;
    double exponent = 0, exponent_se = 0; // fitted 2-beta
    bool exponent_ok = false;             // fitted exponent < 2
};

PowerBoundReport check_power_bound(
    LatticeKind kind, const std::vector<std::pair<double, double>>& mn_pairs,
    std::int64_t replicates, std::uint64_t seed, StreamAllocator& streams,
    int workers);

struct RswRow {
    Color color = Color::Blue;
    double iota = 0;
    double r = 0;
    EstimatorResult est;
};

struct RswDecayRow {
    double r = 0, R = 0;
    EstimatorResult est;
    double envelope = 0; // (1 - c_hat)^(floor(log2(R/r)))
};

struct RswReport {
    std::vector<RswRow> rows;
    double min_p = 1.0, max_p = 0.0;
    double c_hat = 0.0; // min(min_p, 1 - max_p)
    std::vector<RswDecayRow> decay;
    bool envelope_ok = true;
};

// One-arm probabilities on annuli (r, 2r) for both colors and iota in
// {-n0, 0, +n0}, plus the multi-scale decay envelope at the critical field.
RswReport check_rsw_annulus(LatticeKind kind, double eta, double speed,
                            double n0, const std::vector<double>& r_grid,
                            const std::vector<double>& decay_R_over_r,
                            std::int64_t replicates, std::uint64_t seed,
                            StreamAllocator& streams, int workers);

struct FiveArmRow {
    double n = 0;
    ArmEstimates est;
    bool product_ok = true; // alpha5 <= alpha4 * alpha1 within 4 SE
};

struct FiveArmReport {
    std::vector<FiveArmRow> rows;
    double slope = 0, slope_se = 0;
    double c_tilde = 0; // min over rows of alpha5 * n^2
};

FiveArmReport check_five_arm_bound(LatticeKind kind,
                                   const std::vector<double>& n_grid,
                                   std::int64_t replicates, std::uint64_t seed,
                                   StreamAllocator& streams, int workers);

struct Lemma5Report {
    double p = 0.5, n = 0, epsilon = 0.2;
    double antecedent = 0; // |p - p_c| n^2 alpha4(n)
    bool vacuous = false;  // antecedent outside [C1, C2]
    EstimatorResult alpha4_n;
    CharLenResult charlen;
    double ratio = 0; // n / L_eps(p)
};

Lemma5Report check_lemma5_sandwich(LatticeKind kind, double p, double n,
                                   double C1, double C2, double epsilon,
                                   std::int64_t arm_replicates,
                                   std::int64_t cross_replicates,
                                   std::int64_t n_max, std::uint64_t seed,
                                   StreamAllocator& streams, int workers);

struct Lemma6Row {
    double p = 0;
    std::int64_t L0 = 0;
    double found_eps = 0;
    std::int64_t L_eps = 0;
    bool ok = false;
    bool exhausted = false;
};

struct Lemma6Report {
    double epsilon0 = 0;
    double K = 1;
    std::vector<Lemma6Row> rows;
};

// For each p < p_c: search an eps <= eps0 with L_eps(p) >= K * L_eps0(p).
Lemma6Report check_lemma6(LatticeKind kind, double epsilon0, double K,
                          const std::vector<double>& p_grid,
                          std::int64_t n_max, std::int64_t replicates,
                          std::uint64_t seed, StreamAllocator& streams,
                          int workers);

// Hard per-sample containment behind Lemma 6: every horizontal crossing of
// the (K*L) x L rectangle induces one of the n x n square matched at the
// upper-left corner (L < n < K*L). Returns the number of violating samples.
std::int64_t check_rectangle_step(LatticeKind kind, double p, std::int64_t L,
                                  std::int64_t K, std::int64_t n,
                                  std::int64_t replicates, std::uint64_t seed,
                                  std::uint64_t stream_begin, int workers);

struct Condition1Row {
    double r = 0;
    EstimatorResult a4; // alpha4(r, R)
    double scaled = 0;  // (R/r) * alpha4(r, R)
};

struct Condition1Report {
    double R = 0;
    std::vector<Condition1Row> rows; // r descending
    bool decreasing = true;          // scaled decreasing as r shrinks
};

Condition1Report check_condition1(LatticeKind kind, double R,
                                  const std::vector<double>& r_grid,
                                  std::int64_t replicates, std::uint64_t seed,
                                  StreamAllocator& streams, int workers);

struct Condition3Row {
    Point z;
    double iota = 0;
    EstimatorResult est;
    double ratio = 0; // vs critical at the origin
};

struct Condition3Report {
    EstimatorResult critical0;
    std::vector<Condition3Row> rows;
    double min_ratio = 0, max_ratio = 0;
};

Condition3Report check_condition3(LatticeKind kind, double eta, double speed,
                                  double n0, double R, int z_count,
                                  std::int64_t replicates, std::uint64_t seed,
                                  StreamAllocator& streams, int workers);

struct Condition4Row {
    TileId t = 0;
    EstimatorResult est; // A4'(t, dQ)
    double ratio = 0;    // vs alpha4 of the inscribed annulus
};

struct Condition4Report {
    EstimatorResult alpha4;
    std::vector<Condition4Row> rows;
    double c3_hat = 0; // min ratio
};

Condition4Report check_condition4(LatticeKind kind, double R, int tile_count,
                                  std::int64_t replicates, std::uint64_t seed,
                                  StreamAllocator& streams, int workers);

// Condition 2: 0 < p_crit - n0 * speed and p_crit + n0 * speed < 1.
bool check_condition2(double p_crit, double n0, double speed);

} // namespace percolab
