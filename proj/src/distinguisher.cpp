#include "percolab/distinguisher.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace percolab {

namespace {

struct McState {
    ConnScratch scratch;
    std::vector<std::uint8_t> c1, c2;
    std::vector<std::uint8_t> hybrid;
    std::vector<std::int32_t> hits;
};

void require_monotone_on(const Lattice&, const std::vector<double>& pm,
                         const std::vector<double>& pl,
                         const std::vector<TileId>& tiles) {
    for (TileId t : tiles)
        if (pl[t] < pm[t])
            throw std::invalid_argument("non-monotone pair");
}

} // namespace

SquareGrid build_square_grid(const RectRegion& D, std::int64_t n, double a,
                             double gap) {
    if (n < 1) throw std::invalid_argument("grid: n must be >= 1");
    if (!(a > 0.0)) throw std::invalid_argument("grid: a must be > 0");
    if (!D.valid()) throw std::invalid_argument("grid: invalid domain");
    if (gap < 0.0) throw std::invalid_argument("grid: negative gap");

    SquareGrid grid;
    grid.domain = D;
    grid.n = n;
    grid.a = a;
    grid.gap = gap;

    const double side = 1.0 / static_cast<double>(n);
    const double pitch = side + gap;
    const auto cols =
        static_cast<std::int64_t>(std::floor((D.width + gap) / pitch + 1e-12));
    const auto rows =
        static_cast<std::int64_t>(std::floor((D.height + gap) / pitch + 1e-12));
    const std::int64_t capacity = cols * rows;
    const auto K = static_cast<std::int64_t>(
        std::ceil(a * static_cast<double>(n) * static_cast<double>(n) - 1e-12));
    if (K > capacity) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "grid infeasible: need %lld squares, domain fits %lld "
                      "(max feasible a = %.6g)",
                      static_cast<long long>(K),
                      static_cast<long long>(capacity),
                      static_cast<double>(capacity) / (static_cast<double>(n) *
                                                       static_cast<double>(n)));
        throw std::runtime_error(buf);
    }
    grid.squares.reserve(K);
    for (std::int64_t k = 0; k < K; ++k) {
        const std::int64_t row = k / cols;
        const std::int64_t col = k % cols;
        grid.squares.push_back(RectRegion::from_corner(
            D.x0() + col * pitch, D.y0() + row * pitch, side, side));
    }
    return grid;
}

GapReport estimate_crossing_gap(const Lattice& lat, const ProbabilityField& mu,
                                const ProbabilityField& lambda,
                                const RectRegion& Q, std::int64_t replicates,
                                std::uint64_t seed, StreamAllocator& streams,
                                int workers) {
    const CrossRegion region(lat, {Q, Color::Blue, Direction::Horizontal});
    const std::vector<double> pm = bind_field(mu, lat);
    const std::vector<double> pl = bind_field(lambda, lat);
    require_monotone_on(lat, pm, pl, region.members());

    GapReport rep;
    rep.square = Q;

    // Coupled one-sided estimator. The reverse event {omega1 crosses,
    // omega2 does not} is impossible under the coupling; counted and
    // enforced anyway.
    const std::uint64_t s_coupled = streams.take(replicates);
    auto counters = run_replicates<McState>(
        replicates, workers, 2, [] { return McState{}; },
        [&](std::int64_t rep_i, McState& s, std::int64_t* c) {
            sample_coupled_colors_for(lat, pm, pl, region.members(), seed,
                                      s_coupled + rep_i, s.c1, s.c2);
            const bool x1 = region.eval(s.c1.data(), s.scratch);
            const bool x2 = region.eval(s.c2.data(), s.scratch);
            c[0] += (!x1 && x2);
            c[1] += (x1 && !x2);
        });
    if (counters[1] != 0)
        throw std::logic_error("coupling violation: omega1 crossed without "
                               "omega2");
    rep.coupled = binomial_result(counters[0], replicates, seed, s_coupled,
                                  "coupled gap");

    // Independent two-sample estimate.
    const std::uint64_t s_mu = streams.take(replicates);
    auto mu_hits = run_replicates<McState>(
        replicates, workers, 1, [] { return McState{}; },
        [&](std::int64_t rep_i, McState& s, std::int64_t* c) {
            sample_colors_for(lat, pm, region.members(), seed, s_mu + rep_i,
                              s.c1);
            c[0] += region.eval(s.c1.data(), s.scratch);
        });
    const std::uint64_t s_lambda = streams.take(replicates);
    auto la_hits = run_replicates<McState>(
        replicates, workers, 1, [] { return McState{}; },
        [&](std::int64_t rep_i, McState& s, std::int64_t* c) {
            sample_colors_for(lat, pl, region.members(), seed,
                              s_lambda + rep_i, s.c1);
            c[0] += region.eval(s.c1.data(), s.scratch);
        });
    rep.direct_mu =
        binomial_result(mu_hits[0], replicates, seed, s_mu, "crossing under mu");
    rep.direct_lambda = binomial_result(la_hits[0], replicates, seed, s_lambda,
                                        "crossing under lambda");
    rep.direct_gap = rep.direct_lambda.estimate - rep.direct_mu.estimate;
    rep.direct_se = std::sqrt(rep.direct_mu.std_error * rep.direct_mu.std_error +
                              rep.direct_lambda.std_error *
                                  rep.direct_lambda.std_error);
    return rep;
}

PivotalDecomposition estimate_pivotal_decomposition(
    const Lattice& lat, const ProbabilityField& mu,
    const ProbabilityField& lambda, const RectRegion& Q,
    std::int64_t replicates, std::uint64_t seed, StreamAllocator& streams,
    int workers, double disk_radius) {
    const double delta = std::min(Q.width, Q.height);
    if (disk_radius <= 0.0) disk_radius = 0.25 * delta;

    const CrossRegion region(lat, {Q, Color::Blue, Direction::Horizontal});
    const std::vector<double> pm = bind_field(mu, lat);
    const std::vector<double> pl = bind_field(lambda, lat);
    require_monotone_on(lat, pm, pl, region.members());

    // Ordered schedule: tiles of Q within disk_radius of the center,
    // ascending TileId (a fixed order, as the decomposition requires).
    std::vector<std::int32_t> sched; // member positions within the region
    {
        const auto disk = lat.tiles_in_disk(Q.center, disk_radius);
        std::vector<std::int32_t> pos(lat.tile_count(), -1);
        for (std::size_t i = 0; i < region.members().size(); ++i)
            pos[region.members()[i]] = static_cast<std::int32_t>(i);
        for (TileId t : disk)
            if (pos[t] >= 0) sched.push_back(pos[t]);
    }
    const auto K = static_cast<std::int64_t>(sched.size());
    if (K == 0) throw std::runtime_error("empty query");

    PivotalDecomposition out;
    out.K = K;
    out.replicates = replicates;
    out.switch_probs.resize(K);
    for (std::int64_t k = 0; k < K; ++k) {
        const TileId t = region.members()[sched[k]];
        out.switch_probs[k] = pl[t] - pm[t];
    }

    std::vector<PivotalRegion> pivotal;
    pivotal.reserve(K);
    for (std::int64_t k = 0; k < K; ++k)
        pivotal.emplace_back(lat, Q, region.members()[sched[k]],
                             PivotalRegion::AnyTile{});

    // Per-(k, k') success counts reconstruct both the mean and the variance
    // of the per-sample decomposition sum from integers, independent of the
    // worker partition.
    const std::size_t nk = static_cast<std::size_t>(K);
    const std::uint64_t stream0 = streams.take(replicates);
    auto counters = run_replicates<McState>(
        replicates, workers, nk + nk * nk + 2, [] { return McState{}; },
        [&](std::int64_t rep_i, McState& s, std::int64_t* c) {
            sample_coupled_colors_for(lat, pm, pl, region.members(), seed,
                                      stream0 + rep_i, s.c1, s.c2);
            // hybrid 0 = omega1 on the region
            s.hybrid = s.c1;
            bool prev = region.eval(s.hybrid.data(), s.scratch);
            const bool cross1 = prev;
            int flips = 0;
            s.hits.clear();
            for (std::int64_t k = 0; k < K; ++k) {
                const std::int32_t m = sched[k];
                if (pivotal[k].eval(s.hybrid.data(), s.scratch))
                    s.hits.push_back(static_cast<std::int32_t>(k));
                if (s.c2[m] != s.c1[m]) {
                    s.hybrid[m] = s.c2[m];
                    const bool cur = region.eval(s.hybrid.data(), s.scratch);
                    if (cur != prev) {
                        if (!cur)
                            throw std::logic_error(
                                "hybrid crossing lost while adding blue");
                        ++flips;
                        prev = cur;
                    }
                } // untouched tiles cannot change the crossing
            }
            if (flips > 1)
                throw std::logic_error("switch event realized twice");
            c[nk + nk * nk] += flips;
            const bool cross2 = region.eval(s.c2.data(), s.scratch);
            // with a full schedule, hybrid K equals omega2 on the region
            c[nk + nk * nk + 1] += (!cross1 && cross2);
            if (cross1 && !cross2)
                throw std::logic_error("coupling violation: omega1 crossed "
                                       "without omega2");
            for (std::size_t i = 0; i < s.hits.size(); ++i) {
                c[s.hits[i]] += 1;
                for (std::size_t j = 0; j < s.hits.size(); ++j)
                    c[nk + s.hits[i] * nk + s.hits[j]] += 1;
            }
        });

    out.flip_samples = counters[nk + nk * nk];
    out.one_sided_samples = counters[nk + nk * nk + 1];
    out.pivotal_probs.resize(K);
    double mean = 0.0;
    for (std::int64_t k = 0; k < K; ++k) {
        out.pivotal_probs[k] =
            static_cast<double>(counters[k]) / static_cast<double>(replicates);
        mean += out.pivotal_probs[k] * out.switch_probs[k];
    }
    out.sum = mean;
    // Var over samples of S = sum_{k pivotal} sw_k.
    double ex2 = 0.0;
    for (std::size_t i = 0; i < nk; ++i)
        for (std::size_t j = 0; j < nk; ++j)
            ex2 += static_cast<double>(counters[nk + i * nk + j]) *
                   out.switch_probs[i] * out.switch_probs[j];
    ex2 /= static_cast<double>(replicates);
    const double var = std::max(0.0, ex2 - mean * mean);
    out.se = std::sqrt(var / static_cast<double>(replicates));
    return out;
}

GapCurveReport gap_lower_bound_curve(LatticeKind kind, double eta, double R0,
                                     double sigma, double n0, double speed,
                                     double c_product,
                                     const std::vector<double>& delta_grid,
                                     std::int64_t gap_replicates,
                                     std::int64_t arm_replicates,
                                     std::uint64_t seed,
                                     StreamAllocator& streams, int workers) {
    GapCurveReport rep;
    rep.eta = eta;
    rep.R0 = R0;
    rep.sigma = sigma;
    rep.c_product = c_product;

    ProbabilityField mu, lambda;
    mu.speed = lambda.speed = speed;
    mu.n0 = lambda.n0 = n0;
    mu.default_iota = -0.5 * sigma;
    lambda.default_iota = 0.5 * sigma;
    mu.name = "mu";
    lambda.name = "lambda";
    if (std::abs(mu.default_iota) > n0)
        throw std::invalid_argument("gap curve: sigma/2 exceeds n0");

    {
        const Lattice lat = Lattice::build(
            {kind, eta, RectRegion::square({0, 0}, 2.0 * (R0 + 2.0 * eta))});
        rep.alpha4_eta_R0 =
            estimate_arm_events(lat, ProbabilityField::critical(),
                                {{0, 0}, eta, R0}, arm_replicates, seed,
                                streams.take(arm_replicates), workers)
                .four_arm;
    }

    double prev_ratio = -1.0;
    rep.monotone_ok = true;
    for (double delta : delta_grid) { // expected descending
        GapCurveRow row;
        row.delta = delta;
        {
            const Lattice lat = Lattice::build(
                {kind, eta,
                 RectRegion::square({0, 0}, 2.0 * (delta + 2.0 * eta))});
            row.alpha4_eta_delta =
                estimate_arm_events(lat, ProbabilityField::critical(),
                                    {{0, 0}, eta, delta}, arm_replicates, seed,
                                    streams.take(arm_replicates), workers)
                    .four_arm;
        }
        {
            const Lattice lat = Lattice::build(
                {kind, eta,
                 RectRegion::square({0, 0}, delta + 4.0 * eta)});
            row.gap = estimate_crossing_gap(
                lat, mu, lambda, RectRegion::square({0, 0}, delta),
                gap_replicates, seed, streams, workers);
        }
        if (rep.alpha4_eta_R0.estimate > 0.0) {
            row.rhs = sigma * c_product * delta * delta *
                      row.alpha4_eta_delta.estimate /
                      rep.alpha4_eta_R0.estimate;
            double rel2 = 0.0;
            for (const EstimatorResult* e :
                 {&row.alpha4_eta_delta, &rep.alpha4_eta_R0})
                if (e->estimate > 0.0)
                    rel2 += (e->std_error / e->estimate) *
                            (e->std_error / e->estimate);
            row.rhs_se = row.rhs * std::sqrt(rel2);
        }
        const double comb_se = std::sqrt(row.gap.coupled.std_error *
                                             row.gap.coupled.std_error +
                                         row.rhs_se * row.rhs_se);
        row.bound_ok = row.gap.coupled.estimate + 4.0 * comb_se >= row.rhs;
        const double ratio = row.gap.coupled.estimate / delta;
        if (prev_ratio >= 0.0 && ratio <= prev_ratio) rep.monotone_ok = false;
        prev_ratio = ratio;
        rep.rows.push_back(row);
    }
    return rep;
}

double compute_z_statistic(const Lattice& lat, const Configuration& cfg,
                           const SquareGrid& grid,
                           const std::vector<double>& means) {
    if (means.size() != grid.squares.size())
        throw std::invalid_argument("z statistic: means/grid size mismatch");
    ConnScratch s;
    double z = 0.0;
    for (std::size_t k = 0; k < grid.squares.size(); ++k) {
        if (!(means[k] >= 0.0 && means[k] <= 1.0))
            throw std::invalid_argument("z statistic: mean outside [0,1]");
        const CrossRegion region(
            lat, {grid.squares[k], Color::Blue, Direction::Horizontal});
        z += (region.eval(cfg, s) ? 1.0 : 0.0) - means[k];
    }
    return z;
}

namespace {

struct GridKernel {
    std::vector<CrossRegion> regions;
    std::vector<TileId> tiles;                       // sorted union
    std::vector<std::vector<std::int32_t>> gather;   // per square -> tiles idx

    GridKernel(const Lattice& lat, const SquareGrid& grid) {
        regions.reserve(grid.squares.size());
        for (const auto& sq : grid.squares)
            regions.emplace_back(
                lat, CrossingQuery{sq, Color::Blue, Direction::Horizontal});
        std::vector<std::int32_t> pos(lat.tile_count(), -1);
        for (const auto& r : regions)
            for (TileId t : r.members()) pos[t] = 0;
        for (TileId t = 0; t < lat.tile_count(); ++t)
            if (pos[t] == 0) {
                pos[t] = static_cast<std::int32_t>(tiles.size());
                tiles.push_back(t);
            }
        gather.resize(regions.size());
        for (std::size_t k = 0; k < regions.size(); ++k) {
            gather[k].reserve(regions[k].members().size());
            for (TileId t : regions[k].members())
                gather[k].push_back(pos[t]);
        }
    }

    // Number of grid squares crossed in the sampled colors.
    int eval_count(const std::vector<std::uint8_t>& colors, McState& s) const {
        int crossed = 0;
        for (std::size_t k = 0; k < regions.size(); ++k) {
            s.hybrid.resize(gather[k].size());
            for (std::size_t i = 0; i < gather[k].size(); ++i)
                s.hybrid[i] = colors[gather[k][i]];
            crossed += regions[k].eval(s.hybrid.data(), s.scratch);
        }
        return crossed;
    }
};

DistinguisherReport make_report(const std::string& label, std::int64_t n,
                                std::int64_t K, double a, double delta_n,
                                double threshold, double cheb,
                                std::int64_t rejects, std::int64_t reps,
                                double sum_z, double sum_z2,
                                bool is_alternative) {
    DistinguisherReport r;
    r.label = label;
    r.n = n;
    r.K = K;
    r.a = a;
    r.delta_n = delta_n;
    r.threshold = threshold;
    r.chebyshev_bound = cheb;
    r.rejects = rejects;
    r.replicates = reps;
    r.mean_z = sum_z / static_cast<double>(reps);
    r.var_z = std::max(0.0, sum_z2 / static_cast<double>(reps) -
                                r.mean_z * r.mean_z);
    r.rejection_rate = static_cast<double>(rejects) / static_cast<double>(reps);
    r.misclassification_rate =
        is_alternative ? 1.0 - r.rejection_rate : r.rejection_rate;
    r.decision = r.mean_z >= threshold ? "rejects-P" : "consistent-with-P";
    return r;
}

} // namespace

DistinguisherRun run_distinguisher(const Lattice& lat,
                                   const ProbabilityField& mu,
                                   const ProbabilityField& lambda,
                                   const RectRegion& D, std::int64_t n,
                                   double a, std::int64_t replicates_means,
                                   std::int64_t replicates_test,
                                   std::uint64_t seed, StreamAllocator& streams,
                                   int workers, double delta_override) {
    if (!lat.window().contains_rect(D, lat.eps()))
        throw std::runtime_error("region outside lattice");
    DistinguisherRun run;
    run.grid = build_square_grid(D, n, a, lat.mesh());
    const std::int64_t K = run.grid.K();

    const GridKernel kernel(lat, run.grid);
    const std::vector<double> pm = bind_field(mu, lat);
    const std::vector<double> pl = bind_field(lambda, lat);
    require_monotone_on(lat, pm, pl, kernel.tiles);

    // Phase 1: reference means under mu.
    const std::uint64_t s_means = streams.take(replicates_means);
    {
        auto counts = run_replicates<McState>(
            replicates_means, workers, K, [] { return McState{}; },
            [&](std::int64_t rep_i, McState& s, std::int64_t* c) {
                sample_colors_for(lat, pm, kernel.tiles, seed, s_means + rep_i,
                                  s.c1);
                for (std::size_t k = 0; k < kernel.regions.size(); ++k) {
                    s.hybrid.resize(kernel.gather[k].size());
                    for (std::size_t i = 0; i < kernel.gather[k].size(); ++i)
                        s.hybrid[i] = s.c1[kernel.gather[k][i]];
                    c[k] += kernel.regions[k].eval(s.hybrid.data(), s.scratch);
                }
            });
        run.means.resize(K);
        for (std::int64_t k = 0; k < K; ++k)
            run.means[k] = static_cast<double>(counts[k]) /
                           static_cast<double>(replicates_means);
    }

    // Phase 2: per-square coupled gap estimates.
    const std::uint64_t s_gap = streams.take(replicates_means);
    {
        auto counts = run_replicates<McState>(
            replicates_means, workers, K, [] { return McState{}; },
            [&](std::int64_t rep_i, McState& s, std::int64_t* c) {
                sample_coupled_colors_for(lat, pm, pl, kernel.tiles, seed,
                                          s_gap + rep_i, s.c1, s.c2);
                for (std::size_t k = 0; k < kernel.regions.size(); ++k) {
                    s.hybrid.resize(kernel.gather[k].size());
                    for (std::size_t i = 0; i < kernel.gather[k].size(); ++i)
                        s.hybrid[i] = s.c1[kernel.gather[k][i]];
                    const bool x1 =
                        kernel.regions[k].eval(s.hybrid.data(), s.scratch);
                    for (std::size_t i = 0; i < kernel.gather[k].size(); ++i)
                        s.hybrid[i] = s.c2[kernel.gather[k][i]];
                    const bool x2 =
                        kernel.regions[k].eval(s.hybrid.data(), s.scratch);
                    if (x1 && !x2)
                        throw std::logic_error("coupling violation: omega1 "
                                               "crossed without omega2");
                    c[k] += (!x1 && x2);
                }
            });
        run.gaps.resize(K);
        double min_gap = 1.0;
        for (std::int64_t k = 0; k < K; ++k) {
            run.gaps[k] = static_cast<double>(counts[k]) /
                          static_cast<double>(replicates_means);
            min_gap = std::min(min_gap, run.gaps[k]);
        }
        run.delta_n = static_cast<double>(n) * min_gap;
    }
    if (run.delta_n <= 0.0) {
        if (delta_override > 0.0) {
            run.delta_n = delta_override;
            run.delta_overridden = true;
        } else {
            throw std::runtime_error("no detectable gap at this scale");
        }
    }

    const double b = 1.0;
    const double threshold = 0.5 * a * static_cast<double>(n) * run.delta_n;
    const double cheb = std::min(
        1.0, 4.0 * (a + 1.0) * b * b / (a * a * run.delta_n * run.delta_n));

    // Phase 3: fresh test configurations under each measure. Z per config is
    // an integer crossing count minus the fixed sum of means.
    double mean_sum = 0.0;
    for (double m : run.means) mean_sum += m;
    auto phase3 = [&](const std::vector<double>& p, const std::string& label,
                      bool is_alternative) {
        const std::uint64_t s0 = streams.take(replicates_test);
        auto counts = run_replicates<McState>(
            replicates_test, workers, 3, [] { return McState{}; },
            [&](std::int64_t rep_i, McState& s, std::int64_t* c) {
                sample_colors_for(lat, p, kernel.tiles, seed, s0 + rep_i,
                                  s.c1);
                const int crossed = kernel.eval_count(s.c1, s);
                c[0] += crossed;
                c[1] += static_cast<std::int64_t>(crossed) * crossed;
                c[2] += (static_cast<double>(crossed) - mean_sum >= threshold);
            });
        const double sum_z =
            static_cast<double>(counts[0]) -
            mean_sum * static_cast<double>(replicates_test);
        // E[(C - M)^2] from integer moments of C
        const double sum_z2 =
            static_cast<double>(counts[1]) -
            2.0 * mean_sum * static_cast<double>(counts[0]) +
            mean_sum * mean_sum * static_cast<double>(replicates_test);
        return make_report(label, n, K, a, run.delta_n, threshold, cheb,
                           counts[2], replicates_test, sum_z, sum_z2,
                           is_alternative);
    };
    run.under_mu = phase3(pm, mu.name.empty() ? "mu" : mu.name, false);
    run.under_lambda =
        phase3(pl, lambda.name.empty() ? "lambda" : lambda.name, true);
    return run;
}

} // namespace percolab
