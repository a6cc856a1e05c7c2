#include "percolab/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace percolab {

namespace {

struct McState {
    ConnScratch scratch;
    std::vector<std::uint8_t> colors;
    std::vector<std::uint8_t> gather;
};

std::string fmt_query(const char* what, double r, double R) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s r=%.6g R=%.6g", what, r, R);
    return buf;
}

Lattice annulus_lattice(LatticeKind kind, double mesh, Point z, double R) {
    const double side = 2.0 * (R + 2.0 * mesh);
    return Lattice::build({kind, mesh, RectRegion::square(z, side)});
}

double ratio_se(double ratio, std::initializer_list<const EstimatorResult*> es) {
    double rel2 = 0.0;
    for (const auto* e : es) {
        if (e->estimate <= 0.0) return 0.0;
        rel2 += (e->std_error / e->estimate) * (e->std_error / e->estimate);
    }
    return std::abs(ratio) * std::sqrt(rel2);
}

} // namespace

ArmEstimates estimate_arm_events(const Lattice& lat,
                                 const ProbabilityField& field,
                                 const AnnulusRegion& a,
                                 std::int64_t replicates, std::uint64_t seed,
                                 std::uint64_t stream_begin, int workers) {
    const AnnulusIndex idx(lat, a);
    const std::vector<double> p = bind_field(field, lat);
    const auto counters = run_replicates<McState>(
        replicates, workers, 4, [] { return McState{}; },
        [&](std::int64_t rep, McState& s, std::int64_t* c) {
            sample_colors_for(lat, p, idx.members(), seed, stream_begin + rep,
                              s.colors);
            const ArmEvents ev = idx.eval(s.colors.data(), s.scratch);
            c[0] += ev.one_arm_blue;
            c[1] += ev.one_arm_yellow;
            c[2] += ev.four_arm;
            c[3] += ev.five_arm;
        });
    ArmEstimates out;
    out.one_arm_blue =
        binomial_result(counters[0], replicates, seed, stream_begin,
                        fmt_query("one_arm_blue", a.r_in, a.r_out));
    out.one_arm_yellow =
        binomial_result(counters[1], replicates, seed, stream_begin,
                        fmt_query("one_arm_yellow", a.r_in, a.r_out));
    out.four_arm = binomial_result(counters[2], replicates, seed, stream_begin,
                                   fmt_query("four_arm", a.r_in, a.r_out));
    out.five_arm = binomial_result(counters[3], replicates, seed, stream_begin,
                                   fmt_query("five_arm", a.r_in, a.r_out));
    return out;
}

EstimatorResult estimate_crossing_probability(const Lattice& lat,
                                              const ProbabilityField& field,
                                              const CrossingQuery& q,
                                              std::int64_t replicates,
                                              std::uint64_t seed,
                                              std::uint64_t stream_begin,
                                              int workers) {
    const CrossRegion region(lat, q);
    const std::vector<double> p = bind_field(field, lat);
    const auto counters = run_replicates<McState>(
        replicates, workers, 1, [] { return McState{}; },
        [&](std::int64_t rep, McState& s, std::int64_t* c) {
            sample_colors_for(lat, p, region.members(), seed,
                              stream_begin + rep, s.colors);
            c[0] += region.eval(s.colors.data(), s.scratch);
        });
    char buf[160];
    std::snprintf(buf, sizeof buf, "crossing %s %s w=%.6g h=%.6g",
                  q.color == Color::Blue ? "blue" : "yellow",
                  q.dir == Direction::Horizontal ? "horizontal" : "vertical",
                  q.rect.width, q.rect.height);
    return binomial_result(counters[0], replicates, seed, stream_begin, buf);
}

EstimatorResult estimate_alpha4(const Lattice& lat, Point z, double r,
                                double R, std::int64_t replicates,
                                std::uint64_t seed, std::uint64_t stream_begin,
                                int workers) {
    return estimate_arm_events(lat, ProbabilityField::critical(),
                               {z, r, R}, replicates, seed, stream_begin,
                               workers)
        .four_arm;
}

ArmEstimates estimate_critical_arms(LatticeKind kind, double r_in, double n,
                                    std::int64_t replicates,
                                    std::uint64_t seed,
                                    StreamAllocator& streams, int workers) {
    const Lattice lat = annulus_lattice(kind, 1.0, {0, 0}, n);
    return estimate_arm_events(lat, ProbabilityField::critical(),
                               {{0, 0}, r_in, n}, replicates, seed,
                               streams.take(replicates), workers);
}

double speed_factor(double eta, double alpha4_estimate) {
    if (!(alpha4_estimate > 0.0))
        throw std::invalid_argument("speed_factor: alpha4 estimate <= 0");
    if (!(eta > 0.0)) throw std::invalid_argument("speed_factor: eta <= 0");
    return eta * eta / alpha4_estimate;
}

// ----------------------------------------------------- characteristic length

namespace {

// Decisively compares the crossing probability at size n against the
// stopping threshold, escalating replicates while the 4-SE interval
// straddles it.
CharLenRow resolve_scale(LatticeKind kind, double p, double threshold,
                         bool stop_below, std::int64_t n,
                         std::int64_t replicates, std::int64_t replicate_cap,
                         std::uint64_t seed, StreamAllocator& streams,
                         int workers) {
    const Lattice lat = Lattice::build(
        {kind, 1.0, RectRegion::from_corner(0, 0, static_cast<double>(n),
                                            static_cast<double>(n))});
    const ProbabilityField field = ProbabilityField::uniform(p);
    const CrossingQuery q{lat.window(), Color::Blue, Direction::Horizontal};
    std::int64_t reps = replicates;
    CharLenRow row;
    row.n = n;
    for (;;) {
        row.est = estimate_crossing_probability(lat, field, q, reps, seed,
                                                streams.take(reps), workers);
        const double lo = row.est.estimate - 4.0 * row.est.std_error;
        const double hi = row.est.estimate + 4.0 * row.est.std_error;
        const bool triggered = stop_below ? hi <= threshold : lo >= threshold;
        const bool clear = stop_below ? lo > threshold : hi < threshold;
        if (triggered) {
            row.resolution = -1;
            return row;
        }
        if (clear) {
            row.resolution = +1;
            return row;
        }
        if (reps >= replicate_cap) {
            row.resolution = 0; // unresolved; classify by the point estimate
            return row;
        }
        reps = std::min(replicate_cap, reps * 4);
    }
}

} // namespace

CharLenResult characteristic_length(LatticeKind kind, double p, double epsilon,
                                    std::int64_t n_max,
                                    std::int64_t replicates,
                                    std::int64_t replicate_cap,
                                    std::uint64_t seed,
                                    StreamAllocator& streams, int workers) {
    if (!(epsilon > 0.0 && epsilon < 0.5))
        throw std::invalid_argument("characteristic_length: epsilon");
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("characteristic_length: p");
    CharLenResult out;
    out.p = p;
    out.epsilon = epsilon;
    if (p == 0.5) return out; // L_eps(p_c) is infinite by definition

    const bool stop_below = p < 0.5;
    const double threshold = stop_below ? epsilon : 1.0 - epsilon;

    auto resolve = [&](std::int64_t n) {
        CharLenRow row = resolve_scale(kind, p, threshold, stop_below, n,
                                       replicates, replicate_cap, seed,
                                       streams, workers);
        if (row.resolution == 0) {
            out.unresolved = true;
            row.resolution =
                (stop_below ? row.est.estimate <= threshold
                            : row.est.estimate >= threshold)
                    ? -1
                    : +1;
        }
        out.table.push_back(row);
        return row.resolution < 0;
    };

    std::int64_t lo = 0, hi = -1;
    for (std::int64_t n = 1;; n *= 2) {
        if (n > n_max) n = n_max;
        if (resolve(n)) {
            hi = n;
            break;
        }
        lo = n;
        if (n == n_max) {
            out.exhausted = true;
            out.L = kInfiniteLength;
            return out;
        }
    }
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (resolve(mid))
            hi = mid;
        else
            lo = mid;
    }
    out.L = hi;
    return out;
}

// ------------------------------------------------------------------- checks

QuasiMultReport check_quasi_multiplicativity(LatticeKind kind, double m,
                                             double n, std::int64_t replicates,
                                             std::uint64_t seed,
                                             StreamAllocator& streams,
                                             int workers) {
    if (m > n) throw std::invalid_argument("quasi-multiplicativity: m > n");
    QuasiMultReport rep;
    rep.m = m;
    rep.n = n;
    rep.a_m = estimate_critical_arms(kind, 1.0, m, replicates, seed, streams,
                                     workers)
                  .four_arm;
    rep.a_n = estimate_critical_arms(kind, 1.0, n, replicates, seed, streams,
                                     workers)
                  .four_arm;
    if (m == n) {
        // Empty annulus: alpha4(n, n) is vacuously 1.
        rep.a_mn = EstimatorResult{};
        rep.a_mn.estimate = 1.0;
        rep.a_mn.query = fmt_query("four_arm (empty annulus)", m, n);
    } else {
        const Lattice lat = annulus_lattice(kind, 1.0, {0, 0}, n);
        rep.a_mn = estimate_arm_events(lat, ProbabilityField::critical(),
                                       {{0, 0}, m, n}, replicates, seed,
                                       streams.take(replicates), workers)
                       .four_arm;
    }
    rep.underpowered = rep.a_n.successes == 0 || rep.a_m.successes == 0 ||
                       (m != n && rep.a_mn.successes == 0);
    if (rep.a_n.estimate > 0.0) {
        rep.ratio = rep.a_m.estimate * rep.a_mn.estimate / rep.a_n.estimate;
        rep.ratio_se = ratio_se(rep.ratio, {&rep.a_m, &rep.a_mn, &rep.a_n});
    }
    auto leq_4se = [](const EstimatorResult& a, const EstimatorResult& b) {
        const double se =
            std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
        return a.estimate <= b.estimate + 4.0 * se;
    };
    rep.containment_ok = leq_4se(rep.a_n, rep.a_m) &&
                         (m == n || leq_4se(rep.a_n, rep.a_mn));
    return rep;
}

PowerBoundReport check_power_bound(
    LatticeKind kind, const std::vector<std::pair<double, double>>& mn_pairs,
    std::int64_t replicates, std::uint64_t seed, StreamAllocator& streams,
    int workers) {
    PowerBoundReport rep;
    std::vector<double> xs, ys, ses;
    for (const auto& [m, n] : mn_pairs) {
        PowerBoundRow row;
        row.m = m;
        row.n = n;
        if (m == n) {
            row.a_mn.estimate = 1.0;
            row.a_mn.query = fmt_query("four_arm (empty annulus)", m, n);
        } else {
            const Lattice lat = annulus_lattice(kind, 1.0, {0, 0}, n);
            row.a_mn = estimate_arm_events(lat, ProbabilityField::critical(),
                                           {{0, 0}, m, n}, replicates, seed,
                                           streams.take(replicates), workers)
                           .four_arm;
            if (row.a_mn.successes > 0) {
                xs.push_back(m / n);
                ys.push_back(row.a_mn.estimate);
                ses.push_back(row.a_mn.std_error);
            }
        }
        rep.rows.push_back(row);
    }
    const PowerLawFit fit = fit_power_law(xs, ys, ses);
    rep.exponent = fit.slope;
    rep.exponent_se = fit.slope_se;
    rep.exponent_ok = rep.exponent + 4.0 * rep.exponent_se < 2.0;
    return rep;
}

RswReport check_rsw_annulus(LatticeKind kind, double eta, double speed,
                            double n0, const std::vector<double>& r_grid,
                            const std::vector<double>& decay_R_over_r,
                            std::int64_t replicates, std::uint64_t seed,
                            StreamAllocator& streams, int workers) {
    RswReport rep;
    const double iotas[3] = {-n0, 0.0, n0};
    for (double r : r_grid) {
        const Lattice lat = annulus_lattice(kind, eta, {0, 0}, 2.0 * r);
        for (double iota : iotas) {
            ProbabilityField f;
            f.speed = speed;
            f.n0 = std::max(n0, 1.0);
            f.default_iota = iota;
            const ArmEstimates est = estimate_arm_events(
                lat, f, {{0, 0}, r, 2.0 * r}, replicates, seed,
                streams.take(replicates), workers);
            for (Color c : {Color::Blue, Color::Yellow}) {
                RswRow row;
                row.color = c;
                row.iota = iota;
                row.r = r;
                row.est = c == Color::Blue ? est.one_arm_blue
                                           : est.one_arm_yellow;
                rep.min_p = std::min(rep.min_p, row.est.estimate);
                rep.max_p = std::max(rep.max_p, row.est.estimate);
                rep.rows.push_back(row);
            }
        }
    }
    rep.c_hat = std::min(rep.min_p, 1.0 - rep.max_p);

    if (!r_grid.empty()) {
        const double r = r_grid.front();
        for (double ratio : decay_R_over_r) {
            const double R = ratio * r;
            const Lattice lat = annulus_lattice(kind, eta, {0, 0}, R);
            RswDecayRow row;
            row.r = r;
            row.R = R;
            row.est = estimate_arm_events(lat, ProbabilityField::critical(),
                                          {{0, 0}, r, R}, replicates, seed,
                                          streams.take(replicates), workers)
                          .one_arm_blue;
            const int k = static_cast<int>(std::floor(std::log2(ratio)));
            row.envelope = std::pow(1.0 - rep.c_hat, k);
            if (row.est.estimate > row.envelope + 4.0 * row.est.std_error)
                rep.envelope_ok = false;
            rep.decay.push_back(row);
        }
    }
    return rep;
}

FiveArmReport check_five_arm_bound(LatticeKind kind,
                                   const std::vector<double>& n_grid,
                                   std::int64_t replicates, std::uint64_t seed,
                                   StreamAllocator& streams, int workers) {
    FiveArmReport rep;
    std::vector<double> xs, ys, ses;
    rep.c_tilde = 1e300;
    for (double n : n_grid) {
        FiveArmRow row;
        row.n = n;
        row.est = estimate_critical_arms(kind, 1.0, n, replicates, seed,
                                         streams, workers);
        const double prod =
            row.est.four_arm.estimate * row.est.one_arm_blue.estimate;
        const double prod_se =
            ratio_se(prod, {&row.est.four_arm, &row.est.one_arm_blue});
        const double se = std::sqrt(prod_se * prod_se +
                                    row.est.five_arm.std_error *
                                        row.est.five_arm.std_error);
        row.product_ok = row.est.five_arm.estimate <= prod + 4.0 * se;
        if (row.est.five_arm.successes > 0) {
            xs.push_back(n);
            ys.push_back(row.est.five_arm.estimate);
            ses.push_back(row.est.five_arm.std_error);
            rep.c_tilde =
                std::min(rep.c_tilde, row.est.five_arm.estimate * n * n);
        }
        rep.rows.push_back(row);
    }
    if (xs.size() >= 2) {
        const PowerLawFit fit = fit_power_law(xs, ys, ses);
        rep.slope = fit.slope;
        rep.slope_se = fit.slope_se;
    }
    if (rep.c_tilde == 1e300) rep.c_tilde = 0.0;
    return rep;
}

Lemma5Report check_lemma5_sandwich(LatticeKind kind, double p, double n,
                                   double C1, double C2, double epsilon,
                                   std::int64_t arm_replicates,
                                   std::int64_t cross_replicates,
                                   std::int64_t n_max, std::uint64_t seed,
                                   StreamAllocator& streams, int workers) {
    Lemma5Report rep;
    rep.p = p;
    rep.n = n;
    rep.epsilon = epsilon;
    rep.alpha4_n = estimate_critical_arms(kind, 1.0, n, arm_replicates, seed,
                                          streams, workers)
                       .four_arm;
    rep.antecedent = std::abs(p - 0.5) * n * n * rep.alpha4_n.estimate;
    rep.vacuous = rep.antecedent < C1 || rep.antecedent > C2;
    rep.charlen =
        characteristic_length(kind, p, epsilon, n_max, cross_replicates,
                              16 * cross_replicates, seed, streams, workers);
    if (rep.charlen.L > 0) rep.ratio = n / static_cast<double>(rep.charlen.L);
    return rep;
}

Lemma6Report check_lemma6(LatticeKind kind, double epsilon0, double K,
                          const std::vector<double>& p_grid,
                          std::int64_t n_max, std::int64_t replicates,
                          std::uint64_t seed, StreamAllocator& streams,
                          int workers) {
    if (!(epsilon0 > 0.0 && epsilon0 < 0.5))
        throw std::invalid_argument("check_lemma6: epsilon0");
    if (K < 1.0) throw std::invalid_argument("check_lemma6: K < 1");
    Lemma6Report rep;
    rep.epsilon0 = epsilon0;
    rep.K = K;
    for (double p : p_grid) {
        if (!(p < 0.5)) throw std::invalid_argument("check_lemma6: p >= p_c");
        Lemma6Row row;
        row.p = p;
        const CharLenResult base =
            characteristic_length(kind, p, epsilon0, n_max, replicates,
                                  16 * replicates, seed, streams, workers);
        row.L0 = base.L;
        if (base.L == kInfiniteLength) {
            row.exhausted = true;
            rep.rows.push_back(row);
            continue;
        }
        const std::int64_t target = static_cast<std::int64_t>(
            std::ceil(K * static_cast<double>(base.L)));
        double eps = epsilon0;
        for (int j = 0; j < 16; ++j, eps *= 0.5) {
            const CharLenResult cl =
                characteristic_length(kind, p, eps, n_max, replicates,
                                      16 * replicates, seed, streams, workers);
            if (cl.L == kInfiniteLength) {
                row.exhausted = true;
                break;
            }
            if (cl.L >= target) {
                row.found_eps = eps;
                row.L_eps = cl.L;
                row.ok = true;
                break;
            }
        }
        rep.rows.push_back(row);
    }
    return rep;
}

std::int64_t check_rectangle_step(LatticeKind kind, double p, std::int64_t L,
                                  std::int64_t K, std::int64_t n,
                                  std::int64_t replicates, std::uint64_t seed,
                                  std::uint64_t stream_begin, int workers) {
    if (!(L < n && n < K * L))
        throw std::invalid_argument("rectangle step: need L < n < K*L");
    const double W = static_cast<double>(K * L);
    const double H = static_cast<double>(n);
    const Lattice lat = Lattice::build({kind, 1.0,
                                        RectRegion::from_corner(0, 0, W, H)});
    const RectRegion long_rect =
        RectRegion::from_corner(0, H - static_cast<double>(L), W,
                                static_cast<double>(L));
    const RectRegion square = RectRegion::from_corner(0, 0, H, H);
    const CrossRegion long_region(lat, {long_rect, Color::Blue,
                                        Direction::Horizontal});
    const CrossRegion square_region(lat, {square, Color::Blue,
                                          Direction::Horizontal});
    const std::vector<double> pf =
        bind_field(ProbabilityField::uniform(p), lat);

    // The whole-window member list is the identity, so region colors can be
    // gathered from the full color buffer by tile id.
    std::vector<TileId> all(lat.tile_count());
    for (TileId t = 0; t < lat.tile_count(); ++t) all[t] = t;

    const auto counters = run_replicates<McState>(
        replicates, workers, 1, [] { return McState{}; },
        [&](std::int64_t rep, McState& s, std::int64_t* c) {
            sample_colors_for(lat, pf, all, seed, stream_begin + rep,
                              s.colors);
            s.gather.resize(long_region.members().size());
            for (std::size_t i = 0; i < long_region.members().size(); ++i)
                s.gather[i] = s.colors[long_region.members()[i]];
            if (!long_region.eval(s.gather.data(), s.scratch)) return;
            s.gather.resize(square_region.members().size());
            for (std::size_t i = 0; i < square_region.members().size(); ++i)
                s.gather[i] = s.colors[square_region.members()[i]];
            if (!square_region.eval(s.gather.data(), s.scratch)) c[0] += 1;
        });
    return counters[0];
}

Condition1Report check_condition1(LatticeKind kind, double R,
                                  const std::vector<double>& r_grid,
                                  std::int64_t replicates, std::uint64_t seed,
                                  StreamAllocator& streams, int workers) {
    Condition1Report rep;
    rep.R = R;
    const Lattice lat = annulus_lattice(kind, 1.0, {0, 0}, R);
    double prev = -1.0;
    for (double r : r_grid) { // expected descending
        Condition1Row row;
        row.r = r;
        row.a4 = estimate_arm_events(lat, ProbabilityField::critical(),
                                     {{0, 0}, r, R}, replicates, seed,
                                     streams.take(replicates), workers)
                     .four_arm;
        row.scaled = (R / r) * row.a4.estimate;
        if (prev >= 0.0 && row.scaled > prev) rep.decreasing = false;
        prev = row.scaled;
        rep.rows.push_back(row);
    }
    return rep;
}

Condition3Report check_condition3(LatticeKind kind, double eta, double speed,
                                  double n0, double R, int z_count,
                                  std::int64_t replicates, std::uint64_t seed,
                                  StreamAllocator& streams, int workers) {
    Condition3Report rep;
    const double side = 2.0 * (2.0 * R + 2.0 * eta);
    const Lattice lat =
        Lattice::build({kind, eta, RectRegion::square({0, 0}, side)});
    rep.critical0 = estimate_arm_events(lat, ProbabilityField::critical(),
                                        {{0, 0}, eta, R}, replicates, seed,
                                        streams.take(replicates), workers)
                        .four_arm;
    rep.min_ratio = 1e300;
    rep.max_ratio = 0.0;
    const double iotas[3] = {-n0, 0.0, n0};
    for (int k = 0; k < z_count; ++k) {
        const double ang = 2.0 * 3.14159265358979323846 * k / z_count;
        const Point z{R * std::cos(ang), R * std::sin(ang)};
        for (double iota : iotas) {
            ProbabilityField f;
            f.speed = speed;
            f.n0 = std::max(n0, 1.0);
            f.default_iota = iota;
            Condition3Row row;
            row.z = z;
            row.iota = iota;
            row.est = estimate_arm_events(lat, f, {z, eta, R}, replicates,
                                          seed, streams.take(replicates),
                                          workers)
                          .four_arm;
            row.ratio = rep.critical0.estimate > 0.0
                            ? row.est.estimate / rep.critical0.estimate
                            : 0.0;
            rep.min_ratio = std::min(rep.min_ratio, row.ratio);
            rep.max_ratio = std::max(rep.max_ratio, row.ratio);
            rep.rows.push_back(row);
        }
    }
    return rep;
}

Condition4Report check_condition4(LatticeKind kind, double R, int tile_count,
                                  std::int64_t replicates, std::uint64_t seed,
                                  StreamAllocator& streams, int workers) {
    Condition4Report rep;
    const Lattice lat = annulus_lattice(kind, 1.0, {0, 0}, R);
    rep.alpha4 = estimate_arm_events(lat, ProbabilityField::critical(),
                                     {{0, 0}, 1.0, R}, replicates, seed,
                                     streams.take(replicates), workers)
                     .four_arm;

    const RectRegion Q = RectRegion::square({0, 0}, R);
    const std::vector<TileId> disk = lat.tiles_in_disk({0, 0}, 0.25 * R);
    if (disk.empty()) throw std::runtime_error("empty query");
    std::vector<TileId> chosen;
    const std::size_t step = std::max<std::size_t>(1, disk.size() / tile_count);
    for (std::size_t i = 0; i < disk.size() && chosen.size() <
                                static_cast<std::size_t>(tile_count);
         i += step)
        chosen.push_back(disk[i]);

    std::vector<PivotalRegion> regions;
    regions.reserve(chosen.size());
    for (TileId t : chosen) regions.emplace_back(lat, Q, t);
    const std::vector<TileId> members = lat.tiles_in_rect(Q);
    const std::vector<double> pf =
        bind_field(ProbabilityField::critical(), lat);
    std::vector<std::int32_t> member_pos(lat.tile_count(), -1);
    for (std::size_t i = 0; i < members.size(); ++i)
        member_pos[members[i]] = static_cast<std::int32_t>(i);

    const std::uint64_t stream0 = streams.take(replicates);
    const auto counters = run_replicates<McState>(
        replicates, workers, chosen.size(), [] { return McState{}; },
        [&](std::int64_t rep, McState& s, std::int64_t* c) {
            sample_colors_for(lat, pf, members, seed, stream0 + rep, s.colors);
            for (std::size_t k = 0; k < regions.size(); ++k) {
                // all regions share the same member set (tiles of Q)
                c[k] += regions[k].eval(s.colors.data(), s.scratch);
            }
        });

    rep.c3_hat = 1e300;
    for (std::size_t k = 0; k < chosen.size(); ++k) {
        Condition4Row row;
        row.t = chosen[k];
        row.est = binomial_result(counters[k], replicates, seed, stream0,
                                  "four_arm_to_sides");
        row.ratio = rep.alpha4.estimate > 0.0
                        ? row.est.estimate / rep.alpha4.estimate
                        : 0.0;
        rep.c3_hat = std::min(rep.c3_hat, row.ratio);
        rep.rows.push_back(row);
    }
    if (rep.c3_hat == 1e300) rep.c3_hat = 0.0;
    return rep;
}

bool check_condition2(double p_crit, double n0, double speed) {
    return 0.0 < p_crit - n0 * speed && p_crit + n0 * speed < 1.0;
}

} // namespace percolab
