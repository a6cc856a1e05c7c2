#include "percolab/oracle.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace percolab {

namespace {

struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    double value() const { return s; }
};

class CrossingEvent : public OracleEvent {
  public:
    CrossingEvent(const Lattice& lat, const CrossingQuery& q)
        : region_(lat, q), color_(q.color) {}
    bool eval(const Configuration& cfg, ConnScratch& s) const override {
        return region_.eval(cfg, s);
    }
    std::string describe() const override { return "crossing"; }
    bool increasing() const override { return color_ == Color::Blue; }

  private:
    CrossRegion region_;
    Color color_;
};

class ArmEvent : public OracleEvent {
  public:
    enum class Kind { OneArm, FourArm, FiveArm };
    ArmEvent(const Lattice& lat, const AnnulusRegion& a, Kind k, Color color)
        : index_(lat, a), kind_(k), color_(color) {}
    bool eval(const Configuration& cfg, ConnScratch& s) const override {
        const ArmEvents ev = index_.eval(cfg, s);
        switch (kind_) {
        case Kind::OneArm:
            return color_ == Color::Blue ? ev.one_arm_blue : ev.one_arm_yellow;
        case Kind::FourArm: return ev.four_arm;
        case Kind::FiveArm: return ev.five_arm;
        }
        return false;
    }
    std::string describe() const override {
        switch (kind_) {
        case Kind::OneArm:
            return color_ == Color::Blue ? "one-arm-blue" : "one-arm-yellow";
        case Kind::FourArm: return "four-arm";
        case Kind::FiveArm: return "five-arm";
        }
        return "arm";
    }
    bool increasing() const override {
        return kind_ == Kind::OneArm && color_ == Color::Blue;
    }

  private:
    AnnulusIndex index_;
    Kind kind_;
    Color color_;
};

class PivotalEvent : public OracleEvent {
  public:
    PivotalEvent(const Lattice& lat, const RectRegion& rect, TileId t)
        : region_(lat, rect, t) {}
    bool eval(const Configuration& cfg, ConnScratch& s) const override {
        return region_.eval(cfg, s);
    }
    std::string describe() const override { return "four-arm-to-sides"; }

  private:
    PivotalRegion region_;
};

class TileBlueEvent : public OracleEvent {
  public:
    explicit TileBlueEvent(TileId t) : t_(t) {}
    bool eval(const Configuration& cfg, ConnScratch&) const override {
        return cfg.blue(t_);
    }
    std::string describe() const override { return "tile-blue"; }
    bool increasing() const override { return true; }

  private:
    TileId t_;
};

class AndEvent : public OracleEvent {
  public:
    AndEvent(std::unique_ptr<OracleEvent> a, std::unique_ptr<OracleEvent> b)
        : a_(std::move(a)), b_(std::move(b)) {}
    bool eval(const Configuration& cfg, ConnScratch& s) const override {
        return a_->eval(cfg, s) && b_->eval(cfg, s);
    }
    std::string describe() const override {
        return a_->describe() + " and " + b_->describe();
    }
    bool increasing() const override {
        return a_->increasing() && b_->increasing();
    }

  private:
    std::unique_ptr<OracleEvent> a_, b_;
};

class NotEvent : public OracleEvent {
  public:
    explicit NotEvent(std::unique_ptr<OracleEvent> a) : a_(std::move(a)) {}
    bool eval(const Configuration& cfg, ConnScratch& s) const override {
        return !a_->eval(cfg, s);
    }
    std::string describe() const override { return "not " + a_->describe(); }

  private:
    std::unique_ptr<OracleEvent> a_;
};

constexpr int kMaxOracleTiles = 24;

void check_enumerable(const Lattice& lat) {
    if (lat.tile_count() > kMaxOracleTiles)
        throw std::runtime_error("too many tiles");
}

// Depth-first sum over colorings of tiles [t, n); yellow branch first so the
// leaf order matches ascending configuration index.
void enumerate_rec(const std::vector<double>& p, TileId t, double w,
                   Configuration& cfg, const OracleEvent& event,
                   ConnScratch& scratch, KahanSum& acc) {
    if (w == 0.0) return;
    const auto n = static_cast<TileId>(p.size());
    if (t == n) {
        if (event.eval(cfg, scratch)) acc.add(w);
        return;
    }
    cfg.set(t, Color::Yellow);
    enumerate_rec(p, t + 1, w * (1.0 - p[t]), cfg, event, scratch, acc);
    cfg.set(t, Color::Blue);
    enumerate_rec(p, t + 1, w * p[t], cfg, event, scratch, acc);
    cfg.set(t, Color::Yellow);
}

} // namespace

std::unique_ptr<OracleEvent> make_crossing_event(const Lattice& lat,
                                                 const CrossingQuery& q) {
    return std::make_unique<CrossingEvent>(lat, q);
}
std::unique_ptr<OracleEvent> make_one_arm_event(const Lattice& lat,
                                                const AnnulusRegion& a,
                                                Color color) {
    return std::make_unique<ArmEvent>(lat, a, ArmEvent::Kind::OneArm, color);
}
std::unique_ptr<OracleEvent> make_four_arm_event(const Lattice& lat,
                                                 const AnnulusRegion& a) {
    return std::make_unique<ArmEvent>(lat, a, ArmEvent::Kind::FourArm,
                                      Color::Blue);
}
std::unique_ptr<OracleEvent> make_five_arm_event(const Lattice& lat,
                                                 const AnnulusRegion& a) {
    return std::make_unique<ArmEvent>(lat, a, ArmEvent::Kind::FiveArm,
                                      Color::Blue);
}
std::unique_ptr<OracleEvent> make_pivotal_event(const Lattice& lat,
                                                const RectRegion& rect,
                                                TileId t) {
    return std::make_unique<PivotalEvent>(lat, rect, t);
}
std::unique_ptr<OracleEvent> make_tile_blue_event(TileId t) {
    return std::make_unique<TileBlueEvent>(t);
}
std::unique_ptr<OracleEvent> make_and_event(std::unique_ptr<OracleEvent> a,
                                            std::unique_ptr<OracleEvent> b) {
    return std::make_unique<AndEvent>(std::move(a), std::move(b));
}
std::unique_ptr<OracleEvent> make_not_event(std::unique_ptr<OracleEvent> a) {
    return std::make_unique<NotEvent>(std::move(a));
}

double exact_probability(const Lattice& lat, const ProbabilityField& field,
                         const OracleEvent& event, int workers) {
    check_enumerable(lat);
    const std::vector<double> p = bind_field(field, lat);
    const auto n = static_cast<TileId>(p.size());

    if (workers <= 1) {
        Configuration cfg(n, Color::Yellow);
        ConnScratch scratch;
        KahanSum acc;
        enumerate_rec(p, 0, 1.0, cfg, event, scratch, acc);
        return acc.value();
    }

    // Partition the index space by the colors of a fixed prefix of tiles;
    // per-prefix subtree sums are merged in prefix order, so the result does
    // not depend on the worker count.
    int k = 0;
    while ((1 << k) < 2 * workers && k < n && k < 12) ++k;
    const std::int64_t prefixes = std::int64_t{1} << k;
    std::vector<KahanSum> partial(prefixes);
    std::vector<std::thread> pool;
    std::atomic<std::int64_t> next{0};
    for (int wkr = 0; wkr < workers; ++wkr) {
        pool.emplace_back([&]() {
            Configuration cfg(n, Color::Yellow);
            ConnScratch scratch;
            std::int64_t pre;
            while ((pre = next.fetch_add(1)) < prefixes) {
                double w = 1.0;
                for (int t = 0; t < k; ++t) {
                    const bool blue = (pre >> t) & 1;
                    cfg.set(t, blue ? Color::Blue : Color::Yellow);
                    w *= blue ? p[t] : 1.0 - p[t];
                }
                enumerate_rec(p, k, w, cfg, event, scratch, partial[pre]);
            }
        });
    }
    for (auto& th : pool) th.join();
    KahanSum acc;
    for (const auto& ps : partial) acc.add(ps.value());
    return acc.value();
}

namespace {

void coupled_rec(const std::vector<double>& pm, const std::vector<double>& pl,
                 TileId t, double w, Configuration& c1, Configuration& c2,
                 const OracleEvent& event, ConnScratch& scratch,
                 KahanSum& acc) {
    if (w == 0.0) return;
    const auto n = static_cast<TileId>(pm.size());
    if (t == n) {
        if (event.eval(c2, scratch) && !event.eval(c1, scratch)) acc.add(w);
        return;
    }
    const double lo = std::min(pm[t], pl[t]);
    const double hi = std::max(pm[t], pl[t]);
    // u < lo: both blue
    c1.set(t, Color::Blue);
    c2.set(t, Color::Blue);
    coupled_rec(pm, pl, t + 1, w * lo, c1, c2, event, scratch, acc);
    // lo <= u < hi: only the larger-p coordinate is blue
    c1.set(t, pm[t] > pl[t] ? Color::Blue : Color::Yellow);
    c2.set(t, pl[t] >= pm[t] ? Color::Blue : Color::Yellow);
    coupled_rec(pm, pl, t + 1, w * (hi - lo), c1, c2, event, scratch, acc);
    // u >= hi: both yellow
    c1.set(t, Color::Yellow);
    c2.set(t, Color::Yellow);
    coupled_rec(pm, pl, t + 1, w * (1.0 - hi), c1, c2, event, scratch, acc);
}

} // namespace

ExactGap exact_gap(const Lattice& lat, const ProbabilityField& mu,
                   const ProbabilityField& lambda, const OracleEvent& event) {
    check_enumerable(lat);
    ExactGap g;
    g.p_mu = exact_probability(lat, mu, event);
    g.p_lambda = exact_probability(lat, lambda, event);
    g.gap = g.p_lambda - g.p_mu;

    const std::vector<double> pm = bind_field(mu, lat);
    const std::vector<double> pl = bind_field(lambda, lat);
    Configuration c1(lat.tile_count(), Color::Yellow);
    Configuration c2(lat.tile_count(), Color::Yellow);
    ConnScratch scratch;
    KahanSum acc;
    coupled_rec(pm, pl, 0, 1.0, c1, c2, event, scratch, acc);
    g.coupled_one_sided = acc.value();

    bool monotone = true;
    for (TileId t = 0; t < lat.tile_count(); ++t)
        if (pl[t] < pm[t]) monotone = false;
    if (monotone && event.increasing() &&
        std::abs(g.coupled_one_sided - g.gap) > 1e-9)
        throw std::logic_error(
            "oracle: coupled gap disagrees with marginal gap");
    return g;
}

} // namespace percolab
