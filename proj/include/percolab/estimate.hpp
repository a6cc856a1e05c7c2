#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace percolab {

struct EstimatorResult {
    double estimate = 0.0;
    double std_error = 0.0;
    std::int64_t successes = 0;
    std::int64_t replicates = 0;
    std::uint64_t seed = 0;
    std::uint64_t stream_begin = 0;
    std::uint64_t stream_end = 0; // exclusive
    std::string query;
    bool underpowered = false;
};

inline EstimatorResult binomial_result(std::int64_t successes,
                                       std::int64_t replicates,
                                       std::uint64_t seed,
                                       std::uint64_t stream_begin,
                                       std::string query) {
    EstimatorResult r;
    r.successes = successes;
    r.replicates = replicates;
    r.seed = seed;
    r.stream_begin = stream_begin;
    r.stream_end = stream_begin + static_cast<std::uint64_t>(replicates);
    r.query = std::move(query);
    r.estimate = replicates > 0
                     ? static_cast<double>(successes) / replicates
                     : 0.0;
    r.std_error =
        replicates > 0
            ? std::sqrt(r.estimate * (1.0 - r.estimate) / replicates)
            : 0.0;
    r.underpowered = successes == 0 || successes == replicates;
    return r;
}

// Hands out disjoint stream-id ranges in deterministic program order.
class StreamAllocator {
  public:
    explicit StreamAllocator(std::uint64_t first = 0) : next_(first) {}
    std::uint64_t take(std::uint64_t count) {
        const std::uint64_t s = next_;
        next_ += count;
        return s;
    }
    std::uint64_t next() const { return next_; }

  private:
    std::uint64_t next_;
};

inline int clamp_workers(int workers) {
    if (workers < 1) workers = 1;
    if (workers > 256) workers = 256;
    return workers;
}

// Runs body(replicate, state, counters) for replicate in [0, n). Replicates
// are partitioned into contiguous chunks; counters are int64 and merged by
// addition, so the totals do not depend on the worker count. The replicate
// index is the only licence to randomness: stream = stream_begin + replicate.
template <typename State>
std::vector<std::int64_t> run_replicates(
    std::int64_t n, int workers, std::size_t n_counters,
    const std::function<State()>& make_state,
    const std::function<void(std::int64_t, State&, std::int64_t*)>& body) {
    workers = clamp_workers(workers);
    if (workers == 1 || n < 2 * workers) {
        std::vector<std::int64_t> counters(n_counters, 0);
        State state = make_state();
        for (std::int64_t i = 0; i < n; ++i)
            body(i, state, counters.data());
        return counters;
    }
    std::vector<std::vector<std::int64_t>> partial(
        workers, std::vector<std::int64_t>(n_counters, 0));
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = n * w / workers;
        const std::int64_t hi = n * (w + 1) / workers;
        pool.emplace_back([&, w, lo, hi]() {
            try {
                State state = make_state();
                for (std::int64_t i = lo; i < hi; ++i)
                    body(i, state, partial[w].data());
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<std::int64_t> counters(n_counters, 0);
    for (int w = 0; w < workers; ++w)
        for (std::size_t c = 0; c < n_counters; ++c)
            counters[c] += partial[w][c];
    return counters;
}

// Weighted least-squares fit of log(y) against log(x); weights from the
// relative standard errors. Rows with y == 0 are skipped.
struct PowerLawFit {
    double slope = 0.0;
    double slope_se = 0.0;
    double intercept = 0.0;
    int used = 0;
};

PowerLawFit fit_power_law(const std::vector<double>& x,
                          const std::vector<double>& y,
                          const std::vector<double>& y_se);

} // namespace percolab
