#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "graceful/labelling.hpp"
#include "graceful/rng.hpp"
#include "graceful/tree.hpp"

namespace graceful {

// Remembers, per unordered vertex pair, the iteration at which the pair was
// last committed.  A pair is tabu while the current iteration is within
// `horizon` of that commit.
class TabuTable {
public:
    TabuTable(int n, long long horizon)
        : n_(n), horizon_(horizon),
          last_(static_cast<std::size_t>(n) * n, std::numeric_limits<long long>::min() / 4) {}

    long long horizon() const { return horizon_; }

    bool is_tabu(int x, int y, long long iter) const {
        return iter - last_[slot(x, y)] <= horizon_;
    }

    void record(int x, int y, long long iter) { last_[slot(x, y)] = iter; }

    void clear() {
        std::fill(last_.begin(), last_.end(), std::numeric_limits<long long>::min() / 4);
    }

private:
    std::size_t slot(int x, int y) const {
        if (x > y) std::swap(x, y);
        return static_cast<std::size_t>(x) * n_ + y;
    }

    int n_;
    long long horizon_;
    std::vector<long long> last_;
};

struct MetaConfig {
    int samples_per_iter = 0;        // 0 means the default of 2n
    double accept_worse_prob = 0.03; // probability of committing a non-improving move
    long long max_iters = 500000;
    std::uint64_t rng_seed = 0;
    int tabu_len = -1;               // -1 means the default of n/3 iterations
    bool best_non_tabu = false;      // variant: best non-tabu sample instead of best overall
    bool tabu_record_choices = false;  // variant: chosen-but-uncommitted pairs also enter

    // The walk cannot climb off an evaluation plateau (a level move always
    // outranks a worsening one in the sample), so a walk that stops
    // improving is sent back to the identity permutation and descends again
    // under the continuing random stream.  0 picks a window of 60n
    // iterations; negative disables resets.
    long long stall_reset_window = 0;
};

struct MetaOutcome {
    bool found = false;
    std::optional<Labelling> labelling;
    long long iterations = 0;
    long long best_eval = 0;  // best evaluation reached during the walk
    long long resets = 0;     // stall-triggered returns to the identity start
};

// One unordered pair {x, y}, x != y, uniform over all n(n-1)/2 pairs.
inline std::pair<int, int> sample_pair(int n, SplitMix64& rng) {
    int x = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int y = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) - 1));
    if (y >= x) ++y;
    if (x > y) std::swap(x, y);
    return {x, y};
}

inline std::vector<std::pair<int, int>> sample_swaps(int n, int count, SplitMix64& rng) {
    if (n < 2) throw std::invalid_argument("pair sampling needs at least two vertices");
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) pairs.push_back(sample_pair(n, rng));
    return pairs;
}

// Snapshot of one iteration's decision, for observers in tests.
struct MetaStep {
    long long iteration;
    int x, y;
    long long candidate_eval;
    long long current_eval;  // evaluation before this iteration's decision
    bool tabu;
    bool committed;
    long long phase;  // bumped by every stall reset; tabu state is per-phase
};

namespace detail {
struct NoMetaObserver {
    void operator()(const MetaStep&) const {}
};
}  // namespace detail

// Hill-climbing tabu walk over label swaps, started from the identity
// permutation.  Each iteration draws `samples_per_iter` random pairs,
// evaluates every swap without committing it, and takes the best sampled
// pair: committed outright when it improves, with probability
// `accept_worse_prob` otherwise, and when the pair is tabu only if it
// finishes the search (evaluation zero).  Fully reproducible from the seed.
template <class Observer = detail::NoMetaObserver>
MetaOutcome search_probabilistic(const Tree& t, const MetaConfig& cfg,
                                 Observer&& observe = Observer{}) {
    if (cfg.max_iters < 1) throw std::invalid_argument("max_iters must be positive");
    if (cfg.accept_worse_prob < 0.0 || cfg.accept_worse_prob > 1.0) {
        throw std::invalid_argument("accept_worse_prob must lie in [0, 1]");
    }
    const int n = t.n;
    const int samples = cfg.samples_per_iter > 0 ? cfg.samples_per_iter : 2 * n;
    const long long horizon = cfg.tabu_len >= 0 ? cfg.tabu_len : n / 3;

    Labelling f = Labelling::identity(n);
    EdgeLabelMultiset cache = induced_labels(t, f);
    long long value = cache.missing_sum;

    MetaOutcome out;
    out.best_eval = value;
    if (value == 0) {
        out.found = true;
        out.labelling = std::move(f);
        out.iterations = 0;
        return out;
    }

    SplitMix64 rng(cfg.rng_seed);
    TabuTable tabu(n, horizon);

    const long long stall_window =
        cfg.stall_reset_window == 0 ? 60LL * n : cfg.stall_reset_window;
    long long phase = 0;
    long long phase_best = value;
    long long last_gain = 0;

    for (long long iter = 1; iter <= cfg.max_iters; ++iter) {
        int bx = -1, by = -1;
        long long best = std::numeric_limits<long long>::max();
        int nx = -1, ny = -1;  // best non-tabu sample, for the variant rule
        long long best_nt = std::numeric_limits<long long>::max();
        for (int s = 0; s < samples; ++s) {
            auto [x, y] = sample_pair(n, rng);
            long long e = eval_after_swap(t, f, x, y, cache);
            if (e < best) {
                best = e;
                bx = x;
                by = y;
            }
            if (cfg.best_non_tabu && e < best_nt && !tabu.is_tabu(x, y, iter)) {
                best_nt = e;
                nx = x;
                ny = y;
            }
        }
        if (cfg.best_non_tabu && nx >= 0) {
            bx = nx;
            by = ny;
            best = best_nt;
        }

        const bool pair_tabu = tabu.is_tabu(bx, by, iter);
        bool commit;
        if (!pair_tabu) {
            commit = best < value || rng.unit() < cfg.accept_worse_prob;
        } else {
            commit = best == 0;  // aspiration: a tabu move may only finish the search
        }
        observe(MetaStep{iter, bx, by, best, value, pair_tabu, commit, phase});
        if (commit) {
            commit_swap(t, f, bx, by, cache);
            value = best;
            if (value < out.best_eval) out.best_eval = value;
            if (value < phase_best) {
                phase_best = value;
                last_gain = iter;
            }
        }
        if (commit || cfg.tabu_record_choices) tabu.record(bx, by, iter);
#ifndef NDEBUG
        if (iter % 1000 == 0) assert(value == eval(t, f));
#endif
        if (value == 0) {
            out.found = true;
            out.labelling = std::move(f);
            out.iterations = iter;
            return out;
        }
        if (stall_window > 0 && iter - last_gain >= stall_window) {
            f = Labelling::identity(n);
            cache = induced_labels(t, f);
            value = cache.missing_sum;
            tabu.clear();
            ++phase;
            ++out.resets;
            phase_best = value;
            last_gain = iter;
        }
    }
    out.iterations = cfg.max_iters;
    return out;
}

}  // namespace graceful
