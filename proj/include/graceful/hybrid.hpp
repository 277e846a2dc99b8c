#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <stdexcept>

#include "graceful/backtrack.hpp"
#include "graceful/metaheuristic.hpp"
#include "graceful/rng.hpp"
#include "graceful/symmetry.hpp"

namespace graceful {

enum class Stage { backtrack, probabilistic, failed };

inline const char* to_string(Stage s) {
    switch (s) {
        case Stage::backtrack: return "backtrack";
        case Stage::probabilistic: return "probabilistic";
        case Stage::failed: return "failed";
    }
    return "?";
}

// Per-tree verification result.  A found stage always carries a labelling
// that passed is_graceful; a failed tree carries only its effort counters
// and is recorded by the caller, never dropped.
struct VerifyOutcome {
    Stage stage = Stage::failed;
    std::optional<Labelling> labelling;
    long long backtracks_used = 0;
    long long iterations_used = 0;
    double wall_time_s = 0.0;
};

// Stage-2 retry schedule.  The walk's fate is mostly decided during its
// initial descent from the identity permutation, so the schedule leads with
// many short attempts under fresh derived seeds, follows with a few
// medium-length attempts for trees that need plateau wandering, and only
// then escalates to full-cap attempts with doubled iteration limits.
struct SearchConfig {
    BudgetProfile budget_profile = BudgetProfile::default_formula;
    long long explicit_budget = 0;
    MetaConfig meta;
    int short_restarts = 256;    // descent-length attempts of about 8n iterations
    int mid_restarts = 8;        // medium attempts
    long long mid_iters = 25000;
    int escalation_retries = 3;  // full-cap reruns with doubled max_iters
};

inline long long backtrack_budget(int n, const SearchConfig& cfg) {
    return backtrack_budget(n, cfg.budget_profile, cfg.explicit_budget);
}

// Two-stage search: deterministic backtracking within its budget first,
// then the probabilistic walk on whatever the first stage left unfinished.
inline VerifyOutcome verify_tree(const Tree& t, const SearchConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    VerifyOutcome out;

    const SymmetryClasses sym = symmetry_classes(t);
    const long long budget = backtrack_budget(t.n, cfg);
    // Each scan direction gets half the allowance: the two fail on largely
    // disjoint tree shapes, so the pair resolves far more trees than either
    // direction alone with the full budget.
    BacktrackResult bt =
        search_backtrack(t, sym, budget - budget / 2, ScanOrder::right_to_left);
    out.backtracks_used = bt.backtracks;
    if (bt.status == BacktrackStatus::budget_exhausted) {
        BacktrackResult second =
            search_backtrack(t, sym, budget / 2, ScanOrder::left_to_right);
        out.backtracks_used += second.backtracks;
        if (second.status != BacktrackStatus::budget_exhausted) bt = std::move(second);
    }
    if (bt.status == BacktrackStatus::found) {
        if (!is_graceful(t, *bt.labelling)) {
            throw std::logic_error("backtracking returned a non-graceful labelling");
        }
        out.stage = Stage::backtrack;
        out.labelling = std::move(bt.labelling);
    } else {
        std::uint64_t attempt = 0;
        auto try_walk = [&](long long iters) {
            MetaConfig meta = cfg.meta;
            meta.max_iters = iters;
            meta.rng_seed = attempt == 0
                                ? cfg.meta.rng_seed
                                : derive_seed(cfg.meta.rng_seed, attempt);
            ++attempt;
            MetaOutcome mo = search_probabilistic(t, meta);
            out.iterations_used += mo.iterations;
            if (!mo.found) return false;
            if (!is_graceful(t, *mo.labelling)) {
                throw std::logic_error("probabilistic search returned a non-graceful labelling");
            }
            out.stage = Stage::probabilistic;
            out.labelling = std::move(mo.labelling);
            return true;
        };

        const long long short_cap =
            std::min(cfg.meta.max_iters, std::max<long long>(64, 8LL * t.n));
        const long long mid_cap = std::min(cfg.meta.max_iters, cfg.mid_iters);
        bool done = false;
        for (int i = 0; i < cfg.short_restarts && !done; ++i) done = try_walk(short_cap);
        for (int i = 0; i < cfg.mid_restarts && !done; ++i) done = try_walk(mid_cap);
        for (int a = 0; a <= cfg.escalation_retries && !done; ++a) {
            done = try_walk(cfg.meta.max_iters << a);
        }
    }

    out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace graceful
