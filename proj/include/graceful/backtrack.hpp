#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "graceful/labelling.hpp"
#include "graceful/symmetry.hpp"
#include "graceful/tree.hpp"

namespace graceful {

enum class BudgetProfile { default_formula, alt_formula, explicit_value };

constexpr long long kUnlimitedBudget = std::numeric_limits<long long>::max();

// Backtrack allowance before a tree is handed to the probabilistic stage.
// Both empirical formulas go negative for small n and are clamped to a
// floor of 1000.
inline long long backtrack_budget(int n, BudgetProfile profile, long long explicit_value = 0) {
    switch (profile) {
        case BudgetProfile::default_formula:
            return std::max<long long>(1000, static_cast<long long>(n - 19) * 11000 - 1000);
        case BudgetProfile::alt_formula:
            return std::max<long long>(1000, static_cast<long long>(n - 18) * 1000);
        case BudgetProfile::explicit_value:
            return explicit_value;
    }
    return 1000;
}

enum class BacktrackStatus {
    found,             // graceful labelling with f(root) = 0 constructed
    exhausted,         // decision tree fully explored, no labelling with f(root) = 0
    budget_exhausted,  // backtrack allowance hit before either of the above
};

// Frontier scan direction.  Right-to-left (descending preorder position) is
// the primary order; it starts with the small subtrees and the leaves
// attached to the root.  Left-to-right explores in the opposite direction
// and fails on a largely disjoint set of trees, so it serves as a second
// try under a budget.  Both directions decide the same search space when
// run to exhaustion.
enum class ScanOrder { right_to_left, left_to_right };

struct BacktrackResult {
    BacktrackStatus status = BacktrackStatus::exhausted;
    std::optional<Labelling> labelling;
    long long backtracks = 0;
    int max_depth = 0;  // deepest recursion level reached (root call = 0)
};

// Full search state at one point in time, for probes in tests.
struct BacktrackSnapshot {
    std::vector<int> labels;
    std::vector<char> used;
    std::vector<int> frontier;      // list order, left to right
    std::vector<char> eligible;     // parallel to frontier
    bool operator==(const BacktrackSnapshot&) const = default;
};

namespace detail {

struct NoProbe {
    static constexpr bool enabled = false;
    void before_branch(int, int, const BacktrackSnapshot&) {}
    void after_undo(int, int, const BacktrackSnapshot&) {}
};

// Depth-first construction of f with f(root) = 0.  Level d of the recursion
// forces edge-label value k = n-1-d to appear: it picks a frontier vertex v
// (unlabelled, parent v' labelled) and tries f(v') + k then f(v') - k.
// The frontier is a doubly-linked list over vertex indices kept in preorder
// order and scanned right to left; unlinking a vertex keeps its own links
// intact so undoing a branch is O(1) per splice, in LIFO order.
template <class Probe = NoProbe>
class BacktrackSearch {
public:
    BacktrackSearch(const Tree& t, const SymmetryClasses& sym, long long budget,
                    ScanOrder order = ScanOrder::right_to_left, Probe probe = Probe{})
        : t_(t), sym_(sym), budget_(budget), rtl_(order == ScanOrder::right_to_left),
          probe_(std::move(probe)) {}

    BacktrackResult run() {
        const int n = t_.n;
        label_.assign(n, -1);
        used_.assign(n, 0);
        eligible_.assign(n, 0);
        next_.assign(n + 2, -1);
        prev_.assign(n + 2, -1);
        next_[head()] = tail();
        prev_[tail()] = head();

        label_[0] = 0;
        used_[0] = 1;
        for (int c : t_.children(0)) {
            link_back(c);
            eligible_[c] = sym_.marked(c) ? 0 : 1;
        }

        BacktrackResult result;
        result.status = search(n - 1, 0, result);
        if (result.status == BacktrackStatus::found) {
            result.labelling = Labelling::from_labels(label_);
        }
        result.backtracks = backtracks_;
        return result;
    }

private:
    int head() const { return t_.n; }
    int tail() const { return t_.n + 1; }

    void link_back(int v) {
        int before = prev_[tail()];
        next_[before] = v;
        prev_[v] = before;
        next_[v] = tail();
        prev_[tail()] = v;
    }
    void unlink(int v) {
        next_[prev_[v]] = next_[v];
        prev_[next_[v]] = prev_[v];
    }
    void relink(int v) {
        next_[prev_[v]] = v;
        prev_[next_[v]] = v;
    }
    void insert_after(int v, int after) {
        next_[v] = next_[after];
        prev_[v] = after;
        prev_[next_[v]] = v;
        next_[after] = v;
    }

    BacktrackStatus search(int k, int depth, BacktrackResult& result) {
        result.max_depth = std::max(result.max_depth, depth);
        if (k == 0) return BacktrackStatus::found;
        const int last = rtl_ ? head() : tail();
        for (int v = rtl_ ? prev_[tail()] : next_[head()]; v != last;
             v = rtl_ ? prev_[v] : next_[v]) {
            if (!eligible_[v]) continue;
            const int base = label_[t_.parent[v]];
            for (int sign = 0; sign < 2; ++sign) {
                const int cand = sign == 0 ? base + k : base - k;
                if (cand < 0 || cand >= t_.n || used_[cand]) continue;

                if constexpr (Probe::enabled) probe_.before_branch(v, k, snapshot());
                label_[v] = cand;
                used_[cand] = 1;
                unlink(v);
                int at = prev_[v];
                for (int c : t_.children(v)) {
                    insert_after(c, at);
                    eligible_[c] = sym_.marked(c) ? 0 : 1;
                    at = c;
                }
                const int follower = sym_.next_in_class[v];
                if (follower >= 0) eligible_[follower] = 1;

                BacktrackStatus sub = search(k - 1, depth + 1, result);
                if (sub == BacktrackStatus::found) return sub;

                if (follower >= 0) eligible_[follower] = 0;
                auto kids = t_.children(v);
                for (std::size_t i = kids.size(); i-- > 0;) {
                    eligible_[kids[i]] = 0;
                    unlink(kids[i]);
                }
                relink(v);
                used_[cand] = 0;
                label_[v] = -1;
                if constexpr (Probe::enabled) probe_.after_undo(v, k, snapshot());

                if (sub == BacktrackStatus::budget_exhausted) return sub;
                if (++backtracks_ > budget_) return BacktrackStatus::budget_exhausted;
            }
        }
        return BacktrackStatus::exhausted;
    }

    BacktrackSnapshot snapshot() const {
        BacktrackSnapshot s;
        s.labels = label_;
        s.used = used_;
        for (int v = next_[head()]; v != tail(); v = next_[v]) {
            s.frontier.push_back(v);
            s.eligible.push_back(eligible_[v]);
        }
        return s;
    }

    const Tree& t_;
    const SymmetryClasses& sym_;
    long long budget_;
    bool rtl_;
    long long backtracks_ = 0;
    std::vector<int> label_;
    std::vector<char> used_;
    std::vector<char> eligible_;
    std::vector<int> next_, prev_;
    Probe probe_;
};

}  // namespace detail

inline BacktrackResult search_backtrack(const Tree& t, const SymmetryClasses& sym,
                                        long long budget,
                                        ScanOrder order = ScanOrder::right_to_left) {
    return detail::BacktrackSearch<>(t, sym, budget, order).run();
}

inline BacktrackResult search_backtrack(const Tree& t, long long budget = kUnlimitedBudget,
                                        ScanOrder order = ScanOrder::right_to_left) {
    return search_backtrack(t, symmetry_classes(t), budget, order);
}

// Variant with a probe observing state right before each branch commit and
// right after the matching undo; snapshots let tests check bit-exact
// restoration.
template <class Probe>
BacktrackResult search_backtrack_probed(const Tree& t, const SymmetryClasses& sym,
                                        long long budget, Probe probe) {
    return detail::BacktrackSearch<Probe>(t, sym, budget, ScanOrder::right_to_left,
                                          std::move(probe)).run();
}

}  // namespace graceful
