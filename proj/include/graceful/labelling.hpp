#pragma once

#include <cstdlib>
#include <stdexcept>
#include <utility>
#include <vector>

#include "graceful/tree.hpp"

namespace graceful {

// A candidate graceful labelling: a bijection from vertices onto
// {0,...,n-1}, kept together with its inverse.
struct Labelling {
    std::vector<int> labels;   // labels[v] = f(v)
    std::vector<int> inverse;  // inverse[f(v)] = v

    static Labelling identity(int n) {
        Labelling f;
        f.labels.resize(n);
        f.inverse.resize(n);
        for (int v = 0; v < n; ++v) f.labels[v] = f.inverse[v] = v;
        return f;
    }

    static Labelling from_labels(std::vector<int> labels) {
        const int n = static_cast<int>(labels.size());
        Labelling f;
        f.inverse.assign(n, -1);
        for (int v = 0; v < n; ++v) {
            int l = labels[v];
            if (l < 0 || l >= n || f.inverse[l] != -1) {
                throw std::invalid_argument("labelling is not a permutation of 0..n-1");
            }
            f.inverse[l] = v;
        }
        f.labels = std::move(labels);
        return f;
    }

    int size() const { return static_cast<int>(labels.size()); }

    void swap_labels(int x, int y) {
        std::swap(labels[x], labels[y]);
        inverse[labels[x]] = x;
        inverse[labels[y]] = y;
    }

    bool operator==(const Labelling&) const = default;
};

// Multiset of induced edge labels |f(a)-f(b)|, with the running sum of the
// values in 1..n-1 that are currently missing.  missing_sum is zero exactly
// when the labelling is graceful.
struct EdgeLabelMultiset {
    std::vector<int> count;  // indexed 1..n-1; slot 0 unused
    long long missing_sum = 0;

    bool operator==(const EdgeLabelMultiset&) const = default;
};

inline EdgeLabelMultiset induced_labels(const Tree& t, const Labelling& f) {
    if (f.size() != t.n) throw std::invalid_argument("labelling length differs from tree order");
    EdgeLabelMultiset m;
    m.count.assign(t.n, 0);
    for (int d = 1; d < t.n; ++d) m.missing_sum += d;
    for (int v = 1; v < t.n; ++v) {
        int d = std::abs(f.labels[v] - f.labels[t.parent[v]]);
        if (m.count[d]++ == 0) m.missing_sum -= d;
    }
    return m;
}

inline bool is_graceful(const Tree& t, const Labelling& f) {
    EdgeLabelMultiset m = induced_labels(t, f);
    for (int d = 1; d < t.n; ++d) {
        if (m.count[d] > 1) return false;
    }
    return true;
}

// Sum of the edge-label values in 1..n-1 absent from the induced multiset.
inline long long eval(const Tree& t, const Labelling& f) {
    return induced_labels(t, f).missing_sum;
}

namespace detail {

// Reassigns vertex v's incident edge labels in the multiset as if v's label
// changed from old_label to new_label, skipping the edge to `skip` (whose
// difference a swap leaves unchanged).
inline void shift_incident(const Tree& t, const Labelling& f, EdgeLabelMultiset& m, int v,
                           int skip, int old_label, int new_label) {
    auto move = [&](int u) {
        int other = f.labels[u];
        int dec = std::abs(old_label - other);
        int inc = std::abs(new_label - other);
        if (--m.count[dec] == 0) m.missing_sum += dec;
        if (m.count[inc]++ == 0) m.missing_sum -= inc;
    };
    if (int p = t.parent[v]; p >= 0 && p != skip) move(p);
    for (int c : t.children(v)) {
        if (c != skip) move(c);
    }
}

inline void apply_swap_to_cache(const Tree& t, const Labelling& f, EdgeLabelMultiset& m, int x,
                                int y, bool forward) {
    int fx = f.labels[x], fy = f.labels[y];
    if (!forward) std::swap(fx, fy);
    shift_incident(t, f, m, x, y, fx, fy);
    shift_incident(t, f, m, y, x, fy, fx);
}

}  // namespace detail

// Evaluation of the labelling obtained by exchanging f(x) and f(y),
// computed by touching only the deg(x)+deg(y) incident edges.  The cache
// must be consistent with (t, f); it is used as scratch and restored
// bit-for-bit before returning.  Neither f nor the cache is changed.
inline long long eval_after_swap(const Tree& t, const Labelling& f, int x, int y,
                                 EdgeLabelMultiset& cache) {
    if (x == y) throw std::invalid_argument("swap endpoints must differ");
    detail::apply_swap_to_cache(t, f, cache, x, y, true);
    long long result = cache.missing_sum;
    detail::apply_swap_to_cache(t, f, cache, x, y, false);
    return result;
}

// Exchanges f(x) and f(y) for real, updating the cache incrementally.
// Calling it twice with the same pair restores both f and the cache.
inline void commit_swap(const Tree& t, Labelling& f, int x, int y, EdgeLabelMultiset& cache) {
    if (x == y) throw std::invalid_argument("swap endpoints must differ");
    detail::apply_swap_to_cache(t, f, cache, x, y, true);
    f.swap_labels(x, y);
}

}  // namespace graceful
