#pragma once

#include <algorithm>
#include <cassert>
#include <span>
#include <stdexcept>
#include <vector>

#include "graceful/level_sequence.hpp"

namespace graceful {

// Rooted tree in parent-array form.  Vertices are numbered in preorder, so
// the root is 0 and every child has a higher index than its parent.  Child
// lists are stored in one flat array (CSR layout) in preorder.
struct Tree {
    int n = 0;
    std::vector<int> parent;       // parent[0] == -1
    std::vector<int> child_start;  // size n + 1
    std::vector<int> child_list;   // size n - 1

    std::span<const int> children(int v) const {
        return {child_list.data() + child_start[v],
                child_list.data() + child_start[v + 1]};
    }
    int degree(int v) const {
        int d = child_start[v + 1] - child_start[v];
        return v == 0 ? d : d + 1;
    }
};

// parent[i] = nearest j < i with depths[j] == depths[i] - 1.
inline Tree to_tree(const LevelSequence& seq) {
    validate(seq);
    const int n = seq.size();
    Tree t;
    t.n = n;
    t.parent.assign(n, -1);
    std::vector<int> last_at_depth(n, -1);  // most recent vertex seen per depth
    last_at_depth[0] = 0;
    std::vector<int> child_count(n, 0);
    for (int i = 1; i < n; ++i) {
        int p = last_at_depth[seq[i] - 1];
        t.parent[i] = p;
        ++child_count[p];
        last_at_depth[seq[i]] = i;
    }
    t.child_start.assign(n + 1, 0);
    for (int v = 0; v < n; ++v) t.child_start[v + 1] = t.child_start[v] + child_count[v];
    t.child_list.assign(n > 0 ? n - 1 : 0, 0);
    std::vector<int> fill(t.child_start.begin(), t.child_start.end() - 1);
    for (int i = 1; i < n; ++i) t.child_list[fill[t.parent[i]]++] = i;
    return t;
}

// Inverse of to_tree: depth of vertex i in index (= preorder) order.
inline LevelSequence level_sequence_of(const Tree& t) {
    std::vector<int> depths(t.n, 0);
    for (int i = 1; i < t.n; ++i) depths[i] = depths[t.parent[i]] + 1;
    return LevelSequence(std::move(depths));
}

// The one or two vertices of minimum eccentricity, found by repeatedly
// stripping leaves.  Returned in increasing index order.
inline std::vector<int> centers(const Tree& t) {
    if (t.n <= 2) {
        std::vector<int> all(t.n);
        for (int i = 0; i < t.n; ++i) all[i] = i;
        return all;
    }
    std::vector<int> deg(t.n);
    for (int v = 0; v < t.n; ++v) deg[v] = t.degree(v);
    std::vector<int> layer, next;
    for (int v = 0; v < t.n; ++v) {
        if (deg[v] == 1) layer.push_back(v);
    }
    int remaining = t.n;
    auto strip = [&](int v) {
        auto peel = [&](int u) {
            if (--deg[u] == 1) next.push_back(u);
        };
        if (t.parent[v] >= 0 && deg[t.parent[v]] > 1) peel(t.parent[v]);
        for (int c : t.children(v)) {
            if (deg[c] > 1) peel(c);
        }
    };
    while (remaining > 2) {
        remaining -= static_cast<int>(layer.size());
        next.clear();
        for (int v : layer) strip(v);
        layer.swap(next);
        if (remaining <= 2) break;
    }
    std::sort(layer.begin(), layer.end());
    return layer;
}

namespace detail {

// Canonical (lexicographically maximal) encoding of the subtree hanging at
// `v` in the undirected tree given by adjacency lists, entered from `from`.
// Depths in the encoding are relative to `v` starting at `base`.
inline std::vector<int> canonical_subtree(const std::vector<std::vector<int>>& adj, int v,
                                          int from, int base) {
    std::vector<std::vector<int>> subs;
    for (int u : adj[v]) {
        if (u != from) subs.push_back(canonical_subtree(adj, u, v, base + 1));
    }
    std::sort(subs.begin(), subs.end(), [](const auto& a, const auto& b) { return a > b; });
    std::vector<int> out{base};
    for (const auto& s : subs) out.insert(out.end(), s.begin(), s.end());
    return out;
}

inline std::vector<std::vector<int>> adjacency(const Tree& t) {
    std::vector<std::vector<int>> adj(t.n);
    for (int i = 1; i < t.n; ++i) {
        adj[i].push_back(t.parent[i]);
        adj[t.parent[i]].push_back(i);
    }
    return adj;
}

}  // namespace detail

// Canonical level sequence of the free tree underlying `t`, rerooted at
// `root`: sibling subtrees in lexicographically non-increasing order.
inline LevelSequence canonical_rooted_form(const Tree& t, int root) {
    if (root < 0 || root >= t.n) throw std::invalid_argument("root out of range");
    return LevelSequence(detail::canonical_subtree(detail::adjacency(t), root, -1, 0));
}

// Test of the free-tree canonical form emitted by the enumerator.  Split the
// sequence into the root's first subtree ("left", the part before the second
// depth-1 vertex) and the rest of the tree; the sequence is canonical when
// rest is at least as high as left, and on equal heights when rest holds at
// least as many vertices, and on equal sizes when left <= rest
// lexicographically (both read as root-0 sequences).
inline bool is_canonical_free_form(const LevelSequence& seq) {
    if (!is_valid(seq)) return false;
    const int n = seq.size();
    if (n <= 2) return true;
    int split = n;
    for (int i = 2; i < n; ++i) {
        if (seq[i] == 1) {
            split = i;
            break;
        }
    }
    int left_height = 0;  // height of the first subtree, in edges from its own root
    for (int i = 1; i < split; ++i) left_height = std::max(left_height, seq[i] - 1);
    int rest_height = 0;
    for (int i = split; i < n; ++i) rest_height = std::max(rest_height, seq[i]);
    if (rest_height < left_height) return false;
    if (rest_height > left_height) return true;
    const int left_size = split - 1;
    const int rest_size = n - split + 1;
    if (left_size != rest_size) return left_size < rest_size;
    // Element 0 of both halves is the implicit root at depth 0.
    for (int i = 1; i < left_size; ++i) {
        int a = seq[i + 1] - 1;
        int b = seq[split + i - 1];
        if (a != b) return a < b;
    }
    return true;
}

// Canonical representative of the free tree underlying `t`: rooted at the
// center, or for bicentral trees at whichever bicenter yields the canonical
// split above.
inline LevelSequence canonical_free_form(const Tree& t) {
    std::vector<int> c = centers(t);
    LevelSequence best = canonical_rooted_form(t, c[0]);
    if (c.size() == 2 && !is_canonical_free_form(best)) {
        best = canonical_rooted_form(t, c[1]);
    }
    assert(is_canonical_free_form(best));
    return best;
}

}  // namespace graceful
