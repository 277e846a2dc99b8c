#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "graceful/level_sequence.hpp"

namespace graceful {

// Successor-based stream over all non-isomorphic free trees of a given
// order.  Each tree is produced exactly once as the canonical level
// sequence of its center-rooted (or canonically bicenter-rooted) form, in
// lexicographically decreasing order starting from the path and ending at
// the star.  One stream is one sequential enumeration; streams are
// independent of each other.
class TreeStream {
public:
    explicit TreeStream(int n) : n_(n) {
        if (n < 1) throw std::invalid_argument("tree order must be at least 1");
        auto& seq = out_.depths;
        seq.reserve(n);
        // Start at the path rooted at its center: 0,1,...,h then 1,...,n-1-h.
        for (int d = 0; d <= n / 2; ++d) seq.push_back(d);
        for (int d = 1; d < (n + 1) / 2; ++d) seq.push_back(d);
    }

    int order() const { return n_; }

    // Advances to the next tree; returns nullptr once the stream is
    // exhausted.  The pointee is reused between calls.
    const LevelSequence* next() {
        if (done_) return nullptr;
        if (n_ <= 2) {  // a single tree exists; the start sequence is it
            done_ = true;
            return &out_;
        }
        if (first_) {
            first_ = false;  // the path is always canonical
        } else {
            if (!successor_rooted(-1)) {
                done_ = true;
                return nullptr;
            }
            skip_to_canonical();
        }
        return &out_;
    }

private:
    std::vector<int>& depths() { return out_.depths; }

    // Beyer-Hedetniemi successor of the canonical rooted level sequence.
    // With cut < 0 the cut point is the last vertex below depth 1;
    // otherwise the sequence is cut at the given position.  The tail is
    // refilled by repeating the segment between the cut's parent and the
    // cut.  Returns false when no successor exists (the star).
    bool successor_rooted(int cut) {
        auto& seq = depths();
        int p = cut;
        if (p < 0) {
            p = n_ - 1;
            while (seq[p] == 1) --p;
        }
        if (p == 0) return false;
        int q = p - 1;
        while (seq[q] != seq[p] - 1) --q;
        for (int i = p; i < n_; ++i) seq[i] = seq[i - (p - q)];
        return true;
    }

    // One step of the free-tree filter: if the current rooted sequence is
    // not a canonical free-tree form, jump directly to the next one.
    void skip_to_canonical() {
        auto& seq = depths();
        // Boundary of the root's first subtree: the second depth-1 vertex.
        int split = n_;
        for (int i = 2; i < n_; ++i) {
            if (seq[i] == 1) {
                split = i;
                break;
            }
        }
        int left_height = 0;
        for (int i = 1; i < split; ++i) left_height = std::max(left_height, seq[i] - 1);
        int rest_height = 0;
        for (int i = split; i < n_; ++i) rest_height = std::max(rest_height, seq[i]);

        bool valid = rest_height >= left_height;
        if (valid && rest_height == left_height) {
            const int left_size = split - 1;
            const int rest_size = n_ - split + 1;
            if (left_size > rest_size) {
                valid = false;
            } else if (left_size == rest_size) {
                for (int i = 1; i < left_size; ++i) {
                    int a = seq[i + 1] - 1;
                    int b = seq[split + i - 1];
                    if (a != b) {
                        valid = a < b;
                        break;
                    }
                }
            }
        }
        if (valid) return;

        // Shrink the first subtree at its last vertex; every intermediate
        // rooted sequence is a non-canonical form of an already emitted
        // tree.  When the removed vertex sat below depth 2, the periodic
        // refill can overshoot, so reset the tail to the tallest chain the
        // new first subtree allows.
        const int p = split - 1;
        const bool deep_cut = seq[p] > 2;
        successor_rooted(p);
        if (deep_cut) {
            int new_split = n_;
            for (int i = 2; i < n_; ++i) {
                if (seq[i] == 1) {
                    new_split = i;
                    break;
                }
            }
            int new_left_height = 0;
            for (int i = 1; i < new_split; ++i) {
                new_left_height = std::max(new_left_height, seq[i] - 1);
            }
            const int chain = new_left_height + 1;
            for (int i = 0; i < chain; ++i) seq[n_ - chain + i] = i + 1;
        }
    }

    int n_;
    LevelSequence out_;
    bool first_ = true;
    bool done_ = false;
};

// Applies `fn` to every tree of order n, in stream order.
template <class Fn>
void enumerate_trees(int n, Fn&& fn) {
    TreeStream stream(n);
    while (const LevelSequence* seq = stream.next()) fn(*seq);
}

inline std::uint64_t count_trees(int n) {
    std::uint64_t count = 0;
    enumerate_trees(n, [&](const LevelSequence&) { ++count; });
    return count;
}

}  // namespace graceful
