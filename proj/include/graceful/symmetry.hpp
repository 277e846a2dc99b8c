#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "graceful/tree.hpp"

namespace graceful {

// Marks, among each run of pairwise-isomorphic sibling subtrees, every
// vertex but the first.  A marked vertex may only be labelled after its
// elder isomorphic sibling; the backtracking frontier enforces this through
// the two pointer arrays below.
struct SymmetryClasses {
    std::vector<int> elder;          // previous isomorphic sibling, or -1
    std::vector<int> next_in_class;  // next isomorphic sibling, or -1

    bool marked(int v) const { return elder[v] >= 0; }
    int marked_count() const {
        return static_cast<int>(std::count_if(elder.begin(), elder.end(),
                                              [](int e) { return e >= 0; }));
    }
};

// Sibling subtrees are isomorphic iff their canonical codes match.  Codes
// are built bottom-up: a vertex's code is the id of the sorted list of its
// children's codes.  Vertex indices are preorder, so a reverse scan sees
// children before parents.
inline SymmetryClasses symmetry_classes(const Tree& t) {
    std::vector<int> code(t.n, 0);
    std::map<std::vector<int>, int> ids;
    for (int v = t.n - 1; v >= 0; --v) {
        std::vector<int> child_codes;
        for (int c : t.children(v)) child_codes.push_back(code[c]);
        std::sort(child_codes.begin(), child_codes.end());
        auto [it, inserted] = ids.try_emplace(std::move(child_codes), static_cast<int>(ids.size()));
        code[v] = it->second;
    }

    SymmetryClasses sym;
    sym.elder.assign(t.n, -1);
    sym.next_in_class.assign(t.n, -1);
    for (int v = 0; v < t.n; ++v) {
        auto kids = t.children(v);
        for (std::size_t i = 1; i < kids.size(); ++i) {
            for (std::size_t j = i; j-- > 0;) {
                if (code[kids[j]] == code[kids[i]]) {
                    sym.elder[kids[i]] = kids[j];
                    sym.next_in_class[kids[j]] = kids[i];
                    break;
                }
            }
        }
    }
    return sym;
}

}  // namespace graceful
