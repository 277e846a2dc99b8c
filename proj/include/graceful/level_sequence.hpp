#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace graceful {

// A rooted tree written as the preorder list of vertex depths, root first
// at depth 0.  Valid sequences satisfy depths[0] == 0 and
// 1 <= depths[i] <= depths[i-1] + 1 for i >= 1.
struct LevelSequence {
    std::vector<int> depths;

    LevelSequence() = default;
    explicit LevelSequence(std::vector<int> d) : depths(std::move(d)) {}

    int size() const { return static_cast<int>(depths.size()); }
    int operator[](int i) const { return depths[static_cast<std::size_t>(i)]; }

    bool operator==(const LevelSequence&) const = default;
};

inline bool is_valid_preorder(const std::vector<int>& depths) {
    if (depths.empty() || depths[0] != 0) return false;
    for (std::size_t i = 1; i < depths.size(); ++i) {
        if (depths[i] < 1 || depths[i] > depths[i - 1] + 1) return false;
    }
    return true;
}

inline bool is_valid(const LevelSequence& seq) { return is_valid_preorder(seq.depths); }

inline void validate(const LevelSequence& seq) {
    if (!is_valid(seq)) {
        throw std::invalid_argument("malformed level sequence: not a preorder depth list");
    }
}

// One tree per line, depths as space-separated decimal integers, e.g. "0 1 2 1".
inline std::string to_string(const LevelSequence& seq) {
    std::string out;
    for (int i = 0; i < seq.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(seq[i]);
    }
    return out;
}

inline LevelSequence parse_level_sequence(std::string_view line) {
    std::vector<int> depths;
    std::istringstream in{std::string(line)};
    long long v;
    while (in >> v) {
        if (v < 0 || v > 1'000'000) {
            throw std::invalid_argument("level sequence entry out of range");
        }
        depths.push_back(static_cast<int>(v));
    }
    if (!in.eof()) {
        throw std::invalid_argument("level sequence contains a non-integer token");
    }
    LevelSequence seq(std::move(depths));
    validate(seq);
    return seq;
}

}  // namespace graceful
