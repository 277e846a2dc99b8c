#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "graceful/labelling.hpp"
#include "graceful/level_sequence.hpp"
#include "graceful/tree.hpp"

namespace graceful {

// Certificate line format: "<depths space-separated> | <labels space-separated>".
inline std::string certificate_line(const LevelSequence& seq, const Labelling& f) {
    std::string out = to_string(seq);
    out += " | ";
    for (int v = 0; v < f.size(); ++v) {
        if (v) out += ' ';
        out += std::to_string(f.labels[v]);
    }
    return out;
}

struct CertificateViolation {
    long long line = 0;  // 1-based
    std::string message;
};

struct CertificateReport {
    long long lines = 0;         // non-blank lines scanned
    long long certificates = 0;  // lines that checked out
    std::vector<CertificateViolation> violations;

    bool ok() const { return violations.empty(); }
};

// Re-parses every certificate line, rebuilds the tree and re-checks that
// the labels form a permutation inducing pairwise-distinct edge labels.
inline CertificateReport verify_certificates(std::istream& in) {
    CertificateReport report;
    std::string line;
    long long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        ++report.lines;
        auto fail = [&](const std::string& msg) {
            report.violations.push_back({line_no, msg});
        };
        auto bar = line.find('|');
        if (bar == std::string::npos) {
            fail("missing '|' separator");
            continue;
        }
        try {
            LevelSequence seq = parse_level_sequence(line.substr(0, bar));
            Tree t = to_tree(seq);
            std::vector<int> labels;
            {
                std::istringstream in_labels(line.substr(bar + 1));
                long long v;
                while (in_labels >> v) labels.push_back(static_cast<int>(v));
                if (!in_labels.eof()) {
                    fail("label list contains a non-integer token");
                    continue;
                }
            }
            if (static_cast<int>(labels.size()) != t.n) {
                fail("label count differs from vertex count");
                continue;
            }
            Labelling f = Labelling::from_labels(std::move(labels));
            if (!is_graceful(t, f)) {
                fail("labelling is not graceful");
                continue;
            }
            ++report.certificates;
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }
    return report;
}

inline CertificateReport verify_certificates_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open certificate file: " + path);
    return verify_certificates(in);
}

}  // namespace graceful
