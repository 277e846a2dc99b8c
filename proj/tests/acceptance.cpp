// Acceptance suite: one self-contained check per release criterion, one
// PASS/FAIL line each, nonzero exit if anything fails.  Run it from the
// build directory; work files go under ./acceptance_work.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "graceful/graceful.hpp"
#include "oracle.hpp"

using namespace graceful;

namespace {

int g_failures = 0;
std::set<int> g_selected;

bool selected(int id) { return g_selected.empty() || g_selected.count(id) > 0; }

void report(int id, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
    if (!pass) ++g_failures;
    std::printf("[%s] criterion %2d: %-38s %s (%.1fs)\n", pass ? "PASS" : "FAIL", id,
                name.c_str(), detail.c_str(), seconds);
    std::fflush(stdout);
}

template <class Fn>
void criterion(int id, const std::string& name, Fn&& fn) {
    if (!selected(id)) return;
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool pass = false;
    try {
        pass = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(id, name, pass, detail, secs);
}

std::filesystem::path work_dir() {
    std::filesystem::path dir = "acceptance_work";
    std::filesystem::create_directories(dir);
    return dir;
}

int worker_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 2 : static_cast<int>(hw);
}

LevelSequence random_preorder(int n, SplitMix64& rng) {
    std::vector<int> depths{0};
    int prev = 0;
    for (int i = 1; i < n; ++i) {
        int d = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(prev) + 1));
        depths.push_back(d);
        prev = d;
    }
    return LevelSequence(std::move(depths));
}

// ---------------------------------------------------------------------------

bool c1_tree_counts(std::string& detail) {
    // Exhaustive Pruefer-sequence oracle where that is tractable in seconds
    // (through n = 9 it decodes all n^(n-2) labelled trees); the independent
    // counting recurrence carries the comparison through n = 12.
    for (int n = 1; n <= 9; ++n) {
        std::uint64_t got = count_trees(n);
        std::uint64_t want = oracle::pruefer_free_tree_count(n);
        if (got != want) {
            detail = "n=" + std::to_string(n) + ": enumerated " + std::to_string(got) +
                     ", Pruefer oracle " + std::to_string(want);
            return false;
        }
    }
    for (int n = 1; n <= 12; ++n) {
        std::uint64_t got = count_trees(n);
        std::uint64_t want = oracle::free_tree_count(n);
        if (got != want) {
            detail = "n=" + std::to_string(n) + ": enumerated " + std::to_string(got) +
                     ", recurrence " + std::to_string(want);
            return false;
        }
    }
    detail = "Pruefer oracle n<=9 and counting recurrence n<=12 both match";
    return true;
}

bool c2_large_counts(std::string& detail) {
    const std::pair<int, std::uint64_t> expected[] = {
        {20, 823065ULL}, {21, 2144505ULL}, {22, 5623756ULL}};
    for (auto [n, want] : expected) {
        std::uint64_t got = count_trees(n);
        if (got != want) {
            detail = "n=" + std::to_string(n) + ": got " + std::to_string(got) + ", want " +
                     std::to_string(want);
            return false;
        }
        if (oracle::free_tree_count(n) != want) {
            detail = "recurrence disagrees at n=" + std::to_string(n);
            return false;
        }
    }
    detail = "823065 / 2144505 / 5623756 trees at n=20/21/22";
    return true;
}

RunReport g_desk_report;  // shared between criteria 3 and 4

bool c3_desk_scale(std::string& detail) {
    auto certs = work_dir() / "certs_n20.txt";
    RunOptions opt;
    opt.n_min = 1;
    opt.n_max = 20;
    opt.seed = 20250811;
    opt.threads = worker_threads();
    opt.labellings_path = certs.string();
    opt.failures_path = (work_dir() / "failures_n20.txt").string();

    auto start = std::chrono::steady_clock::now();
    g_desk_report = run_verification(opt);
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    long long total = 0;
    for (const StatsRow& row : g_desk_report.rows) {
        total += row.trees;
        if (row.trees != static_cast<long long>(oracle::free_tree_count(row.n))) {
            detail = "tree count off at n=" + std::to_string(row.n);
            return false;
        }
    }
    if (g_desk_report.total_failures != 0) {
        detail = std::to_string(g_desk_report.total_failures) + " trees failed";
        return false;
    }
    CertificateReport check = verify_certificates_file(certs.string());
    if (!check.ok() || check.certificates != total) {
        detail = "certificate re-verification failed (" +
                 std::to_string(check.violations.size()) + " violations)";
        return false;
    }
    if (elapsed > 300.0) {
        detail = "run exceeded the five-minute budget";
        return false;
    }
    std::ostringstream msg;
    msg << total << " certificates for all n<=20, zero failures, re-verified in "
        << check.lines << " lines";
    detail = msg.str();
    return true;
}

bool c4_remainder_ratio(std::string& detail) {
    for (const StatsRow& row : g_desk_report.rows) {
        if (row.n == 20) {
            std::ostringstream msg;
            msg << "stage-2 ratio at n=20 is " << row.ratio << " (" << row.remainder << " of "
                << row.trees << ")";
            detail = msg.str();
            return row.trees == 823065 && row.ratio < 1e-3;
        }
    }
    detail = "run criterion 3 first (or select both)";
    return false;
}

bool c5_eval_equivalence(std::string& detail) {
    long long checked = 0;
    for (int n = 1; n <= 8; ++n) {
        bool bad = false;
        enumerate_trees(n, [&](const LevelSequence& s) {
            if (bad) return;
            Tree t = to_tree(s);
            std::vector<int> labels(n);
            std::iota(labels.begin(), labels.end(), 0);
            do {
                Labelling f = Labelling::from_labels(labels);
                ++checked;
                if ((eval(t, f) == 0) != is_graceful(t, f)) bad = true;
            } while (!bad && std::next_permutation(labels.begin(), labels.end()));
        });
        if (bad) {
            detail = "counterexample at n=" + std::to_string(n);
            return false;
        }
    }
    detail = std::to_string(checked) + " (tree, permutation) pairs, zero counterexamples";
    return true;
}

bool c6_incremental_eval(std::string& detail) {
    SplitMix64 rng(0xACCE55);
    const int kInstances = 20000;
    for (int i = 0; i < kInstances; ++i) {
        int n = 2 + static_cast<int>(rng.below(19));
        Tree t = to_tree(random_preorder(n, rng));
        std::vector<int> labels(n);
        std::iota(labels.begin(), labels.end(), 0);
        for (int v = n - 1; v > 0; --v) {
            int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(v) + 1));
            std::swap(labels[v], labels[j]);
        }
        Labelling f = Labelling::from_labels(labels);
        EdgeLabelMultiset cache = induced_labels(t, f);
        EdgeLabelMultiset pristine = cache;
        int x = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        int y = static_cast<int>(rng.below(static_cast<std::uint64_t>(n) - 1));
        if (y >= x) ++y;
        long long fast = eval_after_swap(t, f, x, y, cache);
        Labelling g = f;
        g.swap_labels(x, y);
        if (fast != eval(t, g) || !(cache == pristine)) {
            detail = "mismatch at instance " + std::to_string(i);
            return false;
        }
    }
    detail = std::to_string(kInstances) + " random (tree, permutation, pair) instances agree";
    return true;
}

bool c7_pruning_soundness(std::string& detail) {
    long long trees = 0;
    for (int n = 1; n <= 10; ++n) {
        bool bad = false;
        enumerate_trees(n, [&](const LevelSequence& s) {
            if (bad) return;
            Tree t = to_tree(s);
            ++trees;
            SymmetryClasses none;
            none.elder.assign(t.n, -1);
            none.next_in_class.assign(t.n, -1);
            BacktrackResult pruned = search_backtrack(t, symmetry_classes(t), kUnlimitedBudget);
            BacktrackResult plain = search_backtrack(t, none, kUnlimitedBudget);
            bool pf = pruned.status == BacktrackStatus::found;
            bool uf = plain.status == BacktrackStatus::found;
            if (pf != uf) bad = true;
            if (pf && !is_graceful(t, *pruned.labelling)) bad = true;
            if (uf && !is_graceful(t, *plain.labelling)) bad = true;
        });
        if (bad) {
            detail = "discrepancy at n=" + std::to_string(n);
            return false;
        }
    }
    detail = std::to_string(trees) + " trees, pruned and unpruned searches agree";
    return true;
}

bool c8_metaheuristic_standalone(std::string& detail) {
    MetaConfig cfg;
    cfg.rng_seed = 0x5EED;  // the documented fixed seed for this criterion
    cfg.max_iters = 1'000'000;
    long long trees = 0, worst_iters = 0;
    for (int n = 1; n <= 12; ++n) {
        bool bad = false;
        enumerate_trees(n, [&](const LevelSequence& s) {
            if (bad) return;
            Tree t = to_tree(s);
            ++trees;
            MetaOutcome out = search_probabilistic(t, cfg);
            if (!out.found || !is_graceful(t, *out.labelling)) {
                bad = true;
                detail = "unsolved tree " + to_string(s);
                return;
            }
            worst_iters = std::max(worst_iters, out.iterations);
        });
        if (bad) return false;
    }
    std::ostringstream msg;
    msg << trees << " trees solved from the identity start (seed 0x5EED, worst "
        << worst_iters << " iterations)";
    detail = msg.str();
    return true;
}

bool c9_determinism(std::string& detail) {
    RunOptions opt;
    opt.n_min = 1;
    opt.n_max = 10;
    opt.seed = 424242;
    opt.threads = 4;
    opt.failures_path = (work_dir() / "failures_det.txt").string();
    RunReport a = run_verification(opt);
    RunReport b = run_verification(opt);
    if (a.rows.size() != b.rows.size()) {
        detail = "row sets differ";
        return false;
    }
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        const StatsRow &ra = a.rows[i], &rb = b.rows[i];
        if (ra.n != rb.n || ra.trees != rb.trees || ra.backtracking != rb.backtracking ||
            ra.remainder != rb.remainder || ra.failures != rb.failures || ra.ratio != rb.ratio) {
            detail = "rows differ at n=" + std::to_string(ra.n);
            return false;
        }
    }
    if (a.total_failures != b.total_failures) {
        detail = "failure sets differ";
        return false;
    }
    detail = "two runs with identical flags agree on every non-timing column";
    return true;
}

bool c10_shard_partition(std::string& detail) {
    const int n = 14;
    std::multiset<std::string> whole;
    {
        TreeStream stream(n);
        while (const LevelSequence* s = stream.next()) whole.insert(to_string(*s));
    }
    std::multiset<std::string> merged;
    for (long long shard = 0; shard < 4; ++shard) {
        auto path = work_dir() / ("shard" + std::to_string(shard) + ".txt");
        RunOptions opt;
        opt.n_min = opt.n_max = n;
        opt.shard = {shard, 4};
        opt.seed = 8;
        opt.threads = worker_threads();
        opt.dump_trees_path = path.string();
        run_verification(opt);
        std::ifstream in(path);
        std::string line;
        long long before = static_cast<long long>(merged.size());
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (merged.count(line)) {
                detail = "shards overlap on " + line;
                return false;
            }
            merged.insert(line);
        }
        if (static_cast<long long>(merged.size()) == before) {
            detail = "shard " + std::to_string(shard) + " is empty";
            return false;
        }
    }
    if (merged != whole) {
        detail = "union of shards differs from the unsharded stream";
        return false;
    }
    detail = std::to_string(whole.size()) + " trees at n=14 split cleanly across 4 shards";
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) g_selected.insert(std::atoi(argv[i]));

    criterion(1, "tree counts vs brute-force oracles", c1_tree_counts);
    criterion(2, "reference tree counts at n=20..22", c2_large_counts);
    criterion(3, "gracefulness of every tree, n<=20", c3_desk_scale);
    criterion(4, "stage-2 remainder ratio at n=20", c4_remainder_ratio);
    criterion(5, "eval zero iff graceful, n<=8", c5_eval_equivalence);
    criterion(6, "incremental evaluation oracle", c6_incremental_eval);
    criterion(7, "symmetry pruning soundness, n<=10", c7_pruning_soundness);
    criterion(8, "probabilistic search alone, n<=12", c8_metaheuristic_standalone);
    criterion(9, "seeded determinism of runs", c9_determinism);
    criterion(10, "shard partition at n=14", c10_shard_partition);

    if (g_failures) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
