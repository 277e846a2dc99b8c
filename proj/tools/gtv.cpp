// gtv: graceful tree verifier.
//
// Enumerates all non-isomorphic free trees of the requested orders, finds a
// graceful labelling for each with a two-stage (backtracking, then
// probabilistic) search, and writes per-order statistics plus optional
// labelling certificates.  Certificate files can be re-checked
// independently with the `check` subcommand.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "graceful/graceful.hpp"

namespace {

graceful::ShardSpec parse_shard(const std::string& text) {
    graceful::ShardSpec shard;
    auto slash = text.find('/');
    if (slash == std::string::npos) throw CLI::ValidationError("--shard", "expected I/M");
    try {
        shard.index = std::stoll(text.substr(0, slash));
        shard.count = std::stoll(text.substr(slash + 1));
    } catch (const std::exception&) {
        throw CLI::ValidationError("--shard", "expected I/M with integers");
    }
    return shard;
}

int cmd_run(const graceful::RunOptions& options, const std::string& stats_path) {
    graceful::RunReport report = graceful::run_verification(options);

    if (stats_path.empty()) {
        graceful::write_stats_csv(std::cout, report.rows);
    } else {
        std::ofstream out(stats_path);
        if (!out) {
            std::cerr << "gtv: cannot write " << stats_path << "\n";
            return 2;
        }
        if (stats_path.size() > 5 && stats_path.ends_with(".json")) {
            graceful::write_stats_json(out, report.rows, options.seed);
        } else {
            graceful::write_stats_csv(out, report.rows);
        }
    }
    if (report.total_failures > 0) {
        std::cerr << "gtv: " << report.total_failures << " tree(s) failed both stages; see "
                  << (options.failures_path.empty() ? "stats" : options.failures_path) << "\n";
        return 1;
    }
    return 0;
}

int cmd_dump(int n_min, int n_max, const graceful::ShardSpec& shard, const std::string& path) {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!path.empty()) {
        file.open(path);
        if (!file) {
            std::cerr << "gtv: cannot write " << path << "\n";
            return 2;
        }
        out = &file;
    }
    for (int n = n_min; n <= n_max; ++n) {
        long long index = 0;
        graceful::enumerate_trees(n, [&](const graceful::LevelSequence& seq) {
            if (shard.accepts(index++)) *out << graceful::to_string(seq) << '\n';
        });
    }
    return 0;
}

int cmd_check(const std::string& path) {
    graceful::CertificateReport report = graceful::verify_certificates_file(path);
    for (const auto& v : report.violations) {
        std::cout << path << ":" << v.line << ": " << v.message << "\n";
    }
    std::cout << report.certificates << " of " << report.lines << " certificate(s) valid, "
              << report.violations.size() << " violation(s)\n";
    return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graceful tree verifier"};
    app.require_subcommand(1);

    graceful::RunOptions options;
    options.failures_path = "failures.txt";
    std::string shard_text = "0/1";
    std::string stats_path;
    std::string budget_profile = "default";
    long long explicit_budget = -1;

    CLI::App* run = app.add_subcommand("run", "enumerate, verify, and write statistics");
    run->add_option("--n-min", options.n_min, "smallest tree order")->capture_default_str();
    run->add_option("--n-max", options.n_max, "largest tree order (required unless reading from a file)");
    run->add_option("--shard", shard_text, "take trees with index = I mod M, as I/M")
        ->capture_default_str();
    run->add_option("--seed", options.seed, "master RNG seed")->capture_default_str();
    run->add_option("--budget-profile", budget_profile, "backtrack budget formula")
        ->check(CLI::IsMember({"default", "alt"}))
        ->capture_default_str();
    run->add_option("--budget", explicit_budget, "explicit backtrack budget (overrides profile)");
    run->add_option("--accept-prob", options.config.meta.accept_worse_prob,
                    "probability of committing a non-improving swap")
        ->capture_default_str();
    run->add_option("--max-iters", options.config.meta.max_iters,
                    "stage-2 iteration cap per tree")
        ->capture_default_str();
    run->add_option("--tabu-len", options.config.meta.tabu_len,
                    "tabu tenure (default: n/3)");
    run->add_option("--samples", options.config.meta.samples_per_iter,
                    "swap candidates per iteration (default: 2n)");
    run->add_option("--stats", stats_path, "stats output path (.json for JSON, else CSV)");
    run->add_option("--emit-labellings", options.labellings_path,
                    "write one certificate line per verified tree");
    run->add_option("--failures", options.failures_path,
                    "path for trees failing both stages")
        ->capture_default_str();
    run->add_option("--dump-trees", options.dump_trees_path,
                    "also write every enumerated level sequence");
    run->add_option("--trees-from-file", options.trees_from_file,
                    "verify level sequences from a file instead of enumerating");
    run->add_option("--threads", options.threads, "worker threads")->capture_default_str();

    int dump_n_min = 1, dump_n_max = 0;
    std::string dump_shard_text = "0/1", dump_path;
    CLI::App* dump = app.add_subcommand("dump", "enumerate level sequences only");
    dump->add_option("--n-min", dump_n_min, "smallest tree order")->capture_default_str();
    dump->add_option("--n-max", dump_n_max, "largest tree order")->required();
    dump->add_option("--shard", dump_shard_text, "take trees with index = I mod M, as I/M")
        ->capture_default_str();
    dump->add_option("--out", dump_path, "output path (default: stdout)");

    std::string check_path;
    CLI::App* check = app.add_subcommand("check", "re-verify a certificate file");
    check->add_option("path", check_path, "certificate file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            options.shard = parse_shard(shard_text);
            if (explicit_budget >= 0) {
                options.config.budget_profile = graceful::BudgetProfile::explicit_value;
                options.config.explicit_budget = explicit_budget;
            } else if (budget_profile == "alt") {
                options.config.budget_profile = graceful::BudgetProfile::alt_formula;
            }
            if (options.trees_from_file.empty() && run->count("--n-max") == 0) {
                std::cerr << "gtv: --n-max is required when enumerating\n";
                return 2;
            }
            return cmd_run(options, stats_path);
        }
        if (dump->parsed()) {
            return cmd_dump(dump_n_min, dump_n_max, parse_shard(dump_shard_text), dump_path);
        }
        return cmd_check(check_path);
    } catch (const std::exception& e) {
        std::cerr << "gtv: " << e.what() << "\n";
        return 2;
    }
}
