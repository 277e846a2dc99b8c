#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "graceful/certificate.hpp"
#include "graceful/runner.hpp"
#include "graceful/stats.hpp"

using namespace graceful;

namespace {

std::filesystem::path temp_dir() {
    auto dir = std::filesystem::temp_directory_path() / "gtv_test";
    std::filesystem::create_directories(dir);
    return dir;
}

std::multiset<std::string> lines_of(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::multiset<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) lines.insert(line);
    }
    return lines;
}

}  // namespace

TEST_CASE("certificate lines round-trip", "[formats]") {
    LevelSequence seq({0, 1, 2, 1});
    Labelling f = Labelling::from_labels({2, 0, 3, 1});
    REQUIRE(is_graceful(to_tree(seq), f));
    CHECK(certificate_line(seq, f) == "0 1 2 1 | 2 0 3 1");

    std::istringstream in("0 1 2 1 | 2 0 3 1\n\n0 1 1 1 | 0 1 2 3\n");
    CertificateReport report = verify_certificates(in);
    CHECK(report.lines == 2);
    CHECK(report.certificates == 2);
    CHECK(report.ok());
}

TEST_CASE("certificate violations are pinpointed", "[formats]") {
    std::istringstream in(
        "0 1 2 1 | 2 0 3 1\n"    // fine
        "0 1 2 1 | 0 1 2 3\n"    // not graceful
        "0 1 2 1 | 0 3 1\n"      // wrong label count
        "0 1 2 1 | 0 3 3 1\n"    // not a permutation
        "0 1 2 1   0 3 1 2\n"    // no separator
        "0 2 1 1 | 0 3 1 2\n"    // malformed tree
        "0 1 2 1 | 0 x 1 2\n");  // junk token
    CertificateReport report = verify_certificates(in);
    CHECK(report.lines == 7);
    CHECK(report.certificates == 1);
    REQUIRE(report.violations.size() == 6);
    CHECK(report.violations[0].line == 2);
    CHECK(report.violations[1].line == 3);
    CHECK(report.violations[2].line == 4);
    CHECK(report.violations[3].line == 5);
    CHECK(report.violations[4].line == 6);
    CHECK(report.violations[5].line == 7);
}

TEST_CASE("empty certificate files are vacuously fine", "[formats]") {
    std::istringstream in("");
    CertificateReport report = verify_certificates(in);
    CHECK(report.ok());
    CHECK(report.lines == 0);
    CHECK(report.certificates == 0);
}

TEST_CASE("stats CSV has the exact column set", "[formats]") {
    std::vector<StatsRow> rows(1);
    rows[0] = {20, 823065, 823002, 63, 0, 63.0 / 823065.0, 11.0, 0.0134};
    std::ostringstream out;
    write_stats_csv(out, rows);
    std::istringstream in(out.str());
    std::string header, line;
    std::getline(in, header);
    CHECK(header == "n,trees,backtracking,remainder,ratio,time_s,avg_ms,failures");
    std::getline(in, line);
    CHECK(line.starts_with("20,823065,823002,63,7.65"));
}

TEST_CASE("stats JSON carries the rng identity", "[formats]") {
    std::vector<StatsRow> rows(1);
    rows[0].n = 4;
    rows[0].trees = 2;
    rows[0].backtracking = 2;
    std::ostringstream out;
    write_stats_json(out, rows, 42);
    auto doc = nlohmann::json::parse(out.str());
    CHECK(doc["rng"] == "splitmix64");
    CHECK(doc["seed"] == 42);
    CHECK(doc["rows"][0]["n"] == 4);
    CHECK(doc["rows"][0]["trees"] == 2);
}

TEST_CASE("shard validation", "[formats]") {
    CHECK_THROWS_AS(validate(ShardSpec{-1, 4}), std::invalid_argument);
    CHECK_THROWS_AS(validate(ShardSpec{4, 4}), std::invalid_argument);
    CHECK_THROWS_AS(validate(ShardSpec{0, 0}), std::invalid_argument);
    CHECK_NOTHROW(validate(ShardSpec{3, 4}));
}

TEST_CASE("full verification run over small orders", "[formats]") {
    auto dir = temp_dir();
    RunOptions opt;
    opt.n_min = 1;
    opt.n_max = 8;
    opt.seed = 11;
    opt.threads = 2;
    opt.labellings_path = (dir / "certs.txt").string();
    opt.failures_path = (dir / "failures.txt").string();
    std::filesystem::remove(opt.failures_path);

    RunReport report = run_verification(opt);
    CHECK(report.total_failures == 0);
    REQUIRE(report.rows.size() == 8);
    const long long expected[] = {1, 1, 1, 2, 3, 6, 11, 23};
    long long total = 0;
    for (int i = 0; i < 8; ++i) {
        CHECK(report.rows[i].n == i + 1);
        CHECK(report.rows[i].trees == expected[i]);
        CHECK(report.rows[i].trees == report.rows[i].backtracking + report.rows[i].remainder);
        CHECK(report.rows[i].failures == 0);
        total += report.rows[i].trees;
    }
    CHECK_FALSE(std::filesystem::exists(opt.failures_path));  // only written when nonempty

    CertificateReport certs = verify_certificates_file(opt.labellings_path);
    CHECK(certs.ok());
    CHECK(certs.certificates == total);
}

TEST_CASE("runs with the same seed agree except on timing", "[formats]") {
    RunOptions opt;
    opt.n_min = 1;
    opt.n_max = 9;
    opt.seed = 1234;
    opt.threads = 3;
    RunReport a = run_verification(opt);
    RunReport b = run_verification(opt);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].n == b.rows[i].n);
        CHECK(a.rows[i].trees == b.rows[i].trees);
        CHECK(a.rows[i].backtracking == b.rows[i].backtracking);
        CHECK(a.rows[i].remainder == b.rows[i].remainder);
        CHECK(a.rows[i].failures == b.rows[i].failures);
        CHECK(a.rows[i].ratio == b.rows[i].ratio);
    }
}

TEST_CASE("shards partition the stream", "[formats]") {
    auto dir = temp_dir();
    const int n = 10;

    auto dump_path = dir / "all.txt";
    RunOptions whole;
    whole.n_min = whole.n_max = n;
    whole.dump_trees_path = dump_path.string();
    run_verification(whole);
    auto all = lines_of(dump_path);

    std::multiset<std::string> merged;
    for (long long i = 0; i < 4; ++i) {
        auto part_path = dir / ("part" + std::to_string(i) + ".txt");
        RunOptions part;
        part.n_min = part.n_max = n;
        part.shard = {i, 4};
        part.dump_trees_path = part_path.string();
        run_verification(part);
        for (const auto& line : lines_of(part_path)) {
            CHECK(merged.count(line) == 0);  // disjoint
            merged.insert(line);
        }
    }
    CHECK(merged == all);
}

TEST_CASE("verification accepts trees from a file", "[formats]") {
    auto dir = temp_dir();
    auto path = dir / "mixed.txt";
    {
        std::ofstream out(path);
        out << "0 1 2 1\n";
        out << "\n";
        out << "0 1 1 1 1\n";
        out << "0 1 2 3 2 1\n";
    }
    RunOptions opt;
    opt.trees_from_file = path.string();
    opt.seed = 5;
    RunReport report = run_verification(opt);
    CHECK(report.total_failures == 0);
    REQUIRE(report.rows.size() == 3);  // orders 4, 5, 6
    CHECK(report.rows[0].n == 4);
    CHECK(report.rows[0].trees == 1);
    CHECK(report.rows[1].n == 5);
    CHECK(report.rows[2].n == 6);

    std::ofstream(path) << "0 7 1\n";
    CHECK_THROWS_AS(run_verification(opt), std::runtime_error);
}

TEST_CASE("option validation", "[formats]") {
    RunOptions opt;
    opt.n_min = 0;
    opt.n_max = 4;
    CHECK_THROWS_AS(run_verification(opt), std::invalid_argument);
    opt.n_min = 5;
    CHECK_THROWS_AS(run_verification(opt), std::invalid_argument);
    opt.n_min = 1;
    opt.threads = 0;
    CHECK_THROWS_AS(run_verification(opt), std::invalid_argument);
}
