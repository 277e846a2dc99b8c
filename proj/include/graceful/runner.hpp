#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "graceful/certificate.hpp"
#include "graceful/enumerate.hpp"
#include "graceful/hybrid.hpp"
#include "graceful/stats.hpp"

namespace graceful {

// Deterministic slice of the enumeration stream: tree i belongs to the
// shard iff i mod count == index.  Shards partition the stream, so
// independent machines can each take one without coordination.
struct ShardSpec {
    long long index = 0;
    long long count = 1;

    bool accepts(long long i) const { return i % count == index; }
};

inline void validate(const ShardSpec& s) {
    if (s.count < 1 || s.index < 0 || s.index >= s.count) {
        throw std::invalid_argument("shard index must lie in [0, count)");
    }
}

struct RunOptions {
    int n_min = 1;
    int n_max = 1;
    ShardSpec shard;
    SearchConfig config;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string trees_from_file;  // replaces enumeration when set
    std::string dump_trees_path;  // tap: every sharded input tree, one per line
    std::string labellings_path;  // certificates, written only when set
    std::string failures_path;    // written only when a tree fails both stages
};

struct RunReport {
    std::vector<StatsRow> rows;
    long long total_failures = 0;
};

namespace detail {

template <class T>
class BoundedQueue {
public:
    explicit BoundedQueue(std::size_t capacity) : capacity_(capacity) {}

    void push(T item) {
        std::unique_lock lock(m_);
        not_full_.wait(lock, [&] { return q_.size() < capacity_ || closed_; });
        if (closed_) return;  // producer told to stop; item dropped
        q_.push_back(std::move(item));
        not_empty_.notify_one();
    }

    bool pop(T& out) {
        std::unique_lock lock(m_);
        not_empty_.wait(lock, [&] { return !q_.empty() || closed_; });
        if (q_.empty()) return false;
        out = std::move(q_.front());
        q_.pop_front();
        not_full_.notify_one();
        return true;
    }

    void close() {
        std::lock_guard lock(m_);
        closed_ = true;
        not_empty_.notify_all();
        not_full_.notify_all();
    }

private:
    std::mutex m_;
    std::condition_variable not_full_, not_empty_;
    std::deque<T> q_;
    std::size_t capacity_;
    bool closed_ = false;
};

struct TreeTask {
    long long index = 0;  // unsharded position within its order
    LevelSequence seq;
};

struct TreeResult {
    int n = 0;
    Stage stage = Stage::failed;
    double seconds = 0.0;
    std::string cert_line;     // empty unless certificates are being emitted
    std::string failure_line;  // empty unless the tree failed
};

class FirstError {
public:
    void capture() {
        std::lock_guard lock(m_);
        if (!err_) err_ = std::current_exception();
    }
    bool set() {
        std::lock_guard lock(m_);
        return err_ != nullptr;
    }
    void rethrow_if_set() {
        std::lock_guard lock(m_);
        if (err_) std::rethrow_exception(err_);
    }

private:
    std::mutex m_;
    std::exception_ptr err_;
};

}  // namespace detail

// Enumerates (or reads) the tree stream, keeps this shard's slice, runs the
// two-stage verification on a worker pool and funnels certificate/failure
// lines through a single writer thread.  Stats are aggregated per order;
// everything except the timing columns replays exactly for a fixed seed.
inline RunReport run_verification(const RunOptions& opt) {
    if (opt.trees_from_file.empty() && (opt.n_min < 1 || opt.n_min > opt.n_max)) {
        throw std::invalid_argument("need 1 <= n_min <= n_max");
    }
    validate(opt.shard);
    if (opt.threads < 1) throw std::invalid_argument("need at least one worker thread");

    using Batch = std::vector<detail::TreeTask>;
    using ResultBatch = std::vector<detail::TreeResult>;
    constexpr std::size_t kBatch = 64;

    detail::BoundedQueue<Batch> tasks(64);
    detail::BoundedQueue<ResultBatch> results(64);
    detail::FirstError error;
    const bool emit_certs = !opt.labellings_path.empty();

    // Writer: sole owner of the certificate and failure files.
    std::map<int, StatsRow> agg;
    std::thread writer([&] {
        try {
            std::ofstream certs;
            if (emit_certs) {
                certs.open(opt.labellings_path);
                if (!certs) throw std::runtime_error("cannot write " + opt.labellings_path);
            }
            std::ofstream failures;  // opened on first failure
            ResultBatch batch;
            while (results.pop(batch)) {
                for (const detail::TreeResult& r : batch) {
                    StatsRow& row = agg[r.n];
                    row.n = r.n;
                    ++row.trees;
                    if (r.stage == Stage::backtrack) {
                        ++row.backtracking;
                    } else {
                        ++row.remainder;
                    }
                    if (r.stage == Stage::failed) ++row.failures;
                    row.time_s += r.seconds;
                    if (!r.cert_line.empty()) certs << r.cert_line << '\n';
                    if (!r.failure_line.empty() && !opt.failures_path.empty()) {
                        if (!failures.is_open()) {
                            failures.open(opt.failures_path);
                            if (!failures) {
                                throw std::runtime_error("cannot write " + opt.failures_path);
                            }
                        }
                        failures << r.failure_line << '\n';
                    }
                }
            }
            if (emit_certs && !certs.flush()) {
                throw std::runtime_error("error writing " + opt.labellings_path);
            }
        } catch (...) {
            error.capture();
            ResultBatch sink;
            while (results.pop(sink)) {
            }
        }
    });

    // Workers: independent searches; the RNG stream of each tree is derived
    // from (master seed, order, stream index), so results do not depend on
    // scheduling.
    std::vector<std::thread> workers;
    for (int w = 0; w < opt.threads; ++w) {
        workers.emplace_back([&] {
            try {
                Batch batch;
                while (tasks.pop(batch)) {
                    ResultBatch out;
                    out.reserve(batch.size());
                    for (detail::TreeTask& task : batch) {
                        const int n = task.seq.size();
                        Tree t = to_tree(task.seq);
                        SearchConfig cfg = opt.config;
                        cfg.meta.rng_seed = derive_seed(derive_seed(opt.seed, n),
                                                        static_cast<std::uint64_t>(task.index));
                        VerifyOutcome v = verify_tree(t, cfg);
                        detail::TreeResult r;
                        r.n = n;
                        r.stage = v.stage;
                        r.seconds = v.wall_time_s;
                        if (v.stage == Stage::failed) {
                            r.failure_line = to_string(task.seq);
                        } else if (emit_certs) {
                            r.cert_line = certificate_line(task.seq, *v.labelling);
                        }
                        out.push_back(std::move(r));
                    }
                    results.push(std::move(out));
                }
            } catch (...) {
                error.capture();
                Batch sink;
                while (tasks.pop(sink)) {
                }
            }
        });
    }

    // Enumeration runs on the calling thread and feeds the task queue.
    try {
        std::ofstream dump;
        if (!opt.dump_trees_path.empty()) {
            dump.open(opt.dump_trees_path);
            if (!dump) throw std::runtime_error("cannot write " + opt.dump_trees_path);
        }
        Batch batch;
        auto feed = [&](long long index, const LevelSequence& seq) {
            if (!opt.shard.accepts(index)) return;
            if (dump.is_open()) dump << to_string(seq) << '\n';
            batch.push_back({index, seq});
            if (batch.size() >= kBatch) {
                tasks.push(std::move(batch));
                batch = Batch{};
            }
        };
        if (!opt.trees_from_file.empty()) {
            std::ifstream in(opt.trees_from_file);
            if (!in) throw std::runtime_error("cannot open " + opt.trees_from_file);
            std::string line;
            long long line_no = 0, index = 0;
            while (std::getline(in, line)) {
                ++line_no;
                if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
                try {
                    feed(index++, parse_level_sequence(line));
                } catch (const std::invalid_argument& e) {
                    throw std::runtime_error(opt.trees_from_file + ":" +
                                             std::to_string(line_no) + ": " + e.what());
                }
                if (error.set()) break;
            }
        } else {
            for (int n = opt.n_min; n <= opt.n_max && !error.set(); ++n) {
                long long index = 0;
                TreeStream stream(n);
                while (const LevelSequence* seq = stream.next()) {
                    feed(index++, *seq);
                    if (error.set()) break;
                }
            }
        }
        if (!batch.empty()) tasks.push(std::move(batch));
    } catch (...) {
        error.capture();
    }

    tasks.close();
    for (std::thread& w : workers) w.join();
    results.close();
    writer.join();
    error.rethrow_if_set();

    RunReport report;
    for (auto& [n, row] : agg) {
        row.ratio = row.trees ? static_cast<double>(row.remainder) / static_cast<double>(row.trees)
                              : 0.0;
        row.avg_ms = row.trees ? row.time_s * 1000.0 / static_cast<double>(row.trees) : 0.0;
        report.total_failures += row.failures;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace graceful
