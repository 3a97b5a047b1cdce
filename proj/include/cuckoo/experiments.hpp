#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cuckoo/graph.hpp"
#include "cuckoo/oracles.hpp"
#include "cuckoo/stats.hpp"
#include "cuckoo/table.hpp"
#include "cuckoo/uniform.hpp"

namespace cuckoo {

// Keys are drawn from [0, 2^61 - 1), the field of the polynomial hashes.
inline constexpr std::uint64_t kKeyUniverse = field::kMersennePrime;

struct ExperimentConfig {
    std::vector<std::uint64_t> n_list{1024};
    Rational eps{1, 5};
    Rational delta{1, 2};
    std::vector<std::uint64_t> stash_list{0};
    unsigned k = 1;
    unsigned c = 0;  // 0 -> ceil((s+2)/(delta*k)) per stash size
    unsigned w = 2;              // uniformity: R = [2^w]
    std::uint64_t set_size = 4;  // uniformity: |S|
    std::uint64_t trials = 1000;
    std::vector<std::uint64_t> trials_list;  // per n_list entry; empty -> `trials` for all
    HashSourceKind source = HashSourceKind::zfamily;
    std::uint64_t seed = 1;
    unsigned threads = 0;  // 0 -> hardware concurrency
    std::optional<std::uint64_t> m_override;  // graph-side experiments only

    std::uint64_t trials_for(std::size_t n_index) const {
        if (trials_list.empty()) return trials;
        if (n_index >= trials_list.size())
            throw std::invalid_argument("ExperimentConfig: trials_list shorter than n_list");
        return trials_list[n_index];
    }
};

struct ResultRow {
    std::string experiment;
    std::uint64_t n = 0;
    std::uint64_t s = 0;
    std::string source;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double rate = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double mean_rounds = 0.0;
    double p99_rounds = 0.0;
    std::uint64_t wall_ms = 0;
};

inline constexpr const char* kCsvHeader =
    "experiment,n,s,source,trials,failures,rate,ci_lo,ci_hi,mean_rounds,p99_rounds,wall_ms";

inline std::string csv_line(const ResultRow& r) {
    char buf[320];
    std::snprintf(buf, sizeof buf, "%s,%llu,%llu,%s,%llu,%llu,%.9g,%.9g,%.9g,%.9g,%.9g,%llu",
                  r.experiment.c_str(), static_cast<unsigned long long>(r.n),
                  static_cast<unsigned long long>(r.s), r.source.c_str(),
                  static_cast<unsigned long long>(r.trials),
                  static_cast<unsigned long long>(r.failures), r.rate, r.ci_lo, r.ci_hi,
                  r.mean_rounds, r.p99_rounds, static_cast<unsigned long long>(r.wall_ms));
    return buf;
}

inline void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
    os << kCsvHeader << '\n';
    for (const ResultRow& r : rows) os << csv_line(r) << '\n';
}

namespace detail {

inline unsigned resolve_threads(unsigned requested) {
    if (requested) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// Runs fn(trial_index, accum) over [0, trials) on a worker pool. Each worker
// owns one accumulator; partials are merged in worker order, so results do
// not depend on scheduling. Accum needs merge(const Accum&).
template <typename Accum, typename Fn>
Accum parallel_trials(std::uint64_t trials, unsigned threads, Fn&& fn) {
    threads = resolve_threads(threads);
    if (threads <= 1 || trials <= 1) {
        Accum acc{};
        for (std::uint64_t t = 0; t < trials; ++t) fn(t, acc);
        return acc;
    }
    std::vector<Accum> parts(threads);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned tid = 0; tid < threads; ++tid) {
        pool.emplace_back([&, tid] {
            for (std::uint64_t t = tid; t < trials; t += threads) fn(t, parts[tid]);
        });
    }
    for (auto& th : pool) th.join();
    Accum out{};
    for (Accum& part : parts) out.merge(part);
    return out;
}

inline std::uint64_t trial_seed(std::uint64_t master, std::string_view experiment,
                                std::uint64_t n, std::uint64_t s, std::uint64_t trial) {
    return derive_seed(master, fnv1a64(experiment), n, s, trial);
}

inline unsigned resolve_c(const ExperimentConfig& cfg, std::uint64_t s) {
    if (cfg.c) return cfg.c;
    const std::uint64_t num = (s + 2) * cfg.delta.den;
    const std::uint64_t den = cfg.delta.num * cfg.k;
    return static_cast<unsigned>((num + den - 1) / den);
}

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    std::uint64_t elapsed_ms() const {
        return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                              std::chrono::steady_clock::now() - start_)
                                              .count());
    }

private:
    std::chrono::steady_clock::time_point start_;
};

struct CountAccum {
    std::uint64_t failures = 0;
    void merge(const CountAccum& o) { failures += o.failures; }
};

struct RoundsAccum {
    std::uint64_t failures = 0;  // trials lost to rehash exhaustion
    std::uint64_t inserts = 0;
    std::uint64_t total_rounds = 0;
    std::vector<std::uint64_t> histogram;
    void add_rounds(std::uint64_t rounds) {
        if (histogram.size() <= rounds) histogram.resize(rounds + 1, 0);
        ++histogram[rounds];
        total_rounds += rounds;
        ++inserts;
    }
    void merge(const RoundsAccum& o) {
        failures += o.failures;
        inserts += o.inserts;
        total_rounds += o.total_rounds;
        if (histogram.size() < o.histogram.size()) histogram.resize(o.histogram.size(), 0);
        for (std::size_t i = 0; i < o.histogram.size(); ++i) histogram[i] += o.histogram[i];
    }
};

inline double histogram_quantile(const std::vector<std::uint64_t>& hist, std::uint64_t total,
                                 double q) {
    if (total == 0) return 0.0;
    const auto want = static_cast<std::uint64_t>(std::ceil(q * static_cast<double>(total)));
    std::uint64_t seen = 0;
    for (std::size_t r = 0; r < hist.size(); ++r) {
        seen += hist[r];
        if (seen >= want) return static_cast<double>(r);
    }
    return static_cast<double>(hist.size());
}

}  // namespace detail

// Pr(ex(G(S, h1, h2)) >= s+1) over random key sets and hash pairs, per
// (n, s): the graph-side failure event behind the rehash probability.
inline std::vector<ResultRow> run_failure_prob(const ExperimentConfig& cfg) {
    std::vector<ResultRow> rows;
    for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
        const std::uint64_t n = cfg.n_list[ni];
        const std::uint64_t trials = cfg.trials_for(ni);
        for (std::uint64_t s : cfg.stash_list) {
            detail::Stopwatch watch;
            const std::uint64_t m = cfg.m_override ? *cfg.m_override : scaled_table_size(n, cfg.eps);
            const std::uint64_t ell = pow2_at_least_npow(n, cfg.delta);
            const unsigned c = detail::resolve_c(cfg, s);
            const auto accum = detail::parallel_trials<detail::CountAccum>(
                trials, cfg.threads, [&](std::uint64_t t, detail::CountAccum& acc) {
                    const std::uint64_t st = detail::trial_seed(cfg.seed, "failure-prob", n, s, t);
                    SplitMix64 rng(st);
                    const auto keys = sample_distinct_keys(n, kKeyUniverse, rng);
                    const auto pair = HashPairSource::make(cfg.source, cfg.k, c, ell, m,
                                                           derive_seed(st, fnv1a64("pair")));
                    if (excess(build_graph(keys, pair)) >= static_cast<std::int64_t>(s) + 1)
                        ++acc.failures;
                });
            const Interval ci = wilson_interval(accum.failures, trials);
            ResultRow row;
            row.experiment = "failure-prob";
            row.n = n;
            row.s = s;
            row.source = to_string(cfg.source);
            row.trials = trials;
            row.failures = accum.failures;
            row.rate = static_cast<double>(accum.failures) / static_cast<double>(trials);
            row.ci_lo = ci.lo;
            row.ci_hi = ci.hi;
            row.wall_ms = watch.elapsed_ms();
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

// Displacement rounds per insertion when filling a table with n keys via the
// standard bounded insertion.
inline std::vector<ResultRow> run_insertion_cost(const ExperimentConfig& cfg) {
    std::vector<ResultRow> rows;
    for (std::uint64_t n : cfg.n_list) {
        for (std::uint64_t s : cfg.stash_list) {
            detail::Stopwatch watch;
            const auto accum = detail::parallel_trials<detail::RoundsAccum>(
                cfg.trials, cfg.threads, [&](std::uint64_t t, detail::RoundsAccum& acc) {
                    const std::uint64_t st =
                        detail::trial_seed(cfg.seed, "insertion-cost", n, s, t);
                    SplitMix64 rng(st);
                    const auto keys = sample_distinct_keys(n, kKeyUniverse, rng);
                    TableConfig tc;
                    tc.n = n;
                    tc.eps = cfg.eps;
                    tc.delta = cfg.delta;
                    tc.stash_capacity = s;
                    tc.k = cfg.k;
                    tc.c = detail::resolve_c(cfg, s);
                    tc.source = cfg.source;
                    tc.seed = derive_seed(st, fnv1a64("table"));
                    CuckooTable<std::uint64_t> table(tc);
                    detail::RoundsAccum local;
                    try {
                        for (std::uint64_t x : keys) local.add_rounds(table.insert(x, x).rounds);
                    } catch (const RehashExhausted&) {
                        ++acc.failures;
                        return;  // drop this trial's rounds
                    }
                    acc.merge(local);
                });
            ResultRow row;
            row.experiment = "insertion-cost";
            row.n = n;
            row.s = s;
            row.source = to_string(cfg.source);
            row.trials = cfg.trials;
            row.failures = accum.failures;
            row.rate = static_cast<double>(accum.failures) / static_cast<double>(cfg.trials);
            const Interval ci = wilson_interval(accum.failures, cfg.trials);
            row.ci_lo = ci.lo;
            row.ci_hi = ci.hi;
            row.mean_rounds = accum.inserts ? static_cast<double>(accum.total_rounds) /
                                                  static_cast<double>(accum.inserts)
                                            : 0.0;
            row.p99_rounds = detail::histogram_quantile(accum.histogram, accum.inserts, 0.99);
            row.wall_ms = watch.elapsed_ms();
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

// Stash behaviour at the paper's maxloop: row "stash-overflow" counts trials
// whose stash overflowed (a rehash would fire); row "stash-premature" counts
// completed trials whose stash held more keys than the graph excess, i.e.
// keys stashed only because the loop cap stopped the walk early.
inline std::vector<ResultRow> run_stash_overflow(const ExperimentConfig& cfg) {
    struct Accum {
        std::uint64_t overflows = 0;
        std::uint64_t premature = 0;
        void merge(const Accum& o) {
            overflows += o.overflows;
            premature += o.premature;
        }
    };
    std::vector<ResultRow> rows;
    for (std::uint64_t n : cfg.n_list) {
        for (std::uint64_t s : cfg.stash_list) {
            detail::Stopwatch watch;
            const auto accum = detail::parallel_trials<Accum>(
                cfg.trials, cfg.threads, [&](std::uint64_t t, Accum& acc) {
                    const std::uint64_t st =
                        detail::trial_seed(cfg.seed, "stash-overflow", n, s, t);
                    SplitMix64 rng(st);
                    const auto keys = sample_distinct_keys(n, kKeyUniverse, rng);
                    TableConfig tc;
                    tc.n = n;
                    tc.eps = cfg.eps;
                    tc.delta = cfg.delta;
                    tc.stash_capacity = s;
                    tc.k = cfg.k;
                    tc.c = detail::resolve_c(cfg, s);
                    tc.source = cfg.source;
                    tc.seed = derive_seed(st, fnv1a64("table"));
                    tc.rehash_retries = 0;  // surface the overflow instead of rehashing
                    CuckooTable<std::uint64_t> table(tc);
                    try {
                        for (std::uint64_t x : keys) table.insert(x, x);
                    } catch (const RehashExhausted&) {
                        ++acc.overflows;
                        return;
                    }
                    const auto g = build_graph(keys, table.hash_source());
                    if (static_cast<std::int64_t>(table.stash().size()) > excess(g))
                        ++acc.premature;
                });
            const std::uint64_t wall = watch.elapsed_ms();
            const std::pair<const char*, std::uint64_t> outcomes[] = {
                {"stash-overflow", accum.overflows}, {"stash-premature", accum.premature}};
            for (const auto& [name, failures] : outcomes) {
                ResultRow row;
                row.experiment = name;
                row.n = n;
                row.s = s;
                row.source = to_string(cfg.source);
                row.trials = cfg.trials;
                row.failures = failures;
                row.rate = static_cast<double>(failures) / static_cast<double>(cfg.trials);
                const Interval ci = wilson_interval(failures, cfg.trials);
                row.ci_lo = ci.lo;
                row.ci_hi = ci.hi;
                row.wall_ms = wall;
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

struct UniformityOutcome {
    ResultRow row;
    double chi2 = 0.0;
    double critical = 0.0;
    std::uint64_t cells = 0;
};

// Chi-square test of the joint output tuple (h(x_1),...,h(x_|S|)) against
// uniform over [2^w]^|S|, across independently built structures.
inline std::vector<UniformityOutcome> run_uniformity(const ExperimentConfig& cfg) {
    if (cfg.set_size * cfg.w > 24)
        throw std::invalid_argument("run_uniformity: 2^(w*|S|) outcome cells is too large");
    struct Accum {
        std::vector<std::uint64_t> counts;
        void merge(const Accum& o) {
            if (counts.size() < o.counts.size()) counts.resize(o.counts.size(), 0);
            for (std::size_t i = 0; i < o.counts.size(); ++i) counts[i] += o.counts[i];
        }
    };
    const std::uint64_t cells = std::uint64_t{1} << (cfg.set_size * cfg.w);
    std::vector<UniformityOutcome> out;
    for (std::uint64_t n : cfg.n_list) {
        for (std::uint64_t s : cfg.stash_list) {
            detail::Stopwatch watch;
            SplitMix64 key_rng(derive_seed(cfg.seed, fnv1a64("uniformity-keys"), n, s));
            const auto keys = sample_distinct_keys(cfg.set_size, kKeyUniverse, key_rng);
            const auto accum = detail::parallel_trials<Accum>(
                cfg.trials, cfg.threads, [&](std::uint64_t t, Accum& acc) {
                    if (acc.counts.empty()) acc.counts.assign(cells, 0);
                    UniformParams p;
                    p.n = n;
                    p.eps = cfg.eps;
                    p.delta = cfg.delta;
                    p.s = s;
                    p.k = cfg.k;
                    p.w = cfg.w;
                    p.seed = detail::trial_seed(cfg.seed, "uniformity", n, s, t);
                    const UniformDS ds = UniformDS::build(p);
                    std::uint64_t tuple = 0;
                    for (std::size_t i = 0; i < keys.size(); ++i)
                        tuple |= ds.eval(keys[i]) << (cfg.w * i);
                    ++acc.counts[tuple];
                });
            UniformityOutcome o;
            o.cells = cells;
            o.chi2 = chi_square_uniform(accum.counts);
            o.critical = chi_square_critical(cells - 1, 1e-3);
            ResultRow row;
            row.experiment = "uniformity";
            row.n = n;
            row.s = s;
            row.source = to_string(HashSourceKind::zfamily);
            row.trials = cfg.trials;
            row.failures = o.chi2 > o.critical ? 1 : 0;
            row.rate = static_cast<double>(row.failures);
            row.ci_lo = 0.0;
            row.ci_hi = 1.0;
            row.wall_ms = watch.elapsed_ms();
            o.row = std::move(row);
            out.push_back(std::move(o));
        }
    }
    return out;
}

struct OracleReport {
    std::uint64_t instances = 0;
    std::uint64_t checks = 0;
    std::uint64_t mismatches = 0;
    std::uint64_t first_bad_seed = 0;
    std::vector<std::string> messages;
    bool ok() const noexcept { return mismatches == 0; }
};

// Cross-checks the closed-form excess against brute force, stash feasibility
// against the excess threshold, and complete-insertion stash occupancy
// against the graph excess, on random small instances.
inline OracleReport run_oracle_suite(const ExperimentConfig& cfg) {
    struct Accum {
        std::uint64_t checks = 0;
        std::uint64_t mismatches = 0;
        std::uint64_t first_bad_seed = 0;
        std::vector<std::string> messages;
        void note(std::uint64_t seed, const std::string& msg) {
            if (mismatches == 0) first_bad_seed = seed;
            ++mismatches;
            if (messages.size() < 8) messages.push_back(msg);
        }
        void merge(const Accum& o) {
            checks += o.checks;
            if (o.mismatches && mismatches == 0) first_bad_seed = o.first_bad_seed;
            mismatches += o.mismatches;
            for (const auto& m : o.messages)
                if (messages.size() < 8) messages.push_back(m);
        }
    };
    const auto accum = detail::parallel_trials<Accum>(
        cfg.trials, cfg.threads, [&](std::uint64_t t, Accum& acc) {
            const std::uint64_t st = detail::trial_seed(cfg.seed, "oracle-suite", 0, 0, t);
            SplitMix64 rng(st);

            // random small multigraph
            const std::uint64_t m = 1 + rng.next_below(6);
            const std::uint64_t n_edges = rng.next_below(13);
            std::vector<CuckooGraph::Edge> edges;
            edges.reserve(n_edges);
            for (std::uint64_t i = 0; i < n_edges; ++i)
                edges.push_back({rng.next_below(m), rng.next_below(m), i});
            const CuckooGraph g(m, std::move(edges));
            const std::int64_t ex = excess(g);
            const std::int64_t exo = excess_oracle(g);
            ++acc.checks;
            if (ex != exo)
                acc.note(st, "excess formula " + std::to_string(ex) + " != oracle " +
                                 std::to_string(exo) + " (seed " + std::to_string(st) + ")");
            for (std::uint64_t s = 0; s <= 2; ++s) {
                ++acc.checks;
                if (feasible_with_stash_oracle(g, s) != (ex <= static_cast<std::int64_t>(s)))
                    acc.note(st, "feasibility mismatch at s=" + std::to_string(s) + " (seed " +
                                     std::to_string(st) + ")");
            }

            // random key set: complete insertion vs graph excess
            const std::uint64_t n_keys = 1 + rng.next_below(12);
            const auto keys = sample_distinct_keys(n_keys, kKeyUniverse, rng);
            TableConfig tc;
            tc.n = n_keys;
            tc.eps = cfg.eps;
            tc.delta = cfg.delta;
            tc.stash_capacity = n_keys;  // roomy: occupancy must equal the excess
            tc.k = cfg.k;
            tc.source = t % 2 ? HashSourceKind::fully_random : HashSourceKind::zfamily;
            tc.seed = derive_seed(st, fnv1a64("table"));
            CuckooTable<std::uint64_t> table(tc);
            for (std::uint64_t x : keys) table.insert_complete(x, x);
            const auto kg = build_graph(keys, table.hash_source());
            const std::int64_t kex = excess(kg);
            ++acc.checks;
            if (static_cast<std::int64_t>(table.stash().size()) != kex)
                acc.note(st, "complete-insertion stash " + std::to_string(table.stash().size()) +
                                 " != excess " + std::to_string(kex) + " (seed " +
                                 std::to_string(st) + ")");
            for (std::uint64_t s = 0; s <= 2; ++s) {
                ++acc.checks;
                if (feasible_with_stash_oracle(kg, s) != (kex <= static_cast<std::int64_t>(s)))
                    acc.note(st, "key-set feasibility mismatch at s=" + std::to_string(s) +
                                     " (seed " + std::to_string(st) + ")");
            }
        });
    OracleReport report;
    report.instances = cfg.trials;
    report.checks = accum.checks;
    report.mismatches = accum.mismatches;
    report.first_bad_seed = accum.first_bad_seed;
    report.messages = accum.messages;
    return report;
}

}  // namespace cuckoo
