// Acceptance suite: runs every shipped claim end to end and prints one
// PASS/FAIL line per criterion. Exit status is the number of failures.
//
//   cuckoo_acceptance [--threads N] [--only 1,4,5]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cuckoo/cuckoo.hpp"

using namespace cuckoo;

namespace {

unsigned g_threads = 0;

struct Outcome {
    int id;
    bool pass;
    std::string detail;
    double seconds;
};

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

// --- criterion 1: excess formula vs exhaustive oracle ----------------------

Outcome criterion_excess_formula() {
    const std::uint64_t instances = 5000;
    SplitMix64 rng(0xAC01);
    std::uint64_t matched = 0;
    for (std::uint64_t i = 0; i < instances; ++i) {
        const std::uint64_t m = 1 + rng.next_below(6);
        const std::uint64_t e = rng.next_below(13);
        std::vector<CuckooGraph::Edge> edges;
        for (std::uint64_t j = 0; j < e; ++j)
            edges.push_back({rng.next_below(m), rng.next_below(m), j});
        const CuckooGraph g(m, std::move(edges));
        if (excess(g) == excess_oracle(g)) ++matched;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "excess == oracle on %llu/%llu random multigraphs",
                  (unsigned long long)matched, (unsigned long long)instances);
    return {1, matched == instances, buf, 0};
}

// --- criterion 2: storability <=> excess <= s ------------------------------

Outcome criterion_feasibility() {
    const std::uint64_t instances = 2000;
    SplitMix64 rng(0xAC02);
    std::uint64_t matched = 0, total = 0;
    for (std::uint64_t i = 0; i < instances; ++i) {
        const std::uint64_t m = 1 + rng.next_below(6);
        const std::uint64_t e = rng.next_below(13);
        std::vector<CuckooGraph::Edge> edges;
        for (std::uint64_t j = 0; j < e; ++j)
            edges.push_back({rng.next_below(m), rng.next_below(m), j});
        const CuckooGraph g(m, std::move(edges));
        const std::int64_t ex = excess(g);
        for (std::uint64_t s = 0; s <= 2; ++s) {
            ++total;
            if (feasible_with_stash_oracle(g, s) == (ex <= (std::int64_t)s)) ++matched;
        }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "feasible(g,s) == (excess <= s) on %llu/%llu checks",
                  (unsigned long long)matched, (unsigned long long)total);
    return {2, matched == total, buf, 0};
}

// --- criterion 3: complete insertion stash == excess, order invariant ------

Outcome criterion_complete_insertion() {
    const std::uint64_t instances = 1000;
    SplitMix64 rng(0xAC03);
    std::mt19937_64 shuffler(0xAC03);
    std::uint64_t matched = 0, shuffles_ok = 0, shuffles_total = 0;
    for (std::uint64_t i = 0; i < instances; ++i) {
        const std::uint64_t n = 1 + rng.next_below(200);
        auto keys = sample_distinct_keys(n, kKeyUniverse, rng);
        TableConfig tc;
        tc.n = n;
        tc.eps = {1, 5};
        tc.stash_capacity = n;  // never overflows, so no rehash can fire
        tc.source = i % 2 ? HashSourceKind::fully_random : HashSourceKind::zfamily;
        tc.seed = rng.next();
        CuckooTable<std::uint64_t> table(tc);
        for (std::uint64_t x : keys) table.insert_complete(x, x);
        const std::int64_t ex = excess(build_graph(keys, table.hash_source()));
        const auto occupancy = static_cast<std::int64_t>(table.stash().size());
        if (occupancy == ex && table.stats().rehash_count == 0) ++matched;
        for (int sh = 0; sh < 10; ++sh) {
            std::shuffle(keys.begin(), keys.end(), shuffler);
            CuckooTable<std::uint64_t> replay(tc);
            for (std::uint64_t x : keys) replay.insert_complete(x, x);
            ++shuffles_total;
            if (static_cast<std::int64_t>(replay.stash().size()) == occupancy) ++shuffles_ok;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "stash occupancy == excess on %llu/%llu sets; invariant on %llu/%llu shuffles",
                  (unsigned long long)matched, (unsigned long long)instances,
                  (unsigned long long)shuffles_ok, (unsigned long long)shuffles_total);
    return {3, matched == instances && shuffles_ok == shuffles_total, buf, 0};
}

// --- criteria 4/5: failure-rate scaling slopes ------------------------------

Outcome criterion_slope(int id, std::uint64_t s, const std::vector<std::uint64_t>& ns,
                        Rational eps, const std::vector<std::uint64_t>& trials, double lo,
                        double hi, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.n_list = ns;
    cfg.stash_list = {s};
    cfg.eps = eps;
    cfg.trials_list = trials;
    cfg.source = HashSourceKind::fully_random;
    cfg.seed = seed;
    cfg.threads = g_threads;
    const auto rows = run_failure_prob(cfg);
    std::vector<std::uint64_t> xs;
    std::vector<double> rates;
    std::string rates_text;
    for (const auto& r : rows) {
        xs.push_back(r.n);
        rates.push_back(r.rate);
        char item[80];
        std::snprintf(item, sizeof item, " n=%llu:%.3g(%llu/%llu)", (unsigned long long)r.n,
                      r.rate, (unsigned long long)r.failures, (unsigned long long)r.trials);
        rates_text += item;
    }
    for (double r : rates) {
        if (r <= 0.0) {
            return {id, false,
                    "a rate of zero makes the log-log slope undefined;" + rates_text, 0};
        }
    }
    const double slope = log2_slope(xs, rates);
    char buf[320];
    std::snprintf(buf, sizeof buf, "slope %.3f (window [%.2f, %.2f]), eps=%s;%s", slope, lo, hi,
                  eps.str().c_str(), rates_text.c_str());
    return {id, slope >= lo && slope <= hi, buf, 0};
}

// --- criterion 6: Z-family parity with the fully random source -------------

Outcome criterion_z_parity() {
    ExperimentConfig cfg;
    cfg.n_list = {1024};
    cfg.stash_list = {0};
    cfg.eps = {1, 5};
    cfg.delta = {1, 2};
    cfg.k = 1;
    cfg.c = 2;
    cfg.trials = 100000;
    cfg.seed = 0xAC06;
    cfg.threads = g_threads;

    cfg.source = HashSourceKind::zfamily;
    const auto rz = run_failure_prob(cfg).at(0);
    cfg.source = HashSourceKind::fully_random;
    const auto rr = run_failure_prob(cfg).at(0);

    // factor-3 agreement at 95%: the Wilson bounds must not allow a ratio
    // beyond 3 in either direction
    const bool ok = rz.ci_hi <= 3.0 * rr.ci_lo && rr.ci_hi <= 3.0 * rz.ci_lo;
    char buf[192];
    std::snprintf(buf, sizeof buf,
                  "z rate %.3g [%.3g, %.3g] vs random %.3g [%.3g, %.3g] (factor-3 check)",
                  rz.rate, rz.ci_lo, rz.ci_hi, rr.rate, rr.ci_lo, rr.ci_hi);
    return {6, ok, buf, 0};
}

// --- criterion 7: exact pairwise independence by enumeration ---------------

Outcome criterion_pairwise_independence() {
    const std::uint64_t p = 5;
    const std::pair<std::uint64_t, std::uint64_t> key_pairs[] = {{0, 1}, {1, 4}, {2, 3}};
    bool ok = true;
    for (const auto& [x, y] : key_pairs) {
        std::map<std::pair<std::uint64_t, std::uint64_t>, unsigned> hits;
        for (std::uint64_t a = 0; a < p; ++a)
            for (std::uint64_t b = 0; b < p; ++b) {
                const KWiseHash h({b, a}, p, p);
                ++hits[{h(x), h(y)}];
            }
        if (hits.size() != p * p) ok = false;
        for (const auto& [value_pair, count] : hits)
            if (count != 1) ok = false;
    }
    return {7, ok,
            "all 25 degree-1 polynomials over p=r=5 hit each value pair exactly once "
            "for three key pairs",
            0};
}

// --- criterion 8: simulated uniformity chi-square ---------------------------

Outcome criterion_uniformity() {
    ExperimentConfig cfg;
    cfg.n_list = {16};
    cfg.stash_list = {0};
    cfg.eps = {1, 4};
    cfg.delta = {1, 2};
    cfg.w = 2;
    cfg.set_size = 4;
    cfg.trials = 100000;
    cfg.seed = 0xAC08;
    cfg.threads = g_threads;
    const auto outcomes = run_uniformity(cfg);
    const auto& o = outcomes.at(0);
    // chi2.ppf(0.999, 255), frozen
    const double critical = 330.51974363400586;
    char buf[160];
    std::snprintf(buf, sizeof buf, "chi2 %.2f over %llu cells, critical %.2f at 1e-3",
                  o.chi2, (unsigned long long)o.cells, critical);
    return {8, o.cells == 256 && o.chi2 < critical, buf, 0};
}

// --- criterion 9: O(1) insertion cost across sizes --------------------------

Outcome criterion_insertion_cost() {
    ExperimentConfig cfg;
    cfg.stash_list = {1};
    cfg.eps = {1, 5};
    cfg.source = HashSourceKind::fully_random;
    cfg.seed = 0xAC09;
    cfg.threads = g_threads;
    std::vector<double> means;
    std::string text;
    for (std::uint64_t n : {std::uint64_t{1} << 10, std::uint64_t{1} << 12, std::uint64_t{1} << 14}) {
        cfg.n_list = {n};
        cfg.trials = (std::uint64_t{1} << 21) / n;
        const auto row = run_insertion_cost(cfg).at(0);
        means.push_back(row.mean_rounds);
        char item[64];
        std::snprintf(item, sizeof item, " n=%llu:mean=%.3f", (unsigned long long)n,
                      row.mean_rounds);
        text += item;
    }
    const double lo = *std::min_element(means.begin(), means.end());
    const double hi = *std::max_element(means.begin(), means.end());
    const bool ok = hi < 10.0 && hi < 2.0 * lo;
    return {9, ok, "mean displacement rounds" + text + " (need max < 10 and max/min < 2)", 0};
}

// --- criterion 10: premature stashing at the paper maxloop ------------------

Outcome criterion_premature_stash() {
    ExperimentConfig cfg;
    cfg.n_list = {1024};
    cfg.stash_list = {1};
    cfg.eps = {1, 5};
    cfg.source = HashSourceKind::fully_random;
    cfg.trials = 100000;
    cfg.seed = 0xAC0A;
    cfg.threads = g_threads;
    const auto rows = run_stash_overflow(cfg);
    const auto& premature = rows.at(1);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "premature-stash frequency %.4g (%llu/%llu trials; overflow row %.4g)",
                  premature.rate, (unsigned long long)premature.failures,
                  (unsigned long long)premature.trials, rows.at(0).rate);
    return {10, premature.rate < 0.01, buf, 0};
}

// --- criterion 11: memory accounting ----------------------------------------

Outcome criterion_memory() {
    SplitMix64 rng(0xAC0B);
    std::uint64_t matched = 0;
    const std::uint64_t cases = 20;
    for (std::uint64_t i = 0; i < cases; ++i) {
        UniformParams p;
        p.n = 1 + rng.next_below(4096);
        p.eps = {1 + rng.next_below(8), 1 + rng.next_below(8)};
        p.delta = {1, 2 + rng.next_below(3)};
        p.s = rng.next_below(4);
        p.k = 1 + static_cast<unsigned>(rng.next_below(2));
        p.w = 1 + static_cast<unsigned>(rng.next_below(32));
        p.seed = rng.next();
        const UniformDS ds = UniformDS::build(p);
        const auto r = ds.memory_report();
        const bool t_ok = r.t_words == 2 * scaled_table_size(p.n, p.eps);
        const bool y_ok = r.y_words == static_cast<std::uint64_t>(ds.c()) * ds.ell();
        if (t_ok && y_ok) ++matched;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "t1+t2 = 2*ceil((1+eps)n) and y = c*ell words on %llu/%llu parameterizations",
                  (unsigned long long)matched, (unsigned long long)cases);
    return {11, matched == cases, buf, 0};
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--threads") && i + 1 < argc) {
            g_threads = static_cast<unsigned>(std::stoul(argv[++i]));
        } else if (!std::strcmp(argv[i], "--only") && i + 1 < argc) {
            std::string list = argv[++i];
            for (std::size_t pos = 0; pos < list.size();) {
                const auto comma = list.find(',', pos);
                only.insert(std::stoi(list.substr(pos, comma - pos)));
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
        } else {
            std::fprintf(stderr, "usage: %s [--threads N] [--only 1,2,...]\n", argv[0]);
            return 64;
        }
    }

    const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
        {1, criterion_excess_formula},
        {2, criterion_feasibility},
        {3, criterion_complete_insertion},
        {4,
         [] {
             return criterion_slope(4, 0, {256, 512, 1024, 2048}, {1, 5},
                                    {1000000, 1000000, 1000000, 1000000}, -1.5, -0.6, 0xAC04);
         }},
        {5,
         [] {
             return criterion_slope(5, 1, {32, 64, 128, 256}, {4, 5},
                                    {4000000, 8000000, 16000000, 32000000}, -2.8, -1.3, 0xAC05);
         }},
        {6, criterion_z_parity},
        {7, criterion_pairwise_independence},
        {8, criterion_uniformity},
        {9, criterion_insertion_cost},
        {10, criterion_premature_stash},
        {11, criterion_memory},
    };

    int failures = 0;
    for (const auto& [id, fn] : criteria) {
        if (!only.empty() && !only.count(id)) continue;
        const double t0 = now_seconds();
        Outcome out = fn();
        out.seconds = now_seconds() - t0;
        std::printf("[%s] criterion %2d: %s (%.1fs)\n", out.pass ? "PASS" : "FAIL", out.id,
                    out.detail.c_str(), out.seconds);
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    else std::printf("all criteria passed\n");
    return failures;
}
