// CLI harness for the Monte Carlo experiments. Emits one CSV per run; rows
// are reproducible bit-for-bit from (config, seed) apart from the wall_ms
// column.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cuckoo/cuckoo.hpp"

namespace {

struct CommonOpts {
    std::vector<std::uint64_t> n_list{1024};
    std::string eps = "0.2";
    std::string delta = "0.5";
    std::vector<std::uint64_t> stash_list{0};
    unsigned k = 1;
    unsigned c = 0;
    std::uint64_t trials = 1000;
    std::vector<std::uint64_t> trials_list;
    std::string source = "z";
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--n-list", o.n_list, "key-set sizes")->delimiter(',');
    cmd->add_option("--eps", o.eps, "load slack, decimal or p/q (default 0.2)");
    cmd->add_option("--delta", o.delta, "table exponent, decimal or p/q (default 0.5)");
    cmd->add_option("--stash", o.stash_list, "stash sizes")->delimiter(',');
    cmd->add_option("--k", o.k, "half independence parameter (kappa = 2k)");
    cmd->add_option("--c", o.c, "number of g/z components, 0 = ceil((s+2)/(delta k))");
    cmd->add_option("--trials", o.trials, "trials per configuration");
    cmd->add_option("--trials-list", o.trials_list, "per-n trial counts (overrides --trials)")
        ->delimiter(',');
    cmd->add_option("--source", o.source, "hash source")->check(CLI::IsMember({"z", "random"}));
    cmd->add_option("--seed", o.seed, "master seed");
    cmd->add_option("--threads", o.threads, "worker threads, 0 = hardware");
    cmd->add_option("--out", o.out, "CSV output path (default stdout)");
}

cuckoo::ExperimentConfig to_config(const CommonOpts& o) {
    cuckoo::ExperimentConfig cfg;
    cfg.n_list = o.n_list;
    cfg.eps = cuckoo::Rational::parse(o.eps);
    cfg.delta = cuckoo::Rational::parse(o.delta);
    cfg.stash_list = o.stash_list;
    cfg.k = o.k;
    cfg.c = o.c;
    cfg.trials = o.trials;
    cfg.trials_list = o.trials_list;
    cfg.source = o.source == "random" ? cuckoo::HashSourceKind::fully_random
                                      : cuckoo::HashSourceKind::zfamily;
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    return cfg;
}

void emit(const CommonOpts& o, const std::vector<cuckoo::ResultRow>& rows) {
    if (o.out.empty()) {
        cuckoo::write_csv(std::cout, rows);
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot open output file: " + o.out);
    cuckoo::write_csv(f, rows);
    std::cerr << "wrote " << rows.size() << " rows to " << o.out << "\n";
}

void warn_if_c_low(const cuckoo::ExperimentConfig& cfg) {
    if (!cfg.c) return;
    for (std::uint64_t s : cfg.stash_list) {
        const std::uint64_t num = (s + 2) * cfg.delta.den;
        const std::uint64_t den = cfg.delta.num * cfg.k;
        const auto rec = static_cast<unsigned>((num + den - 1) / den);
        if (cfg.c < rec)
            std::cerr << "warning: c=" << cfg.c << " is below ceil((s+2)/(delta k))=" << rec
                      << " for s=" << s << "; the failure bound is not guaranteed\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cuckoo hashing with a stash: experiment harness"};
    app.require_subcommand(1);

    CommonOpts fp, ic, so, un, os;
    std::optional<std::uint64_t> m_override;
    unsigned w = 2;
    std::uint64_t set_size = 4;

    auto* cmd_fp = app.add_subcommand(
        "failure-prob", "Pr(excess >= s+1) of the cuckoo graph over random key sets");
    add_common(cmd_fp, fp);
    cmd_fp->add_option("--m-override", m_override,
                       "force the table side size m (graph-side only)");

    auto* cmd_ic =
        app.add_subcommand("insertion-cost", "displacement rounds per insertion when filling");
    add_common(cmd_ic, ic);

    auto* cmd_so = app.add_subcommand(
        "stash-overflow", "stash overflow and premature-stash frequency at the paper maxloop");
    add_common(cmd_so, so);

    auto* cmd_un = app.add_subcommand(
        "uniformity", "chi-square of the simulated-uniform hash outputs on a fixed key set");
    add_common(cmd_un, un);
    cmd_un->add_option("--w", w, "output word width, R = [2^w]");
    cmd_un->add_option("--set-size", set_size, "|S|, the fixed key-set size");

    auto* cmd_os = app.add_subcommand(
        "oracle-suite", "cross-check excess formula, feasibility, and complete insertion");
    add_common(cmd_os, os);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_fp->parsed()) {
            auto cfg = to_config(fp);
            cfg.m_override = m_override;
            warn_if_c_low(cfg);
            emit(fp, cuckoo::run_failure_prob(cfg));
        } else if (cmd_ic->parsed()) {
            auto cfg = to_config(ic);
            warn_if_c_low(cfg);
            emit(ic, cuckoo::run_insertion_cost(cfg));
        } else if (cmd_so->parsed()) {
            auto cfg = to_config(so);
            warn_if_c_low(cfg);
            emit(so, cuckoo::run_stash_overflow(cfg));
        } else if (cmd_un->parsed()) {
            auto cfg = to_config(un);
            cfg.w = w;
            cfg.set_size = set_size;
            const auto outcomes = cuckoo::run_uniformity(cfg);
            std::vector<cuckoo::ResultRow> rows;
            for (const auto& o : outcomes) {
                std::cerr << "uniformity n=" << o.row.n << " s=" << o.row.s << ": chi2=" << o.chi2
                          << " critical=" << o.critical << " cells=" << o.cells
                          << (o.row.failures ? " REJECT" : " ok") << "\n";
                rows.push_back(o.row);
            }
            emit(un, rows);
        } else if (cmd_os->parsed()) {
            const auto cfg = to_config(os);
            const auto report = cuckoo::run_oracle_suite(cfg);
            std::cout << "oracle-suite: " << report.instances << " instances, " << report.checks
                      << " checks, " << report.mismatches << " mismatches\n";
            for (const auto& msg : report.messages) std::cout << "  mismatch: " << msg << "\n";
            if (!report.ok()) {
                std::cout << "reproduce with per-instance seed " << report.first_bad_seed << "\n";
                return 1;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
