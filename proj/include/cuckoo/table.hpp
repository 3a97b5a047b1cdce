#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cuckoo/hash_pair.hpp"
#include "cuckoo/rational.hpp"
#include "cuckoo/rng.hpp"

namespace cuckoo {

struct TableConfig {
    std::uint64_t n = 0;          // capacity target
    Rational eps{1, 5};           // load slack, > 0
    Rational delta{1, 2};         // table-index exponent, in (0, 1)
    std::uint64_t stash_capacity = 0;
    unsigned k = 1;
    unsigned c = 0;               // 0 -> ceil((s+2)/(delta*k))
    HashSourceKind source = HashSourceKind::zfamily;
    std::uint64_t seed = 0;
    unsigned rehash_retries = 100;
};

struct InsertOutcome {
    enum class Kind : std::uint8_t { placed, stashed, rehashed };
    Kind kind = Kind::placed;
    unsigned rehash_attempts = 0;  // only set for rehashed
    std::uint64_t rounds = 0;      // displacement rounds of this insertion
};

struct TableStats {
    std::uint64_t insertions = 0;
    std::uint64_t total_rounds = 0;
    std::vector<std::uint64_t> round_histogram;  // index = rounds per insertion
    std::uint64_t rehash_count = 0;
    std::uint64_t rehash_attempts = 0;
    std::uint64_t rehash_rounds = 0;  // rounds spent re-inserting during rehashes
    std::uint64_t drain_rounds = 0;   // rounds spent draining the stash after deletes
    std::size_t stash_occupancy = 0;
    std::size_t size = 0;
};

struct RehashExhausted : std::runtime_error {
    RehashExhausted() : std::runtime_error("cuckoo table: rehash retries exhausted") {}
};

// Two-table cuckoo dictionary with a bounded stash. A key lives in exactly
// one of T1[h1(x)], T2[h2(x)], or the stash. Mutations must be externally
// serialized; lookups between mutations are safe to run concurrently.
template <typename Value = std::uint64_t>
class CuckooTable {
public:
    struct Cell {
        std::uint64_t key = 0;
        Value value{};
        bool occupied = false;
    };
    struct Entry {
        std::uint64_t key;
        Value value;
    };

    explicit CuckooTable(const TableConfig& cfg)
        : CuckooTable(cfg, make_source(cfg, derived_m(cfg))) {}

    CuckooTable(const TableConfig& cfg, HashPairSource source)
        : cfg_(cfg), source_(std::move(source)) {
        validate(cfg_);
        m_ = derived_m(cfg_);
        ell_ = pow2_at_least_npow(cfg_.n, cfg_.delta);
        resolved_c_ = cfg_.c ? cfg_.c : recommended_c(cfg_);
        maxloop_ = derived_maxloop(cfg_);
        if (source_.m() != m_)
            throw std::invalid_argument("CuckooTable: hash source range does not match m");
        tables_[0].assign(m_, Cell{});
        tables_[1].assign(m_, Cell{});
        stash_.reserve(cfg_.stash_capacity);
    }

    // --- derived parameters ----------------------------------------------

    static std::uint64_t derived_m(const TableConfig& cfg) {
        return scaled_table_size(cfg.n, cfg.eps);
    }

    // ceil((s+2) / (delta * k)), the smallest c covered by the analysis.
    static unsigned recommended_c(const TableConfig& cfg) {
        const std::uint64_t num = (cfg.stash_capacity + 2) * cfg.delta.den;
        const std::uint64_t den = cfg.delta.num * cfg.k;
        return static_cast<unsigned>((num + den - 1) / den);
    }

    // ceil(3 (s+2) log_{1+eps} n), floored at 8 to guard tiny n.
    static std::uint64_t derived_maxloop(const TableConfig& cfg) {
        const double ln_ratio =
            std::log1p(static_cast<double>(cfg.eps.num) / static_cast<double>(cfg.eps.den));
        const double raw = 3.0 * static_cast<double>(cfg.stash_capacity + 2) *
                           std::log(static_cast<double>(cfg.n)) / ln_ratio;
        const auto loops = static_cast<std::uint64_t>(std::ceil(raw));
        return loops < 8 ? 8 : loops;
    }

    std::uint64_t m() const noexcept { return m_; }
    std::uint64_t ell() const noexcept { return ell_; }
    std::uint64_t maxloop() const noexcept { return maxloop_; }
    unsigned c() const noexcept { return resolved_c_; }
    bool c_below_recommended() const noexcept { return resolved_c_ < recommended_c(cfg_); }
    const TableConfig& config() const noexcept { return cfg_; }
    const HashPairSource& hash_source() const noexcept { return source_; }
    std::size_t size() const noexcept { return size_; }
    const std::vector<Cell>& table(int i) const { return tables_[i == 1 ? 0 : 1]; }
    const std::vector<Entry>& stash() const noexcept { return stash_; }

    // --- dictionary operations --------------------------------------------

    // Algorithm-1 insertion: evict along the two tables for up to maxloop
    // rounds, then stash, then rehash. Re-inserting a present key updates its
    // value in place without displacement.
    InsertOutcome insert(std::uint64_t key, Value value) {
        return insert_bounded(key, std::move(value), maxloop_);
    }

    // Same loop with maxloop = 2*(stored keys + 1) + 4, large enough that a
    // key is stashed only when the eviction walk provably cannot terminate.
    InsertOutcome insert_complete(std::uint64_t key, Value value) {
        return insert_bounded(key, std::move(value), 2 * (size_ + 1) + 4);
    }

    std::optional<Value> lookup(std::uint64_t key) const {
        for (int t = 0; t < 2; ++t) {
            const Cell& cell = tables_[t][source_.h(t + 1, key)];
            if (cell.occupied && cell.key == key) return cell.value;
        }
        for (const Entry& e : stash_)
            if (e.key == key) return e.value;
        return std::nullopt;
    }

    bool contains(std::uint64_t key) const { return lookup(key).has_value(); }

    // Removes the key if present, then tries to re-insert every stashed key
    // into the tables (the freed cell may unblock one of them).
    bool erase(std::uint64_t key) {
        bool removed = false;
        for (int t = 0; t < 2 && !removed; ++t) {
            Cell& cell = tables_[t][source_.h(t + 1, key)];
            if (cell.occupied && cell.key == key) {
                cell = Cell{};
                removed = true;
            }
        }
        if (!removed) {
            for (std::size_t i = 0; i < stash_.size(); ++i) {
                if (stash_[i].key == key) {
                    stash_[i] = stash_.back();
                    stash_.pop_back();
                    removed = true;
                    break;
                }
            }
        }
        if (!removed) return false;
        --size_;
        drain_stash();
        return true;
    }

    // Collects every stored entry, resamples the hash pair, and re-inserts.
    // Gives up after the configured retry bound.
    bool rehash() {
        const unsigned attempts = rehash_collected(collect_entries());
        return attempts > 0;
    }

    TableStats stats() const {
        TableStats s;
        s.insertions = insertions_;
        s.total_rounds = total_rounds_;
        s.round_histogram = round_histogram_;
        s.rehash_count = rehash_count_;
        s.rehash_attempts = rehash_attempts_;
        s.rehash_rounds = rehash_rounds_;
        s.drain_rounds = drain_rounds_;
        s.stash_occupancy = stash_.size();
        s.size = size_;
        return s;
    }

    // Text snapshot of configuration and storage, for debugging.
    void dump(std::ostream& os) const {
        os << "cuckoo-table n=" << cfg_.n << " m=" << m_ << " ell=" << ell_
           << " s=" << cfg_.stash_capacity << " k=" << cfg_.k << " c=" << resolved_c_
           << " maxloop=" << maxloop_ << " source=" << to_string(source_.kind())
           << " seed=" << cfg_.seed << " size=" << size_ << '\n';
        for (int t = 0; t < 2; ++t) {
            os << "T" << (t + 1) << ':';
            for (std::uint64_t i = 0; i < m_; ++i)
                if (tables_[t][i].occupied) os << ' ' << i << "->" << tables_[t][i].key;
            os << '\n';
        }
        os << "stash:";
        for (const Entry& e : stash_) os << ' ' << e.key;
        os << '\n';
    }

private:
    enum class PlaceResult : std::uint8_t { placed, stashed, stuck };

    static void validate(const TableConfig& cfg) {
        if (cfg.n < 1) throw std::invalid_argument("CuckooTable: n must be >= 1");
        if (cfg.eps.num == 0) throw std::invalid_argument("CuckooTable: eps must be > 0");
        if (cfg.delta.num == 0 || cfg.delta.num >= cfg.delta.den)
            throw std::invalid_argument("CuckooTable: delta must be in (0, 1)");
        if (cfg.k < 1) throw std::invalid_argument("CuckooTable: k must be >= 1");
    }

    static HashPairSource make_source(const TableConfig& cfg, std::uint64_t m) {
        validate(cfg);
        const unsigned c = cfg.c ? cfg.c : recommended_c(cfg);
        const std::uint64_t ell = pow2_at_least_npow(cfg.n, cfg.delta);
        const std::uint64_t pair_seed = derive_seed(cfg.seed, fnv1a64("table-pair"));
        return HashPairSource::make(cfg.source, cfg.k, c, ell, m, pair_seed);
    }

    Cell* find_cell(std::uint64_t key) {
        for (int t = 0; t < 2; ++t) {
            Cell& cell = tables_[t][source_.h(t + 1, key)];
            if (cell.occupied && cell.key == key) return &cell;
        }
        return nullptr;
    }

    InsertOutcome insert_bounded(std::uint64_t key, Value value, std::uint64_t maxloop) {
        if (Cell* cell = find_cell(key)) {  // update in place
            cell->value = std::move(value);
            return {InsertOutcome::Kind::placed, 0, 0};
        }
        for (Entry& e : stash_) {
            if (e.key == key) {
                e.value = std::move(value);
                return {InsertOutcome::Kind::placed, 0, 0};
            }
        }

        Entry nestless{key, std::move(value)};
        std::uint64_t rounds = 0;
        const PlaceResult res = eviction_loop(nestless, maxloop, rounds);
        ++insertions_;
        ++size_;
        total_rounds_ += rounds;
        record_rounds(rounds);
        switch (res) {
            case PlaceResult::placed:
                return {InsertOutcome::Kind::placed, 0, rounds};
            case PlaceResult::stashed:
                return {InsertOutcome::Kind::stashed, 0, rounds};
            case PlaceResult::stuck:
                break;
        }
        auto entries = collect_entries();
        entries.push_back(std::move(nestless));
        const unsigned attempts = rehash_collected(std::move(entries));
        if (attempts == 0) throw RehashExhausted{};
        return {InsertOutcome::Kind::rehashed, attempts, rounds};
    }

    // The repeat-maxloop-times body of the insertion procedure, plus the
    // final stash attempt. On `stuck` the caller owns the nestless entry.
    PlaceResult eviction_loop(Entry& nestless, std::uint64_t maxloop, std::uint64_t& rounds) {
        int i = 0;
        for (std::uint64_t loop = 0; loop < maxloop; ++loop) {
            Cell& cell = tables_[i][source_.h(i + 1, nestless.key)];
            ++rounds;
            if (!cell.occupied) {
                cell.key = nestless.key;
                cell.value = std::move(nestless.value);
                cell.occupied = true;
                return PlaceResult::placed;
            }
            std::swap(cell.key, nestless.key);
            std::swap(cell.value, nestless.value);
            i = 1 - i;
        }
        if (stash_.size() < cfg_.stash_capacity) {
            stash_.push_back(std::move(nestless));
            return PlaceResult::stashed;
        }
        return PlaceResult::stuck;
    }

    std::vector<Entry> collect_entries() const {
        std::vector<Entry> entries;
        entries.reserve(size_);
        for (const auto& table : tables_)
            for (const Cell& cell : table)
                if (cell.occupied) entries.push_back({cell.key, cell.value});
        for (const Entry& e : stash_) entries.push_back(e);
        return entries;
    }

    // Returns the number of attempts consumed (1-based), or 0 on exhaustion.
    unsigned rehash_collected(std::vector<Entry> entries) {
        for (unsigned attempt = 1; attempt <= cfg_.rehash_retries; ++attempt) {
            ++rehash_attempts_;
            const std::uint64_t seed =
                derive_seed(cfg_.seed, fnv1a64("rehash"), ++rehash_epoch_);
            source_ = source_.resample(seed);
            tables_[0].assign(m_, Cell{});
            tables_[1].assign(m_, Cell{});
            stash_.clear();
            bool ok = true;
            for (const Entry& e : entries) {
                Entry nestless = e;
                std::uint64_t rounds = 0;
                if (eviction_loop(nestless, maxloop_, rounds) == PlaceResult::stuck) ok = false;
                rehash_rounds_ += rounds;
                if (!ok) break;
            }
            if (ok) {
                ++rehash_count_;
                return attempt;
            }
        }
        return 0;
    }

    void drain_stash() {
        if (stash_.empty()) return;
        std::vector<Entry> pending = std::move(stash_);
        stash_.clear();
        for (Entry& e : pending) {
            std::uint64_t rounds = 0;
            const PlaceResult res = eviction_loop(e, maxloop_, rounds);
            drain_rounds_ += rounds;
            assert(res != PlaceResult::stuck);  // capacity freed above suffices
            (void)res;
        }
    }

    void record_rounds(std::uint64_t rounds) {
        if (round_histogram_.size() <= rounds) round_histogram_.resize(rounds + 1, 0);
        ++round_histogram_[rounds];
    }

    TableConfig cfg_;
    HashPairSource source_;
    std::uint64_t m_ = 0;
    std::uint64_t ell_ = 0;
    std::uint64_t maxloop_ = 0;
    unsigned resolved_c_ = 0;
    std::vector<Cell> tables_[2];
    std::vector<Entry> stash_;
    std::size_t size_ = 0;

    std::uint64_t insertions_ = 0;
    std::uint64_t total_rounds_ = 0;
    std::vector<std::uint64_t> round_histogram_;
    std::uint64_t rehash_count_ = 0;
    std::uint64_t rehash_attempts_ = 0;
    std::uint64_t rehash_rounds_ = 0;
    std::uint64_t drain_rounds_ = 0;
    std::uint64_t rehash_epoch_ = 0;
};

}  // namespace cuckoo
