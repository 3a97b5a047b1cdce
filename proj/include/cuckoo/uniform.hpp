#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cuckoo/rational.hpp"
#include "cuckoo/rng.hpp"
#include "cuckoo/zfamily.hpp"

namespace cuckoo {

// 2k-wise independent map from U into R = [2^w], built from field
// polynomials. A single polynomial covers w <= 32 bits (residue bias at most
// 2^w / p); wider outputs concatenate two independent 32/(w-32)-bit halves.
class RWordHash {
public:
    RWordHash(unsigned w, KWiseHash lo, std::optional<KWiseHash> hi)
        : w_(w), lo_(std::move(lo)), hi_(std::move(hi)) {
        if (w_ < 1 || w_ > 64) throw std::invalid_argument("RWordHash: w must be in [1, 64]");
        if ((w_ > 32) != hi_.has_value())
            throw std::invalid_argument("RWordHash: high half must be present exactly for w > 32");
    }

    static RWordHash sample(unsigned kappa, unsigned w, SplitMix64& rng) {
        if (w < 1 || w > 64) throw std::invalid_argument("RWordHash: w must be in [1, 64]");
        if (w <= 32) return RWordHash(w, KWiseHash::sample(kappa, std::uint64_t{1} << w, rng), {});
        KWiseHash lo = KWiseHash::sample(kappa, std::uint64_t{1} << 32, rng);
        KWiseHash hi = KWiseHash::sample(kappa, std::uint64_t{1} << (w - 32), rng);
        return RWordHash(w, std::move(lo), std::move(hi));
    }

    std::uint64_t operator()(std::uint64_t x) const noexcept {
        std::uint64_t v = lo_(x);
        if (hi_) v |= (*hi_)(x) << 32;
        return v;
    }

    unsigned w() const noexcept { return w_; }
    const KWiseHash& lo() const noexcept { return lo_; }
    const std::optional<KWiseHash>& hi() const noexcept { return hi_; }

private:
    unsigned w_;
    KWiseHash lo_;
    std::optional<KWiseHash> hi_;
};

struct UniformParams {
    std::uint64_t n = 0;
    Rational eps{1, 4};
    Rational delta{1, 2};
    std::uint64_t s = 0;  // stash parameter of the failure bound
    unsigned k = 1;
    unsigned w = 16;      // R = [2^w]
    std::uint64_t seed = 0;
};

struct EvalCost {
    unsigned fn_evals = 0;     // component-function evaluations
    unsigned table_reads = 0;  // reads from the R-word tables t1, t2, y_j
};

struct MemoryReport {
    std::uint64_t t_words = 0;           // |t1| + |t2| words from R
    std::uint64_t y_words = 0;           // c * ell words from R
    std::uint64_t r_words_total = 0;
    std::uint64_t z_words = 0;           // 2c * ell entries from [m] inside the pair
    std::uint64_t function_count = 0;    // f1, f2, g_1..g_c, f
    std::uint64_t coefficient_words = 0;
};

// Simulated uniform hash function U -> R = [2^w] under bitwise XOR:
//
//   h(x) = t1[h1(x)] ^ t2[h2(x)] ^ f(x) ^ y_1[g_1(x)] ^ ... ^ y_c[g_c(x)]
//
// with (h1,h2) a sampled Z-family pair, t1,t2 in R^m, y_j in R^ell, and f a
// 2k-wise independent map into R. Immutable after construction; evaluation
// is safe from many threads.
class UniformDS {
public:
    static UniformDS build(const UniformParams& p) {
        validate(p);
        const std::uint64_t m = scaled_table_size(p.n, p.eps);
        const std::uint64_t ell = pow2_at_least_npow(p.n, p.delta);
        const unsigned c = derived_c(p);
        ZHashPair pair =
            ZHashPair::sample(p.k, c, ell, m, derive_seed(p.seed, fnv1a64("uniform-pair")));
        SplitMix64 rng(derive_seed(p.seed, fnv1a64("uniform-tables")));
        const std::uint64_t mask = p.w == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << p.w) - 1;
        auto draw_table = [&](std::uint64_t len) {
            std::vector<std::uint64_t> t(len);
            for (auto& v : t) v = rng.next() & mask;
            return t;
        };
        std::vector<std::uint64_t> t1 = draw_table(m);
        std::vector<std::uint64_t> t2 = draw_table(m);
        std::vector<std::vector<std::uint64_t>> ys(c);
        for (auto& y : ys) y = draw_table(ell);
        RWordHash f = RWordHash::sample(2 * p.k, p.w, rng);
        return UniformDS(p, std::move(pair), std::move(t1), std::move(t2), std::move(ys),
                         std::move(f));
    }

    // Component injection, used by tests and deserialization.
    UniformDS(UniformParams params, ZHashPair pair, std::vector<std::uint64_t> t1,
              std::vector<std::uint64_t> t2, std::vector<std::vector<std::uint64_t>> ys,
              RWordHash f)
        : params_(params),
          pair_(std::move(pair)),
          t1_(std::move(t1)),
          t2_(std::move(t2)),
          ys_(std::move(ys)),
          f_(std::move(f)) {
        validate(params_);
        if (f_.w() != params_.w) throw std::invalid_argument("UniformDS: f range mismatch");
        if (t1_.size() != pair_.m() || t2_.size() != pair_.m())
            throw std::invalid_argument("UniformDS: t-table size mismatch");
        if (ys_.size() != pair_.c()) throw std::invalid_argument("UniformDS: y-table count");
        const std::uint64_t bound = params_.w == 64 ? ~std::uint64_t{0}
                                                    : (std::uint64_t{1} << params_.w) - 1;
        auto check = [&](const std::vector<std::uint64_t>& t) {
            for (std::uint64_t v : t)
                if (v > bound) throw std::invalid_argument("UniformDS: entry outside R");
        };
        check(t1_);
        check(t2_);
        for (const auto& y : ys_) {
            if (y.size() != pair_.ell()) throw std::invalid_argument("UniformDS: y-table size");
            check(y);
        }
    }

    std::uint64_t eval(std::uint64_t x) const {
        EvalCost cost;
        return eval(x, cost);
    }

    // The pair evaluation computes f1, f2 and each g_j once per side; the
    // g values from the second side are reused for the y-table reads.
    std::uint64_t eval(std::uint64_t x, EvalCost& cost) const {
        std::vector<std::uint64_t> g(ys_.size());
        const PairValue h = pair_.eval_with_g(x, g);
        cost.fn_evals += 2 + 2 * static_cast<unsigned>(ys_.size());
        std::uint64_t r = t1_[h.h1] ^ t2_[h.h2];
        cost.table_reads += 2;
        r ^= f_(x);
        cost.fn_evals += 1;
        for (std::size_t j = 0; j < ys_.size(); ++j) {
            r ^= ys_[j][g[j]];
            ++cost.table_reads;
        }
        return r;
    }

    std::uint64_t operator()(std::uint64_t x) const { return eval(x); }

    const UniformParams& params() const noexcept { return params_; }
    const ZHashPair& pair() const noexcept { return pair_; }
    const std::vector<std::uint64_t>& t1() const noexcept { return t1_; }
    const std::vector<std::uint64_t>& t2() const noexcept { return t2_; }
    const std::vector<std::vector<std::uint64_t>>& y_tables() const noexcept { return ys_; }
    const RWordHash& f() const noexcept { return f_; }
    unsigned c() const noexcept { return static_cast<unsigned>(ys_.size()); }
    std::uint64_t m() const noexcept { return pair_.m(); }
    std::uint64_t ell() const noexcept { return pair_.ell(); }
    unsigned w() const noexcept { return params_.w; }

    static unsigned derived_c(const UniformParams& p) {
        const std::uint64_t num = (p.s + 2) * p.delta.den;
        const std::uint64_t den = p.delta.num * p.k;
        return static_cast<unsigned>((num + den - 1) / den);
    }

    MemoryReport memory_report() const {
        MemoryReport r;
        r.t_words = t1_.size() + t2_.size();
        if (r.t_words != 2 * scaled_table_size(params_.n, params_.eps))
            throw std::logic_error("UniformDS: t-table word count violates 2*ceil((1+eps)n)");
        for (const auto& y : ys_) r.y_words += y.size();
        r.r_words_total = r.t_words + r.y_words;
        r.z_words = 2 * static_cast<std::uint64_t>(pair_.c()) * pair_.ell();
        r.function_count = 2 + pair_.c() + 1;
        r.coefficient_words =
            static_cast<std::uint64_t>(2 + pair_.c()) * (2 * params_.k) + f_.lo().independence() +
            (f_.hi() ? f_.hi()->independence() : 0);
        return r;
    }

    // Flat little-endian layout: parameter header, the serialized pair, then
    // t1, t2, the y tables, and the f coefficient vectors.
    std::vector<std::byte> serialize() const {
        std::vector<std::uint64_t> w;
        w.push_back(params_.n);
        w.push_back(params_.eps.num);
        w.push_back(params_.eps.den);
        w.push_back(params_.delta.num);
        w.push_back(params_.delta.den);
        w.push_back(params_.w);
        w.push_back(pair_.c());
        w.push_back(params_.k);
        w.push_back(params_.s);
        w.push_back(params_.seed);
        const auto pair_words = pair_.serialize_words();
        w.push_back(pair_words.size());
        w.insert(w.end(), pair_words.begin(), pair_words.end());
        w.insert(w.end(), t1_.begin(), t1_.end());
        w.insert(w.end(), t2_.begin(), t2_.end());
        for (const auto& y : ys_) w.insert(w.end(), y.begin(), y.end());
        w.push_back(f_.hi() ? 2 : 1);
        w.push_back(f_.lo().prime());
        for (std::uint64_t cf : f_.lo().coefficients()) w.push_back(cf);
        if (f_.hi())
            for (std::uint64_t cf : f_.hi()->coefficients()) w.push_back(cf);

        std::vector<std::byte> bytes;
        bytes.reserve(w.size() * 8);
        for (std::uint64_t v : w)
            for (int b = 0; b < 8; ++b) bytes.push_back(std::byte((v >> (8 * b)) & 0xff));
        return bytes;
    }

    static UniformDS deserialize(std::span<const std::byte> bytes) {
        if (bytes.size() % 8 != 0)
            throw std::invalid_argument("UniformDS::deserialize: truncated input");
        std::vector<std::uint64_t> w(bytes.size() / 8);
        for (std::size_t i = 0; i < w.size(); ++i) {
            std::uint64_t v = 0;
            for (int b = 0; b < 8; ++b)
                v |= static_cast<std::uint64_t>(std::to_integer<std::uint8_t>(bytes[8 * i + b]))
                     << (8 * b);
            w[i] = v;
        }
        std::size_t at = 0;
        auto take = [&](std::size_t count) {
            if (at + count > w.size())
                throw std::invalid_argument("UniformDS::deserialize: truncated input");
            std::span<const std::uint64_t> s(w.data() + at, count);
            at += count;
            return s;
        };
        const auto header = take(10);
        UniformParams p;
        p.n = header[0];
        p.eps = Rational{header[1], header[2]};
        p.delta = Rational{header[3], header[4]};
        p.w = static_cast<unsigned>(header[5]);
        const auto c = static_cast<unsigned>(header[6]);
        p.k = static_cast<unsigned>(header[7]);
        p.s = header[8];
        p.seed = header[9];
        const std::uint64_t n_pair_words = take(1)[0];
        ZHashPair pair = ZHashPair::from_words(take(n_pair_words));
        const std::uint64_t m = pair.m(), ell = pair.ell();
        auto take_vec = [&](std::uint64_t len) {
            const auto s = take(len);
            return std::vector<std::uint64_t>(s.begin(), s.end());
        };
        auto t1 = take_vec(m);
        auto t2 = take_vec(m);
        std::vector<std::vector<std::uint64_t>> ys(c);
        for (auto& y : ys) y = take_vec(ell);
        const std::uint64_t n_polys = take(1)[0];
        const std::uint64_t prime = take(1)[0];
        const unsigned kappa = 2 * p.k;
        auto take_poly = [&](std::uint64_t range) {
            const auto cs = take(kappa);
            return KWiseHash(std::vector<std::uint64_t>(cs.begin(), cs.end()), range, prime);
        };
        std::optional<KWiseHash> hi;
        KWiseHash lo = take_poly(p.w <= 32 ? std::uint64_t{1} << p.w : std::uint64_t{1} << 32);
        if (n_polys == 2) hi = take_poly(std::uint64_t{1} << (p.w - 32));
        if (at != w.size()) throw std::invalid_argument("UniformDS::deserialize: trailing data");
        return UniformDS(p, std::move(pair), std::move(t1), std::move(t2), std::move(ys),
                         RWordHash(p.w, std::move(lo), std::move(hi)));
    }

private:
    static void validate(const UniformParams& p) {
        if (p.n < 1) throw std::invalid_argument("UniformDS: n must be >= 1");
        if (p.eps.num == 0) throw std::invalid_argument("UniformDS: eps must be > 0");
        if (p.delta.num == 0 || p.delta.num >= p.delta.den)
            throw std::invalid_argument("UniformDS: delta must be in (0, 1)");
        if (p.k < 1) throw std::invalid_argument("UniformDS: k must be >= 1");
        if (p.w < 1 || p.w > 64) throw std::invalid_argument("UniformDS: w must be in [1, 64]");
    }

    UniformParams params_;
    ZHashPair pair_;
    std::vector<std::uint64_t> t1_;
    std::vector<std::uint64_t> t2_;
    std::vector<std::vector<std::uint64_t>> ys_;
    RWordHash f_;
};

}  // namespace cuckoo
