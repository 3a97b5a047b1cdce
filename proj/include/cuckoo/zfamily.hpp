#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cuckoo/kwise_hash.hpp"
#include "cuckoo/rng.hpp"

namespace cuckoo {

struct PairValue {
    std::uint64_t h1;
    std::uint64_t h2;
};

// How a hash pair relates to a key set T via its deficiency d_T:
// bad (d_T > k), critical (d_T == k), good (d_T < k).
enum class SetClass : std::uint8_t { good, crit, bad };

// A sampled member of the two-function family built from 2k-wise independent
// polynomials and c random lookup tables per side:
//
//   h_i(x) = (f_i(x) + sum_j z_j[i][g_j(x)]) mod m,   i in {1,2}
//
// f1, f2 have range m; g_1..g_c have range ell; each of the 2c tables holds
// ell entries from [m].
class ZHashPair {
public:
    ZHashPair(unsigned k, KWiseHash f1, KWiseHash f2, std::vector<KWiseHash> g,
              std::vector<std::vector<std::uint64_t>> z1,
              std::vector<std::vector<std::uint64_t>> z2)
        : k_(k),
          f1_(std::move(f1)),
          f2_(std::move(f2)),
          g_(std::move(g)),
          z_{std::move(z1), std::move(z2)} {
        if (k_ < 1) throw std::invalid_argument("ZHashPair: k must be >= 1");
        if (g_.empty()) throw std::invalid_argument("ZHashPair: c must be >= 1");
        m_ = f1_.range();
        ell_ = g_.front().range();
        const unsigned kappa = 2 * k_;
        if (f1_.independence() != kappa || f2_.independence() != kappa || f2_.range() != m_)
            throw std::invalid_argument("ZHashPair: f components inconsistent");
        for (const auto& gj : g_)
            if (gj.independence() != kappa || gj.range() != ell_)
                throw std::invalid_argument("ZHashPair: g components inconsistent");
        for (const auto& side : z_) {
            if (side.size() != g_.size()) throw std::invalid_argument("ZHashPair: table count");
            for (const auto& table : side) {
                if (table.size() != ell_) throw std::invalid_argument("ZHashPair: table length");
                for (std::uint64_t v : table)
                    if (v >= m_) throw std::invalid_argument("ZHashPair: table entry out of range");
            }
        }
    }

    static ZHashPair sample(unsigned k, unsigned c, std::uint64_t ell, std::uint64_t m,
                            std::uint64_t seed) {
        if (k < 1 || c < 1) throw std::invalid_argument("ZHashPair::sample: k and c must be >= 1");
        if (ell < 1 || m < 1) throw std::invalid_argument("ZHashPair::sample: ell and m must be >= 1");
        SplitMix64 rng(seed);
        const unsigned kappa = 2 * k;
        KWiseHash f1 = KWiseHash::sample(kappa, m, rng);
        KWiseHash f2 = KWiseHash::sample(kappa, m, rng);
        std::vector<KWiseHash> g;
        g.reserve(c);
        for (unsigned j = 0; j < c; ++j) g.push_back(KWiseHash::sample(kappa, ell, rng));
        auto draw_tables = [&] {
            std::vector<std::vector<std::uint64_t>> side(c);
            for (auto& table : side) {
                table.resize(ell);
                for (auto& v : table) v = rng.next_below(m);
            }
            return side;
        };
        auto z1 = draw_tables();
        auto z2 = draw_tables();
        return ZHashPair(k, std::move(f1), std::move(f2), std::move(g), std::move(z1),
                         std::move(z2));
    }

    PairValue operator()(std::uint64_t x) const noexcept { return eval(x); }

    PairValue eval(std::uint64_t x) const noexcept {
        PairValue out{};
        out.h1 = eval_side(0, x, nullptr);
        out.h2 = eval_side(1, x, nullptr);
        return out;
    }

    // h_i(x) for i in {1, 2}.
    std::uint64_t h(int i, std::uint64_t x) const noexcept {
        return eval_side(i == 1 ? 0 : 1, x, nullptr);
    }

    // Like eval, but also reports the g_j(x) values computed while summing
    // the second side, so callers can reuse them for their own table reads.
    PairValue eval_with_g(std::uint64_t x, std::span<std::uint64_t> g_out) const {
        if (g_out.size() < g_.size())
            throw std::invalid_argument("ZHashPair::eval_with_g: output span too small");
        PairValue out{};
        out.h1 = eval_side(0, x, nullptr);
        out.h2 = eval_side(1, x, g_out.data());
        return out;
    }

    // |T| - max{k, |g_1(T)|, ..., |g_c(T)|}; may be negative.
    std::int64_t deficiency(std::span<const std::uint64_t> keys) const {
        std::uint64_t best = k_;
        for (const auto& gj : g_) {
            std::set<std::uint64_t> image;
            for (std::uint64_t x : keys) image.insert(gj(x));
            if (image.size() > best) best = image.size();
        }
        return static_cast<std::int64_t>(keys.size()) - static_cast<std::int64_t>(best);
    }

    SetClass classify(std::span<const std::uint64_t> keys) const {
        const std::int64_t d = deficiency(keys);
        const auto k = static_cast<std::int64_t>(k_);
        if (d > k) return SetClass::bad;
        if (d == k) return SetClass::crit;
        return SetClass::good;
    }

    unsigned k() const noexcept { return k_; }
    unsigned c() const noexcept { return static_cast<unsigned>(g_.size()); }
    std::uint64_t ell() const noexcept { return ell_; }
    std::uint64_t m() const noexcept { return m_; }
    const KWiseHash& f(int i) const { return i == 1 ? f1_ : f2_; }
    const KWiseHash& g(unsigned j) const { return g_.at(j); }
    const std::vector<std::uint64_t>& z_table(int i, unsigned j) const {
        return z_[i == 1 ? 0 : 1].at(j);
    }

    // Flat little-endian 64-bit word layout: parameters, then f/g coefficient
    // vectors, then the 2c tables.
    std::vector<std::uint64_t> serialize_words() const {
        std::vector<std::uint64_t> w;
        w.push_back(k_);
        w.push_back(c());
        w.push_back(ell_);
        w.push_back(m_);
        w.push_back(f1_.prime());
        auto put_fn = [&w](const KWiseHash& h) {
            for (std::uint64_t cf : h.coefficients()) w.push_back(cf);
        };
        put_fn(f1_);
        put_fn(f2_);
        for (const auto& gj : g_) put_fn(gj);
        for (const auto& side : z_)
            for (const auto& table : side)
                for (std::uint64_t v : table) w.push_back(v);
        return w;
    }

    std::vector<std::byte> serialize() const {
        const auto words = serialize_words();
        std::vector<std::byte> bytes;
        bytes.reserve(words.size() * 8);
        for (std::uint64_t w : words)
            for (int b = 0; b < 8; ++b) bytes.push_back(std::byte((w >> (8 * b)) & 0xff));
        return bytes;
    }

    static ZHashPair deserialize(std::span<const std::byte> bytes) {
        if (bytes.size() % 8 != 0)
            throw std::invalid_argument("ZHashPair::deserialize: truncated input");
        std::vector<std::uint64_t> w(bytes.size() / 8);
        for (std::size_t i = 0; i < w.size(); ++i) {
            std::uint64_t v = 0;
            for (int b = 0; b < 8; ++b)
                v |= static_cast<std::uint64_t>(std::to_integer<std::uint8_t>(bytes[8 * i + b]))
                     << (8 * b);
            w[i] = v;
        }
        return from_words(w);
    }

    static ZHashPair from_words(std::span<const std::uint64_t> w) {
        std::size_t at = 0;
        auto take = [&](std::size_t count) {
            if (at + count > w.size())
                throw std::invalid_argument("ZHashPair::deserialize: truncated input");
            std::span<const std::uint64_t> s = w.subspan(at, count);
            at += count;
            return s;
        };
        const auto header = take(5);
        const auto k = static_cast<unsigned>(header[0]);
        const auto c = static_cast<unsigned>(header[1]);
        const std::uint64_t ell = header[2], m = header[3], prime = header[4];
        if (k < 1 || c < 1) throw std::invalid_argument("ZHashPair::deserialize: bad parameters");
        const unsigned kappa = 2 * k;
        auto take_fn = [&](std::uint64_t range) {
            const auto cs = take(kappa);
            return KWiseHash(std::vector<std::uint64_t>(cs.begin(), cs.end()), range, prime);
        };
        KWiseHash f1 = take_fn(m);
        KWiseHash f2 = take_fn(m);
        std::vector<KWiseHash> g;
        g.reserve(c);
        for (unsigned j = 0; j < c; ++j) g.push_back(take_fn(ell));
        auto take_side = [&] {
            std::vector<std::vector<std::uint64_t>> side(c);
            for (auto& table : side) {
                const auto tv = take(ell);
                table.assign(tv.begin(), tv.end());
            }
            return side;
        };
        auto z1 = take_side();
        auto z2 = take_side();
        if (at != w.size()) throw std::invalid_argument("ZHashPair::deserialize: trailing data");
        return ZHashPair(k, std::move(f1), std::move(f2), std::move(g), std::move(z1),
                         std::move(z2));
    }

private:
    // side 0 -> h1, side 1 -> h2; writes g_j(x) into g_out when non-null.
    std::uint64_t eval_side(int side, std::uint64_t x, std::uint64_t* g_out) const noexcept {
        std::uint64_t h = (side == 0 ? f1_ : f2_)(x);
        for (std::size_t j = 0; j < g_.size(); ++j) {
            const std::uint64_t u = g_[j](x);
            if (g_out) g_out[j] = u;
            h += z_[side][j][u];
            if (h >= m_) h -= m_;
        }
        return h;
    }

    unsigned k_;
    KWiseHash f1_;
    KWiseHash f2_;
    std::vector<KWiseHash> g_;
    std::vector<std::vector<std::uint64_t>> z_[2];
    std::uint64_t ell_ = 0;
    std::uint64_t m_ = 0;
};

}  // namespace cuckoo
