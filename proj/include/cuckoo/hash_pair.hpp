#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <variant>

#include "cuckoo/zfamily.hpp"

namespace cuckoo {

enum class HashSourceKind : std::uint8_t { zfamily, fully_random };

inline const char* to_string(HashSourceKind kind) noexcept {
    return kind == HashSourceKind::zfamily ? "z" : "random";
}

// Reference pair of "fully random" hash functions: each key's value pair is
// derived counter-style from (seed, key), so repeated queries agree and no
// memo table or lock is needed. Distinct keys get independent-looking 64-bit
// draws mapped onto [m] by multiply-shift (bias <= m / 2^64).
class RandomHashPair {
public:
    RandomHashPair(std::uint64_t m, std::uint64_t seed) : m_(m), seed_(seed) {
        if (m == 0) throw std::invalid_argument("RandomHashPair: m must be >= 1");
    }

    PairValue operator()(std::uint64_t x) const noexcept { return {h(1, x), h(2, x)}; }

    std::uint64_t h(int i, std::uint64_t x) const noexcept {
        return map_to_m(derive_seed(seed_, x, static_cast<std::uint64_t>(i)));
    }

    std::uint64_t m() const noexcept { return m_; }
    std::uint64_t seed() const noexcept { return seed_; }

private:
    std::uint64_t map_to_m(std::uint64_t r) const noexcept {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(r) * m_) >> 64);
    }

    std::uint64_t m_;
    std::uint64_t seed_;
};

// Tagged choice between a sampled Z-family pair and the fully-random
// baseline. Immutable once constructed; resample() returns a fresh source
// with the same shape parameters and a new seed.
class HashPairSource {
public:
    struct ZParams {
        unsigned k;
        unsigned c;
        std::uint64_t ell;
        std::uint64_t m;
    };

    static HashPairSource make_z(unsigned k, unsigned c, std::uint64_t ell, std::uint64_t m,
                                 std::uint64_t seed) {
        return HashPairSource(ZHashPair::sample(k, c, ell, m, seed), ZParams{k, c, ell, m});
    }

    static HashPairSource make_random(std::uint64_t m, std::uint64_t seed) {
        return HashPairSource(RandomHashPair(m, seed));
    }

    static HashPairSource make(HashSourceKind kind, unsigned k, unsigned c, std::uint64_t ell,
                               std::uint64_t m, std::uint64_t seed) {
        return kind == HashSourceKind::zfamily ? make_z(k, c, ell, m, seed)
                                               : make_random(m, seed);
    }

    explicit HashPairSource(ZHashPair pair)
        : HashPairSource(std::move(pair), ZParams{}) {
        const auto& z = std::get<ZHashPair>(impl_);
        zparams_ = ZParams{z.k(), z.c(), z.ell(), z.m()};
    }

    explicit HashPairSource(RandomHashPair pair) : impl_(std::move(pair)) {}

    PairValue operator()(std::uint64_t x) const noexcept {
        if (const auto* z = std::get_if<ZHashPair>(&impl_)) return (*z)(x);
        return std::get<RandomHashPair>(impl_)(x);
    }

    std::uint64_t h(int i, std::uint64_t x) const noexcept {
        if (const auto* z = std::get_if<ZHashPair>(&impl_)) return z->h(i, x);
        return std::get<RandomHashPair>(impl_).h(i, x);
    }

    HashSourceKind kind() const noexcept {
        return std::holds_alternative<ZHashPair>(impl_) ? HashSourceKind::zfamily
                                                        : HashSourceKind::fully_random;
    }

    std::uint64_t m() const noexcept {
        if (const auto* z = std::get_if<ZHashPair>(&impl_)) return z->m();
        return std::get<RandomHashPair>(impl_).m();
    }

    HashPairSource resample(std::uint64_t seed) const {
        if (kind() == HashSourceKind::fully_random) return make_random(m(), seed);
        return make_z(zparams_.k, zparams_.c, zparams_.ell, zparams_.m, seed);
    }

    const ZHashPair& zpair() const {
        if (const auto* z = std::get_if<ZHashPair>(&impl_)) return *z;
        throw std::logic_error("HashPairSource: not a Z-family pair");
    }

private:
    HashPairSource(ZHashPair pair, ZParams params)
        : impl_(std::move(pair)), zparams_(params) {}

    std::variant<ZHashPair, RandomHashPair> impl_;
    ZParams zparams_{};
};

}  // namespace cuckoo
