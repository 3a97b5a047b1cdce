#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cuckoo/rng.hpp"

namespace cuckoo {

namespace field {

// Default field: the Mersenne prime 2^61 - 1, large enough for 61-bit keys
// and cheap to reduce by folding.
inline constexpr std::uint64_t kMersennePrime = (std::uint64_t{1} << 61) - 1;

inline constexpr std::uint64_t add_mod(std::uint64_t a, std::uint64_t b,
                                       std::uint64_t p) noexcept {
    if (p == kMersennePrime) {
        std::uint64_t s = a + b;  // both < 2^61, no overflow
        s = (s & p) + (s >> 61);
        return s >= p ? s - p : s;
    }
    const std::uint64_t s = a + b;
    return s >= p || s < a ? s - p : s;
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) noexcept {
    const auto z = static_cast<unsigned __int128>(a) * b;
    if (p == kMersennePrime) {
        std::uint64_t s = (static_cast<std::uint64_t>(z) & p) + static_cast<std::uint64_t>(z >> 61);
        s = (s & p) + (s >> 61);
        return s >= p ? s - p : s;
    }
    return static_cast<std::uint64_t>(z % p);
}

}  // namespace field

// One member of the classical polynomial hash family: a degree-(kappa-1)
// polynomial over F_p, reduced to the output range [r] by a final residue.
// Any kappa distinct keys below p receive jointly uniform field values; the
// residue step adds a bias of at most r/p per coordinate, which is < 2^-40
// for the default prime at the ranges used here.
class KWiseHash {
public:
    // Lowest-degree-first coefficients; coefficients[0] is the constant term.
    KWiseHash(std::vector<std::uint64_t> coefficients, std::uint64_t range,
              std::uint64_t prime = field::kMersennePrime)
        : coeffs_(std::move(coefficients)), range_(range), prime_(prime) {
        if (coeffs_.size() < 2) throw std::invalid_argument("KWiseHash: independence must be >= 2");
        if (range_ == 0) throw std::invalid_argument("KWiseHash: empty range");
        if (range_ > prime_) throw std::invalid_argument("KWiseHash: range exceeds field size");
        for (std::uint64_t c : coeffs_)
            if (c >= prime_) throw std::invalid_argument("KWiseHash: coefficient outside field");
    }

    // All kappa coefficients drawn independently uniform over the field.
    static KWiseHash sample(unsigned kappa, std::uint64_t range, SplitMix64& rng,
                            std::uint64_t prime = field::kMersennePrime) {
        if (kappa < 2) throw std::invalid_argument("KWiseHash::sample: independence must be >= 2");
        if (range == 0 || range > prime)
            throw std::invalid_argument("KWiseHash::sample: invalid range");
        std::vector<std::uint64_t> coeffs(kappa);
        for (auto& c : coeffs) c = rng.next_below(prime);
        return KWiseHash(std::move(coeffs), range, prime);
    }

    static KWiseHash sample(unsigned kappa, std::uint64_t range, std::uint64_t seed,
                            std::uint64_t prime = field::kMersennePrime) {
        SplitMix64 rng(seed);
        return sample(kappa, range, rng, prime);
    }

    // Horner evaluation mod p, then residue mod r. Keys at or above p are
    // reduced into the field first (the intended universe is [0, p)).
    std::uint64_t operator()(std::uint64_t x) const noexcept {
        const std::uint64_t xr = x >= prime_ ? x % prime_ : x;
        std::uint64_t h = coeffs_.back();
        for (std::size_t i = coeffs_.size() - 1; i-- > 0;)
            h = field::add_mod(field::mul_mod(h, xr, prime_), coeffs_[i], prime_);
        return h % range_;
    }

    unsigned independence() const noexcept { return static_cast<unsigned>(coeffs_.size()); }
    std::uint64_t range() const noexcept { return range_; }
    std::uint64_t prime() const noexcept { return prime_; }
    const std::vector<std::uint64_t>& coefficients() const noexcept { return coeffs_; }

    bool operator==(const KWiseHash& o) const noexcept {
        return coeffs_ == o.coeffs_ && range_ == o.range_ && prime_ == o.prime_;
    }

private:
    std::vector<std::uint64_t> coeffs_;
    std::uint64_t range_;
    std::uint64_t prime_;
};

}  // namespace cuckoo
