#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cuckoo {

// Exact nonnegative rational, used for the load slack eps and the table
// exponent delta so that derived sizes and serialized configs are
// bit-reproducible (no decimal-parsing drift between runs).
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    constexpr Rational() = default;
    constexpr Rational(std::uint64_t n, std::uint64_t d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    }

    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }

    Rational reduced() const {
        const std::uint64_t g = std::gcd(num, den);
        return g ? Rational{num / g, den / g} : *this;
    }

    bool operator==(const Rational& o) const noexcept { return num * o.den == o.num * den; }

    // Parses "0.2", "1/5", "2", ".25".
    static Rational parse(std::string_view s) {
        if (s.empty()) throw std::invalid_argument("Rational: empty string");
        if (auto slash = s.find('/'); slash != std::string_view::npos) {
            const std::uint64_t n = std::stoull(std::string(s.substr(0, slash)));
            const std::uint64_t d = std::stoull(std::string(s.substr(slash + 1)));
            return Rational{n, d}.reduced();
        }
        const auto dot = s.find('.');
        if (dot == std::string_view::npos) return Rational{std::stoull(std::string(s)), 1};
        const std::string whole(s.substr(0, dot));
        const std::string frac(s.substr(dot + 1));
        std::uint64_t den = 1;
        for (size_t i = 0; i < frac.size(); ++i) den *= 10;
        const std::uint64_t w = whole.empty() ? 0 : std::stoull(whole);
        const std::uint64_t f = frac.empty() ? 0 : std::stoull(frac);
        return Rational{w * den + f, den}.reduced();
    }

    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

// ceil(n * (1 + eps)) computed exactly in integers.
inline std::uint64_t scaled_table_size(std::uint64_t n, const Rational& eps) {
    const auto wide = static_cast<unsigned __int128>(n) * (eps.den + eps.num);
    return static_cast<std::uint64_t>((wide + eps.den - 1) / eps.den);
}

// Smallest power of two >= n^delta, i.e. smallest 2^e with 2^(e*q) >= n^p
// for delta = p/q. Settled exactly in integers when n^p and 2^(e*q) fit in
// 128 bits; long double only breaks near-ties beyond that range.
inline std::uint64_t pow2_at_least_npow(std::uint64_t n, const Rational& delta) {
    if (n <= 1) return 1;
    const std::uint64_t p = delta.num, q = delta.den;
    const long double target_bits =
        static_cast<long double>(p) * std::log2(static_cast<long double>(n));
    auto ok = [&](std::uint64_t e) -> bool {
        const long double lhs_bits = static_cast<long double>(e) * static_cast<long double>(q);
        if (lhs_bits > target_bits + 1e-9L) return true;
        if (lhs_bits < target_bits - 1e-9L) return false;
        if (target_bits < 127.0L && e * q < 128) {
            unsigned __int128 rhs = 1;
            for (std::uint64_t i = 0; i < p; ++i) rhs *= n;
            const unsigned __int128 lhs = static_cast<unsigned __int128>(1) << (e * q);
            return lhs >= rhs;
        }
        return lhs_bits >= target_bits;
    };
    std::uint64_t e = 0;
    while (!ok(e)) ++e;
    return std::uint64_t{1} << e;
}

}  // namespace cuckoo
