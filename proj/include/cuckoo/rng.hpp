#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace cuckoo {

// Stateless splitmix64 finalizer; the workhorse behind all seeding here.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Seed splitting: fold each part into the state through the finalizer.
// Used everywhere a sub-seed is derived, so the scheme is fixed once:
//   derive_seed(master, a, b, ...) = mix(...mix(mix(master ^ a) ^ b)...)
inline constexpr std::uint64_t derive_seed(std::uint64_t master) noexcept {
    return mix64(master);
}

template <typename... Rest>
inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t part,
                                           Rest... rest) noexcept {
    return derive_seed(mix64(master ^ part), rest...);
}

// Small counter-based generator (splitmix64 stream).
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Exactly uniform over [0, bound) via rejection.
    std::uint64_t next_below(std::uint64_t bound) noexcept {
        // largest multiple of bound that fits in 64 bits
        const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
        std::uint64_t r = next();
        while (r >= limit) r = next();
        return r % bound;
    }

private:
    std::uint64_t state_;
};

// n distinct keys, uniform over [0, key_bound); draws with a duplicate are
// rejected and redone. When the universe dwarfs n (the usual case here) a
// sorted scratch copy decides distinctness, which is much cheaper than
// per-key filtering; dense universes fall back to one-at-a-time rejection.
inline std::vector<std::uint64_t> sample_distinct_keys(std::uint64_t n, std::uint64_t key_bound,
                                                       SplitMix64& rng) {
    if (key_bound < n) throw std::invalid_argument("sample_distinct_keys: universe too small");
    if (n == 0) return {};
    if (key_bound / n <= n) {  // collisions likely: reject key by key
        std::vector<std::uint64_t> keys;
        keys.reserve(n);
        while (keys.size() < n) {
            const std::uint64_t x = rng.next_below(key_bound);
            if (std::find(keys.begin(), keys.end(), x) == keys.end()) keys.push_back(x);
        }
        return keys;
    }
    std::vector<std::uint64_t> keys(n);
    std::vector<std::uint64_t> scratch;
    for (;;) {
        for (auto& x : keys) x = rng.next_below(key_bound);
        scratch = keys;
        std::sort(scratch.begin(), scratch.end());
        if (std::adjacent_find(scratch.begin(), scratch.end()) == scratch.end()) return keys;
    }
}

}  // namespace cuckoo
