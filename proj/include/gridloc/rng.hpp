#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace gridloc {

// SplitMix64 generator. Chosen over the standard <random> engines because
// std::normal_distribution is implementation-defined: golden outputs and
// byte-identical reruns require a generator + gaussian transform whose
// sequence is pinned by this codebase, not by the standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in (0, 1]; never zero, so it is safe under log().
    double next_unit() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller (cosine branch only, two uniforms per
    // draw: the pairing of calls never matters).
    double next_gaussian() {
        const double u1 = next_unit();
        const double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace detail

// Deterministic sub-stream seed for (seed, counter, tag). Gives every
// (window, anchor) pair its own generator so draws are independent of
// iteration order and windows can be generated in parallel.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t counter,
                                    std::string_view tag) {
    // FNV-1a over the tag bytes, folded with the seed and counter.
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const char c : tag) {
        h = (h ^ static_cast<unsigned char>(c)) * 0x100000001B3ULL;
    }
    h = detail::mix64(h ^ detail::mix64(seed));
    h = detail::mix64(h ^ counter);
    return h;
}

}  // namespace gridloc
