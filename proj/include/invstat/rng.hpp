#ifndef INVSTAT_RNG_HPP
#define INVSTAT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

// Deterministic randomness layer. Everything here is a pure function of the
// seed: the engine is std::mt19937_64 (bit-exact across platforms by the
// standard) and the derived draws below avoid std::*_distribution, whose
// output is implementation-defined.

namespace invstat {

using rng_engine = std::mt19937_64;

/// Uniform double in [0, 1): top 53 bits of one engine word.
inline double uniform_unit(rng_engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Uniform double in (0, 1]; safe to pass through log().
inline double uniform_unit_positive(rng_engine& eng) {
    return static_cast<double>((eng() >> 11) + 1) * 0x1.0p-53;
}

/// Unbiased uniform integer in [0, n) by masked rejection.
inline std::uint64_t uniform_below(rng_engine& eng, std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t mask = ~std::uint64_t{0};
    mask >>= __builtin_clzll(n - 1);
    for (;;) {
        const std::uint64_t v = eng() & mask;
        if (v < n) return v;
    }
}

/// Fisher-Yates permutation of {0, ..., n-1}.
inline std::vector<std::size_t> random_permutation(std::size_t n, rng_engine& eng) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(uniform_below(eng, i));
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

/// Standard normal draws via Box-Muller, two per pair of uniforms.
class normal_sampler {
public:
    explicit normal_sampler(rng_engine& eng) : eng_(&eng) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_unit_positive(*eng_);
        const double u2 = uniform_unit(*eng_);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    rng_engine* eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace invstat

#endif
