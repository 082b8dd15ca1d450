#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "sisrec/sequence.hpp"

namespace sisrec {

/// splitmix64 finalizer; used both as a bit mixer and as the per-trial
/// seed derivation mix(seed, trial) so trials are reproducible regardless
/// of execution order.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t trial) {
    return splitmix64(seed + (trial + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Deterministic generator: splitmix64 stream + explicit Box-Muller.
/// std::normal_distribution is implementation-defined, so Gaussians are
/// derived from raw bits here to keep runs byte-reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1] (safe as a log argument).
    double uniform_pos() { return 1.0 - uniform(); }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    std::int64_t uniform_int(std::int64_t n) {  // in [0, n)
        return static_cast<std::int64_t>(next_u64() % static_cast<std::uint64_t>(n));
    }

    /// Standard real Gaussian N(0, 1) via Box-Muller.
    double gaussian() {
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        return r * std::cos(2.0 * std::numbers::pi * uniform());
    }

    /// CN(0,1): E|z|^2 = 1, independent re/im each N(0, 1/2).
    cplx cgaussian() {
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double th = 2.0 * std::numbers::pi * uniform();
        return cplx{r * std::cos(th), r * std::sin(th)} / std::sqrt(2.0);
    }

    /// Uniform phase on the unit circle.
    cplx unit_phase() {
        const double th = 2.0 * std::numbers::pi * uniform();
        return cplx{std::cos(th), std::sin(th)};
    }

private:
    std::uint64_t state_;
};

}  // namespace sisrec
