// Copyright (c) 2026 fairloop contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>

namespace fairloop {

/// Counter-free splitmix64 stream (Vigna's fixed-increment variant of the
/// SplittableRandom generator). One instance per (seed, config, run) triple
/// keeps simulation runs reproducible and independent of scheduling order.
class RngStream {
  public:
    RngStream() = default;
    explicit RngStream(std::uint64_t state) : state_(state) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). n must be > 0.
    std::uint64_t next_below(std::uint64_t n) {
        // Rejection sampling keeps the draw unbiased for any n.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

    bool next_bernoulli(double p) { return next_double() < p; }

    double next_exponential() {
        // 1 - U lies in (0, 1], so the log is finite.
        return -std::log(1.0 - next_double());
    }

    double next_normal(double mean, double stddev) {
        double u1;
        do {
            u1 = next_double();
        } while (u1 == 0.0);
        const double u2 = next_double();
        const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
        return mean + stddev * z;
    }

    /// Knuth's product method; adequate for the small rates used here.
    int next_poisson(double lambda) {
        const double limit = std::exp(-lambda);
        int k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= next_double();
        } while (p > limit);
        return k - 1;
    }

    /// Gamma with integer shape 2 as a sum of two exponentials.
    double next_gamma_shape2(double scale) {
        return scale * (next_exponential() + next_exponential());
    }

    std::uint64_t state() const { return state_; }

  private:
    std::uint64_t state_ = 0;
};

/// Derives the stream for one simulation run. Identical tuples yield
/// bitwise-identical streams; distinct tuples decorrelate through the
/// splitmix64 mixing of the xor-folded state.
inline RngStream derive_stream(std::uint64_t global_seed, std::uint64_t config_id,
                               std::uint64_t run_index) {
    const std::uint64_t state = global_seed ^ (config_id * 0x9E3779B97F4A7C15ULL) ^
                                (run_index * 0xBF58476D1CE4E5B9ULL);
    return RngStream(state);
}

}  // namespace fairloop
