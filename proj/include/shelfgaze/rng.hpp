/**
 * @file rng.hpp
 * @brief Counter-based random streams.
 *
 * A draw is a pure function of (seed, stream, index), so any sample can be
 * regenerated in isolation and parallel workers never share state. The mixer
 * is SplitMix64; Gaussian draws use the inverse CDF so no rejection loop
 * makes the number of uniforms consumed data-dependent.
 */
#pragma once

#include <cstdint>
#include <vector>

namespace shelfgaze {

std::uint64_t splitmix64(std::uint64_t x);

class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(splitmix64(seed ^ splitmix64(stream))) {}

    std::uint64_t bits(std::uint64_t index) const { return splitmix64(key_ + index * 0x9E3779B97F4A7C15ULL); }

    /// Uniform in the open interval (0, 1).
    double uniform(std::uint64_t index) const {
        return (static_cast<double>(bits(index) >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(std::uint64_t index, double lo, double hi) const { return lo + (hi - lo) * uniform(index); }

    double normal(std::uint64_t index, double mean, double stddev) const;

    /// Normal truncated to (lower, +inf) by inverse CDF over the truncated mass.
    double normal_above(std::uint64_t index, double mean, double stddev, double lower) const;

    /// Fisher-Yates permutation of 0..n-1 driven by draws 0..n-2.
    std::vector<int> permutation(int n) const;

private:
    std::uint64_t key_;
};

/// Standard normal quantile.
double normal_quantile(double p);
double normal_cdf(double x);

}  // namespace shelfgaze
