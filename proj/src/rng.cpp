#include "shelfgaze/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/normal.hpp>

namespace shelfgaze {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double normal_quantile(double p) {
    static const boost::math::normal_distribution<double> standard;
    return boost::math::quantile(standard, p);
}

double normal_cdf(double x) {
    static const boost::math::normal_distribution<double> standard;
    return boost::math::cdf(standard, x);
}

double CounterRng::normal(std::uint64_t index, double mean, double stddev) const {
    return mean + stddev * normal_quantile(uniform(index));
}

double CounterRng::normal_above(std::uint64_t index, double mean, double stddev, double lower) const {
    const double lo = normal_cdf((lower - mean) / stddev);
    const double p = lo + (1.0 - lo) * uniform(index);
    // p can round to 1 when the cut sits far in the upper tail.
    const double clamped = std::min(p, std::nextafter(1.0, 0.0));
    return std::max(mean + stddev * normal_quantile(clamped), std::nextafter(lower, lower + 1.0));
}

std::vector<int> CounterRng::permutation(int n) const {
    std::vector<int> out(static_cast<std::size_t>(std::max(n, 0)));
    std::iota(out.begin(), out.end(), 0);
    for (int i = n - 1; i > 0; --i) {
        const auto j = static_cast<int>(bits(static_cast<std::uint64_t>(n - 1 - i)) % static_cast<std::uint64_t>(i + 1));
        std::swap(out[static_cast<std::size_t>(i)], out[static_cast<std::size_t>(j)]);
    }
    return out;
}

}  // namespace shelfgaze
