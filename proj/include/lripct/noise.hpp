#ifndef LRIPCT_NOISE_HPP
#define LRIPCT_NOISE_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

#include "core.hpp"

namespace lripct {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace detail

// Counter-based generator: every draw is keyed by (seed, element index,
// draw number), so noise fields do not depend on traversal order.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : key_(detail::splitmix64(seed ^ 0xA5A5A5A5DEADBEEFULL)) {}

    // uniform in (0, 1]
    double uniform(std::uint64_t index, std::uint64_t draw) const
    {
        std::uint64_t h = detail::splitmix64(key_ ^ detail::splitmix64(index * 0x9E3779B97F4A7C15ULL + draw));
        return (static_cast<double>(h >> 11) + 1.0) * 0x1p-53;
    }

    // standard normal (Box-Muller; draws 2k and 2k+1)
    double gaussian(std::uint64_t index, std::uint64_t pair = 0) const
    {
        double u1 = uniform(index, 2 * pair);
        double u2 = uniform(index, 2 * pair + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Poisson count: CDF inversion for small means, rounded Gaussian
    // approximation for large ones.
    long long poisson(double mean, std::uint64_t index) const
    {
        if (mean <= 0.0)
            return 0;
        if (mean <= 50.0) {
            double u = uniform(index, 0);
            double pmf = std::exp(-mean);
            double cdf = pmf;
            long long c = 0;
            const long long cap = static_cast<long long>(mean + 20.0 * std::sqrt(mean) + 60.0);
            while (u > cdf && c < cap) {
                ++c;
                pmf *= mean / static_cast<double>(c);
                cdf += pmf;
            }
            return c;
        }
        double z = gaussian(index);
        double c = std::floor(mean + std::sqrt(mean) * z + 0.5);
        return c < 0.0 ? 0 : static_cast<long long>(c);
    }

private:
    std::uint64_t key_;
};

// Additive white Gaussian noise with std = level * mean(|sino|).
inline Sinogram add_gaussian(const Sinogram& sino, double level, std::uint64_t seed)
{
    if (level <= 0.0)
        throw std::invalid_argument("add_gaussian: level must be positive");
    double mean_abs = 0.0;
    for (std::size_t i = 0; i < sino.size(); ++i)
        mean_abs += std::abs(sino[i]);
    mean_abs /= static_cast<double>(sino.size());
    const double std_dev = level * mean_abs;

    CounterRng rng(seed);
    Sinogram out = sino;
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += std_dev * rng.gaussian(i);
    return out;
}

// Photon-counting noise: draw c ~ Poisson(I0 * exp(-g)) per line integral,
// clamp to >= 1 count, return -ln(c / I0).
inline Sinogram add_poisson(const Sinogram& sino, long long i0, std::uint64_t seed)
{
    if (i0 < 1)
        throw std::invalid_argument("add_poisson: I0 must be >= 1");
    for (std::size_t i = 0; i < sino.size(); ++i)
        if (sino[i] < 0.0)
            throw std::invalid_argument("add_poisson: sinogram entries must be nonnegative");

    CounterRng rng(seed);
    Sinogram out = sino;
    for (std::size_t i = 0; i < out.size(); ++i) {
        double mean = static_cast<double>(i0) * std::exp(-sino[i]);
        long long c = rng.poisson(mean, i);
        if (c < 1)
            c = 1;
        out[i] = -std::log(static_cast<double>(c) / static_cast<double>(i0));
    }
    return out;
}

} // namespace lripct

#endif
