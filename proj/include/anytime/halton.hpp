#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "anytime/config.hpp"

namespace anytime
{

/// The first `count` primes, ascending.
std::vector<unsigned> firstPrimes(std::size_t count);

/// p_d, the d-th prime (1-based: p_1 = 2).
unsigned nthPrime(std::size_t d);

/// Radical inverse of `index` in `base`: digits reflected about the radix point.
double radicalInverse(std::uint64_t index, unsigned base);

struct HaltonSpec
{
    std::size_t dimension = 0;
    std::vector<unsigned> bases;
    /// Per-coordinate shift applied mod 1. Empty means no shift.
    std::vector<double> offset;

    explicit HaltonSpec(std::size_t d);

    /// Same sequence with a seeded uniform random shift of each coordinate.
    static HaltonSpec withRandomOffset(std::size_t d, std::uint64_t seed);
};

/// Point `index` (1-based) of the sequence.
Config haltonPoint(std::uint64_t index, const HaltonSpec &spec);

/// Points 1..n.
std::vector<Config> haltonPrefix(std::size_t n, const HaltonSpec &spec);

/// Upper bound on the dispersion of the first n Halton points in [0,1]^d.
double dispersionBound(double n, std::size_t d);

/// Largest distance from any grid point to its nearest sample, on a regular
/// grid of spacing <= gridResolution over [0,1]^d. The true dispersion exceeds
/// the result by at most gridResolution * sqrt(d) / 2. Only d <= 3.
double measureDispersion(const std::vector<Config> &points, double gridResolution);

/// Incremental form of measureDispersion: keeps the nearest-sample distance of
/// every grid point while samples are added one at a time.
class DispersionGrid
{
public:
    DispersionGrid(std::size_t d, double gridResolution);

    void add(const Config &sample);
    /// Current grid estimate of the dispersion (infinity before any sample).
    double dispersion() const;
    /// Error bound of the grid estimate.
    double gridError() const;

private:
    std::size_t dimension_;
    std::size_t perAxis_;
    double spacing_;
    std::vector<double> squaredNearest_;
};

/// Path-length factor 1 + 2D/(r - 2D); throws std::domain_error when r <= 2D.
double suboptimalityFactor(double dispersion, double radius);

}  // namespace anytime
