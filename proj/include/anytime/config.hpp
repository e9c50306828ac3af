#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace anytime
{

/// A point in the unit hypercube [0,1]^d.
class Config
{
public:
    Config() = default;
    explicit Config(std::size_t dimension, double fill = 0.0) : coords_(dimension, fill) {}
    Config(std::initializer_list<double> coords) : coords_(coords) {}
    explicit Config(std::vector<double> coords) : coords_(std::move(coords)) {}

    std::size_t dimension() const { return coords_.size(); }
    double operator[](std::size_t i) const { return coords_[i]; }
    double &operator[](std::size_t i) { return coords_[i]; }

    std::span<const double> coords() const { return coords_; }
    const std::vector<double> &values() const { return coords_; }

    bool operator==(const Config &other) const = default;

private:
    std::vector<double> coords_;
};

inline double squaredDistance(std::span<const double> a, std::span<const double> b)
{
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        const double diff = a[i] - b[i];
        sum += diff * diff;
    }
    return sum;
}

double distance(std::span<const double> a, std::span<const double> b);

inline double distance(const Config &a, const Config &b) { return distance(a.coords(), b.coords()); }

/// a + t * (b - a)
Config interpolate(const Config &a, const Config &b, double t);

/// Configurations along the segment uv spaced at most `resolution` apart, both
/// endpoints included, ordered from the lexicographically smaller endpoint.
/// A zero-length segment yields one configuration.
std::vector<Config> edgeSamples(const Config &u, const Config &v, double resolution);

/// Number of configurations edgeSamples() would produce.
std::size_t edgeSampleCount(double length, double resolution);

/// Shortest distance between the closed segments ab and cd.
double segmentDistance(std::span<const double> a, std::span<const double> b, std::span<const double> c,
                       std::span<const double> d);

/// Unit-ball volume in d dimensions.
double unitBallVolume(std::size_t d);

struct ConfigHash
{
    std::size_t operator()(const Config &q) const noexcept;
};

}  // namespace anytime
