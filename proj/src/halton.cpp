#include "anytime/halton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace anytime
{

std::vector<unsigned> firstPrimes(std::size_t count)
{
    std::vector<unsigned> primes;
    primes.reserve(count);
    for (unsigned candidate = 2; primes.size() < count; ++candidate)
    {
        bool prime = true;
        for (unsigned p : primes)
        {
            if (p * p > candidate)
                break;
            if (candidate % p == 0)
            {
                prime = false;
                break;
            }
        }
        if (prime)
            primes.push_back(candidate);
    }
    return primes;
}

unsigned nthPrime(std::size_t d)
{
    if (d == 0)
        throw std::invalid_argument("dimension must be at least 1");
    return firstPrimes(d).back();
}

double radicalInverse(std::uint64_t index, unsigned base)
{
    const double inverseBase = 1.0 / static_cast<double>(base);
    double scale = inverseBase;
    double result = 0.0;
    while (index > 0)
    {
        result += static_cast<double>(index % base) * scale;
        index /= base;
        scale *= inverseBase;
    }
    return result;
}

HaltonSpec::HaltonSpec(std::size_t d) : dimension(d), bases(firstPrimes(d))
{
    if (d == 0)
        throw std::invalid_argument("dimension must be at least 1");
}

HaltonSpec HaltonSpec::withRandomOffset(std::size_t d, std::uint64_t seed)
{
    HaltonSpec spec(d);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    spec.offset.resize(d);
    for (double &o : spec.offset)
        o = unit(rng);
    return spec;
}

Config haltonPoint(std::uint64_t index, const HaltonSpec &spec)
{
    if (index == 0)
        throw std::invalid_argument("Halton index is 1-based");
    Config q(spec.dimension);
    for (std::size_t j = 0; j < spec.dimension; ++j)
    {
        double x = radicalInverse(index, spec.bases[j]);
        if (!spec.offset.empty())
        {
            x += spec.offset[j];
            x -= std::floor(x);
        }
        q[j] = x;
    }
    return q;
}

std::vector<Config> haltonPrefix(std::size_t n, const HaltonSpec &spec)
{
    if (n == 0)
        throw std::invalid_argument("prefix length must be at least 1");
    std::vector<Config> out;
    out.reserve(n);
    for (std::size_t i = 1; i <= n; ++i)
        out.push_back(haltonPoint(i, spec));
    return out;
}

double dispersionBound(double n, std::size_t d)
{
    return static_cast<double>(nthPrime(d)) * std::pow(n, -1.0 / static_cast<double>(d));
}

DispersionGrid::DispersionGrid(std::size_t d, double gridResolution) : dimension_(d)
{
    if (d == 0 || d > 3)
        throw std::invalid_argument("grid dispersion is limited to d <= 3");
    if (!(gridResolution > 0.0))
        throw std::invalid_argument("grid resolution must be positive");
    perAxis_ = static_cast<std::size_t>(std::ceil(1.0 / gridResolution)) + 1;
    spacing_ = 1.0 / static_cast<double>(perAxis_ - 1);
    std::size_t cells = 1;
    for (std::size_t j = 0; j < d; ++j)
        cells *= perAxis_;
    squaredNearest_.assign(cells, std::numeric_limits<double>::infinity());
}

void DispersionGrid::add(const Config &sample)
{
    if (sample.dimension() != dimension_)
        throw std::invalid_argument("sample dimension mismatch");
    // Squared distance is separable, so precompute per-axis terms.
    std::vector<double> axisTerms(dimension_ * perAxis_);
    for (std::size_t j = 0; j < dimension_; ++j)
        for (std::size_t i = 0; i < perAxis_; ++i)
        {
            const double diff = static_cast<double>(i) * spacing_ - sample[j];
            axisTerms[j * perAxis_ + i] = diff * diff;
        }

    const std::size_t m = perAxis_;
    if (dimension_ == 1)
    {
        for (std::size_t i = 0; i < m; ++i)
            squaredNearest_[i] = std::min(squaredNearest_[i], axisTerms[i]);
    }
    else if (dimension_ == 2)
    {
        for (std::size_t i = 0; i < m; ++i)
        {
            const double xi = axisTerms[i];
            double *row = squaredNearest_.data() + i * m;
            const double *ys = axisTerms.data() + m;
            for (std::size_t k = 0; k < m; ++k)
                row[k] = std::min(row[k], xi + ys[k]);
        }
    }
    else
    {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < m; ++k)
            {
                const double xy = axisTerms[i] + axisTerms[m + k];
                double *row = squaredNearest_.data() + (i * m + k) * m;
                const double *zs = axisTerms.data() + 2 * m;
                for (std::size_t l = 0; l < m; ++l)
                    row[l] = std::min(row[l], xy + zs[l]);
            }
    }
}

double DispersionGrid::dispersion() const
{
    return std::sqrt(*std::max_element(squaredNearest_.begin(), squaredNearest_.end()));
}

double DispersionGrid::gridError() const
{
    return spacing_ * std::sqrt(static_cast<double>(dimension_)) / 2.0;
}

double measureDispersion(const std::vector<Config> &points, double gridResolution)
{
    if (points.empty())
        throw std::invalid_argument("dispersion of an empty point set");
    DispersionGrid grid(points.front().dimension(), gridResolution);
    for (const Config &p : points)
        grid.add(p);
    return grid.dispersion();
}

double suboptimalityFactor(double dispersion, double radius)
{
    if (!(radius > 2.0 * dispersion))
        throw std::domain_error("radius inside the edge-starvation regime; bound undefined");
    return 1.0 + 2.0 * dispersion / (radius - 2.0 * dispersion);
}

}  // namespace anytime
