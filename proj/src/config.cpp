#include "anytime/config.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace anytime
{

double distance(std::span<const double> a, std::span<const double> b)
{
    return std::sqrt(squaredDistance(a, b));
}

Config interpolate(const Config &a, const Config &b, double t)
{
    Config out(a.dimension());
    for (std::size_t i = 0; i < a.dimension(); ++i)
        out[i] = a[i] + t * (b[i] - a[i]);
    return out;
}

std::size_t edgeSampleCount(double length, double resolution)
{
    if (!(resolution > 0.0))
        throw std::invalid_argument("resolution must be positive");
    if (length <= 0.0)
        return 1;
    return static_cast<std::size_t>(std::ceil(length / resolution)) + 1;
}

std::vector<Config> edgeSamples(const Config &u, const Config &v, double resolution)
{
    if (u.dimension() != v.dimension())
        throw std::invalid_argument("edge endpoints differ in dimension");
    // Canonical direction so that (u,v) and (v,u) produce bit-identical samples.
    const bool swapped = std::lexicographical_compare(v.values().begin(), v.values().end(),
                                                      u.values().begin(), u.values().end());
    const Config &from = swapped ? v : u;
    const Config &to = swapped ? u : v;

    const std::size_t count = edgeSampleCount(distance(from, to), resolution);
    std::vector<Config> out;
    out.reserve(count);
    if (count == 1)
    {
        out.push_back(from);
        return out;
    }
    const std::size_t segments = count - 1;
    for (std::size_t i = 0; i < count; ++i)
    {
        if (i == 0)
            out.push_back(from);
        else if (i == segments)
            out.push_back(to);
        else
            out.push_back(interpolate(from, to, static_cast<double>(i) / static_cast<double>(segments)));
    }
    return out;
}

double segmentDistance(std::span<const double> a, std::span<const double> b, std::span<const double> c,
                       std::span<const double> d)
{
    const std::size_t n = a.size();
    double uu = 0.0, uv = 0.0, vv = 0.0, uw = 0.0, vw = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double u = b[i] - a[i];
        const double v = d[i] - c[i];
        const double w = a[i] - c[i];
        uu += u * u;
        uv += u * v;
        vv += v * v;
        uw += u * w;
        vw += v * w;
    }
    // Closest points a + s (b - a) and c + t (d - c), clamped to [0, 1].
    double s = 0.0, t = 0.0;
    const double denom = uu * vv - uv * uv;
    if (uu <= 0.0 && vv <= 0.0)
    {
        s = t = 0.0;
    }
    else if (uu <= 0.0)
    {
        t = std::clamp(vw / vv, 0.0, 1.0);
    }
    else if (vv <= 0.0)
    {
        s = std::clamp(-uw / uu, 0.0, 1.0);
    }
    else
    {
        s = denom > 1e-14 * uu * vv ? std::clamp((uv * vw - vv * uw) / denom, 0.0, 1.0) : 0.0;
        t = (uv * s + vw) / vv;
        if (t < 0.0)
        {
            t = 0.0;
            s = std::clamp(-uw / uu, 0.0, 1.0);
        }
        else if (t > 1.0)
        {
            t = 1.0;
            s = std::clamp((uv - uw) / uu, 0.0, 1.0);
        }
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double diff = (a[i] + s * (b[i] - a[i])) - (c[i] + t * (d[i] - c[i]));
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

double unitBallVolume(std::size_t d)
{
    const double half = static_cast<double>(d) / 2.0;
    return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

std::size_t ConfigHash::operator()(const Config &q) const noexcept
{
    std::size_t h = 0xcbf29ce484222325ULL;
    for (double x : q.values())
    {
        // +0.0 and -0.0 compare equal, so they must hash equal.
        const auto bits = std::bit_cast<std::uint64_t>(x == 0.0 ? 0.0 : x);
        h ^= bits + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

}  // namespace anytime
