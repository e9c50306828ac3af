#include "anytime/world.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <stdexcept>
#include <utility>

namespace anytime
{

bool Obstacle::contains(std::span<const double> q) const
{
    for (std::size_t j = 0; j < lo.size(); ++j)
        if (q[j] < lo[j] || q[j] > hi[j])
            return false;
    return true;
}

double Obstacle::volume() const
{
    double v = 1.0;
    for (std::size_t j = 0; j < lo.size(); ++j)
        v *= hi[j] - lo[j];
    return v;
}

std::vector<std::size_t> bisectionOrder(std::size_t m)
{
    std::vector<std::size_t> order;
    order.reserve(m);
    if (m == 0)
        return order;
    if (m == 1)
    {
        order.push_back(0);
        return order;
    }
    std::deque<std::pair<std::size_t, std::size_t>> open{{0, m - 1}};
    while (!open.empty())
    {
        const auto [lo, hi] = open.front();
        open.pop_front();
        if (hi - lo < 2)
            continue;
        const std::size_t mid = lo + (hi - lo) / 2;
        order.push_back(mid);
        open.emplace_back(lo, mid);
        open.emplace_back(mid, hi);
    }
    order.push_back(0);
    order.push_back(m - 1);
    return order;
}

World::World(std::size_t dimension, std::vector<Obstacle> obstacles)
    : dimension_(dimension), obstacles_(std::move(obstacles))
{
    if (dimension_ == 0)
        throw std::invalid_argument("world dimension must be positive");
    for (const Obstacle &o : obstacles_)
    {
        if (o.lo.size() != dimension_ || o.hi.size() != dimension_)
            throw std::invalid_argument("obstacle dimension mismatch");
        for (std::size_t j = 0; j < dimension_; ++j)
            if (!(o.lo[j] < o.hi[j]))
                throw std::invalid_argument("obstacle corners must satisfy lo < hi");
    }
    buildGrid();
}

World::World(const World &other)
    : dimension_(other.dimension_),
      obstacles_(other.obstacles_),
      checks_(other.checkCount()),
      cellsPerAxis_(other.cellsPerAxis_),
      cellStart_(other.cellStart_),
      cellItems_(other.cellItems_)
{
}

World &World::operator=(const World &other)
{
    if (this != &other)
    {
        dimension_ = other.dimension_;
        obstacles_ = other.obstacles_;
        checks_.store(other.checkCount(), std::memory_order_relaxed);
        cellsPerAxis_ = other.cellsPerAxis_;
        cellStart_ = other.cellStart_;
        cellItems_ = other.cellItems_;
    }
    return *this;
}

void World::buildGrid()
{
    // Aim for a handful of obstacles per cell, capped at 2^16 cells.
    const double target = std::max(1.0, static_cast<double>(obstacles_.size()) / 4.0);
    auto perAxis = static_cast<std::size_t>(std::floor(std::pow(target, 1.0 / static_cast<double>(dimension_))));
    perAxis = std::clamp<std::size_t>(perAxis, 1, 256);
    while (std::pow(static_cast<double>(perAxis), static_cast<double>(dimension_)) > 65536.0)
        --perAxis;
    cellsPerAxis_ = perAxis;

    std::size_t cells = 1;
    for (std::size_t j = 0; j < dimension_; ++j)
        cells *= cellsPerAxis_;

    const double n = static_cast<double>(cellsPerAxis_);
    auto cellRange = [&](const Obstacle &o, std::size_t j) {
        const auto lo = static_cast<std::size_t>(std::clamp(std::floor(o.lo[j] * n), 0.0, n - 1));
        const auto hi = static_cast<std::size_t>(std::clamp(std::floor(o.hi[j] * n), 0.0, n - 1));
        return std::pair{lo, hi};
    };

    // Two passes over every (obstacle, cell) incidence: count, then fill.
    std::vector<std::uint32_t> counts(cells + 1, 0);
    auto forEachCell = [&](const Obstacle &o, auto &&fn) {
        std::vector<std::size_t> lo(dimension_), hi(dimension_), idx(dimension_);
        for (std::size_t j = 0; j < dimension_; ++j)
        {
            std::tie(lo[j], hi[j]) = cellRange(o, j);
            idx[j] = lo[j];
        }
        while (true)
        {
            std::size_t flat = 0;
            for (std::size_t j = 0; j < dimension_; ++j)
                flat = flat * cellsPerAxis_ + idx[j];
            fn(flat);
            std::size_t j = dimension_;
            while (j > 0)
            {
                --j;
                if (idx[j] < hi[j])
                {
                    ++idx[j];
                    break;
                }
                idx[j] = lo[j];
                if (j == 0)
                    return;
            }
        }
    };
    for (const Obstacle &o : obstacles_)
        forEachCell(o, [&](std::size_t flat) { ++counts[flat + 1]; });
    for (std::size_t c = 0; c < cells; ++c)
        counts[c + 1] += counts[c];
    cellStart_ = counts;
    cellItems_.assign(counts.back(), 0);
    std::vector<std::uint32_t> cursor(counts.begin(), counts.end() - 1);
    for (std::uint32_t i = 0; i < obstacles_.size(); ++i)
        forEachCell(obstacles_[i], [&](std::size_t flat) { cellItems_[cursor[flat]++] = i; });
}

bool World::inObstacle(std::span<const double> q) const
{
    if (q.size() != dimension_)
        throw std::invalid_argument("configuration dimension mismatch");
    if (obstacles_.empty())
        return false;
    const double n = static_cast<double>(cellsPerAxis_);
    std::size_t flat = 0;
    for (std::size_t j = 0; j < dimension_; ++j)
    {
        const auto c = static_cast<std::size_t>(std::clamp(std::floor(q[j] * n), 0.0, n - 1));
        flat = flat * cellsPerAxis_ + c;
    }
    // Cell assignment is monotone in each coordinate, so every box holding q
    // is registered in q's cell.
    for (std::uint32_t k = cellStart_[flat]; k < cellStart_[flat + 1]; ++k)
        if (obstacles_[cellItems_[k]].contains(q))
            return true;
    return false;
}

bool World::isConfigFree(const Config &q) const
{
    const bool blocked = inObstacle(q.coords());
    checks_.fetch_add(1, std::memory_order_relaxed);
    return !blocked;
}

EdgeResult World::checkEdge(const Config &u, const Config &v, double resolution) const
{
    const std::vector<Config> samples = edgeSamples(u, v, resolution);
    EdgeResult result{EdgeStatus::Free, {}};
    for (std::size_t i : bisectionOrder(samples.size()))
    {
        const bool free = isConfigFree(samples[i]);
        result.tested.push_back({samples[i], !free});
        if (!free)
        {
            result.status = EdgeStatus::Blocked;
            break;
        }
    }
    return result;
}

double coverageEstimate(const World &world, std::size_t probes, std::uint64_t seed)
{
    if (probes == 0)
        throw std::invalid_argument("coverage estimate needs at least one probe");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> q(world.dimension());
    std::size_t inside = 0;
    for (std::size_t i = 0; i < probes; ++i)
    {
        for (double &x : q)
            x = unit(rng);
        if (world.inObstacle(q))
            ++inside;
    }
    return static_cast<double>(inside) / static_cast<double>(probes);
}

}  // namespace anytime
