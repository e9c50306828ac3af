#pragma once

#include <atomic>
#include <cstdint>
#include <span>
#include <vector>

#include "anytime/config.hpp"

namespace anytime
{

/// Closed axis-aligned box; the boundary counts as collision.
struct Obstacle
{
    std::vector<double> lo;
    std::vector<double> hi;

    bool contains(std::span<const double> q) const;
    double volume() const;
};

enum class EdgeStatus : std::uint8_t
{
    Unknown,
    Free,
    Blocked
};

struct TestedConfig
{
    Config q;
    bool inCollision;
};

struct EdgeResult
{
    EdgeStatus status;
    std::vector<TestedConfig> tested;
};

/// Order in which the samples of an m-sample edge are tested: interior
/// samples by breadth-first bisection (midpoint first), then both endpoints.
std::vector<std::size_t> bisectionOrder(std::size_t m);

/// Obstacle set plus the counted collision detector.
class World
{
public:
    explicit World(std::size_t dimension, std::vector<Obstacle> obstacles = {});
    World(const World &other);
    World &operator=(const World &other);

    std::size_t dimension() const { return dimension_; }
    const std::vector<Obstacle> &obstacles() const { return obstacles_; }

    /// Counted detector call.
    bool isConfigFree(const Config &q) const;

    /// Uncounted membership test for instrumentation and generation.
    bool inObstacle(std::span<const double> q) const;

    /// Tests samples along uv in bisection order, stopping at the first
    /// collision. Each tested sample is one counted detector call.
    EdgeResult checkEdge(const Config &u, const Config &v, double resolution) const;

    std::uint64_t checkCount() const { return checks_.load(std::memory_order_relaxed); }
    void resetCount() { checks_.store(0, std::memory_order_relaxed); }

private:
    void buildGrid();

    std::size_t dimension_;
    std::vector<Obstacle> obstacles_;
    mutable std::atomic<std::uint64_t> checks_{0};

    // Uniform bucket grid over [0,1]^d listing the obstacles touching each cell.
    std::size_t cellsPerAxis_ = 1;
    std::vector<std::uint32_t> cellStart_;
    std::vector<std::uint32_t> cellItems_;
};

/// Monte-Carlo fraction of [0,1]^d covered by obstacles. Does not touch the
/// detector counter.
double coverageEstimate(const World &world, std::size_t probes, std::uint64_t seed);

}  // namespace anytime
