#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "anytime/config.hpp"
#include "anytime/kdtree.hpp"
#include "anytime/roadmap.hpp"
#include "anytime/world.hpp"

namespace anytime
{

struct BeliefParams
{
    std::size_t k = 15;
    double lambda = 0.5;       // prior collision probability
    double wLambda = 0.25;     // prior weight
    double rPhi = 0.1;         // influence radius
    double epsilonDist = 1e-9;
};

/// k-NN estimate of the probability that a configuration is free, built
/// from previously tested configurations.
class BeliefModel
{
public:
    BeliefModel(std::size_t dimension, BeliefParams params = {});

    const BeliefParams &params() const { return params_; }
    void setInfluenceRadius(double rPhi);
    std::size_t size() const { return flags_.size(); }
    std::size_t dimension() const { return dimension_; }

    /// Stores (q, F) and reports whether q was new. Re-inserting the same pair
    /// is a no-op; a conflicting label throws std::logic_error.
    bool insert(const Config &q, bool inCollision);

    /// rho(q) in (0, 1].
    double probFree(std::span<const double> q) const;
    double probFree(const Config &q) const { return probFree(q.coords()); }

    /// Sum of -log rho over the configurations the detector would test on uv.
    double edgeMeasure(const Config &u, const Config &v, double resolution) const;

    /// Stored point by insertion id.
    std::span<const double> storedPoint(std::uint32_t id) const
    {
        return {points_.data() + static_cast<std::size_t>(id) * dimension_, dimension_};
    }
    bool storedInCollision(std::uint32_t id) const { return flags_[id] != 0; }

private:
    double rhoFromNeighbors(std::span<const Neighbor> neighbors) const;

    std::size_t dimension_;
    BeliefParams params_;
    DynamicKdTree index_;
    std::vector<double> points_;
    std::vector<std::uint8_t> flags_;
    std::unordered_map<Config, std::uint32_t, ConfigHash> ids_;
};

/// Radius around each edge endpoint whose two balls cover every point within
/// rPhi of the edge.
double affectedRadius(double edgeLength, double rPhi);

/// Feeds an evaluated edge's tested configurations into the model and marks
/// stale every Unknown edge passing within rPhi of a newly stored
/// configuration, the only edges whose measure can change. Returns the number
/// of Unknown edges incident to a vertex within the affected radius of either
/// endpoint when `countEdges` is set, zero otherwise.
std::size_t applyEdgeResults(BeliefModel &model, Roadmap &roadmap, EdgeId e, const std::vector<TestedConfig> &tested,
                             bool countEdges = true);

/// Vertices within the affected radius of either endpoint of edge e.
std::vector<VertexId> affectedVertices(const BeliefModel &model, const Roadmap &roadmap, EdgeId e);

}  // namespace anytime
