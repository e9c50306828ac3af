#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "anytime/config.hpp"
#include "anytime/kdtree.hpp"
#include "anytime/world.hpp"

namespace anytime
{

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr VertexId kStartVertex = 0;
inline constexpr VertexId kGoalVertex = 1;
inline constexpr EdgeId kNoEdge = static_cast<EdgeId>(-1);

/// Unordered vertex pair packed into one key, smaller id in the high half.
inline std::uint64_t pairKey(VertexId a, VertexId b)
{
    if (a > b)
        std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

struct Incidence
{
    VertexId target;
    EdgeId edge;
};

/// Per-edge bookkeeping that survives batches, pruning and growth.
struct EvaluationRecord
{
    EdgeStatus status = EdgeStatus::Unknown;
    std::uint32_t evaluations = 0;   // detector invocations for this pair
    std::uint64_t checks = 0;        // configuration checks attributed to it
};

using VertexFilter = std::function<bool(const Config &)>;

/// r-disk subgraph over a prefix of a fixed sample list. Samples 0 and 1 are
/// the start and goal.
class Roadmap
{
public:
    Roadmap(std::vector<Config> samples, std::size_t n, double radius, double resolution = 0.01);

    std::size_t dimension() const { return dimension_; }
    std::size_t sampleCount() const { return samples_.size(); }
    std::size_t activeCount() const { return activeN_; }
    double radius() const { return radius_; }
    double resolution() const { return resolution_; }

    const Config &sample(VertexId v) const { return samples_[v]; }
    std::span<const double> point(VertexId v) const
    {
        return {flat_.data() + static_cast<std::size_t>(v) * dimension_, dimension_};
    }

    /// Enlarge the prefix and radius; shrinking either throws.
    void grow(std::size_t n, double radius);

    /// Move to the next batch. The prefix may only grow, the radius may move
    /// either way. Newly activated vertices failing `admit` are pruned on
    /// arrival.
    void setBatch(std::size_t n, double radius, const VertexFilter &admit = {});

    /// Prunes active vertices failing `keep`, except start and goal.
    std::size_t pruneOutside(const VertexFilter &keep);

    bool isPruned(VertexId v) const { return pruned_[v] != 0; }
    bool isActive(VertexId v) const { return v < activeN_ && !pruned_[v]; }
    std::size_t liveVertexCount() const;

    std::size_t edgeCount() const { return edgeU_.size(); }
    VertexId edgeSource(EdgeId e) const { return edgeU_[e]; }
    VertexId edgeTarget(EdgeId e) const { return edgeV_[e]; }
    double edgeLength(EdgeId e) const { return distance(point(edgeU_[e]), point(edgeV_[e])); }
    EdgeStatus status(EdgeId e) const { return status_[e]; }
    EdgeId findEdge(VertexId a, VertexId b) const;

    std::span<const Incidence> neighbors(VertexId v) const
    {
        return {incidence_.data() + offsets_[v], incidence_.data() + offsets_[v + 1]};
    }

    /// Length weight: infinite once Blocked.
    double lengthWeight(EdgeId e) const;

    /// Cached collision measure, if still valid.
    std::optional<double> cachedMeasure(EdgeId e) const;
    void storeMeasure(EdgeId e, double value);
    /// Marks the measures of every edge incident to these vertices stale.
    void invalidateMeasures(std::span<const VertexId> vertices);
    void markMeasureStale(EdgeId e) { measureStamp_[e] = 0; }
    bool measureStale(EdgeId e) const;

    using EvaluationObserver = std::function<void(EdgeId, const EdgeResult &)>;

    /// Runs the detector on an Unknown edge and records the outcome. Evaluated
    /// edges return their cached status without detector calls.
    EdgeStatus evaluateEdge(EdgeId e, const World &world, const EvaluationObserver &observer = {});

    /// Live vertices within `radius` of `center` (inclusive).
    std::vector<VertexId> verticesWithin(std::span<const double> center, double radius) const;

    const std::unordered_map<std::uint64_t, EvaluationRecord> &evaluationLedger() const { return ledger_; }
    std::size_t evaluatedEdgeCount() const { return ledger_.size(); }

    /// Edges of the current batch that no earlier batch contained.
    std::uint64_t newEdgesLastBatch() const { return newEdgesLastBatch_; }
    std::uint64_t distinctEdgesConsidered() const { return distinctEdges_; }
    std::size_t batchIndex() const { return batchRadii_.size() - 1; }

    /// Vertex count below which neighbour queries scan all vertices.
    static constexpr std::size_t kBruteForceLimit = 512;

private:
    void activate(std::size_t n, const VertexFilter &admit);
    void rebuild(bool newBatch);

    std::size_t dimension_;
    std::vector<Config> samples_;
    std::vector<double> flat_;
    std::size_t activeN_ = 0;
    double radius_ = 0.0;
    double resolution_;
    std::vector<std::uint8_t> pruned_;
    std::vector<std::uint32_t> activatedInBatch_;
    std::vector<double> batchRadii_;

    // Current batch graph, CSR form.
    std::vector<VertexId> edgeU_;
    std::vector<VertexId> edgeV_;
    std::vector<EdgeStatus> status_;
    std::vector<double> measure_;
    std::vector<std::uint64_t> measureStamp_;
    std::vector<std::uint64_t> vertexStamp_;
    std::uint64_t clock_ = 1;
    std::vector<std::size_t> offsets_;
    std::vector<Incidence> incidence_;

    KdTree vertexTree_;
    std::vector<VertexId> liveVertices_;

    std::unordered_map<std::uint64_t, EvaluationRecord> ledger_;
    std::uint64_t newEdgesLastBatch_ = 0;
    std::uint64_t distinctEdges_ = 0;
};

/// Builds start, goal, then Halton-style samples into the list a Roadmap expects.
std::vector<Config> roadmapSamples(const Config &start, const Config &goal, const std::vector<Config> &points);

}  // namespace anytime
