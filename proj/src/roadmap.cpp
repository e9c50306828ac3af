#include "anytime/roadmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace anytime
{

Roadmap::Roadmap(std::vector<Config> samples, std::size_t n, double radius, double resolution)
    : dimension_(samples.empty() ? 0 : samples.front().dimension()),
      samples_(std::move(samples)),
      resolution_(resolution),
      vertexTree_(dimension_)
{
    if (samples_.empty())
        throw std::invalid_argument("roadmap needs at least one sample");
    if (samples_.size() > std::numeric_limits<VertexId>::max() / 2)
        throw std::invalid_argument("too many samples");
    if (n < 1 || n > samples_.size())
        throw std::invalid_argument("prefix size must lie in [1, N]");
    if (!(radius > 0.0))
        throw std::invalid_argument("radius must be positive");
    if (!(resolution > 0.0))
        throw std::invalid_argument("resolution must be positive");

    flat_.reserve(samples_.size() * dimension_);
    for (const Config &q : samples_)
    {
        if (q.dimension() != dimension_)
            throw std::invalid_argument("samples differ in dimension");
        flat_.insert(flat_.end(), q.values().begin(), q.values().end());
    }
    pruned_.assign(samples_.size(), 0);
    activatedInBatch_.assign(samples_.size(), 0);
    vertexStamp_.assign(samples_.size(), 0);

    radius_ = radius;
    batchRadii_.push_back(radius);
    activate(n, {});
    rebuild(true);
}

void Roadmap::grow(std::size_t n, double radius)
{
    if (n < activeN_ || radius < radius_)
        throw std::invalid_argument("grow cannot shrink the prefix or the radius");
    setBatch(n, radius);
}

void Roadmap::setBatch(std::size_t n, double radius, const VertexFilter &admit)
{
    if (n < activeN_ || n > samples_.size())
        throw std::invalid_argument("batch prefix must be non-decreasing and at most N");
    if (!(radius > 0.0))
        throw std::invalid_argument("radius must be positive");
    radius_ = radius;
    batchRadii_.push_back(radius);
    activate(n, admit);
    rebuild(true);
}

void Roadmap::activate(std::size_t n, const VertexFilter &admit)
{
    const auto batch = static_cast<std::uint32_t>(batchRadii_.size() - 1);
    for (std::size_t v = activeN_; v < n; ++v)
    {
        activatedInBatch_[v] = batch;
        if (v > kGoalVertex && admit && !admit(samples_[v]))
            pruned_[v] = 1;
    }
    activeN_ = n;
}

std::size_t Roadmap::pruneOutside(const VertexFilter &keep)
{
    std::size_t count = 0;
    for (std::size_t v = kGoalVertex + 1; v < activeN_; ++v)
        if (!pruned_[v] && !keep(samples_[v]))
        {
            pruned_[v] = 1;
            ++count;
        }
    if (count > 0)
        rebuild(false);
    return count;
}

std::size_t Roadmap::liveVertexCount() const
{
    return liveVertices_.size();
}

void Roadmap::rebuild(bool newBatch)
{
    liveVertices_.clear();
    for (VertexId v = 0; v < activeN_; ++v)
        if (!pruned_[v])
            liveVertices_.push_back(v);

    const bool useTree = liveVertices_.size() >= kBruteForceLimit;
    if (useTree)
    {
        std::vector<double> pts;
        pts.reserve(liveVertices_.size() * dimension_);
        for (VertexId v : liveVertices_)
        {
            const auto p = point(v);
            pts.insert(pts.end(), p.begin(), p.end());
        }
        vertexTree_ = KdTree(dimension_);
        vertexTree_.build(std::move(pts), liveVertices_);
    }
    else
    {
        vertexTree_ = KdTree(dimension_);
    }

    edgeU_.clear();
    edgeV_.clear();
    const double r2 = radius_ * radius_;
    const bool complete = radius_ >= std::sqrt(static_cast<double>(dimension_));

    // Threshold above which an edge was absent from every earlier batch that
    // contained both endpoints.
    const std::size_t batch = batchRadii_.size() - 1;
    std::vector<double> priorMax(batch + 1, -1.0);  // max radius over [a, batch)
    for (std::size_t a = batch; a-- > 0;)
        priorMax[a] = std::max(priorMax[a + 1], batchRadii_[a]);
    std::uint64_t fresh = 0;
    auto addEdge = [&](VertexId u, VertexId v, double d2) {
        edgeU_.push_back(u);
        edgeV_.push_back(v);
        if (newBatch)
        {
            const std::uint32_t a = std::max(activatedInBatch_[u], activatedInBatch_[v]);
            if (a == batch || d2 > priorMax[a] * priorMax[a])
                ++fresh;
        }
    };

    std::vector<Neighbor> found;
    for (std::size_t i = 0; i < liveVertices_.size(); ++i)
    {
        const VertexId u = liveVertices_[i];
        const auto pu = point(u);
        if (complete || !useTree)
        {
            for (std::size_t j = i + 1; j < liveVertices_.size(); ++j)
            {
                const VertexId v = liveVertices_[j];
                const double d2 = squaredDistance(pu, point(v));
                if (complete || d2 <= r2)
                    addEdge(u, v, d2);
            }
            continue;
        }
        found.clear();
        vertexTree_.radiusSearch(pu, radius_, found);
        std::sort(found.begin(), found.end(), [](const Neighbor &a, const Neighbor &b) { return a.id < b.id; });
        for (const Neighbor &nb : found)
            if (nb.id > u)
            {
                const double d2 = squaredDistance(pu, point(nb.id));
                if (d2 <= r2)
                    addEdge(u, nb.id, d2);
            }
    }
    if (edgeU_.size() >= static_cast<std::size_t>(kNoEdge))
        throw std::length_error("roadmap batch has too many edges");

    if (newBatch)
    {
        newEdgesLastBatch_ = fresh;
        distinctEdges_ += fresh;
    }

    const std::size_t m = edgeU_.size();
    status_.assign(m, EdgeStatus::Unknown);
    if (!ledger_.empty())
        for (std::size_t e = 0; e < m; ++e)
        {
            const auto it = ledger_.find(pairKey(edgeU_[e], edgeV_[e]));
            if (it != ledger_.end())
                status_[e] = it->second.status;
        }
    measure_.assign(m, 0.0);
    measureStamp_.assign(m, 0);

    // Edges are ordered by (u, v) with u < v, so filling both directions in
    // edge order leaves each adjacency list sorted by target.
    offsets_.assign(samples_.size() + 1, 0);
    for (std::size_t e = 0; e < m; ++e)
    {
        ++offsets_[edgeU_[e] + 1];
        ++offsets_[edgeV_[e] + 1];
    }
    for (std::size_t v = 0; v < samples_.size(); ++v)
        offsets_[v + 1] += offsets_[v];
    incidence_.resize(2 * m);
    std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t e = 0; e < m; ++e)
    {
        const auto id = static_cast<EdgeId>(e);
        incidence_[cursor[edgeU_[e]]++] = {edgeV_[e], id};
        incidence_[cursor[edgeV_[e]]++] = {edgeU_[e], id};
    }
}

EdgeId Roadmap::findEdge(VertexId a, VertexId b) const
{
    if (a >= samples_.size() || b >= samples_.size())
        return kNoEdge;
    const auto list = neighbors(a);
    const auto it = std::lower_bound(list.begin(), list.end(), b,
                                     [](const Incidence &inc, VertexId target) { return inc.target < target; });
    if (it != list.end() && it->target == b)
        return it->edge;
    return kNoEdge;
}

double Roadmap::lengthWeight(EdgeId e) const
{
    if (status_[e] == EdgeStatus::Blocked)
        return std::numeric_limits<double>::infinity();
    return edgeLength(e);
}

bool Roadmap::measureStale(EdgeId e) const
{
    const std::uint64_t stamp = measureStamp_[e];
    return stamp == 0 || stamp < vertexStamp_[edgeU_[e]] || stamp < vertexStamp_[edgeV_[e]];
}

std::optional<double> Roadmap::cachedMeasure(EdgeId e) const
{
    switch (status_[e])
    {
    case EdgeStatus::Free:
        return 0.0;
    case EdgeStatus::Blocked:
        return std::numeric_limits<double>::infinity();
    case EdgeStatus::Unknown:
        break;
    }
    if (measureStale(e))
        return std::nullopt;
    return measure_[e];
}

void Roadmap::storeMeasure(EdgeId e, double value)
{
    measure_[e] = value;
    measureStamp_[e] = clock_;
}

void Roadmap::invalidateMeasures(std::span<const VertexId> vertices)
{
    ++clock_;
    for (VertexId v : vertices)
        vertexStamp_[v] = clock_;
}

EdgeStatus Roadmap::evaluateEdge(EdgeId e, const World &world, const EvaluationObserver &observer)
{
    if (status_[e] != EdgeStatus::Unknown)
        return status_[e];
    EvaluationRecord &record = ledger_[pairKey(edgeU_[e], edgeV_[e])];
    if (record.status != EdgeStatus::Unknown)
    {
        status_[e] = record.status;
        return record.status;
    }
    const EdgeResult result = world.checkEdge(samples_[edgeU_[e]], samples_[edgeV_[e]], resolution_);
    record.status = result.status;
    record.evaluations += 1;
    record.checks += result.tested.size();
    status_[e] = result.status;
    if (observer)
        observer(e, result);
    return result.status;
}

std::vector<VertexId> Roadmap::verticesWithin(std::span<const double> center, double radius) const
{
    std::vector<VertexId> out;
    if (vertexTree_.empty())
    {
        const double r2 = radius * radius;
        for (VertexId v : liveVertices_)
            if (squaredDistance(center, point(v)) <= r2)
                out.push_back(v);
        return out;
    }
    std::vector<Neighbor> found;
    vertexTree_.radiusSearch(center, radius, found);
    out.reserve(found.size());
    for (const Neighbor &nb : found)
        out.push_back(nb.id);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Config> roadmapSamples(const Config &start, const Config &goal, const std::vector<Config> &points)
{
    std::vector<Config> out;
    out.reserve(points.size() + 2);
    out.push_back(start);
    out.push_back(goal);
    out.insert(out.end(), points.begin(), points.end());
    return out;
}

}  // namespace anytime
