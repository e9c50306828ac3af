#include "anytime/belief.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace anytime
{

BeliefModel::BeliefModel(std::size_t dimension, BeliefParams params)
    : dimension_(dimension), params_(params), index_(dimension)
{
    if (params_.k < 1)
        throw std::invalid_argument("k must be at least 1");
    if (params_.lambda < 0.0 || params_.lambda > 1.0)
        throw std::invalid_argument("lambda must lie in [0, 1]");
    if (!(params_.wLambda > 0.0))
        throw std::invalid_argument("prior weight must be positive");
    if (!(params_.rPhi > 0.0))
        throw std::invalid_argument("influence radius must be positive");
    if (!(params_.epsilonDist > 0.0))
        throw std::invalid_argument("distance clamp must be positive");
}

void BeliefModel::setInfluenceRadius(double rPhi)
{
    if (!(rPhi > 0.0))
        throw std::invalid_argument("influence radius must be positive");
    params_.rPhi = rPhi;
}

bool BeliefModel::insert(const Config &q, bool inCollision)
{
    if (q.dimension() != dimension_)
        throw std::invalid_argument("configuration dimension mismatch");
    const auto [it, added] = ids_.try_emplace(q, static_cast<std::uint32_t>(flags_.size()));
    if (!added)
    {
        if ((flags_[it->second] != 0) != inCollision)
            throw std::logic_error("contradictory collision label for a stored configuration");
        return false;
    }
    points_.insert(points_.end(), q.values().begin(), q.values().end());
    flags_.push_back(inCollision ? 1 : 0);
    index_.insert(q.coords(), it->second);
    return true;
}

double BeliefModel::rhoFromNeighbors(std::span<const Neighbor> neighbors) const
{
    double weightSum = 0.0;
    double blockedSum = 0.0;
    for (const Neighbor &nb : neighbors)
    {
        const double w = 1.0 / std::max(nb.distance, params_.epsilonDist);
        weightSum += w;
        if (flags_[nb.id])
            blockedSum += w;
    }
    const double collision = (blockedSum + params_.wLambda * params_.lambda) / (weightSum + params_.wLambda);
    return 1.0 - collision;
}

double BeliefModel::probFree(std::span<const double> q) const
{
    std::vector<Neighbor> neighbors;
    index_.knnSearch(q, params_.k, params_.rPhi, neighbors);
    return rhoFromNeighbors(neighbors);
}

double BeliefModel::edgeMeasure(const Config &u, const Config &v, double resolution) const
{
    if (u.dimension() != dimension_ || v.dimension() != dimension_)
        throw std::invalid_argument("configuration dimension mismatch");
    // Same samples, bit for bit, as edgeSamples(), without materialising them.
    const bool swapped = std::lexicographical_compare(v.values().begin(), v.values().end(), u.values().begin(),
                                                      u.values().end());
    const Config &a = swapped ? v : u;
    const Config &b = swapped ? u : v;
    const double length = distance(a, b);
    const std::size_t count = edgeSampleCount(length, resolution);
    if (count == 1)
        return -std::log(probFree(a));
    const std::size_t segments = count - 1;

    const std::size_t dim = dimension_;
    std::vector<double> dir(dim), mid(dim), q(dim);
    for (std::size_t j = 0; j < dim; ++j)
    {
        dir[j] = (b[j] - a[j]) / length;
        mid[j] = 0.5 * (a[j] + b[j]);
    }
    auto project = [&](const double *p) {
        double t = 0.0;
        for (std::size_t j = 0; j < dim; ++j)
            t += (p[j] - a[j]) * dir[j];
        return t;
    };

    // Every point within rPhi of some sample lies within rPhi of the segment,
    // so one ball query around the midpoint gathers all candidates.
    const double rPhi = params_.rPhi;
    const double slack = 1e-9;
    thread_local std::vector<Neighbor> found;
    found.clear();
    index_.radiusSearch(mid, 0.5 * length + rPhi + slack, found);

    struct Candidate
    {
        double t;
        std::uint32_t id;
    };
    thread_local std::vector<Candidate> candidates;
    candidates.clear();
    for (const Neighbor &nb : found)
    {
        const double *p = points_.data() + static_cast<std::size_t>(nb.id) * dim;
        const double t = project(p);
        const double tc = std::clamp(t, 0.0, length);
        double off = 0.0;
        for (std::size_t j = 0; j < dim; ++j)
        {
            const double diff = p[j] - (a[j] + tc * dir[j]);
            off += diff * diff;
        }
        if (off <= (rPhi + slack) * (rPhi + slack))
            candidates.push_back({t, nb.id});
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const Candidate &x, const Candidate &y) { return x.t < y.t; });
    // Contiguous copies in projection order keep the window scans local.
    thread_local std::vector<double> coords;
    coords.resize(candidates.size() * dim);
    for (std::size_t c = 0; c < candidates.size(); ++c)
        std::copy_n(points_.data() + static_cast<std::size_t>(candidates[c].id) * dim, dim, coords.data() + c * dim);

    // A point can be within rPhi of a sample only if their projections onto
    // the edge are within rPhi, so each sample scans a sliding window. The
    // window is ranked on squared distance; square roots are taken only for
    // the k nearest and anything tied with them after rounding.
    const double bound = rPhi * rPhi;
    const std::size_t k = params_.k;
    const auto order = [](const Neighbor &x, const Neighbor &y) { return closerThan(x, y); };
    std::size_t lo = 0;
    thread_local std::vector<Neighbor> window;
    double total = 0.0;
    for (std::size_t i = 0; i < count; ++i)
    {
        if (i == 0)
            std::copy(a.values().begin(), a.values().end(), q.begin());
        else if (i == segments)
            std::copy(b.values().begin(), b.values().end(), q.begin());
        else
        {
            const double t = static_cast<double>(i) / static_cast<double>(segments);
            for (std::size_t j = 0; j < dim; ++j)
                q[j] = a[j] + t * (b[j] - a[j]);
        }
        const double tq = project(q.data());
        while (lo < candidates.size() && candidates[lo].t < tq - rPhi - slack)
            ++lo;
        window.clear();
        for (std::size_t c = lo; c < candidates.size() && candidates[c].t <= tq + rPhi + slack; ++c)
        {
            const double *p = coords.data() + c * dim;
            double d2 = 0.0;
            for (std::size_t j = 0; j < dim; ++j)
            {
                const double diff = q[j] - p[j];
                d2 += diff * diff;
            }
            if (d2 <= bound)
                window.push_back({candidates[c].id, d2});
        }
        if (window.size() > k)
        {
            const auto kth = window.begin() + static_cast<std::ptrdiff_t>(k - 1);
            std::nth_element(window.begin(), kth, window.end(), order);
            const double cut = std::sqrt(kth->distance);
            auto keepEnd = window.begin() + static_cast<std::ptrdiff_t>(k);
            for (auto it = keepEnd; it != window.end(); ++it)
                if (std::sqrt(it->distance) <= cut)
                    std::iter_swap(it, keepEnd++);
            window.erase(keepEnd, window.end());
        }
        for (Neighbor &nb : window)
            nb.distance = std::sqrt(nb.distance);
        std::sort(window.begin(), window.end(), order);
        if (window.size() > k)
            window.resize(k);
        total += -std::log(rhoFromNeighbors(window));
    }
    return total;
}

double affectedRadius(double edgeLength, double rPhi)
{
    if (edgeLength < 0.0)
        throw std::invalid_argument("edge length must be non-negative");
    return std::sqrt(edgeLength * edgeLength / 4.0 + rPhi * rPhi);
}

std::vector<VertexId> affectedVertices(const BeliefModel &model, const Roadmap &roadmap, EdgeId e)
{
    const VertexId u = roadmap.edgeSource(e);
    const VertexId v = roadmap.edgeTarget(e);
    const double reach = affectedRadius(roadmap.edgeLength(e), model.params().rPhi);
    std::vector<VertexId> out = roadmap.verticesWithin(roadmap.point(u), reach);
    const std::vector<VertexId> other = roadmap.verticesWithin(roadmap.point(v), reach);
    out.insert(out.end(), other.begin(), other.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::size_t applyEdgeResults(BeliefModel &model, Roadmap &roadmap, EdgeId e, const std::vector<TestedConfig> &tested,
                             bool countEdges)
{
    std::vector<const Config *> added;
    for (const TestedConfig &t : tested)
        if (model.insert(t.q, t.inCollision))
            added.push_back(&t.q);

    const VertexId u = roadmap.edgeSource(e);
    const VertexId v = roadmap.edgeTarget(e);
    const double reach = model.params().rPhi + 1e-9;
    auto touched = [&](VertexId a, VertexId b) {
        if (segmentDistance(roadmap.point(a), roadmap.point(b), roadmap.point(u), roadmap.point(v)) > reach)
            return false;
        for (const Config *q : added)
            if (segmentDistance(roadmap.point(a), roadmap.point(b), q->coords(), q->coords()) <= reach)
                return true;
        return false;
    };

    std::size_t count = 0;
    if (countEdges)
    {
        const std::vector<VertexId> affected = affectedVertices(model, roadmap, e);
        for (VertexId w : affected)
            for (const Incidence &inc : roadmap.neighbors(w))
            {
                if (roadmap.status(inc.edge) != EdgeStatus::Unknown)
                    continue;
                // Edges with both ends affected are counted from the smaller end.
                if (std::binary_search(affected.begin(), affected.end(), inc.target) && w > inc.target)
                    continue;
                ++count;
            }
    }
    if (added.empty())
        return count;

    // An edge of length at most R passing within rPhi of a point on e has an
    // endpoint within sqrt(R^2/4 + rPhi^2) of e, which can lie outside the
    // endpoint balls when R exceeds the length of e.
    const double length = roadmap.edgeLength(e);
    const double far = affectedRadius(roadmap.radius(), reach);
    std::vector<double> mid(roadmap.dimension());
    for (std::size_t j = 0; j < mid.size(); ++j)
        mid[j] = 0.5 * (roadmap.point(u)[j] + roadmap.point(v)[j]);
    for (VertexId w : roadmap.verticesWithin(mid, 0.5 * length + far))
    {
        if (segmentDistance(roadmap.point(u), roadmap.point(v), roadmap.point(w), roadmap.point(w)) > far)
            continue;
        for (const Incidence &inc : roadmap.neighbors(w))
            if (roadmap.status(inc.edge) == EdgeStatus::Unknown && !roadmap.measureStale(inc.edge) &&
                touched(w, inc.target))
                roadmap.markMeasureStale(inc.edge);
    }
    return count;
}

}  // namespace anytime
