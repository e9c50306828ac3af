#include "anytime/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "anytime/config.hpp"

namespace anytime
{

namespace
{
constexpr std::uint32_t kLeafSize = 8;

struct HeapOrder
{
    bool operator()(const Neighbor &a, const Neighbor &b) const { return closerThan(a, b); }
};

using KnnHeap = std::priority_queue<Neighbor, std::vector<Neighbor>, HeapOrder>;
}  // namespace

void KdTree::build(std::vector<double> points, std::vector<std::uint32_t> ids)
{
    if (dimension_ == 0)
        throw std::invalid_argument("kd-tree dimension must be positive");
    if (points.size() != ids.size() * dimension_)
        throw std::invalid_argument("kd-tree point buffer does not match id count");

    nodes_.clear();
    std::vector<std::uint32_t> order(ids.size());
    std::iota(order.begin(), order.end(), 0u);

    points_ = std::move(points);
    ids_ = std::move(ids);
    if (ids_.empty())
        return;

    nodes_.reserve(2 * ids_.size() / kLeafSize + 2);
    buildNode(0, static_cast<std::uint32_t>(ids_.size()), order);

    // Permute storage into tree order so leaves are contiguous.
    std::vector<double> permutedPoints(points_.size());
    std::vector<std::uint32_t> permutedIds(ids_.size());
    for (std::size_t slot = 0; slot < order.size(); ++slot)
    {
        const std::size_t src = order[slot];
        std::copy_n(points_.begin() + static_cast<std::ptrdiff_t>(src * dimension_), dimension_,
                    permutedPoints.begin() + static_cast<std::ptrdiff_t>(slot * dimension_));
        permutedIds[slot] = ids_[src];
    }
    points_ = std::move(permutedPoints);
    ids_ = std::move(permutedIds);
}

std::uint32_t KdTree::buildNode(std::uint32_t begin, std::uint32_t end, std::vector<std::uint32_t> &order)
{
    const auto index = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back({begin, end, 0, 0, 0, 0.0});
    if (end - begin <= kLeafSize)
        return index;

    // Split on the axis of widest spread.
    std::uint32_t axis = 0;
    double widest = -1.0;
    for (std::uint32_t a = 0; a < dimension_; ++a)
    {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (std::uint32_t i = begin; i < end; ++i)
        {
            const double x = points_[order[i] * dimension_ + a];
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        if (hi - lo > widest)
        {
            widest = hi - lo;
            axis = a;
        }
    }

    const std::uint32_t mid = begin + (end - begin) / 2;
    std::nth_element(order.begin() + begin, order.begin() + mid, order.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) {
                         return points_[a * dimension_ + axis] < points_[b * dimension_ + axis];
                     });
    const double split = points_[order[mid] * dimension_ + axis];

    const std::uint32_t left = buildNode(begin, mid, order);
    const std::uint32_t right = buildNode(mid, end, order);
    nodes_[index].left = left;
    nodes_[index].right = right;
    nodes_[index].axis = axis;
    nodes_[index].split = split;
    return index;
}

void KdTree::radiusSearch(std::span<const double> query, double radius, std::vector<Neighbor> &out) const
{
    if (ids_.empty() || radius < 0.0)
        return;
    const double bound = radius * radius;
    std::vector<std::uint32_t> stack{0};
    while (!stack.empty())
    {
        const Node &node = nodes_[stack.back()];
        stack.pop_back();
        if (node.left == 0)
        {
            for (std::uint32_t slot = node.begin; slot < node.end; ++slot)
            {
                const double d2 = squaredDistance(query, point(slot));
                if (d2 <= bound)
                    out.push_back({ids_[slot], std::sqrt(d2)});
            }
            continue;
        }
        const double diff = query[node.axis] - node.split;
        // Left holds coordinates <= split, right holds >= split.
        if (diff <= 0.0 || diff * diff <= bound)
            stack.push_back(node.left);
        if (diff >= 0.0 || diff * diff <= bound)
            stack.push_back(node.right);
    }
}

void KdTree::knnSearch(std::span<const double> query, std::size_t k, double maxRadius,
                       std::vector<Neighbor> &out) const
{
    out.clear();
    if (ids_.empty() || k == 0 || maxRadius < 0.0)
        return;

    KnnHeap heap;
    const double radiusBound = maxRadius * maxRadius;
    auto bound = [&] {
        return heap.size() < k ? radiusBound : std::min(radiusBound, heap.top().distance);
    };

    // Distances are squared inside the search and rooted at the end.
    auto visit = [&](auto &&self, std::uint32_t index) -> void {
        const Node &node = nodes_[index];
        if (node.left == 0)
        {
            for (std::uint32_t slot = node.begin; slot < node.end; ++slot)
            {
                const double d2 = squaredDistance(query, point(slot));
                if (d2 > radiusBound)
                    continue;
                const Neighbor candidate{ids_[slot], d2};
                if (heap.size() < k)
                    heap.push(candidate);
                else if (closerThan(candidate, heap.top()))
                {
                    heap.pop();
                    heap.push(candidate);
                }
            }
            return;
        }
        const double diff = query[node.axis] - node.split;
        const std::uint32_t nearSide = diff <= 0.0 ? node.left : node.right;
        const std::uint32_t farSide = diff <= 0.0 ? node.right : node.left;
        self(self, nearSide);
        if (diff * diff <= bound())
            self(self, farSide);
    };
    visit(visit, 0);

    out.reserve(heap.size());
    while (!heap.empty())
    {
        out.push_back({heap.top().id, std::sqrt(heap.top().distance)});
        heap.pop();
    }
    std::sort(out.begin(), out.end(), closerThan);
}

std::optional<Neighbor> KdTree::nearest(std::span<const double> query) const
{
    std::vector<Neighbor> result;
    knnSearch(query, 1, std::numeric_limits<double>::infinity(), result);
    if (result.empty())
        return std::nullopt;
    return result.front();
}

void DynamicKdTree::insert(std::span<const double> point, std::uint32_t id)
{
    if (point.size() != dimension_)
        throw std::invalid_argument("point dimension mismatch");
    bufferPoints_.insert(bufferPoints_.end(), point.begin(), point.end());
    bufferIds_.push_back(id);
    ++size_;
    if (bufferIds_.size() < kBufferCapacity)
        return;

    // Carry the buffer into the first empty level, merging the full ones below it.
    std::vector<double> points = std::move(bufferPoints_);
    std::vector<std::uint32_t> ids = std::move(bufferIds_);
    bufferPoints_.clear();
    bufferIds_.clear();
    std::size_t level = 0;
    while (level < levels_.size() && !levels_[level].empty())
    {
        const KdTree &full = levels_[level];
        points.insert(points.end(), full.points().begin(), full.points().end());
        ids.insert(ids.end(), full.ids().begin(), full.ids().end());
        levels_[level] = KdTree(dimension_);
        ++level;
    }
    if (level == levels_.size())
        levels_.emplace_back(dimension_);
    levels_[level].build(std::move(points), std::move(ids));
}

void DynamicKdTree::radiusSearch(std::span<const double> query, double radius, std::vector<Neighbor> &out) const
{
    for (const KdTree &tree : levels_)
        tree.radiusSearch(query, radius, out);
    const double bound = radius * radius;
    for (std::size_t i = 0; i < bufferIds_.size(); ++i)
    {
        const double d2 = squaredDistance(query, {bufferPoints_.data() + i * dimension_, dimension_});
        if (d2 <= bound)
            out.push_back({bufferIds_[i], std::sqrt(d2)});
    }
}

void DynamicKdTree::knnSearch(std::span<const double> query, std::size_t k, double maxRadius,
                              std::vector<Neighbor> &out) const
{
    out.clear();
    if (k == 0)
        return;
    std::vector<Neighbor> partial;
    for (const KdTree &tree : levels_)
    {
        tree.knnSearch(query, k, maxRadius, partial);
        out.insert(out.end(), partial.begin(), partial.end());
    }
    const double bound = maxRadius * maxRadius;
    for (std::size_t i = 0; i < bufferIds_.size(); ++i)
    {
        const double d2 = squaredDistance(query, {bufferPoints_.data() + i * dimension_, dimension_});
        if (d2 <= bound)
            out.push_back({bufferIds_[i], std::sqrt(d2)});
    }
    std::sort(out.begin(), out.end(), closerThan);
    if (out.size() > k)
        out.resize(k);
}

}  // namespace anytime
