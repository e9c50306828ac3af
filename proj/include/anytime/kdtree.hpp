#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace anytime
{

struct Neighbor
{
    std::uint32_t id;
    double distance;
};

/// Orders by distance, then id. All k-NN results use this order.
inline bool closerThan(const Neighbor &a, const Neighbor &b)
{
    return a.distance < b.distance || (a.distance == b.distance && a.id < b.id);
}

/// Static kd-tree over points in R^d. Build once, query many times.
class KdTree
{
public:
    explicit KdTree(std::size_t dimension = 0) : dimension_(dimension) {}

    /// `points` is row-major, ids.size() * dimension values.
    void build(std::vector<double> points, std::vector<std::uint32_t> ids);

    std::size_t size() const { return ids_.size(); }
    std::size_t dimension() const { return dimension_; }
    bool empty() const { return ids_.empty(); }

    /// Appends every point with distance <= radius. Unordered.
    void radiusSearch(std::span<const double> query, double radius, std::vector<Neighbor> &out) const;

    /// Up to k nearest points with distance <= maxRadius, ordered by closerThan.
    void knnSearch(std::span<const double> query, std::size_t k, double maxRadius,
                   std::vector<Neighbor> &out) const;

    std::optional<Neighbor> nearest(std::span<const double> query) const;

    const std::vector<double> &points() const { return points_; }
    const std::vector<std::uint32_t> &ids() const { return ids_; }

private:
    struct Node
    {
        std::uint32_t begin;
        std::uint32_t end;
        std::uint32_t left;   // 0 for leaves
        std::uint32_t right;
        std::uint32_t axis;
        double split;
    };

    std::uint32_t buildNode(std::uint32_t begin, std::uint32_t end, std::vector<std::uint32_t> &order);
    std::span<const double> point(std::uint32_t slot) const
    {
        return {points_.data() + static_cast<std::size_t>(slot) * dimension_, dimension_};
    }

    std::size_t dimension_;
    std::vector<double> points_;
    std::vector<std::uint32_t> ids_;
    std::vector<Node> nodes_;
};

/// Insert-only index built from a logarithmic set of static kd-trees plus a
/// small linear buffer.
class DynamicKdTree
{
public:
    explicit DynamicKdTree(std::size_t dimension = 0) : dimension_(dimension) {}

    void insert(std::span<const double> point, std::uint32_t id);

    std::size_t size() const { return size_; }
    std::size_t dimension() const { return dimension_; }

    void radiusSearch(std::span<const double> query, double radius, std::vector<Neighbor> &out) const;
    void knnSearch(std::span<const double> query, std::size_t k, double maxRadius,
                   std::vector<Neighbor> &out) const;

private:
    static constexpr std::size_t kBufferCapacity = 32;

    std::size_t dimension_;
    std::size_t size_ = 0;
    std::vector<double> bufferPoints_;
    std::vector<std::uint32_t> bufferIds_;
    std::vector<KdTree> levels_;  // level i holds 0 or kBufferCapacity * 2^i points
};

}  // namespace anytime
