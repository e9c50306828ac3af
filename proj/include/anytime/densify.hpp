#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "anytime/belief.hpp"
#include "anytime/config.hpp"
#include "anytime/roadmap.hpp"
#include "anytime/search.hpp"
#include "anytime/world.hpp"

namespace anytime
{

enum class Strategy
{
    Vertex,
    Edge,
    Hybrid,
    None
};

Strategy parseStrategy(const std::string &name);
std::string strategyName(Strategy strategy);

struct Batch
{
    std::size_t n;
    double r;
    int phase = 1;  // hybrid batching: 1 while doubling vertices, 2 once n = N
};

/// Batch sequence ending at (N, sqrt(d)). Fewer than 100 samples, or the
/// None strategy, give a single complete batch.
std::vector<Batch> makeSchedule(Strategy strategy, std::size_t N, std::size_t d);

/// Vertices needed before a path of clearance deltaStar is guaranteed.
double nMin(double deltaStar, std::size_t d);

/// Radius needed for connectivity guarantees with n vertices.
double rMin(double n, std::size_t d);

/// Configurations that can lie on a path from s1 to s2 no longer than cBest.
struct InformedSet
{
    Config s1;
    Config s2;
    double cBest = kInfinity;

    bool contains(const Config &q) const;
    double cMin() const { return distance(s1, s2); }
};

/// Volume of the prolate hyperspheroid {q : |s1 q| + |q s2| <= cBest}.
double ellipsoidVolume(double cBest, double cMin, std::size_t d);

enum class PlannerKind
{
    Pomp,
    LazySp
};

PlannerKind parsePlanner(const std::string &name);
std::string plannerName(PlannerKind planner);

struct DensifyOptions
{
    PlannerKind planner = PlannerKind::Pomp;
    double dAlpha = 0.1;
    BeliefParams belief;
    /// Influence radius is min(batch radius, rPhiCap).
    double rPhiCap = 0.1;
    bool pruning = true;
    /// Prune only after the best length improves by more than this fraction.
    double pruneThreshold = 0.01;
    bool stopAtFirstSolution = false;
    /// Abandon the run when it needs more work after spending more than this
    /// many detector calls; 0 disables. An abandoned run reports
    /// budgetExhausted, not infeasible.
    std::uint64_t checkBudget = 0;
};

struct TraceEvent
{
    enum class Kind
    {
        Solution,
        BatchDone,
        Infeasible
    };
    Kind kind;
    double seconds = 0.0;
    std::uint64_t checks = 0;
    double length = kInfinity;
    std::size_t batch = 0;
    double alpha = 0.0;
};

struct GlobalSolution
{
    std::vector<VertexId> path;
    double length = kInfinity;
    std::size_t batch = 0;
    double alpha = 0.0;
    std::uint64_t checks = 0;
    double seconds = 0.0;
};

struct DensifyResult
{
    bool feasible = false;
    std::vector<GlobalSolution> solutions;  // strictly decreasing lengths
    std::vector<TraceEvent> events;
    std::vector<Batch> schedule;
    std::size_t batchesRun = 0;
    std::uint64_t distinctEdgesConsidered = 0;
    std::uint64_t totalChecks = 0;
    bool budgetExhausted = false;
    std::shared_ptr<Roadmap> roadmap;

    const GlobalSolution &best() const { return solutions.back(); }
};

/// Searches each batch of the schedule to completion with the chosen planner,
/// carrying edge evaluations and the belief model across batches and pruning
/// vertices that cannot improve on the best solution.
DensifyResult runDensification(const World &world, std::vector<Config> samples, const std::vector<Batch> &schedule,
                               double resolution, const DensifyOptions &options = {});

}  // namespace anytime
