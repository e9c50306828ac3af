#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "anytime/belief.hpp"
#include "anytime/roadmap.hpp"
#include "anytime/world.hpp"

namespace anytime
{

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// alpha * w_l + (1 - alpha) * w_m. Infinite weights stay infinite.
double blendedWeight(double lengthWeight, double measureWeight, double alpha);

/// w_l + (1 - rho) * beta.
double expectedWeight(double lengthWeight, double beta, double rho);

/// The beta at which the expected-length penalty (1 - rho) * beta equals the
/// blended penalty (1 - alpha) / alpha * (-log rho).
double solveBeta(double alpha, double rho);

struct WeightPolicy
{
    enum class Kind
    {
        AlphaBlend,
        ExpectedLength
    };
    Kind kind = Kind::AlphaBlend;
    double value = 1.0;  // alpha or beta

    static WeightPolicy alphaBlend(double alpha) { return {Kind::AlphaBlend, alpha}; }
    static WeightPolicy expectedLength(double beta) { return {Kind::ExpectedLength, beta}; }
};

/// Collision measure of an edge, recomputed from the model when stale. With
/// no model every tested configuration contributes -log(1 - lambda) for the
/// default prior.
double edgeMeasureWeight(Roadmap &roadmap, const BeliefModel *belief, EdgeId e);

/// Edge weight under a policy; infinite for Blocked edges.
double policyWeight(Roadmap &roadmap, const BeliefModel *belief, EdgeId e, const WeightPolicy &policy);

struct SearchResult
{
    bool found = false;
    std::vector<VertexId> path;
    double cost = kInfinity;
    std::size_t expansions = 0;
};

/// Reusable per-vertex buffers so repeated searches avoid reallocation.
class SearchWorkspace
{
public:
    void prepare(std::size_t vertices);

    std::vector<double> g;
    std::vector<VertexId> parent;
    std::vector<std::uint32_t> seen;
    std::vector<std::uint32_t> closed;
    std::uint32_t stamp = 0;
};

/// A* from start to goal over non-Blocked edges with heuristic
/// heuristicScale * distance(v, goal). With `freeOnly` only Free edges are used.
SearchResult optimisticSearch(Roadmap &roadmap, const BeliefModel *belief, const WeightPolicy &policy,
                              double heuristicScale, SearchWorkspace &workspace, bool freeOnly = false);

/// Sum of policy weights along a path, in path order.
double pathCost(Roadmap &roadmap, const BeliefModel *belief, const std::vector<VertexId> &path,
                const WeightPolicy &policy);

/// Euclidean length along a path.
double pathLength(const Roadmap &roadmap, const std::vector<VertexId> &path);

struct LazyEvalResult
{
    EdgeStatus status = EdgeStatus::Free;
    std::size_t newlyEvaluated = 0;
    EdgeId blockedEdge = kNoEdge;
};

/// Evaluates the path's edges in order, stopping at the first Blocked one.
/// Each fresh evaluation is fed to the model when one is given.
LazyEvalResult lazyEvalPath(Roadmap &roadmap, const World &world, BeliefModel *belief,
                            const std::vector<VertexId> &path);

struct AnytimeSolution
{
    std::vector<VertexId> path;
    double length = kInfinity;
    double alpha = 0.0;
    std::uint64_t checks = 0;
    double seconds = 0.0;
};

struct PlannerEvent
{
    enum class Kind
    {
        Solution,
        AlphaAdvanced,
        PathRejected,
        Infeasible
    };
    Kind kind;
    double alpha = 0.0;
    std::uint64_t checks = 0;
    double seconds = 0.0;
    const AnytimeSolution *solution = nullptr;  // set for Solution events
};

using PlannerCallback = std::function<void(const PlannerEvent &)>;

struct PompOptions
{
    double dAlpha = 0.1;
    double startAlpha = 0.0;
    bool stopAtFirstSolution = false;
    /// Give up before the next path evaluation once more than this many
    /// detector calls were spent. A run that completes is reported in full.
    std::optional<std::uint64_t> checkBudget;
};

struct PlannerResult
{
    bool feasible = false;
    std::vector<AnytimeSolution> solutions;  // strictly decreasing lengths
    std::size_t searches = 0;
    std::size_t evaluations = 0;
    std::uint64_t checks = 0;  // detector calls during this run
    bool budgetExhausted = false;

    const AnytimeSolution &best() const { return solutions.back(); }
};

/// Pareto-sweeping lazy planner. Starting from startAlpha, each round searches
/// under the blended weight; a new candidate is evaluated lazily and, if free,
/// yielded. Alpha advances when the candidate brings no improvement over the
/// current solution or has just been yielded; the run ends after alpha = 1.
PlannerResult pomp(Roadmap &roadmap, const World &world, BeliefModel *belief, const PompOptions &options = {},
                   const PlannerCallback &callback = {});

/// Lazy shortest path: the same loop pinned at alpha = 1 without a model.
PlannerResult lazySpBaseline(Roadmap &roadmap, const World &world, const PlannerCallback &callback = {},
                             bool stopAtFirstSolution = false,
                             std::optional<std::uint64_t> checkBudget = std::nullopt);

struct OracleResult
{
    bool feasible = false;
    std::vector<VertexId> path;
    double length = kInfinity;
};

/// Evaluates every edge of the current batch, then returns the shortest
/// start-goal path over Free edges.
OracleResult shortestPathOracle(Roadmap &roadmap, const World &world);

}  // namespace anytime
