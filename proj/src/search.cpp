#include "anytime/search.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace anytime
{

double blendedWeight(double lengthWeight, double measureWeight, double alpha)
{
    if (std::isinf(lengthWeight) || std::isinf(measureWeight))
        return kInfinity;
    return alpha * lengthWeight + (1.0 - alpha) * measureWeight;
}

double expectedWeight(double lengthWeight, double beta, double rho)
{
    return lengthWeight + (1.0 - rho) * beta;
}

double solveBeta(double alpha, double rho)
{
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("alpha must lie in (0, 1]");
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument("rho must lie in (0, 1)");
    return (1.0 - alpha) / alpha * (-std::log(rho)) / (1.0 - rho);
}

double edgeMeasureWeight(Roadmap &roadmap, const BeliefModel *belief, EdgeId e)
{
    if (const auto cached = roadmap.cachedMeasure(e))
        return *cached;
    double value;
    const VertexId u = roadmap.edgeSource(e);
    const VertexId v = roadmap.edgeTarget(e);
    if (belief)
    {
        value = belief->edgeMeasure(roadmap.sample(u), roadmap.sample(v), roadmap.resolution());
    }
    else
    {
        const BeliefParams prior;
        value = static_cast<double>(edgeSampleCount(roadmap.edgeLength(e), roadmap.resolution())) *
                -std::log(1.0 - prior.lambda);
    }
    roadmap.storeMeasure(e, value);
    return value;
}

double policyWeight(Roadmap &roadmap, const BeliefModel *belief, EdgeId e, const WeightPolicy &policy)
{
    if (roadmap.status(e) == EdgeStatus::Blocked)
        return kInfinity;
    const double length = roadmap.edgeLength(e);
    if (policy.kind == WeightPolicy::Kind::AlphaBlend)
    {
        if (policy.value >= 1.0)
            return length;
        return blendedWeight(length, edgeMeasureWeight(roadmap, belief, e), policy.value);
    }
    const double rho = std::exp(-edgeMeasureWeight(roadmap, belief, e));
    return expectedWeight(length, policy.value, rho);
}

void SearchWorkspace::prepare(std::size_t vertices)
{
    if (g.size() < vertices)
    {
        g.resize(vertices);
        parent.resize(vertices);
        seen.resize(vertices, 0);
        closed.resize(vertices, 0);
    }
    if (++stamp == 0)
    {
        std::fill(seen.begin(), seen.end(), 0);
        std::fill(closed.begin(), closed.end(), 0);
        stamp = 1;
    }
}

SearchResult optimisticSearch(Roadmap &roadmap, const BeliefModel *belief, const WeightPolicy &policy,
                              double heuristicScale, SearchWorkspace &ws, bool freeOnly)
{
    SearchResult result;
    if (!roadmap.isActive(kStartVertex) || !roadmap.isActive(kGoalVertex))
        return result;
    ws.prepare(roadmap.sampleCount());
    const std::uint32_t stamp = ws.stamp;
    const auto goal = roadmap.point(kGoalVertex);
    auto heuristic = [&](VertexId v) {
        return heuristicScale == 0.0 ? 0.0 : heuristicScale * distance(roadmap.point(v), goal);
    };

    // Entries order by f, then h, then vertex id.
    using Entry = std::tuple<double, double, VertexId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    ws.g[kStartVertex] = 0.0;
    ws.parent[kStartVertex] = kStartVertex;
    ws.seen[kStartVertex] = stamp;
    const double h0 = heuristic(kStartVertex);
    open.emplace(h0, h0, kStartVertex);

    while (!open.empty())
    {
        const VertexId v = std::get<2>(open.top());
        open.pop();
        if (ws.closed[v] == stamp)
            continue;
        ws.closed[v] = stamp;
        if (v == kGoalVertex)
        {
            result.found = true;
            result.cost = ws.g[v];
            for (VertexId w = v; w != kStartVertex; w = ws.parent[w])
                result.path.push_back(w);
            result.path.push_back(kStartVertex);
            std::reverse(result.path.begin(), result.path.end());
            return result;
        }
        ++result.expansions;
        const double gv = ws.g[v];
        for (const Incidence &inc : roadmap.neighbors(v))
        {
            const VertexId t = inc.target;
            if (ws.closed[t] == stamp)
                continue;
            const EdgeStatus s = roadmap.status(inc.edge);
            if (s == EdgeStatus::Blocked || (freeOnly && s != EdgeStatus::Free))
                continue;
            const double w = policyWeight(roadmap, belief, inc.edge, policy);
            if (std::isinf(w))
                continue;
            const double candidate = gv + w;
            if (ws.seen[t] != stamp || candidate < ws.g[t])
            {
                ws.seen[t] = stamp;
                ws.g[t] = candidate;
                ws.parent[t] = v;
                const double h = heuristic(t);
                open.emplace(candidate + h, h, t);
            }
        }
    }
    return result;
}

double pathCost(Roadmap &roadmap, const BeliefModel *belief, const std::vector<VertexId> &path,
                const WeightPolicy &policy)
{
    double cost = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
    {
        const EdgeId e = roadmap.findEdge(path[i], path[i + 1]);
        if (e == kNoEdge)
            return kInfinity;
        cost += policyWeight(roadmap, belief, e, policy);
    }
    return cost;
}

double pathLength(const Roadmap &roadmap, const std::vector<VertexId> &path)
{
    double length = 0.0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        length += distance(roadmap.point(path[i]), roadmap.point(path[i + 1]));
    return length;
}

LazyEvalResult lazyEvalPath(Roadmap &roadmap, const World &world, BeliefModel *belief,
                            const std::vector<VertexId> &path)
{
    LazyEvalResult result;
    Roadmap::EvaluationObserver observer;
    if (belief)
        observer = [&](EdgeId e, const EdgeResult &r) { applyEdgeResults(*belief, roadmap, e, r.tested, false); };
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
    {
        const EdgeId e = roadmap.findEdge(path[i], path[i + 1]);
        if (e == kNoEdge)
            throw std::invalid_argument("path uses a pair that is not a roadmap edge");
        const bool fresh = roadmap.status(e) == EdgeStatus::Unknown;
        const EdgeStatus s = roadmap.evaluateEdge(e, world, observer);
        if (fresh)
            ++result.newlyEvaluated;
        if (s == EdgeStatus::Blocked)
        {
            result.status = EdgeStatus::Blocked;
            result.blockedEdge = e;
            return result;
        }
    }
    return result;
}

PlannerResult pomp(Roadmap &roadmap, const World &world, BeliefModel *belief, const PompOptions &options,
                   const PlannerCallback &callback)
{
    if (!(options.dAlpha > 0.0 && options.dAlpha <= 1.0))
        throw std::invalid_argument("alpha step must lie in (0, 1]");
    if (!(options.startAlpha >= 0.0 && options.startAlpha <= 1.0))
        throw std::invalid_argument("start alpha must lie in [0, 1]");

    const auto started = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    };
    const std::uint64_t checksAtStart = world.checkCount();
    auto emit = [&](PlannerEvent::Kind kind, double alpha, const AnytimeSolution *solution = nullptr) {
        if (callback)
            callback({kind, alpha, world.checkCount(), elapsed(), solution});
    };

    PlannerResult result;
    result.solutions.reserve(16);
    SearchWorkspace workspace;
    std::size_t step = 0;
    double alpha = options.startAlpha;

    // Returns false once alpha = 1 has been completed.
    auto advance = [&] {
        if (alpha >= 1.0)
            return false;
        ++step;
        alpha = std::min(1.0, options.startAlpha + static_cast<double>(step) * options.dAlpha);
        emit(PlannerEvent::Kind::AlphaAdvanced, alpha);
        return true;
    };
    // Checked before each evaluation, so a run that finishes is never cut.
    auto overBudget = [&] {
        result.budgetExhausted = options.checkBudget && world.checkCount() - checksAtStart > *options.checkBudget;
        return result.budgetExhausted;
    };

    while (true)
    {
        const WeightPolicy policy = WeightPolicy::alphaBlend(alpha);
        SearchResult candidate = optimisticSearch(roadmap, belief, policy, alpha, workspace);
        ++result.searches;
        if (!candidate.found)
            break;

        if (!result.solutions.empty())
        {
            const AnytimeSolution &current = result.solutions.back();
            const double currentCost = pathCost(roadmap, belief, current.path, policy);
            const double tolerance = 1e-12 * std::max(1.0, currentCost);
            if (candidate.path == current.path || candidate.cost >= currentCost - tolerance)
            {
                if (!advance())
                    break;
                continue;
            }
        }

        if (overBudget())
            break;
        const LazyEvalResult eval = lazyEvalPath(roadmap, world, belief, candidate.path);
        result.evaluations += eval.newlyEvaluated;
        if (eval.status == EdgeStatus::Blocked)
        {
            emit(PlannerEvent::Kind::PathRejected, alpha);
            continue;
        }

        AnytimeSolution solution;
        solution.path = std::move(candidate.path);
        solution.length = pathLength(roadmap, solution.path);
        solution.alpha = alpha;
        solution.checks = world.checkCount();
        solution.seconds = elapsed();
        result.solutions.push_back(std::move(solution));
        emit(PlannerEvent::Kind::Solution, alpha, &result.solutions.back());
        if (options.stopAtFirstSolution || !advance())
            break;
    }

    result.feasible = !result.solutions.empty();
    result.checks = world.checkCount() - checksAtStart;
    if (!result.feasible && !result.budgetExhausted)
        emit(PlannerEvent::Kind::Infeasible, alpha);
    return result;
}

PlannerResult lazySpBaseline(Roadmap &roadmap, const World &world, const PlannerCallback &callback,
                             bool stopAtFirstSolution, std::optional<std::uint64_t> checkBudget)
{
    PompOptions options;
    options.startAlpha = 1.0;
    options.stopAtFirstSolution = stopAtFirstSolution;
    options.checkBudget = checkBudget;
    return pomp(roadmap, world, nullptr, options, callback);
}

OracleResult shortestPathOracle(Roadmap &roadmap, const World &world)
{
    for (EdgeId e = 0; e < roadmap.edgeCount(); ++e)
        roadmap.evaluateEdge(e, world);
    SearchWorkspace workspace;
    const SearchResult found =
        optimisticSearch(roadmap, nullptr, WeightPolicy::alphaBlend(1.0), 1.0, workspace, /*freeOnly=*/true);
    OracleResult result;
    if (!found.found)
        return result;
    result.feasible = true;
    result.path = found.path;
    result.length = pathLength(roadmap, found.path);
    return result;
}

}  // namespace anytime
