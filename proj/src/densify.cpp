#include "anytime/densify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "anytime/halton.hpp"

namespace anytime
{

Strategy parseStrategy(const std::string &name)
{
    if (name == "vertex")
        return Strategy::Vertex;
    if (name == "edge")
        return Strategy::Edge;
    if (name == "hybrid")
        return Strategy::Hybrid;
    if (name == "none")
        return Strategy::None;
    throw std::invalid_argument("unknown strategy '" + name + "' (expected vertex, edge, hybrid or none)");
}

std::string strategyName(Strategy strategy)
{
    switch (strategy)
    {
    case Strategy::Vertex:
        return "vertex";
    case Strategy::Edge:
        return "edge";
    case Strategy::Hybrid:
        return "hybrid";
    case Strategy::None:
        return "none";
    }
    return "none";
}

PlannerKind parsePlanner(const std::string &name)
{
    if (name == "pomp")
        return PlannerKind::Pomp;
    if (name == "lazysp")
        return PlannerKind::LazySp;
    throw std::invalid_argument("unknown planner '" + name + "' (expected pomp or lazysp)");
}

std::string plannerName(PlannerKind planner)
{
    return planner == PlannerKind::Pomp ? "pomp" : "lazysp";
}

namespace
{
constexpr std::size_t kInitialVertices = 100;
constexpr double kRadiusConstant = 3.0;

void appendEdgePhase(std::vector<Batch> &out, std::size_t N, std::size_t d, int phase)
{
    const double diameter = std::sqrt(static_cast<double>(d));
    const double ratio = std::pow(2.0, 1.0 / static_cast<double>(d));
    double r = kRadiusConstant * std::pow(static_cast<double>(N), -1.0 / static_cast<double>(d));
    while (r < diameter)
    {
        out.push_back({N, r, phase});
        r *= ratio;
    }
    out.push_back({N, diameter, phase});
}
}  // namespace

std::vector<Batch> makeSchedule(Strategy strategy, std::size_t N, std::size_t d)
{
    if (N < 1 || d < 1)
        throw std::invalid_argument("schedule needs N >= 1 and d >= 1");
    const double diameter = std::sqrt(static_cast<double>(d));
    std::vector<Batch> out;
    if (strategy == Strategy::None || N < kInitialVertices)
    {
        out.push_back({N, diameter, 2});
        return out;
    }
    switch (strategy)
    {
    case Strategy::Vertex:
        for (std::size_t n = kInitialVertices; n < N; n *= 2)
            out.push_back({n, diameter, 1});
        out.push_back({N, diameter, 2});
        break;
    case Strategy::Edge:
        appendEdgePhase(out, N, d, 2);
        break;
    case Strategy::Hybrid:
        for (std::size_t n = kInitialVertices; n < N; n *= 2)
        {
            const double r = kRadiusConstant * std::pow(static_cast<double>(n), -1.0 / static_cast<double>(d));
            out.push_back({n, std::min(r, diameter), 1});
        }
        appendEdgePhase(out, N, d, 2);
        break;
    case Strategy::None:
        break;
    }
    return out;
}

double nMin(double deltaStar, std::size_t d)
{
    if (!(deltaStar > 0.0))
        throw std::invalid_argument("clearance must be positive");
    return std::pow(2.0 * nthPrime(d) / deltaStar, static_cast<double>(d));
}

double rMin(double n, std::size_t d)
{
    return 2.0 * dispersionBound(n, d);
}

bool InformedSet::contains(const Config &q) const
{
    if (std::isinf(cBest))
        return true;
    return distance(s1, q) + distance(q, s2) <= cBest;
}

double ellipsoidVolume(double cBest, double cMin, std::size_t d)
{
    if (!(cMin > 0.0) || cBest < cMin)
        throw std::invalid_argument("ellipsoid volume needs cBest >= cMin > 0");
    const double dd = static_cast<double>(d);
    return cBest * std::pow(cBest * cBest - cMin * cMin, (dd - 1.0) / 2.0) * unitBallVolume(d) / std::pow(2.0, dd);
}

DensifyResult runDensification(const World &world, std::vector<Config> samples, const std::vector<Batch> &schedule,
                               double resolution, const DensifyOptions &options)
{
    if (schedule.empty())
        throw std::invalid_argument("empty batch schedule");
    if (samples.size() < 2)
        throw std::invalid_argument("samples must hold at least start and goal");

    const auto started = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    };
    const std::uint64_t checksAtStart = world.checkCount();

    DensifyResult result;
    result.schedule = schedule;
    const std::size_t d = samples.front().dimension();
    InformedSet informed{samples[kStartVertex], samples[kGoalVertex], kInfinity};
    // A hair of slack keeps the current best path's own vertices inside.
    auto keep = [&informed](const Config &q) {
        if (std::isinf(informed.cBest))
            return true;
        const double tolerance = 1e-12 * std::max(1.0, informed.cBest);
        return distance(informed.s1, q) + distance(q, informed.s2) <= informed.cBest + tolerance;
    };

    result.roadmap = std::make_shared<Roadmap>(std::move(samples), schedule.front().n, schedule.front().r, resolution);
    Roadmap &roadmap = *result.roadmap;

    std::unique_ptr<BeliefModel> belief;
    if (options.planner == PlannerKind::Pomp)
    {
        BeliefParams params = options.belief;
        params.rPhi = std::min(schedule.front().r, options.rPhiCap);
        belief = std::make_unique<BeliefModel>(d, params);
    }

    double lastPruned = kInfinity;
    for (std::size_t b = 0; b < schedule.size(); ++b)
    {
        if (b > 0)
        {
            if (options.pruning && informed.cBest < lastPruned * (1.0 - options.pruneThreshold))
            {
                roadmap.pruneOutside(keep);
                lastPruned = informed.cBest;
            }
            roadmap.setBatch(schedule[b].n, schedule[b].r, options.pruning ? VertexFilter(keep) : VertexFilter{});
            if (belief)
                belief->setInfluenceRadius(std::min(schedule[b].r, options.rPhiCap));
        }

        auto onPlannerEvent = [&](const PlannerEvent &event) {
            if (event.kind != PlannerEvent::Kind::Solution)
                return;
            const AnytimeSolution &s = *event.solution;
            if (!result.solutions.empty() && !(s.length < result.solutions.back().length))
                return;
            result.solutions.push_back({s.path, s.length, b, s.alpha, event.checks, elapsed()});
            informed.cBest = s.length;
            result.events.push_back(
                {TraceEvent::Kind::Solution, result.solutions.back().seconds, event.checks, s.length, b, s.alpha});
        };

        const std::uint64_t spent = world.checkCount() - checksAtStart;
        std::optional<std::uint64_t> remaining;
        if (options.checkBudget > 0)
        {
            if (spent > options.checkBudget)
            {
                result.budgetExhausted = true;
                break;
            }
            remaining = options.checkBudget - spent;
        }
        PlannerResult planned;
        if (options.planner == PlannerKind::Pomp)
        {
            PompOptions pompOptions;
            pompOptions.dAlpha = options.dAlpha;
            pompOptions.stopAtFirstSolution = options.stopAtFirstSolution;
            pompOptions.checkBudget = remaining;
            planned = pomp(roadmap, world, belief.get(), pompOptions, onPlannerEvent);
        }
        else
        {
            planned = lazySpBaseline(roadmap, world, onPlannerEvent, options.stopAtFirstSolution, remaining);
        }
        if (planned.budgetExhausted)
        {
            result.budgetExhausted = true;
            break;
        }
        result.batchesRun = b + 1;
        result.events.push_back({TraceEvent::Kind::BatchDone, elapsed(), world.checkCount(),
                                 result.solutions.empty() ? kInfinity : result.solutions.back().length, b, 0.0});
        if (options.stopAtFirstSolution && !result.solutions.empty())
            break;
    }

    result.feasible = !result.solutions.empty();
    if (!result.feasible && !result.budgetExhausted)
        result.events.push_back({TraceEvent::Kind::Infeasible, elapsed(), world.checkCount(), kInfinity,
                                 result.batchesRun - 1, 0.0});
    result.distinctEdgesConsidered = roadmap.distinctEdgesConsidered();
    result.totalChecks = world.checkCount() - checksAtStart;
    return result;
}

}  // namespace anytime
