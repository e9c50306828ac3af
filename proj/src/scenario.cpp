#include "anytime/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace anytime
{

namespace
{
constexpr std::size_t kCoverageProbes = 100000;
constexpr int kPlacementRetries = 100;
constexpr double kMaxCoverage = 0.9;

using nlohmann::json;

json configToJson(const Config &q)
{
    return json(q.values());
}

Config configFromJson(const json &j)
{
    return Config(j.get<std::vector<double>>());
}
}  // namespace

SizeRule parseSizeRule(const std::string &name)
{
    if (name == "uniform")
        return SizeRule::Uniform;
    if (name == "nominal")
        return SizeRule::Nominal;
    throw std::invalid_argument("unknown size rule '" + name + "' (expected uniform or nominal)");
}

std::string sizeRuleName(SizeRule rule)
{
    return rule == SizeRule::Uniform ? "uniform" : "nominal";
}

bool Scenario::operator==(const Scenario &other) const
{
    if (obstacles.size() != other.obstacles.size())
        return false;
    for (std::size_t i = 0; i < obstacles.size(); ++i)
        if (obstacles[i].lo != other.obstacles[i].lo || obstacles[i].hi != other.obstacles[i].hi)
            return false;
    return d == other.d && start == other.start && goal == other.goal && xiTarget == other.xiTarget &&
           xiRealized == other.xiRealized && seed == other.seed && resolution == other.resolution &&
           sizing == other.sizing;
}

ScenarioParams presetParams(Preset preset, std::size_t d, std::uint64_t seed)
{
    ScenarioParams p;
    p.d = d;
    p.seed = seed;
    switch (preset)
    {
    case Preset::Empty:
        break;
    case Preset::Easy:
        p.numObstacles = d <= 2 ? 100 : 500;
        p.xiObs = 0.33;
        break;
    case Preset::Hard:
        p.numObstacles = d <= 2 ? 1000 : 3000;
        p.xiObs = 0.75;
        p.sizing = SizeRule::Nominal;
        break;
    }
    return p;
}

Preset parsePreset(const std::string &name)
{
    if (name == "empty")
        return Preset::Empty;
    if (name == "easy")
        return Preset::Easy;
    if (name == "hard")
        return Preset::Hard;
    throw std::invalid_argument("unknown preset '" + name + "' (expected empty, easy or hard)");
}

Scenario generateScenario(const ScenarioParams &params)
{
    if (params.d == 0)
        throw std::invalid_argument("scenario dimension must be positive");
    if (params.xiObs < 0.0 || params.xiObs >= kMaxCoverage)
        throw std::invalid_argument("coverage target must lie in [0, 0.9)");
    if (!(params.resolution > 0.0))
        throw std::invalid_argument("resolution must be positive");

    Scenario s;
    s.d = params.d;
    s.start = params.start.dimension() ? params.start : Config(params.d, 0.25);
    s.goal = params.goal.dimension() ? params.goal : Config(params.d, 0.75);
    if (s.start.dimension() != params.d || s.goal.dimension() != params.d)
        throw std::invalid_argument("start/goal dimension mismatch");
    s.xiTarget = params.xiObs;
    s.seed = params.seed;
    s.resolution = params.resolution;
    s.sizing = params.sizing;

    if (params.numObstacles == 0 || params.xiObs == 0.0)
        return s;

    std::mt19937_64 rng(params.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // Generation-local probes track the union coverage as boxes are added.
    std::mt19937_64 probeRng(params.seed ^ 0x5bd1e995ULL);
    std::vector<double> raw(kCoverageProbes * params.d);
    for (double &x : raw)
        x = unit(probeRng);
    // Sorted by first coordinate so each box scans only its slab.
    std::vector<std::size_t> order(kCoverageProbes);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return raw[a * params.d] < raw[b * params.d]; });
    std::vector<double> probes(raw.size());
    std::vector<double> firstCoord(kCoverageProbes);
    for (std::size_t p = 0; p < kCoverageProbes; ++p)
    {
        std::copy_n(raw.begin() + static_cast<std::ptrdiff_t>(order[p] * params.d), params.d,
                    probes.begin() + static_cast<std::ptrdiff_t>(p * params.d));
        firstCoord[p] = probes[p * params.d];
    }
    std::vector<char> covered(kCoverageProbes, 0);
    std::size_t coveredCount = 0;

    const double invD = 1.0 / static_cast<double>(params.d);
    std::uniform_real_distribution<double> halfWidth;
    if (params.sizing == SizeRule::Uniform)
    {
        const double top = 0.5 * std::pow(params.xiObs, invD);
        halfWidth = std::uniform_real_distribution<double>(std::min(0.01, top), top);
    }
    else
    {
        const double meanHalf = 0.5 * std::pow(params.xiObs / static_cast<double>(params.numObstacles), invD);
        halfWidth = std::uniform_real_distribution<double>(0.5 * meanHalf, 1.5 * meanHalf);
    }

    for (std::size_t i = 0; i < params.numObstacles; ++i)
    {
        Obstacle box;
        bool placed = false;
        for (int attempt = 0; attempt < kPlacementRetries && !placed; ++attempt)
        {
            box.lo.assign(params.d, 0.0);
            box.hi.assign(params.d, 0.0);
            for (std::size_t j = 0; j < params.d; ++j)
            {
                const double c = unit(rng);
                const double h = halfWidth(rng);
                box.lo[j] = std::max(0.0, c - h);
                box.hi[j] = std::min(1.0, c + h);
            }
            placed = !box.contains(s.start.coords()) && !box.contains(s.goal.coords());
        }
        if (!placed)
        {
            std::ostringstream msg;
            msg << "could not place obstacle " << i << " clear of start and goal after " << kPlacementRetries
                << " attempts (d=" << params.d << ", xi=" << params.xiObs << ", count=" << params.numObstacles
                << ")";
            throw ScenarioError(msg.str());
        }

        const auto first = std::lower_bound(firstCoord.begin(), firstCoord.end(), box.lo[0]);
        const auto last = std::upper_bound(firstCoord.begin(), firstCoord.end(), box.hi[0]);
        for (auto p = static_cast<std::size_t>(first - firstCoord.begin());
             p < static_cast<std::size_t>(last - firstCoord.begin()); ++p)
            if (!covered[p] && box.contains({probes.data() + p * params.d, params.d}))
            {
                covered[p] = 1;
                ++coveredCount;
            }
        s.obstacles.push_back(std::move(box));
        if (static_cast<double>(coveredCount) >= params.xiObs * static_cast<double>(kCoverageProbes))
            break;
    }
    s.xiRealized = static_cast<double>(coveredCount) / static_cast<double>(kCoverageProbes);
    return s;
}

std::string scenarioToJson(const Scenario &scenario)
{
    json obstacles = json::array();
    for (const Obstacle &o : scenario.obstacles)
        obstacles.push_back({{"lo", o.lo}, {"hi", o.hi}});
    json j = {{"d", scenario.d},
              {"start", configToJson(scenario.start)},
              {"goal", configToJson(scenario.goal)},
              {"xi_obs_target", scenario.xiTarget},
              {"xi_obs_realized", scenario.xiRealized},
              {"seed", scenario.seed},
              {"resolution", scenario.resolution},
              {"sizing", sizeRuleName(scenario.sizing)},
              {"obstacles", obstacles}};
    return j.dump(1) + "\n";
}

Scenario scenarioFromJson(const std::string &text)
{
    Scenario s;
    try
    {
        const json j = json::parse(text);
        s.d = j.at("d").get<std::size_t>();
        s.start = configFromJson(j.at("start"));
        s.goal = configFromJson(j.at("goal"));
        s.xiTarget = j.at("xi_obs_target").get<double>();
        s.xiRealized = j.at("xi_obs_realized").get<double>();
        s.seed = j.at("seed").get<std::uint64_t>();
        s.resolution = j.at("resolution").get<double>();
        s.sizing = parseSizeRule(j.value("sizing", std::string("uniform")));
        for (const json &o : j.at("obstacles"))
            s.obstacles.push_back({o.at("lo").get<std::vector<double>>(), o.at("hi").get<std::vector<double>>()});
    }
    catch (const json::exception &e)
    {
        throw ScenarioError(std::string("malformed scenario: ") + e.what());
    }
    catch (const std::invalid_argument &e)
    {
        throw ScenarioError(std::string("malformed scenario: ") + e.what());
    }
    if (s.start.dimension() != s.d || s.goal.dimension() != s.d)
        throw ScenarioError("malformed scenario: start/goal dimension mismatch");
    if (!(s.resolution > 0.0))
        throw ScenarioError("malformed scenario: resolution must be positive");
    World check(s.d, s.obstacles);  // validates obstacle corners
    return s;
}

void writeScenario(const Scenario &scenario, const std::string &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ScenarioError("cannot write " + path);
    out << scenarioToJson(scenario);
}

Scenario readScenario(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ScenarioError("cannot read " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return scenarioFromJson(buffer.str());
}

}  // namespace anytime
