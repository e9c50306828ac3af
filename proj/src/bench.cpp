#include "anytime/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "anytime/halton.hpp"

namespace anytime
{

using nlohmann::json;

std::vector<Config> makeSamples(const Scenario &scenario, std::size_t N, std::optional<std::uint64_t> seed)
{
    if (N < 2)
        throw std::invalid_argument("a roadmap needs at least the start and goal");
    const HaltonSpec spec = seed ? HaltonSpec::withRandomOffset(scenario.d, *seed) : HaltonSpec(scenario.d);
    std::vector<Config> points;
    if (N > 2)
        points = haltonPrefix(N - 2, spec);
    return roadmapSamples(scenario.start, scenario.goal, points);
}

std::size_t defaultSampleCount(std::size_t d)
{
    return d <= 2 ? 10000 : 30000;
}

OracleResult informedOracle(const Scenario &scenario, const std::vector<Config> &samples, double bound,
                            double resolution, double radius)
{
    const World world = scenario.makeWorld();
    InformedSet informed{samples[kStartVertex], samples[kGoalVertex], bound};
    const double tolerance = 1e-12 * std::max(1.0, bound);
    auto keep = [&](const Config &q) {
        return std::isinf(bound) || distance(informed.s1, q) + distance(q, informed.s2) <= bound + tolerance;
    };
    Roadmap roadmap(samples, 2, radius, resolution);
    roadmap.setBatch(samples.size(), radius, keep);
    return shortestPathOracle(roadmap, world);
}

PlanOutcome runPlan(const Scenario &scenario, const PlanRequest &request)
{
    const std::size_t N = request.N ? request.N : defaultSampleCount(scenario.d);
    const double resolution = request.resolution.value_or(scenario.resolution);
    std::vector<Config> samples = makeSamples(scenario, N, request.seed);

    std::vector<Batch> schedule = makeSchedule(request.strategy, N, scenario.d);
    if (request.strategy == Strategy::None && request.radius)
        schedule = {{N, *request.radius, 2}};

    DensifyOptions options;
    options.planner = request.planner;
    options.dAlpha = request.dAlpha;
    options.rPhiCap = request.rPhiCap;
    options.stopAtFirstSolution = request.firstSolutionOnly;
    options.checkBudget = request.checkBudget;

    const World world = scenario.makeWorld();
    PlanOutcome outcome;
    outcome.run = runDensification(world, samples, schedule, resolution, options);
    const DensifyResult &run = outcome.run;
    outcome.trace = traceCsv(run.events, request.timing);

    if (request.oracle && run.feasible)
        outcome.oracle = informedOracle(scenario, samples, run.best().length, resolution, schedule.back().r);

    const bool wall = request.timing == Timing::Wall;
    json summary;
    summary["scenario_hash"] = hashHex(scenarioToJson(scenario));
    summary["strategy"] = strategyName(request.strategy);
    summary["planner"] = plannerName(request.planner);
    summary["seed"] = request.seed ? json(*request.seed) : json(nullptr);
    summary["n"] = N;
    summary["d"] = scenario.d;
    summary["resolution"] = resolution;
    summary["d_alpha"] = request.dAlpha;
    summary["feasible"] = run.feasible;
    summary["budget_exhausted"] = run.budgetExhausted;
    summary["batches_run"] = run.batchesRun;
    summary["total_checks"] = run.totalChecks;
    summary["distinct_edges_considered"] = run.distinctEdgesConsidered;
    summary["evaluated_edges"] = run.roadmap->evaluatedEdgeCount();
    if (run.feasible)
    {
        const GlobalSolution &first = run.solutions.front();
        const GlobalSolution &last = run.solutions.back();
        summary["first_solution"] = {{"checks", first.checks},
                                     {"elapsed_s", wall ? first.seconds : 0.0},
                                     {"length", first.length},
                                     {"batch", first.batch}};
        summary["final_length"] = last.length;
        summary["checks_to_final"] = last.checks;
        summary["time_to_final_s"] = wall ? last.seconds : 0.0;
        summary["solutions"] = run.solutions.size();
    }
    else
    {
        summary["first_solution"] = nullptr;
        summary["final_length"] = nullptr;
    }
    if (outcome.oracle && outcome.oracle->feasible)
    {
        summary["oracle_length"] = outcome.oracle->length;
        summary["suboptimality_ratio"] = run.best().length / outcome.oracle->length;
        summary["first_solution_ratio"] = run.solutions.front().length / outcome.oracle->length;
    }
    else
    {
        summary["oracle_length"] = nullptr;
        summary["suboptimality_ratio"] = nullptr;
        summary["first_solution_ratio"] = nullptr;
    }
    outcome.summary = std::move(summary);
    return outcome;
}

std::size_t benchThreads()
{
    if (const char *env = std::getenv("ROADMAP_BENCH_THREADS"))
    {
        char *end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end != env && value > 0)
            return static_cast<std::size_t>(value);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

double quantile(std::vector<double> values, double q)
{
    if (values.empty())
        return std::nan("");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

namespace
{
struct Cell
{
    std::size_t setting;
    Strategy strategy;
    std::uint64_t seed;
};

struct CellResult
{
    bool ok = false;
    std::string error;
    json summary;
};

json quartiles(const std::vector<double> &values)
{
    if (values.empty())
        return {{"q1", nullptr}, {"median", nullptr}, {"q3", nullptr}};
    return {{"q1", quantile(values, 0.25)}, {"median", quantile(values, 0.5)}, {"q3", quantile(values, 0.75)}};
}

std::string csvValue(const json &v)
{
    return v.is_null() ? std::string() : formatDouble(v.get<double>());
}
}  // namespace

SuiteReport runBenchSuite(const json &config, std::size_t threads, Timing timing)
{
    const json &settings = config.at("settings");
    std::vector<Cell> cells;
    for (std::size_t s = 0; s < settings.size(); ++s)
    {
        const json &setting = settings[s];
        std::vector<std::uint64_t> seeds;
        if (setting.contains("seeds"))
            seeds = setting.at("seeds").get<std::vector<std::uint64_t>>();
        else
            for (std::uint64_t i = 0; i < setting.value("num_seeds", 30u); ++i)
                seeds.push_back(i);
        for (const std::string &name : setting.at("strategies").get<std::vector<std::string>>())
            for (std::uint64_t seed : seeds)
                cells.push_back({s, parseStrategy(name), seed});
    }

    std::vector<CellResult> results(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++)
        {
            const Cell &cell = cells[i];
            const json &setting = settings[cell.setting];
            try
            {
                const std::size_t d = setting.at("d").get<std::size_t>();
                ScenarioParams params = presetParams(parsePreset(setting.at("preset").get<std::string>()), d, cell.seed);
                const Scenario scenario = generateScenario(params);
                PlanRequest request;
                request.strategy = cell.strategy;
                request.planner = parsePlanner(setting.value("planner", std::string("pomp")));
                request.N = setting.value("n", std::size_t{0});
                request.dAlpha = setting.value("d_alpha", 0.1);
                if (setting.value("halton_offset", false))
                    request.seed = cell.seed;
                if (setting.contains("radius"))
                    request.radius = setting.at("radius").get<double>();
                request.oracle = setting.value("oracle", false);
                request.firstSolutionOnly = setting.value("first_solution_only", false);
                request.checkBudget = setting.value("check_budget", std::uint64_t{0});
                request.timing = timing;
                results[i].summary = runPlan(scenario, request).summary;
                results[i].summary["scenario_seed"] = cell.seed;
                results[i].ok = true;
            }
            catch (const std::exception &e)
            {
                results[i].error = e.what();
            }
        }
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min(threads, cells.size()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < workers; ++t)
        pool.emplace_back(worker);
    worker();
    for (std::thread &t : pool)
        t.join();

    SuiteReport report;
    json rows = json::array();
    json cellsOut = json::array();
    std::ostringstream csv;
    csv << "setting,strategy,planner,cells,feasible,failed,first_checks_q1,first_checks_median,first_checks_q3,"
           "time_to_final_q1,time_to_final_median,time_to_final_q3,checks_to_final_median\n";

    std::size_t i = 0;
    while (i < cells.size())
    {
        std::size_t j = i;
        while (j < cells.size() && cells[j].setting == cells[i].setting && cells[j].strategy == cells[i].strategy)
            ++j;
        const json &setting = settings[cells[i].setting];
        const std::string name = setting.value("name", "setting" + std::to_string(cells[i].setting));
        std::vector<double> firstChecks, timeToFinal, checksToFinal;
        std::size_t feasible = 0, failed = 0;
        for (std::size_t k = i; k < j; ++k)
        {
            json cell = {{"setting", name}, {"scenario_seed", cells[k].seed}};
            if (!results[k].ok)
            {
                ++failed;
                cell["error"] = results[k].error;
                cellsOut.push_back(cell);
                continue;
            }
            const json &s = results[k].summary;
            cell["summary"] = s;
            cellsOut.push_back(cell);
            if (!s.at("feasible").get<bool>())
                continue;
            ++feasible;
            firstChecks.push_back(s.at("first_solution").at("checks").get<double>());
            timeToFinal.push_back(s.at("time_to_final_s").get<double>());
            checksToFinal.push_back(s.at("checks_to_final").get<double>());
        }
        const std::string planner = setting.value("planner", std::string("pomp"));
        json row = {{"setting", name},
                    {"strategy", strategyName(cells[i].strategy)},
                    {"planner", planner},
                    {"cells", j - i},
                    {"feasible", feasible},
                    {"failed", failed},
                    {"first_solution_checks", quartiles(firstChecks)},
                    {"time_to_final_s", quartiles(timeToFinal)},
                    {"checks_to_final", quartiles(checksToFinal)}};
        csv << name << ',' << strategyName(cells[i].strategy) << ',' << planner << ',' << (j - i) << ',' << feasible
            << ',' << failed << ',' << csvValue(row["first_solution_checks"]["q1"]) << ','
            << csvValue(row["first_solution_checks"]["median"]) << ',' << csvValue(row["first_solution_checks"]["q3"])
            << ',' << csvValue(row["time_to_final_s"]["q1"]) << ',' << csvValue(row["time_to_final_s"]["median"])
            << ',' << csvValue(row["time_to_final_s"]["q3"]) << ',' << csvValue(row["checks_to_final"]["median"])
            << '\n';
        rows.push_back(std::move(row));
        i = j;
    }
    report.json = {{"rows", rows}, {"cells", cellsOut}};
    report.csv = csv.str();
    return report;
}

}  // namespace anytime
