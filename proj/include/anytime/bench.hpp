#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "anytime/densify.hpp"
#include "anytime/scenario.hpp"
#include "anytime/search.hpp"
#include "anytime/trace.hpp"

namespace anytime
{

/// Start, goal, then Halton points 1..N-2 (shifted when a seed is given).
std::vector<Config> makeSamples(const Scenario &scenario, std::size_t N, std::optional<std::uint64_t> seed);

struct PlanRequest
{
    Strategy strategy = Strategy::Hybrid;
    PlannerKind planner = PlannerKind::Pomp;
    std::size_t N = 0;  // 0 picks the default for the dimension
    double dAlpha = 0.1;
    std::optional<std::uint64_t> seed;
    std::optional<double> resolution;  // overrides the scenario's
    std::optional<double> radius;      // single-batch radius for the None strategy
    double rPhiCap = 0.1;
    bool oracle = true;
    bool firstSolutionOnly = false;
    std::uint64_t checkBudget = 0;  // 0 is unlimited
    Timing timing = Timing::Off;
};

struct PlanOutcome
{
    DensifyResult run;
    std::optional<OracleResult> oracle;
    nlohmann::json summary;
    std::string trace;
};

std::size_t defaultSampleCount(std::size_t d);

/// Runs one planner over one scenario and assembles trace and summary.
PlanOutcome runPlan(const Scenario &scenario, const PlanRequest &request);

/// Ground-truth optimum on the r-disk graph over all samples, restricted to
/// the configurations that could lie on a path no longer than `bound`.
OracleResult informedOracle(const Scenario &scenario, const std::vector<Config> &samples, double bound,
                            double resolution, double radius);

struct SuiteReport
{
    nlohmann::json json;
    std::string csv;
};

/// Runs every (setting, strategy, seed) cell of a suite configuration.
/// Cells run on up to `threads` workers; the report does not depend on it.
SuiteReport runBenchSuite(const nlohmann::json &config, std::size_t threads, Timing timing);

/// Worker count from ROADMAP_BENCH_THREADS, else the hardware concurrency.
std::size_t benchThreads();

/// Sorted-sample quantile with linear interpolation.
double quantile(std::vector<double> values, double q);

}  // namespace anytime
