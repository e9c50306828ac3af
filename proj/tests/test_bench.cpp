#include <doctest.h>

#include <cmath>
#include <sstream>

#include "anytime/bench.hpp"
#include "anytime/halton.hpp"
#include "anytime/simulate.hpp"
#include "anytime/trace.hpp"

using namespace anytime;

namespace
{

std::vector<std::string> lines(const std::string &text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("number formatting round trips")
{
    for (double x : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, -2.5})
        CHECK(std::stod(formatDouble(x)) == x);
    CHECK(formatDouble(kInfinity) == "inf");
    CHECK(formatDouble(0.0) == "0");
}

TEST_CASE("FNV-1a digests")
{
    CHECK(hashHex("") == "cbf29ce484222325");
    CHECK(hashHex("a") == "af63dc4c8601ec8c");
    CHECK(hashHex("foobar") == "85944171f73967e8");
}

TEST_CASE("trace csv schema")
{
    const std::vector<TraceEvent> events{{TraceEvent::Kind::Solution, 1.25, 40, 1.5, 0, 0.2},
                                         {TraceEvent::Kind::BatchDone, 2.0, 55, 1.5, 0, 0.0},
                                         {TraceEvent::Kind::Infeasible, 2.0, 55, kInfinity, 1, 0.0}};
    const auto off = lines(traceCsv(events, Timing::Off));
    REQUIRE(off.size() == 4);
    CHECK(off[0] == "event,elapsed_s,checks,length,batch,alpha");
    CHECK(off[1] == "solution,0,40,1.5,0,0.2");
    CHECK(off[2] == "batch_done,0,55,1.5,0,0");
    CHECK(off[3] == "infeasible,0,55,inf,1,0");
    CHECK(lines(traceCsv(events, Timing::Wall))[1] == "solution,1.25,40,1.5,0,0.2");
    CHECK(lines(traceCsv({}, Timing::Off)).size() == 1);
}

TEST_CASE("roadmap dump round trip and histogram")
{
    RoadmapDump dump;
    dump.dimension = 2;
    dump.samples = {Config{0.0, 0.0}, Config{1.0, 1.0}, Config{0.5, 0.0}, Config{0.5, 0.5}};
    dump.evaluated = {{0, 2, EdgeStatus::Free}, {2, 3, EdgeStatus::Blocked}};
    dump.paths = {{std::sqrt(2.0), {0, 1}}, {1.0 + std::sqrt(0.5), {0, 2, 1}}};
    const RoadmapDump back = dumpFromJson(dumpToJson(dump));
    CHECK(back.samples == dump.samples);
    CHECK(back.evaluated.size() == 2);
    CHECK(back.evaluated[1].status == EdgeStatus::Blocked);
    CHECK(back.paths[1].vertices == dump.paths[1].vertices);
    CHECK(dumpToJson(back) == dumpToJson(dump));

    const auto rows = edgeLengthHistogram(dump, 4);
    REQUIRE(rows.size() == 8);
    // Path 0 is a single edge of length sqrt(2): the top bin.
    CHECK(rows[3].count == 1);
    CHECK(rows[3].binHi == doctest::Approx(std::sqrt(2.0)));
    std::size_t total = 0;
    for (const HistogramRow &r : rows)
        if (r.path == 1)
            total += r.count;
    CHECK(total == 2);
    CHECK_THROWS(edgeLengthHistogram(dump, 0));
    CHECK(lines(histogramCsv(rows)).size() == 9);

    dump.paths.push_back({1.0, {0, 9}});
    CHECK_THROWS(dumpFromJson(dumpToJson(dump)));
    CHECK_THROWS(dumpFromJson("{}"));
}

TEST_CASE("quantiles")
{
    CHECK(quantile({3.0, 1.0, 2.0}, 0.5) == 2.0);
    CHECK(quantile({1.0, 2.0, 3.0, 4.0}, 0.5) == 2.5);
    CHECK(quantile({1.0, 2.0, 3.0, 4.0}, 0.25) == 1.75);
    CHECK(std::isnan(quantile({}, 0.5)));
}

TEST_CASE("effort-quality simulation")
{
    const std::size_t n = 100000, d = 2;
    SUBCASE("work sums match the per-batch formulas")
    {
        for (Strategy s : {Strategy::Vertex, Strategy::Edge, Strategy::Hybrid})
        {
            const auto schedule = makeSchedule(s, n, d);
            const auto curve = simulateEffortQuality(n, d, 0.1, s);
            REQUIRE(curve.size() == schedule.size());
            double sum = 0.0;
            for (std::size_t i = 0; i < curve.size(); ++i)
            {
                const double ni = static_cast<double>(schedule[i].n), ri = schedule[i].r;
                if (s == Strategy::Vertex)
                    sum += ni * ni / 2.0;
                else if (s == Strategy::Edge || schedule[i].phase == 2)
                    sum += static_cast<double>(n) * static_cast<double>(n) * ri * ri;
                else
                    sum += ni * ni * ri * ri;
                CHECK(curve[i].cumulativeEdges == doctest::Approx(sum).epsilon(1e-12));
                CHECK(curve[i].n == ni);
            }
        }
    }
    SUBCASE("starvation gives an infinite bound")
    {
        CHECK(std::isinf(batchBound(100, 0.1, 2, 0.5)));             // r below 2 D_n
        CHECK(std::isinf(batchBound(100, 1.0, 2, 0.5)));             // clearance below 2 D_n
        CHECK(batchBound(1e6, 1.0, 2, 0.5) == doctest::Approx(suboptimalityFactor(0.003, 0.5)));
    }
    SUBCASE("work to reach a level")
    {
        const auto curve = simulateEffortQuality(n, d, 0.5, Strategy::Vertex);
        CHECK(std::isinf(workToReach(curve, 1.0)));
        const double w = workToReach(curve, 2.0);
        CHECK(std::isfinite(w));
        CHECK(workToReach(curve, 3.0) <= w);
    }
    CHECK(lines(simulationCsv(simulateEffortQuality(1000, 2, 0.5, Strategy::Edge)))[0] ==
          "strategy,batch_index,n,r,cum_edges,bound");
}

TEST_CASE("samples and plan summaries")
{
    const Scenario sc = generateScenario(presetParams(Preset::Easy, 2, 3));
    const auto plain = makeSamples(sc, 50, std::nullopt);
    CHECK(plain.size() == 50);
    CHECK(plain[0] == sc.start);
    CHECK(plain[2] == haltonPoint(1, HaltonSpec(2)));
    CHECK(makeSamples(sc, 50, 4) != plain);
    CHECK(makeSamples(sc, 50, 4) == makeSamples(sc, 50, 4));
    CHECK_THROWS(makeSamples(sc, 1, std::nullopt));
    CHECK(defaultSampleCount(2) == 10000);
    CHECK(defaultSampleCount(4) == 30000);

    PlanRequest request;
    request.N = 300;
    const PlanOutcome a = runPlan(sc, request);
    const PlanOutcome b = runPlan(sc, request);
    CHECK(a.trace == b.trace);
    CHECK(a.summary == b.summary);
    REQUIRE(a.summary["feasible"].get<bool>());
    CHECK(a.summary["suboptimality_ratio"].get<double>() >= 1.0 - 1e-9);
    CHECK(a.summary["suboptimality_ratio"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(a.summary["first_solution_ratio"].get<double>() >= 1.0 - 1e-9);
    CHECK(a.summary["total_checks"].get<std::uint64_t>() == a.run.totalChecks);
    // Trace checks equal the detector counter at each event.
    const auto rows = lines(a.trace);
    CHECK(rows.size() == a.run.events.size() + 1);
    CHECK(a.summary["first_solution"]["elapsed_s"].get<double>() == 0.0);
}

TEST_CASE("bench suite")
{
    const nlohmann::json config = {
        {"settings",
         {{{"name", "easy2"}, {"d", 2}, {"preset", "easy"}, {"n", 200},
           {"strategies", {"vertex", "edge"}}, {"seeds", {0, 1, 2}}, {"oracle", true}},
          {{"name", "bad"}, {"d", 2}, {"preset", "nope"}, {"n", 200}, {"strategies", {"hybrid"}}, {"seeds", {0}}}}}};
    const SuiteReport one = runBenchSuite(config, 1, Timing::Off);
    const SuiteReport three = runBenchSuite(config, 3, Timing::Off);
    CHECK(one.csv == three.csv);
    CHECK(one.json == three.json);
    REQUIRE(one.json["rows"].size() == 3);
    CHECK(one.json["rows"][0]["cells"] == 3);
    CHECK(one.json["rows"][2]["failed"] == 1);
    CHECK(lines(one.csv).size() == 4);

    // A one-seed suite reports exactly the plan summary.
    const nlohmann::json single = {
        {"settings",
         {{{"d", 2}, {"preset", "easy"}, {"n", 200}, {"strategies", {"hybrid"}}, {"seeds", {5}}, {"oracle", true}}}}};
    const SuiteReport report = runBenchSuite(single, 2, Timing::Off);
    PlanRequest request;
    request.N = 200;
    nlohmann::json expected = runPlan(generateScenario(presetParams(Preset::Easy, 2, 5)), request).summary;
    expected["scenario_seed"] = 5;
    CHECK(report.json["cells"][0]["summary"] == expected);
    CHECK(report.json["rows"][0]["first_solution_checks"]["median"] ==
          expected["first_solution"]["checks"].get<double>());
}
