#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "anytime/world.hpp"

namespace anytime
{

/// How obstacle half-widths are drawn.
enum class SizeRule
{
    Uniform,  // each axis uniform in [0.01, xi^(1/d) / 2]
    Nominal   // each axis within 50% of the side of a box of volume xi / count
};

SizeRule parseSizeRule(const std::string &name);
std::string sizeRuleName(SizeRule rule);

struct ScenarioParams
{
    std::size_t d = 2;
    std::size_t numObstacles = 0;
    double xiObs = 0.0;  // target covered fraction
    std::uint64_t seed = 0;
    Config start;        // defaults to (0.25, ..., 0.25) when empty
    Config goal;         // defaults to (0.75, ..., 0.75) when empty
    double resolution = 0.01;
    SizeRule sizing = SizeRule::Uniform;
};

struct Scenario
{
    std::size_t d = 2;
    Config start;
    Config goal;
    double xiTarget = 0.0;
    double xiRealized = 0.0;
    std::uint64_t seed = 0;
    double resolution = 0.01;
    SizeRule sizing = SizeRule::Uniform;
    std::vector<Obstacle> obstacles;

    World makeWorld() const { return World(d, obstacles); }
    bool operator==(const Scenario &) const;
};

class ScenarioError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class Preset
{
    Empty,
    Easy,
    Hard
};

/// Obstacle count, coverage and size rule for a difficulty preset in
/// dimension d. Hard presets use nominal sizing: uniform sizing at 75%
/// coverage walls the start off from the goal.
ScenarioParams presetParams(Preset preset, std::size_t d, std::uint64_t seed);
Preset parsePreset(const std::string &name);

/// Deterministic random box world with uniformly placed centres and
/// half-widths drawn by the size rule; boxes covering start or goal are
/// redrawn. Generation stops early once the covered fraction reaches the
/// target.
Scenario generateScenario(const ScenarioParams &params);

std::string scenarioToJson(const Scenario &scenario);
Scenario scenarioFromJson(const std::string &text);
void writeScenario(const Scenario &scenario, const std::string &path);
Scenario readScenario(const std::string &path);

}  // namespace anytime
