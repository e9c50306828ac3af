#pragma once

#include <string>
#include <vector>

#include "anytime/densify.hpp"

namespace anytime
{

struct SimPoint
{
    Strategy strategy;
    std::size_t batch;
    double n;
    double r;
    double cumulativeEdges;  // worst-case edges evaluated up to this batch
    double bound;            // suboptimality bound of this batch, infinite when starved
};

/// Worst-case work against the suboptimality bound, one point per batch of
/// the strategy's schedule for a problem with clearance deltaStar.
std::vector<SimPoint> simulateEffortQuality(std::size_t n, std::size_t d, double deltaStar, Strategy strategy);

/// Bound guaranteed by an r-disk graph on the first n Halton points: the
/// radius counts only up to the clearance, and is infinite inside either
/// starvation region.
double batchBound(double n, double r, std::size_t d, double deltaStar);

/// Least cumulative work at which the curve reaches a bound <= level
/// (infinite if never).
double workToReach(const std::vector<SimPoint> &curve, double level);

std::string simulationCsv(const std::vector<SimPoint> &points);

}  // namespace anytime
