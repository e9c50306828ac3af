#include "anytime/simulate.hpp"

#include <cmath>
#include <sstream>

#include "anytime/halton.hpp"
#include "anytime/trace.hpp"

namespace anytime
{

double batchBound(double n, double r, std::size_t d, double deltaStar)
{
    const double dispersion = dispersionBound(n, d);
    const double effective = std::min(r, deltaStar);
    if (!(effective > 2.0 * dispersion))
        return kInfinity;
    return suboptimalityFactor(dispersion, effective);
}

std::vector<SimPoint> simulateEffortQuality(std::size_t n, std::size_t d, double deltaStar, Strategy strategy)
{
    const std::vector<Batch> schedule = makeSchedule(strategy, n, d);
    const double N = static_cast<double>(n);
    const double dd = static_cast<double>(d);
    std::vector<SimPoint> out;
    double cumulative = 0.0;
    for (std::size_t i = 0; i < schedule.size(); ++i)
    {
        const double ni = static_cast<double>(schedule[i].n);
        const double ri = schedule[i].r;
        double work = 0.0;
        switch (strategy)
        {
        case Strategy::Vertex:
        case Strategy::None:
            work = ni * ni / 2.0;
            break;
        case Strategy::Edge:
            work = N * N * std::pow(ri, dd);
            break;
        case Strategy::Hybrid:
            work = schedule[i].phase == 1 ? ni * ni * std::pow(ri, dd) : N * N * std::pow(ri, dd);
            break;
        }
        cumulative += work;
        out.push_back({strategy, i, ni, ri, cumulative, batchBound(ni, ri, d, deltaStar)});
    }
    return out;
}

double workToReach(const std::vector<SimPoint> &curve, double level)
{
    for (const SimPoint &p : curve)
        if (p.bound <= level)
            return p.cumulativeEdges;
    return kInfinity;
}

std::string simulationCsv(const std::vector<SimPoint> &points)
{
    std::ostringstream out;
    out << "strategy,batch_index,n,r,cum_edges,bound\n";
    for (const SimPoint &p : points)
        out << strategyName(p.strategy) << ',' << p.batch << ',' << formatDouble(p.n) << ',' << formatDouble(p.r)
            << ',' << formatDouble(p.cumulativeEdges) << ',' << formatDouble(p.bound) << '\n';
    return out.str();
}

}  // namespace anytime
