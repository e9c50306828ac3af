#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anytime/densify.hpp"
#include "anytime/roadmap.hpp"

namespace anytime
{

/// Shortest decimal form that reads back to the same double; "inf" for
/// infinity.
std::string formatDouble(double value);

/// 64-bit FNV-1a digest as 16 hex digits.
std::string hashHex(const std::string &text);

enum class Timing
{
    Off,   // elapsed_s written as 0 so traces are reproducible byte for byte
    Wall
};

/// Trace CSV with columns event,elapsed_s,checks,length,batch,alpha.
std::string traceCsv(const std::vector<TraceEvent> &events, Timing timing);

struct RecordedPath
{
    double length;
    std::vector<VertexId> vertices;
};

struct RoadmapDump
{
    std::size_t dimension = 0;
    std::vector<Config> samples;
    struct EvaluatedEdge
    {
        VertexId u;
        VertexId v;
        EdgeStatus status;
    };
    std::vector<EvaluatedEdge> evaluated;
    std::vector<RecordedPath> paths;
};

RoadmapDump makeDump(const Roadmap &roadmap, const std::vector<GlobalSolution> &solutions);
std::string dumpToJson(const RoadmapDump &dump);
RoadmapDump dumpFromJson(const std::string &text);

struct HistogramRow
{
    std::size_t path;
    double pathLength;
    double binLo;
    double binHi;
    std::size_t count;
};

/// Edge-length histogram of each recorded path over [0, sqrt(d)].
std::vector<HistogramRow> edgeLengthHistogram(const RoadmapDump &dump, std::size_t bins);
std::string histogramCsv(const std::vector<HistogramRow> &rows);

std::string readFile(const std::string &path);
void writeFile(const std::string &path, const std::string &contents);

}  // namespace anytime
