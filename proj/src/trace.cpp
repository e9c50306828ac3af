#include "anytime/trace.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace anytime
{

std::string formatDouble(double value)
{
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    if (std::isnan(value))
        return "nan";
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc())
        throw std::runtime_error("number formatting failed");
    return std::string(buffer, end);
}

std::string hashHex(const std::string &text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buffer[17];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(h));
    return buffer;
}

namespace
{
const char *eventName(TraceEvent::Kind kind)
{
    switch (kind)
    {
    case TraceEvent::Kind::Solution:
        return "solution";
    case TraceEvent::Kind::BatchDone:
        return "batch_done";
    case TraceEvent::Kind::Infeasible:
        return "infeasible";
    }
    return "unknown";
}

const char *statusName(EdgeStatus s)
{
    switch (s)
    {
    case EdgeStatus::Free:
        return "free";
    case EdgeStatus::Blocked:
        return "blocked";
    case EdgeStatus::Unknown:
        break;
    }
    return "unknown";
}

EdgeStatus parseStatus(const std::string &s)
{
    if (s == "free")
        return EdgeStatus::Free;
    if (s == "blocked")
        return EdgeStatus::Blocked;
    return EdgeStatus::Unknown;
}
}  // namespace

std::string traceCsv(const std::vector<TraceEvent> &events, Timing timing)
{
    std::ostringstream out;
    out << "event,elapsed_s,checks,length,batch,alpha\n";
    for (const TraceEvent &e : events)
    {
        out << eventName(e.kind) << ',' << (timing == Timing::Wall ? formatDouble(e.seconds) : "0") << ','
            << e.checks << ',' << formatDouble(e.length) << ',' << e.batch << ',' << formatDouble(e.alpha) << '\n';
    }
    return out.str();
}

RoadmapDump makeDump(const Roadmap &roadmap, const std::vector<GlobalSolution> &solutions)
{
    RoadmapDump dump;
    dump.dimension = roadmap.dimension();
    for (VertexId v = 0; v < roadmap.activeCount(); ++v)
        dump.samples.push_back(roadmap.sample(v));
    std::vector<std::pair<std::uint64_t, EdgeStatus>> entries;
    for (const auto &[key, record] : roadmap.evaluationLedger())
        entries.emplace_back(key, record.status);
    std::sort(entries.begin(), entries.end());
    for (const auto &[key, status] : entries)
        dump.evaluated.push_back({static_cast<VertexId>(key >> 32), static_cast<VertexId>(key & 0xffffffffULL), status});
    for (const GlobalSolution &s : solutions)
        dump.paths.push_back({s.length, s.path});
    return dump;
}

std::string dumpToJson(const RoadmapDump &dump)
{
    using nlohmann::json;
    json samples = json::array();
    for (const Config &q : dump.samples)
        samples.push_back(q.values());
    json edges = json::array();
    for (const auto &e : dump.evaluated)
        edges.push_back({{"u", e.u}, {"v", e.v}, {"status", statusName(e.status)}});
    json paths = json::array();
    for (const RecordedPath &p : dump.paths)
        paths.push_back({{"length", p.length}, {"vertices", p.vertices}});
    json j = {{"d", dump.dimension}, {"samples", samples}, {"evaluated_edges", edges}, {"paths", paths}};
    return j.dump() + "\n";
}

RoadmapDump dumpFromJson(const std::string &text)
{
    using nlohmann::json;
    RoadmapDump dump;
    try
    {
        const json j = json::parse(text);
        dump.dimension = j.at("d").get<std::size_t>();
        for (const json &q : j.at("samples"))
            dump.samples.emplace_back(q.get<std::vector<double>>());
        for (const json &e : j.at("evaluated_edges"))
            dump.evaluated.push_back({e.at("u").get<VertexId>(), e.at("v").get<VertexId>(),
                                      parseStatus(e.at("status").get<std::string>())});
        for (const json &p : j.at("paths"))
            dump.paths.push_back({p.at("length").get<double>(), p.at("vertices").get<std::vector<VertexId>>()});
    }
    catch (const json::exception &e)
    {
        throw std::runtime_error(std::string("malformed roadmap dump: ") + e.what());
    }
    for (const RecordedPath &p : dump.paths)
        for (VertexId v : p.vertices)
            if (v >= dump.samples.size())
                throw std::runtime_error("roadmap dump path references a missing sample");
    return dump;
}

std::vector<HistogramRow> edgeLengthHistogram(const RoadmapDump &dump, std::size_t bins)
{
    if (bins == 0)
        throw std::invalid_argument("histogram needs at least one bin");
    const double top = std::sqrt(static_cast<double>(dump.dimension));
    const double width = top / static_cast<double>(bins);
    std::vector<HistogramRow> rows;
    for (std::size_t p = 0; p < dump.paths.size(); ++p)
    {
        std::vector<std::size_t> counts(bins, 0);
        const auto &vs = dump.paths[p].vertices;
        for (std::size_t i = 0; i + 1 < vs.size(); ++i)
        {
            const double len = distance(dump.samples[vs[i]], dump.samples[vs[i + 1]]);
            auto bin = static_cast<std::size_t>(len / width);
            counts[std::min(bin, bins - 1)] += 1;
        }
        for (std::size_t b = 0; b < bins; ++b)
            rows.push_back({p, dump.paths[p].length, width * static_cast<double>(b),
                            b + 1 == bins ? top : width * static_cast<double>(b + 1), counts[b]});
    }
    return rows;
}

std::string histogramCsv(const std::vector<HistogramRow> &rows)
{
    std::ostringstream out;
    out << "path,path_length,bin_lo,bin_hi,count\n";
    for (const HistogramRow &r : rows)
        out << r.path << ',' << formatDouble(r.pathLength) << ',' << formatDouble(r.binLo) << ','
            << formatDouble(r.binHi) << ',' << r.count << '\n';
    return out.str();
}

std::string readFile(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void writeFile(const std::string &path, const std::string &contents)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << contents;
}

}  // namespace anytime
