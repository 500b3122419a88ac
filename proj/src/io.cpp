// io.cpp - exchange formats
#include "cohort/io.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace cohort {

double round6(double x)
{
    if (!std::isfinite(x) || x == 0.0)
        return x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return std::strtod(buf, nullptr);
}

std::string format6(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

Json network_to_json(const EnrollmentNetwork &network)
{
    Json edges = Json::array();
    for (Index i = 0; i < network.entity_count(); ++i)
        for (const auto &nb : network.neighbors(i))
            if (nb.entity > i)
                edges.push_back({i, nb.entity, nb.weight});
    return {{"entities", network.entities()}, {"sections", network.sections()}, {"edges", std::move(edges)}};
}

NetworkSummary summarize(const EnrollmentNetwork &network)
{
    return {network.entity_count(), network.section_count(), network.edge_count(), network.isolated_count()};
}

Json summary_to_json(const NetworkSummary &s)
{
    return {{"entities", s.entities}, {"sections", s.sections}, {"edges", s.edges}, {"isolated_entities", s.isolated}};
}

Json quality_to_json(const CommunitySet &set, const QualityReport &report, const EnrollmentNetwork &network)
{
    Json communities = Json::array();
    for (std::size_t c = 0; c < set.size(); ++c) {
        Json members = Json::array();
        for (Index e : set.members(c))
            members.push_back(network.entities()[e]);
        communities.push_back({{"id", c},
                               {"members", std::move(members)},
                               {"internal", report.per_community[c].internal},
                               {"external", report.per_community[c].external}});
    }
    return {{"communities", std::move(communities)}, {"total", report.total}, {"cost", report.cost}};
}

CommunitySet communities_from_json(const Json &doc, const EnrollmentNetwork &network)
{
    if (!doc.is_object() || !doc.contains("communities") || !doc["communities"].is_array())
        throw InputError("community document needs a 'communities' array");
    std::unordered_map<std::string, Index> position;
    for (Index e = 0; e < network.entity_count(); ++e)
        position.emplace(network.entities()[e], e);

    std::vector<std::vector<Index>> communities;
    std::size_t largest = 1;
    for (const auto &entry : doc["communities"]) {
        if (!entry.is_object() || !entry.contains("members") || !entry["members"].is_array())
            throw InputError("each community needs a 'members' array");
        std::vector<Index> members;
        for (const auto &m : entry["members"]) {
            if (!m.is_string())
                throw InputError("community members must be entity id strings");
            const auto it = position.find(m.get<std::string>());
            if (it == position.end())
                throw PartitionMismatch("unknown entity '" + m.get<std::string>() + "'");
            members.push_back(it->second);
        }
        largest = std::max(largest, members.size());
        communities.push_back(std::move(members));
    }
    std::size_t cap = largest;
    if (doc.contains("max_size") && doc["max_size"].is_number_unsigned())
        cap = std::max(cap, doc["max_size"].get<std::size_t>());
    return CommunitySet(std::move(communities), network.entity_count(), cap);
}

std::string quality_to_dot(const CommunitySet &set, const QualityReport &report, const EnrollmentNetwork &network)
{
    std::map<std::pair<Index, Index>, Weight> between;
    for (Index i = 0; i < network.entity_count(); ++i) {
        const Index ci = set.community_of(i);
        for (const auto &nb : network.neighbors(i)) {
            const Index ck = set.community_of(nb.entity);
            if (nb.entity > i && ci != ck)
                between[{std::min(ci, ck), std::max(ci, ck)}] += nb.weight;
        }
    }
    std::ostringstream out;
    out << "graph communities {\n";
    for (std::size_t c = 0; c < set.size(); ++c)
        out << "  LC" << c << " [label=\"LC" << c << " (int=" << report.per_community[c].internal << ")\"];\n";
    for (const auto &[pair, w] : between)
        out << "  LC" << pair.first << " -- LC" << pair.second << " [label=\"" << w << "\", weight=" << w << "];\n";
    out << "}\n";
    return out.str();
}

void write_trace_csv(std::ostream &out, const AnnealTrace &trace, std::size_t iters_per_temp, std::size_t stride)
{
    stride = std::max<std::size_t>(stride, 1);
    out << "move,temperature,current_cost,best_cost\n";
    for (std::size_t m = 0; m < trace.moves.size(); ++m) {
        if (m % stride != 0 && m + 1 != trace.moves.size())
            continue;
        const auto &rec = trace.moves[m];
        out << rec.move << ',' << format6(trace.temperatures[m / iters_per_temp]) << ',' << rec.current_cost << ','
            << rec.best_cost << '\n';
    }
}

Json sweep_to_json(const SweepReport &report)
{
    Json rows = Json::array();
    for (const auto &row : report.rows) {
        Json edges = Json::array();
        for (double e : row.histogram.edges())
            edges.push_back(round6(e));
        rows.push_back({{"value", round6(row.value)},
                        {"mean", round6(row.stats.mean)},
                        {"std", round6(row.stats.std)},
                        {"best", row.stats.best},
                        {"scores", row.scores},
                        {"histogram", {{"edges", std::move(edges)}, {"counts", row.histogram.counts}}}});
    }
    Json doc = {{"target", std::string(to_string(report.target))}, {"rows", std::move(rows)}};
    if (report.start_score)
        doc["start_score"] = *report.start_score;
    return doc;
}

void write_sweep_csv(std::ostream &out, const SweepReport &report)
{
    out << "target,value,run,score\n";
    for (const auto &row : report.rows)
        for (std::size_t r = 0; r < row.scores.size(); ++r)
            out << to_string(report.target) << ',' << format6(row.value) << ',' << r << ',' << row.scores[r] << '\n';
}

namespace {

template <typename T>
T field(const Json &obj, const char *key, T fallback)
{
    if (!obj.contains(key))
        return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const Json::exception &) {
        throw ConfigError(std::string("bad value for '") + key + "'");
    }
}

} // namespace

SweepSpec sweep_spec_from_json(const Json &doc)
{
    if (!doc.is_object())
        throw ConfigError("sweep spec must be a JSON object");
    SweepSpec spec;
    const auto target = field<std::string>(doc, "target", "");
    const auto parsed = parse_sweep_target(target);
    if (!parsed)
        throw ConfigError("unknown sweep target '" + target + "'");
    spec.target = *parsed;
    if (!doc.contains("values") || !doc["values"].is_array())
        throw ConfigError("sweep spec needs a 'values' array");
    for (const auto &v : doc["values"]) {
        if (!v.is_number())
            throw ConfigError("sweep values must be numbers");
        spec.values.push_back(v.get<double>());
    }
    const auto runs = field<long long>(doc, "runs_per_value", 200);
    if (runs < 1)
        throw ConfigError("runs_per_value must be at least 1");
    spec.runs_per_value = static_cast<std::size_t>(runs);
    spec.seed = field<std::uint64_t>(doc, "seed", 0);

    if (doc.contains("bc")) {
        const auto &bc = doc["bc"];
        const auto fn = field<std::string>(bc, "score", "linear");
        const auto parsed_fn = parse_score_function(fn);
        if (!parsed_fn)
            throw ConfigError("unknown score function '" + fn + "'");
        spec.base_bc.score_fn = *parsed_fn;
        const auto max_size = field<long long>(bc, "max_size", 10);
        if (max_size < 1)
            throw ConfigError("bc.max_size must be at least 1");
        spec.base_bc.max_size = static_cast<std::size_t>(max_size);
        const auto mc = field<long long>(bc, "mc_runs", 100);
        if (mc < 1)
            throw ConfigError("bc.mc_runs must be at least 1");
        spec.start_mc_runs = static_cast<std::size_t>(mc);
        spec.base_bc.seed = field<std::uint64_t>(bc, "seed", spec.seed);
    } else {
        spec.base_bc.seed = spec.seed;
    }
    if (doc.contains("sa")) {
        const auto &sa = doc["sa"];
        const auto n = field<long long>(sa, "n", 600);
        const auto iters = field<long long>(sa, "iters", 50);
        if (n < 1 || iters < 1)
            throw ConfigError("sa.n and sa.iters must be at least 1");
        spec.base_sa.trial_swaps = static_cast<std::size_t>(n);
        spec.base_sa.iters_per_temp = static_cast<std::size_t>(iters);
        spec.base_sa.accept_prob = field<double>(sa, "ap", 0.95);
        spec.base_sa.cooling_rate = field<double>(sa, "alpha", 0.95);
        spec.base_sa.min_temperature = field<double>(sa, "tmin", 0.0001);
    }
    spec.validate();
    return spec;
}

std::string format_quality_report(const Json &quality)
{
    if (!quality.is_object() || !quality.contains("communities") || !quality.contains("total"))
        throw InputError("not a quality report");
    std::ostringstream out;
    char line[128];
    std::snprintf(line, sizeof line, "%-8s %8s %10s %10s\n", "LC", "size", "internal", "external");
    out << line;
    for (const auto &c : quality["communities"]) {
        std::snprintf(line, sizeof line, "%-8s %8zu %10lld %10lld\n",
                      ("LC" + std::to_string(c.value("id", 0))).c_str(), c.value("members", Json::array()).size(),
                      static_cast<long long>(c.value("internal", 0LL)), static_cast<long long>(c.value("external", 0LL)));
        out << line;
    }
    out << "communities: " << quality["communities"].size() << '\n';
    out << "S_T: " << quality["total"].get<long long>() << '\n';
    out << "cost: " << quality.value("cost", -quality["total"].get<long long>()) << '\n';
    return out.str();
}

} // namespace cohort
