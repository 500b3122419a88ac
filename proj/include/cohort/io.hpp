// io.hpp - JSON, CSV and DOT exchange formats
#ifndef COHORT_IO_HPP
#define COHORT_IO_HPP

#include "cohort/anneal.hpp"
#include "cohort/lab.hpp"
#include "cohort/quality.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace cohort {

using Json = nlohmann::json; // std::map-backed, so keys serialize sorted

// Rounds to 6 significant digits for stable textual output.
double round6(double x);
std::string format6(double x);

// {entities:[...], sections:[...], edges:[[i,k,w],...]}, upper triangle only.
Json network_to_json(const EnrollmentNetwork &network);

struct NetworkSummary {
    std::size_t entities = 0;
    std::size_t sections = 0;
    std::size_t edges = 0;
    std::size_t isolated = 0;
};
NetworkSummary summarize(const EnrollmentNetwork &network);
Json summary_to_json(const NetworkSummary &summary);

// {communities:[{id, members:[entity ids], internal, external}], total, cost}
Json quality_to_json(const CommunitySet &set, const QualityReport &report, const EnrollmentNetwork &network);

// Reads the `communities[].members` lists of either export. Members are
// entity ids. Throws InputError for malformed documents and
// PartitionMismatch when the lists do not partition the network.
CommunitySet communities_from_json(const Json &doc, const EnrollmentNetwork &network);

// Nodes are communities labeled "LC<i> (int=<S_I>)", edges carry the
// cross-community connection count.
std::string quality_to_dot(const CommunitySet &set, const QualityReport &report, const EnrollmentNetwork &network);

// move,temperature,current_cost,best_cost; every `stride`-th move plus the last.
void write_trace_csv(std::ostream &out, const AnnealTrace &trace, std::size_t iters_per_temp, std::size_t stride = 1);

Json sweep_to_json(const SweepReport &report);
// target,value,run,score
void write_sweep_csv(std::ostream &out, const SweepReport &report);

// Throws ConfigError on unknown targets or bad fields.
SweepSpec sweep_spec_from_json(const Json &doc);

// Human-readable table of a quality export.
std::string format_quality_report(const Json &quality);

} // namespace cohort

#endif // COHORT_IO_HPP
