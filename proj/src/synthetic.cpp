// synthetic.cpp - planted-community enrollment generator
#include "cohort/synthetic.hpp"

#include "cohort/rng.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace cohort {

namespace {

std::string numbered(char prefix, Index i, int width)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%c%0*u", prefix, width, static_cast<unsigned>(i));
    return buf;
}

} // namespace

std::vector<EnrollmentRecord> planted_enrollment(const PlantedSpec &spec)
{
    if (spec.entities == 0 || spec.sections == 0 || spec.group_size == 0)
        throw ConfigError("planted enrollment needs entities, sections and a group size");
    if (spec.sections_per_entity == 0 || spec.sections_per_entity > spec.sections)
        throw ConfigError("sections_per_entity must lie in [1, sections]");

    Rng rng(spec.seed);
    const Index per = spec.sections_per_entity;
    std::vector<EnrollmentRecord> records;
    records.reserve(static_cast<std::size_t>(spec.entities) * per);

    std::vector<Index> chosen;
    for (Index e = 0; e < spec.entities; ++e) {
        const Index group = e / spec.group_size;
        chosen.clear();
        for (Index j = 0; j < per; ++j) {
            Index s;
            if (rng.unit() < spec.affinity)
                s = static_cast<Index>((static_cast<std::uint64_t>(group) * per + j) % spec.sections);
            else
                s = static_cast<Index>(rng.below(spec.sections));
            while (std::find(chosen.begin(), chosen.end(), s) != chosen.end())
                s = static_cast<Index>(rng.below(spec.sections));
            chosen.push_back(s);
        }
        for (Index s : chosen) {
            auto kind = s % 4 == 0 ? ComponentKind::Lecture : (s % 4 == 1 ? ComponentKind::Tutorial : ComponentKind::Lab);
            records.push_back({numbered('e', e, 5), numbered('c', s, 5), kind});
        }
    }
    return records;
}

void write_enrollment_csv(std::ostream &out, const std::vector<EnrollmentRecord> &records)
{
    out << "entity_id,section_id,component\n";
    for (const auto &r : records) {
        out << r.entity_id << ',' << r.section_id << ',';
        if (r.component_kind)
            out << to_string(*r.component_kind);
        out << '\n';
    }
}

} // namespace cohort
