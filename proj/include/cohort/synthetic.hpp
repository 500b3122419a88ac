// synthetic.hpp - generated enrollment data with planted communities
#ifndef COHORT_SYNTHETIC_HPP
#define COHORT_SYNTHETIC_HPP

#include "cohort/enrollnet.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace cohort {

// Entities are split into consecutive groups of `group_size`. Each group
// owns `sections_per_entity` home sections (assigned round-robin, so groups
// may share them). Every entity enrolls in `sections_per_entity` distinct
// sections; each pick is a home section with probability `affinity` and a
// uniformly random section otherwise.
struct PlantedSpec {
    Index entities = 150;
    Index sections = 20;
    Index group_size = 10;
    Index sections_per_entity = 3;
    double affinity = 0.8;
    std::uint64_t seed = 1;
};

std::vector<EnrollmentRecord> planted_enrollment(const PlantedSpec &spec);

void write_enrollment_csv(std::ostream &out, const std::vector<EnrollmentRecord> &records);

} // namespace cohort

#endif // COHORT_SYNTHETIC_HPP
