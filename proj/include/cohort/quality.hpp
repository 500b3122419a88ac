// quality.hpp - community sets, the total quality score and swap deltas
#ifndef COHORT_QUALITY_HPP
#define COHORT_QUALITY_HPP

#include "cohort/common.hpp"
#include "cohort/enrollnet.hpp"

#include <span>
#include <vector>

namespace cohort {

// A partition of entities 0..n-1 into non-empty communities of bounded size.
class CommunitySet {
public:
    CommunitySet() = default;

    // Validates disjointness, coverage of [0, entity_count) and the size cap.
    // Throws PartitionMismatch on any violation.
    CommunitySet(std::vector<std::vector<Index>> communities, Index entity_count, std::size_t max_size);

    // Every entity alone.
    static CommunitySet singletons(Index entity_count);

    std::size_t size() const { return communities_.size(); }
    Index entity_count() const { return static_cast<Index>(membership_.size()); }
    std::size_t max_size() const { return max_size_; }

    const std::vector<std::vector<Index>> &communities() const { return communities_; }
    std::span<const Index> members(std::size_t community) const { return communities_.at(community); }
    Index community_of(Index entity) const { return membership_.at(entity); }
    const std::vector<Index> &membership() const { return membership_; }

    // Exchange the communities of a and b in place. Throws SameCommunity.
    void swap_members(Index a, Index b);

    // Sorted multiset of community sizes.
    std::vector<std::size_t> size_profile() const;

    // Some pair of entities lies in distinct communities.
    bool swappable() const { return communities_.size() >= 2; }

    // Communities sorted internally, then ordered by smallest member. Two
    // sets describing the same partition compare equal after this.
    CommunitySet canonical() const;

    friend bool operator==(const CommunitySet &, const CommunitySet &) = default;

private:
    std::vector<std::vector<Index>> communities_;
    std::vector<Index> membership_; // entity -> community
    std::vector<Index> position_;   // entity -> slot within its community
    std::size_t max_size_ = 1;
};

struct CommunityScore {
    Weight internal = 0; // shared sections over unordered pairs inside
    Weight external = 0; // shared sections between members and non-members
};

struct QualityReport {
    std::vector<CommunityScore> per_community;
    Weight total = 0; // sum of internal - external
    Weight cost = 0;  // -total
};

// Throws PartitionMismatch if the set does not cover the network's entities.
QualityReport score(const CommunitySet &set, const EnrollmentNetwork &network);

// Cost change of exchanging a and b, reading only their rows of C.
// The double-counted external convention makes cost = 2*W - 3*W_in, where W
// is the total off-diagonal weight and W_in the weight inside communities,
// so the delta is -3 times the change in W_in. Throws SameCommunity.
Weight delta_cost_swap(const CommunitySet &set, const EnrollmentNetwork &network, Index a, Index b);

// Copy of `set` with a and b exchanged. Throws SameCommunity.
CommunitySet apply_swap(const CommunitySet &set, Index a, Index b);

} // namespace cohort

#endif // COHORT_QUALITY_HPP
