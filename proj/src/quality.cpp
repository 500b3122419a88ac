// quality.cpp - community set bookkeeping and scoring
#include "cohort/quality.hpp"

#include <algorithm>
#include <string>

namespace cohort {

CommunitySet::CommunitySet(std::vector<std::vector<Index>> communities, Index entity_count,
                           std::size_t max_size)
    : communities_(std::move(communities)),
      membership_(entity_count, static_cast<Index>(-1)),
      position_(entity_count, 0),
      max_size_(max_size)
{
    if (max_size_ == 0)
        throw PartitionMismatch("max_size must be at least 1");
    Index covered = 0;
    for (std::size_t c = 0; c < communities_.size(); ++c) {
        const auto &members = communities_[c];
        if (members.empty())
            throw PartitionMismatch("community " + std::to_string(c) + " is empty");
        if (members.size() > max_size_)
            throw PartitionMismatch("community " + std::to_string(c) + " has " +
                                    std::to_string(members.size()) + " members, cap is " +
                                    std::to_string(max_size_));
        for (std::size_t p = 0; p < members.size(); ++p) {
            const Index e = members[p];
            if (e >= entity_count)
                throw PartitionMismatch("entity " + std::to_string(e) + " is not in the network");
            if (membership_[e] != static_cast<Index>(-1))
                throw PartitionMismatch("entity " + std::to_string(e) + " appears twice");
            membership_[e] = static_cast<Index>(c);
            position_[e] = static_cast<Index>(p);
            ++covered;
        }
    }
    if (covered != entity_count)
        throw PartitionMismatch(std::to_string(entity_count - covered) + " entities are not assigned");
}

CommunitySet CommunitySet::singletons(Index entity_count)
{
    std::vector<std::vector<Index>> communities(entity_count);
    for (Index e = 0; e < entity_count; ++e)
        communities[e] = {e};
    return CommunitySet(std::move(communities), entity_count, 1);
}

void CommunitySet::swap_members(Index a, Index b)
{
    const Index ca = membership_.at(a);
    const Index cb = membership_.at(b);
    if (ca == cb)
        throw SameCommunity(a, b);
    std::swap(communities_[ca][position_[a]], communities_[cb][position_[b]]);
    std::swap(position_[a], position_[b]);
    membership_[a] = cb;
    membership_[b] = ca;
}

std::vector<std::size_t> CommunitySet::size_profile() const
{
    std::vector<std::size_t> sizes;
    sizes.reserve(communities_.size());
    for (const auto &c : communities_)
        sizes.push_back(c.size());
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

CommunitySet CommunitySet::canonical() const
{
    auto sorted = communities_;
    for (auto &c : sorted)
        std::sort(c.begin(), c.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const auto &x, const auto &y) { return x.front() < y.front(); });
    return CommunitySet(std::move(sorted), entity_count(), max_size_);
}

QualityReport score(const CommunitySet &set, const EnrollmentNetwork &network)
{
    if (set.entity_count() != network.entity_count())
        throw PartitionMismatch("community set covers " + std::to_string(set.entity_count()) +
                                " entities, network has " + std::to_string(network.entity_count()));
    QualityReport report;
    report.per_community.resize(set.size());
    for (Index i = 0; i < network.entity_count(); ++i) {
        const Index ci = set.community_of(i);
        auto &entry = report.per_community[ci];
        for (const auto &nb : network.neighbors(i)) {
            if (set.community_of(nb.entity) == ci) {
                if (nb.entity > i)
                    entry.internal += nb.weight;
            } else {
                entry.external += nb.weight;
            }
        }
    }
    for (const auto &c : report.per_community)
        report.total += c.internal - c.external;
    report.cost = -report.total;
    return report;
}

Weight delta_cost_swap(const CommunitySet &set, const EnrollmentNetwork &network, Index a, Index b)
{
    const Index ca = set.community_of(a);
    const Index cb = set.community_of(b);
    if (ca == cb)
        throw SameCommunity(a, b);

    // Internal-weight change: a trades its ties to ca for ties to cb\{b},
    // b trades its ties to cb for ties to ca\{a}. The a-b edge stays cross.
    Weight gain = 0;
    for (const auto &nb : network.neighbors(a)) {
        if (nb.entity == b)
            continue;
        const Index c = set.community_of(nb.entity);
        if (c == ca)
            gain -= nb.weight;
        else if (c == cb)
            gain += nb.weight;
    }
    for (const auto &nb : network.neighbors(b)) {
        if (nb.entity == a)
            continue;
        const Index c = set.community_of(nb.entity);
        if (c == cb)
            gain -= nb.weight;
        else if (c == ca)
            gain += nb.weight;
    }
    return -3 * gain;
}

CommunitySet apply_swap(const CommunitySet &set, Index a, Index b)
{
    CommunitySet out = set;
    out.swap_members(a, b);
    return out;
}

} // namespace cohort
