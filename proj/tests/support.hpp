// support.hpp - test-only generators and brute-force oracles
#ifndef COHORT_TESTS_SUPPORT_HPP
#define COHORT_TESTS_SUPPORT_HPP

#include "cohort/coarsen.hpp"
#include "cohort/enrollnet.hpp"
#include "cohort/quality.hpp"
#include "cohort/rng.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cohort::test {

using Matrix = std::vector<std::vector<Weight>>;

inline std::string entity_name(Index i) { return "s" + std::to_string(i); }

// Records for hyperedges over entities 0..n-1. Every entity is announced
// through the first hyperedge containing it; entities in no hyperedge are
// given a private section so they still exist. Entity i is named "s<i>".
inline std::vector<EnrollmentRecord> hyperedge_records(Index n, const std::vector<std::vector<Index>> &edges)
{
    std::vector<EnrollmentRecord> records;
    for (std::size_t j = 0; j < edges.size(); ++j)
        for (Index e : edges[j])
            records.push_back({entity_name(e), "h" + std::to_string(j), std::nullopt});
    std::set<Index> seen;
    for (const auto &e : edges)
        seen.insert(e.begin(), e.end());
    for (Index i = 0; i < n; ++i)
        if (!seen.count(i))
            records.push_back({entity_name(i), "solo" + std::to_string(i), std::nullopt});
    return records;
}

inline EnrollmentNetwork network_of(Index n, const std::vector<std::vector<Index>> &edges)
{
    const auto records = hyperedge_records(n, edges);
    return build_network(load_enrollment(records));
}

// Index of the entity named "s<label>".
inline Index idx(const EnrollmentNetwork &net, Index label)
{
    const auto &ids = net.entities();
    return static_cast<Index>(std::find(ids.begin(), ids.end(), entity_name(label)) - ids.begin());
}

// Each (entity, section) pair present with probability `density`.
inline std::vector<EnrollmentRecord> random_records(Rng &rng, Index entities, Index sections, double density)
{
    std::vector<EnrollmentRecord> records;
    for (Index e = 0; e < entities; ++e) {
        bool any = false;
        for (Index s = 0; s < sections; ++s) {
            if (rng.unit() < density) {
                records.push_back({entity_name(e), "c" + std::to_string(s), std::nullopt});
                any = true;
            }
        }
        if (!any)
            records.push_back({entity_name(e), "c" + std::to_string(rng.below(sections)), std::nullopt});
    }
    return records;
}

inline EnrollmentNetwork random_network(Rng &rng, Index entities, Index sections, double density)
{
    return build_network(load_enrollment(random_records(rng, entities, sections, density)));
}

// C by the defining triple loop over the network's dense A.
inline Matrix dense_connectivity(const EnrollmentNetwork &net)
{
    const Index n = net.entity_count();
    const Index m = net.section_count();
    std::vector<std::vector<int>> a(n, std::vector<int>(m));
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < m; ++j)
            a[i][j] = net.adjacency(i, j);
    Matrix c(n, std::vector<Weight>(n, 0));
    for (Index i = 0; i < n; ++i)
        for (Index k = 0; k < n; ++k)
            for (Index j = 0; j < m; ++j)
                c[i][k] += a[i][j] * a[k][j];
    return c;
}

// Random partition into communities of at most max_size members.
inline CommunitySet random_partition(Rng &rng, Index n, std::size_t max_size)
{
    std::vector<Index> order(n);
    for (Index i = 0; i < n; ++i)
        order[i] = i;
    for (Index i = n; i > 1; --i)
        std::swap(order[i - 1], order[rng.below(i)]);
    std::vector<std::vector<Index>> communities;
    std::size_t pos = 0;
    while (pos < n) {
        const auto len = std::min<std::size_t>(1 + rng.below(max_size), n - pos);
        communities.emplace_back(order.begin() + static_cast<long>(pos), order.begin() + static_cast<long>(pos + len));
        pos += len;
    }
    return CommunitySet(std::move(communities), n, max_size);
}

struct BruteScore {
    std::vector<Weight> internal;
    std::vector<Weight> external;
    Weight total = 0;
};

// S_I and S_E straight from their definitions over a dense C.
inline BruteScore brute_score(const std::vector<std::vector<Index>> &communities, const Matrix &c)
{
    BruteScore out;
    for (const auto &comm : communities) {
        Weight in = 0, ex = 0;
        for (std::size_t x = 0; x < comm.size(); ++x)
            for (std::size_t y = x + 1; y < comm.size(); ++y)
                in += c[comm[x]][comm[y]];
        for (Index i : comm)
            for (Index k = 0; k < c.size(); ++k)
                if (std::find(comm.begin(), comm.end(), k) == comm.end())
                    ex += c[i][k];
        out.internal.push_back(in);
        out.external.push_back(ex);
        out.total += in - ex;
    }
    return out;
}

// Canonical partition by entity names, for order-insensitive comparison.
inline std::set<std::set<std::string>> named(const CommunitySet &set, const EnrollmentNetwork &net)
{
    std::set<std::set<std::string>> out;
    for (const auto &c : set.communities()) {
        std::set<std::string> names;
        for (Index e : c)
            names.insert(net.entities()[e]);
        out.insert(std::move(names));
    }
    return out;
}

inline std::set<std::string> singleton_names(const CommunitySet &set, const EnrollmentNetwork &net)
{
    std::set<std::string> out;
    for (const auto &c : set.communities())
        if (c.size() == 1)
            out.insert(net.entities()[c.front()]);
    return out;
}

// Highest S_T over every partition with communities of at most max_size.
inline Weight brute_best_total(const Matrix &c, std::size_t max_size)
{
    const auto n = static_cast<Index>(c.size());
    std::vector<std::vector<Index>> current;
    Weight best = std::numeric_limits<Weight>::min();
    auto recurse = [&](auto &&self, Index e) -> void {
        if (e == n) {
            best = std::max(best, brute_score(current, c).total);
            return;
        }
        for (auto &comm : current) {
            if (comm.size() < max_size) {
                comm.push_back(e);
                self(self, e + 1);
                comm.pop_back();
            }
        }
        current.push_back({e});
        self(self, e + 1);
        current.pop_back();
    };
    recurse(recurse, 0);
    return best;
}

struct OracleCheck {
    std::size_t steps = 0;
    std::size_t mismatches = 0;
    bool terminated_correctly = true;
};

// Replays a Best-Choice merge sequence against a full rescan of every pair
// of current communities: each merge must be eligible and attain the
// maximal score, and once merges stop no eligible positive pair may remain.
inline OracleCheck rescan_oracle(const EnrollmentNetwork &net, const Matrix &c, const BestChoiceParams &params,
                                 const std::vector<MergeStep> &steps)
{
    std::vector<std::vector<Index>> current;
    for (Index e = 0; e < net.entity_count(); ++e)
        current.push_back({e});
    auto conn = [&](const std::vector<Index> &u, const std::vector<Index> &v) {
        Weight w = 0;
        for (Index i : u)
            for (Index k : v)
                w += c[i][k];
        return w;
    };
    auto best_eligible = [&]() -> std::optional<Closeness> {
        std::optional<Closeness> best;
        for (std::size_t x = 0; x < current.size(); ++x)
            for (std::size_t y = x + 1; y < current.size(); ++y) {
                if (current[x].size() + current[y].size() > params.max_size)
                    continue;
                const Weight w = conn(current[x], current[y]);
                if (w <= 0)
                    continue;
                const auto s = bc_score(w, current[x].size(), current[y].size(), params.score_fn);
                if (!best || s > *best)
                    best = s;
            }
        return best;
    };
    auto find = [&](const std::vector<Index> &members) {
        auto sorted = members;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t x = 0; x < current.size(); ++x) {
            auto cur = current[x];
            std::sort(cur.begin(), cur.end());
            if (cur == sorted)
                return x;
        }
        return current.size();
    };

    OracleCheck out;
    for (const auto &step : steps) {
        ++out.steps;
        const auto best = best_eligible();
        const auto x = find(step.first);
        const auto y = find(step.second);
        if (!best || x == current.size() || y == current.size() || x == y) {
            ++out.mismatches;
            break;
        }
        const Weight w = conn(current[x], current[y]);
        const auto s = bc_score(w, current[x].size(), current[y].size(), params.score_fn);
        if (current[x].size() + current[y].size() > params.max_size || w <= 0 || !(s == *best) ||
            !(s == step.score))
            ++out.mismatches;
        auto merged = current[x];
        merged.insert(merged.end(), current[y].begin(), current[y].end());
        current.erase(current.begin() + static_cast<long>(std::max(x, y)));
        current.erase(current.begin() + static_cast<long>(std::min(x, y)));
        current.push_back(std::move(merged));
    }
    out.terminated_correctly = !best_eligible().has_value();
    return out;
}

} // namespace cohort::test

#endif // COHORT_TESTS_SUPPORT_HPP
