// coarsen.cpp - hyperedge coarsening, Best-Choice and its Monte-Carlo wrapper
#include "cohort/coarsen.hpp"

#include "cohort/parallel.hpp"
#include "cohort/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace cohort {

std::vector<Index> hyperedge_visit_order(const EnrollmentNetwork &network)
{
    std::vector<Index> order;
    for (Index s = 0; s < network.section_count(); ++s)
        if (network.section_members(s).size() >= 2)
            order.push_back(s);
    std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) {
        return network.section_members(x).size() < network.section_members(y).size();
    });
    return order;
}

namespace {

CommunitySet coarsen(const EnrollmentNetwork &network, bool group_leftovers)
{
    const Index n = network.entity_count();
    std::vector<bool> marked(n, false);
    std::vector<std::vector<Index>> communities;

    for (Index s : hyperedge_visit_order(network)) {
        const auto members = network.section_members(s);
        std::vector<Index> unmarked;
        for (Index e : members)
            if (!marked[e])
                unmarked.push_back(e);
        if (unmarked.empty())
            continue;
        for (Index e : unmarked)
            marked[e] = true;
        if (unmarked.size() < members.size() && !group_leftovers) {
            // Partially marked: the hyperedge is skipped and each of its
            // unmarked cells becomes an individual cluster.
            for (Index e : unmarked)
                communities.push_back({e});
            continue;
        }
        communities.push_back(std::move(unmarked));
    }
    for (Index e = 0; e < n; ++e)
        if (!marked[e])
            communities.push_back({e});

    std::size_t largest = 1;
    for (const auto &c : communities)
        largest = std::max(largest, c.size());
    return CommunitySet(std::move(communities), n, largest);
}

} // namespace

CommunitySet hyperedge_coarsen(const EnrollmentNetwork &network)
{
    return coarsen(network, false);
}

CommunitySet modified_hyperedge_coarsen(const EnrollmentNetwork &network)
{
    return coarsen(network, true);
}

std::string_view to_string(ScoreFunction fn)
{
    return fn == ScoreFunction::Nonlinear ? "nonlinear" : "linear";
}

std::optional<ScoreFunction> parse_score_function(std::string_view text)
{
    if (text == "linear" || text == "d_l" || text == "dl")
        return ScoreFunction::Linear;
    if (text == "nonlinear" || text == "d_n" || text == "dn")
        return ScoreFunction::Nonlinear;
    return std::nullopt;
}

Closeness bc_score(Weight connectivity, std::size_t size_u, std::size_t size_v, ScoreFunction fn)
{
    const auto combined = static_cast<Weight>(size_u + size_v);
    return {connectivity, fn == ScoreFunction::Linear ? combined : combined * combined};
}

Closeness bc_score(std::span<const Index> u, std::span<const Index> v, const EnrollmentNetwork &network,
                   ScoreFunction fn)
{
    Weight connectivity = 0;
    for (Index i : u)
        for (Index k : v)
            connectivity += network.connections(i, k);
    return bc_score(connectivity, u.size(), v.size(), fn);
}

namespace {

constexpr Index kNone = std::numeric_limits<Index>::max();

struct Cluster {
    std::vector<Index> members;
    // Sorted by cluster id. May hold entries for dead clusters, which are
    // dropped whenever the list is rescanned.
    std::vector<std::pair<Index, Weight>> links;
    bool alive = true;
    Index best = kNone;
    Closeness best_score;
    std::uint32_t ties = 0;
    std::uint32_t version = 0;
};

struct QueueEntry {
    Closeness score;
    std::uint64_t tiebreak;
    Index cluster;
    std::uint32_t version;
};

struct QueueOrder {
    bool operator()(const QueueEntry &x, const QueueEntry &y) const
    {
        const auto c = x.score <=> y.score;
        if (c != 0)
            return c < 0;
        return x.tiebreak < y.tiebreak;
    }
};

class BestChoiceRun {
public:
    BestChoiceRun(const EnrollmentNetwork &network, const BestChoiceParams &params, const MergeObserver &observer)
        : network_(network), params_(params), observer_(observer), rng_(params.seed)
    {
        const Index n = network.entity_count();
        clusters_.resize(n);
        for (Index e = 0; e < n; ++e) {
            auto &c = clusters_[e];
            c.members = {e};
            for (const auto &nb : network.neighbors(e))
                c.links.emplace_back(nb.entity, nb.weight);
        }
    }

    CommunitySet run()
    {
        for (Index u = 0; u < clusters_.size(); ++u) {
            rescan(u);
            enqueue(u);
        }
        while (!queue_.empty()) {
            const QueueEntry top = queue_.top();
            queue_.pop();
            auto &u = clusters_[top.cluster];
            if (!u.alive || u.version != top.version)
                continue;
            if (top.score.connectivity <= 0)
                break;
            merge(top.cluster, u.best, top.score);
        }
        return collect();
    }

private:
    bool eligible(Index u, Index v, Weight w) const
    {
        return w > 0 && clusters_[u].members.size() + clusters_[v].members.size() <= params_.max_size;
    }

    Closeness closeness(Index u, Index v, Weight w) const
    {
        return bc_score(w, clusters_[u].members.size(), clusters_[v].members.size(), params_.score_fn);
    }

    // Offers v as a partner for u. Equal scores are kept uniformly at random
    // over the offers seen since the last full rescan.
    bool offer(Index u, Index v, Weight w)
    {
        if (!eligible(u, v, w))
            return false;
        auto &c = clusters_[u];
        const Closeness s = closeness(u, v, w);
        if (c.best == kNone || s > c.best_score) {
            c.best = v;
            c.best_score = s;
            c.ties = 1;
            return true;
        }
        if (s == c.best_score) {
            ++c.ties;
            if (rng_.below(c.ties) == 0) {
                c.best = v;
                return true;
            }
        }
        return false;
    }

    void rescan(Index u)
    {
        auto &c = clusters_[u];
        c.best = kNone;
        c.ties = 0;
        std::size_t kept = 0;
        for (std::size_t i = 0; i < c.links.size(); ++i) {
            const auto link = c.links[i];
            if (!clusters_[link.first].alive)
                continue;
            c.links[kept++] = link;
            offer(u, link.first, link.second);
        }
        c.links.resize(kept);
    }

    void enqueue(Index u)
    {
        auto &c = clusters_[u];
        ++c.version;
        if (c.best != kNone)
            queue_.push({c.best_score, rng_.next(), u, c.version});
    }

    void merge(Index u, Index v, Closeness s)
    {
        if (observer_)
            observer_({clusters_[u].members, clusters_[v].members, s});

        const auto merged = static_cast<Index>(clusters_.size());
        Cluster next;
        next.members = clusters_[u].members;
        next.members.insert(next.members.end(), clusters_[v].members.begin(), clusters_[v].members.end());

        const auto &lu = clusters_[u].links;
        const auto &lv = clusters_[v].links;
        std::size_t i = 0, j = 0;
        auto live = [&](Index id) { return id != u && id != v && clusters_[id].alive; };
        while (i < lu.size() || j < lv.size()) {
            if (j == lv.size() || (i < lu.size() && lu[i].first < lv[j].first)) {
                if (live(lu[i].first))
                    next.links.push_back(lu[i]);
                ++i;
            } else if (i == lu.size() || lv[j].first < lu[i].first) {
                if (live(lv[j].first))
                    next.links.push_back(lv[j]);
                ++j;
            } else {
                if (live(lu[i].first))
                    next.links.emplace_back(lu[i].first, lu[i].second + lv[j].second);
                ++i;
                ++j;
            }
        }

        for (Index dead : {u, v}) {
            auto &c = clusters_[dead];
            c.alive = false;
            c.links = {};
            c.members = {};
        }
        clusters_.push_back(std::move(next));

        // Neighbours gain a link to the new cluster; those whose partner was
        // absorbed are rescanned, the rest only consider the newcomer.
        const auto links = clusters_[merged].links;
        for (const auto &[w, weight] : links) {
            auto &c = clusters_[w];
            c.links.emplace_back(merged, weight);
            if (c.best == u || c.best == v) {
                rescan(w);
                enqueue(w);
            } else if (offer(w, merged, weight)) {
                enqueue(w);
            }
        }
        rescan(merged);
        enqueue(merged);
    }

    CommunitySet collect() const
    {
        std::vector<std::vector<Index>> communities;
        for (const auto &c : clusters_) {
            if (!c.alive)
                continue;
            auto members = c.members;
            std::sort(members.begin(), members.end());
            communities.push_back(std::move(members));
        }
        std::sort(communities.begin(), communities.end(),
                  [](const auto &x, const auto &y) { return x.front() < y.front(); });
        return CommunitySet(std::move(communities), network_.entity_count(), std::max<std::size_t>(1, params_.max_size));
    }

    const EnrollmentNetwork &network_;
    const BestChoiceParams &params_;
    const MergeObserver &observer_;
    Rng rng_;
    std::vector<Cluster> clusters_;
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueOrder> queue_;
};

} // namespace

CommunitySet best_choice(const EnrollmentNetwork &network, const BestChoiceParams &params,
                         const MergeObserver &observer)
{
    return BestChoiceRun(network, params, observer).run();
}

ScoreStats summarize(std::span<const Weight> scores)
{
    ScoreStats stats;
    if (scores.empty())
        return stats;
    stats.best = *std::max_element(scores.begin(), scores.end());
    double sum = 0.0;
    for (Weight s : scores)
        sum += static_cast<double>(s);
    stats.mean = sum / static_cast<double>(scores.size());
    double sq = 0.0;
    for (Weight s : scores) {
        const double d = static_cast<double>(s) - stats.mean;
        sq += d * d;
    }
    stats.std = std::sqrt(sq / static_cast<double>(scores.size()));
    return stats;
}

MonteCarloResult monte_carlo_best_choice(const EnrollmentNetwork &network, const BestChoiceParams &params,
                                         std::size_t runs, unsigned jobs)
{
    if (runs == 0)
        throw ConfigError("Monte-Carlo runs must be at least 1");

    std::vector<std::optional<CommunitySet>> sets(runs);
    std::vector<Weight> scores(runs);
    parallel_for(runs, jobs, [&](std::size_t r) {
        BestChoiceParams run_params = params;
        run_params.seed = derive_seed(params.seed, r);
        auto set = best_choice(network, run_params);
        scores[r] = score(set, network).total;
        sets[r] = std::move(set);
    });

    MonteCarloResult result;
    for (std::size_t r = 1; r < runs; ++r)
        if (scores[r] > scores[result.best_run])
            result.best_run = r;
    result.best = std::move(*sets[result.best_run]);
    result.stats = summarize(scores);
    result.scores = std::move(scores);
    return result;
}

} // namespace cohort
