// coarsen.hpp - community creation: hyperedge coarsening and Best-Choice
#ifndef COHORT_COARSEN_HPP
#define COHORT_COARSEN_HPP

#include "cohort/common.hpp"
#include "cohort/enrollnet.hpp"
#include "cohort/quality.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace cohort {

// Sections with at least two members, ordered by size ascending (weight
// 1/size descending), then by section index.
std::vector<Index> hyperedge_visit_order(const EnrollmentNetwork &network);

// Visits hyperedges in order; a hyperedge whose members are all unmarked
// becomes a community. A partially marked hyperedge is skipped and its
// unmarked members become marked singletons. Entities in no hyperedge end
// as singletons. The result's max_size is its largest community.
CommunitySet hyperedge_coarsen(const EnrollmentNetwork &network);

// As hyperedge_coarsen, but the still-unmarked members of a partially
// marked hyperedge are grouped into a community of their own.
CommunitySet modified_hyperedge_coarsen(const EnrollmentNetwork &network);

enum class ScoreFunction { Linear, Nonlinear };

std::string_view to_string(ScoreFunction fn);
std::optional<ScoreFunction> parse_score_function(std::string_view text);

// Exact rational closeness connectivity / denominator, denominator > 0.
struct Closeness {
    Weight connectivity = 0;
    Weight denominator = 1;

    double value() const { return static_cast<double>(connectivity) / static_cast<double>(denominator); }

    friend std::strong_ordering operator<=>(const Closeness &x, const Closeness &y)
    {
        const auto lhs = static_cast<__int128>(x.connectivity) * y.denominator;
        const auto rhs = static_cast<__int128>(y.connectivity) * x.denominator;
        return lhs <=> rhs;
    }
    friend bool operator==(const Closeness &x, const Closeness &y) { return (x <=> y) == 0; }
};

// connectivity / (|u|+|v|) for Linear, connectivity / (|u|+|v|)^2 otherwise.
Closeness bc_score(Weight connectivity, std::size_t size_u, std::size_t size_v, ScoreFunction fn);

// Same, summing C over u x v. u and v must be disjoint.
Closeness bc_score(std::span<const Index> u, std::span<const Index> v, const EnrollmentNetwork &network,
                   ScoreFunction fn);

struct BestChoiceParams {
    ScoreFunction score_fn = ScoreFunction::Linear;
    std::size_t max_size = 10;
    std::uint64_t seed = 0;
};

// One agglomeration step, reported before the merge is applied.
struct MergeStep {
    std::vector<Index> first;
    std::vector<Index> second;
    Closeness score;
};

using MergeObserver = std::function<void(const MergeStep &)>;

// Agglomerative clustering driven by a max-priority queue holding each
// community's closest eligible partner. Partners are eligible when the
// merged size fits max_size and the score is positive; equal scores are
// resolved by seeded random choice. Stops when no eligible pair remains.
CommunitySet best_choice(const EnrollmentNetwork &network, const BestChoiceParams &params,
                         const MergeObserver &observer = {});

struct ScoreStats {
    double mean = 0.0;
    double std = 0.0; // population standard deviation
    Weight best = 0;
};

ScoreStats summarize(std::span<const Weight> scores);

struct MonteCarloResult {
    CommunitySet best;
    std::size_t best_run = 0;
    ScoreStats stats;
    std::vector<Weight> scores; // S_T per run, in run order
};

// `runs` independent Best-Choice runs seeded derive_seed(params.seed, run).
// Keeps the first run reaching the highest S_T. Output does not depend on
// `jobs`.
MonteCarloResult monte_carlo_best_choice(const EnrollmentNetwork &network, const BestChoiceParams &params,
                                         std::size_t runs, unsigned jobs = 1);

} // namespace cohort

#endif // COHORT_COARSEN_HPP
