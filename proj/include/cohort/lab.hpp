// lab.hpp - parameter sweeps with Monte-Carlo statistics
#ifndef COHORT_LAB_HPP
#define COHORT_LAB_HPP

#include "cohort/anneal.hpp"
#include "cohort/coarsen.hpp"
#include "cohort/enrollnet.hpp"
#include "cohort/quality.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace cohort {

enum class SweepTarget { BcMaxSize, BcMcRuns, SaN, SaAp, SaAlpha, SaTmin, SaIters };

std::string_view to_string(SweepTarget target);
std::optional<SweepTarget> parse_sweep_target(std::string_view text);
bool is_anneal_target(SweepTarget target);

struct SweepSpec {
    SweepTarget target = SweepTarget::BcMaxSize;
    std::vector<double> values;
    std::size_t runs_per_value = 200;
    BestChoiceParams base_bc;
    // Best-Choice runs used to build the fixed starting set of anneal sweeps.
    std::size_t start_mc_runs = 100;
    AnnealParams base_sa;
    std::uint64_t seed = 0;

    // Throws ConfigError for empty value lists or out-of-domain values.
    void validate() const;
};

// Fixed-width bins [lo + k*width, lo + (k+1)*width).
struct Histogram {
    double lo = 0.0;
    double width = 1.0;
    std::vector<std::size_t> counts;

    std::vector<double> edges() const;
};

// Freedman-Diaconis width 2*IQR/cbrt(n) rounded up to an integer, at least
// 1, with bins starting at the smallest score.
Histogram make_bins(std::span<const Weight> pooled);
void fill(Histogram &h, std::span<const Weight> scores);

struct SweepRow {
    double value = 0.0;
    ScoreStats stats;
    Histogram histogram;
    std::vector<Weight> scores;
    double runtime_seconds = 0.0; // wall clock, informational only
};

struct SweepReport {
    SweepTarget target = SweepTarget::BcMaxSize;
    std::vector<SweepRow> rows;
    std::optional<Weight> start_score; // anneal sweeps: S_T of the shared start set
};

// Seed of run `run` for a given value; depends on the value itself rather
// than its position so reordering values leaves every row unchanged.
std::uint64_t sweep_run_seed(const SweepSpec &spec, double value, std::size_t run);

// Anneal targets first build one starting set with monte_carlo_best_choice
// over base_bc and refine that same set in every run.
SweepReport run_sweep(const EnrollmentNetwork &network, const SweepSpec &spec, unsigned jobs = 1);

struct ConvergencePoint {
    std::size_t n = 0;
    double mean_trial_cost = 0.0;
};

// Running mean of independent single-swap trial costs for n = 1..max_n.
std::vector<ConvergencePoint> n_convergence_curve(const CommunitySet &set, const EnrollmentNetwork &network,
                                                  std::size_t max_n, Rng &rng);

} // namespace cohort

#endif // COHORT_LAB_HPP
