// anneal.hpp - simulated annealing refinement of a community set
#ifndef COHORT_ANNEAL_HPP
#define COHORT_ANNEAL_HPP

#include "cohort/common.hpp"
#include "cohort/enrollnet.hpp"
#include "cohort/quality.hpp"
#include "cohort/rng.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace cohort {

struct AnnealParams {
    std::size_t trial_swaps = 600;   // N, swaps averaged for the initial temperature
    double accept_prob = 0.95;       // AP
    double cooling_rate = 0.95;      // alpha
    double min_temperature = 0.0001; // T_min
    std::size_t iters_per_temp = 50; // i_T
    std::uint64_t seed = 0;

    double temperature_floor = 1.0; // replaces a non-positive initial temperature
    // Skips the trial-swap estimate and starts from this temperature.
    std::optional<double> fixed_t0;
    // Full re-score cross-check of the running cost every this many moves;
    // 0 disables it. A mismatch throws std::logic_error.
    std::size_t audit_interval = 0;

    // Throws ConfigError naming the first bad field.
    void validate() const;
};

struct InitialTemperature {
    double t0 = 0.0;
    double mean_trial_cost = 0.0;
    Weight initial_cost = 0;
    bool clamped = false;
};

// T0 = (cost_initial - mean_trial_cost) / ln(AP). Worsening trials make the
// numerator negative and T0 positive.
double initial_temperature(double initial_cost, double mean_trial_cost, double accept_prob);

// Averages the cost of `trials` independent single swaps applied to the
// untouched input. A non-positive T0 is replaced by `floor` and flagged.
// Throws NoSwapPossible when the set has a single community.
InitialTemperature estimate_initial_temperature(const CommunitySet &set, const EnrollmentNetwork &network,
                                                std::size_t trials, double accept_prob, Rng &rng,
                                                double floor = 1.0);

// Uniform over unordered pairs of entities in distinct communities.
std::pair<Index, Index> select_pair(const CommunitySet &set, Rng &rng);

// 1 for delta < 0, else exp(-delta / T). Throws NonpositiveTemperature.
double acceptance_probability(double delta, double temperature);

// Metropolis test: always true for delta < 0, otherwise draws r in [0,1)
// and accepts when r < exp(-delta / T).
bool accept_move(Weight delta, double temperature, Rng &rng);

// Cooling steps from t0 down to t_min: the number of k >= 0 with
// t0 * alpha^k > t_min.
std::size_t cooling_steps(double t0, double cooling_rate, double min_temperature);

struct MoveRecord {
    std::size_t move = 0; // 1-based
    Weight current_cost = 0;
    Weight best_cost = 0;
};

struct AnnealTrace {
    double t0 = 0.0;
    bool t0_clamped = false;
    double mean_trial_cost = 0.0;
    Weight initial_cost = 0;
    std::vector<double> temperatures; // one per cooling step
    std::vector<MoveRecord> moves;    // iters_per_temp consecutive moves per temperature
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    CommunitySet final_set; // current solution at termination
};

struct AnnealResult {
    CommunitySet best; // lowest-cost set visited, the input included
    Weight best_cost = 0;
    AnnealTrace trace;
};

// Swap-only annealing: community sizes never change. A move is accepted
// when it lowers the cost, or when r < exp(-delta/T) for r uniform in [0,1).
// T starts at the estimated T0 and is multiplied by alpha after every
// iters_per_temp moves until it is no longer above T_min.
AnnealResult anneal(const CommunitySet &set, const EnrollmentNetwork &network, const AnnealParams &params);

} // namespace cohort

#endif // COHORT_ANNEAL_HPP
