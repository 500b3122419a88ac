// anneal.cpp - simulated annealing refinement
#include "cohort/anneal.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cohort {

void AnnealParams::validate() const
{
    if (trial_swaps < 1)
        throw ConfigError("n must be at least 1");
    if (!(accept_prob > 0.0 && accept_prob < 1.0))
        throw ConfigError("ap must lie strictly between 0 and 1");
    if (!(cooling_rate > 0.0 && cooling_rate < 1.0))
        throw ConfigError("alpha must lie strictly between 0 and 1");
    if (!(min_temperature > 0.0) || !std::isfinite(min_temperature))
        throw ConfigError("tmin must be positive");
    if (iters_per_temp < 1)
        throw ConfigError("iters must be at least 1");
    if (!(temperature_floor > 0.0))
        throw ConfigError("temperature floor must be positive");
    if (fixed_t0 && !(*fixed_t0 > 0.0))
        throw ConfigError("fixed initial temperature must be positive");
}

double initial_temperature(double initial_cost, double mean_trial_cost, double accept_prob)
{
    return (initial_cost - mean_trial_cost) / std::log(accept_prob);
}

InitialTemperature estimate_initial_temperature(const CommunitySet &set, const EnrollmentNetwork &network,
                                                std::size_t trials, double accept_prob, Rng &rng, double floor)
{
    if (!set.swappable())
        throw NoSwapPossible();
    if (trials == 0)
        throw ConfigError("at least one trial swap is required");

    InitialTemperature out;
    out.initial_cost = score(set, network).cost;
    Weight sum = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto [a, b] = select_pair(set, rng);
        sum += out.initial_cost + delta_cost_swap(set, network, a, b);
    }
    out.mean_trial_cost = static_cast<double>(sum) / static_cast<double>(trials);
    out.t0 = initial_temperature(static_cast<double>(out.initial_cost), out.mean_trial_cost, accept_prob);
    if (!(out.t0 > 0.0)) {
        out.t0 = floor;
        out.clamped = true;
    }
    return out;
}

std::pair<Index, Index> select_pair(const CommunitySet &set, Rng &rng)
{
    if (!set.swappable())
        throw NoSwapPossible();
    const Index n = set.entity_count();
    for (;;) {
        const auto a = static_cast<Index>(rng.below(n));
        const auto b = static_cast<Index>(rng.below(n));
        if (set.community_of(a) != set.community_of(b))
            return {a, b};
    }
}

double acceptance_probability(double delta, double temperature)
{
    if (!(temperature > 0.0))
        throw NonpositiveTemperature(temperature);
    if (delta < 0.0)
        return 1.0;
    return std::exp(-delta / temperature);
}

bool accept_move(Weight delta, double temperature, Rng &rng)
{
    if (delta < 0)
        return true;
    return rng.unit() < std::exp(-static_cast<double>(delta) / temperature);
}

std::size_t cooling_steps(double t0, double cooling_rate, double min_temperature)
{
    std::size_t steps = 0;
    for (double t = t0; t > min_temperature; t *= cooling_rate)
        ++steps;
    return steps;
}

AnnealResult anneal(const CommunitySet &set, const EnrollmentNetwork &network, const AnnealParams &params)
{
    params.validate();
    Rng rng(params.seed);
    if (!set.swappable())
        throw NoSwapPossible();
    InitialTemperature start;
    if (params.fixed_t0) {
        start.t0 = *params.fixed_t0;
        start.initial_cost = score(set, network).cost;
        start.mean_trial_cost = static_cast<double>(start.initial_cost);
    } else {
        start = estimate_initial_temperature(set, network, params.trial_swaps, params.accept_prob, rng,
                                             params.temperature_floor);
    }

    AnnealResult result;
    auto &trace = result.trace;
    trace.t0 = start.t0;
    trace.t0_clamped = start.clamped;
    trace.mean_trial_cost = start.mean_trial_cost;
    trace.initial_cost = start.initial_cost;

    CommunitySet current = set;
    Weight current_cost = start.initial_cost;
    result.best = set;
    result.best_cost = current_cost;

    std::size_t move = 0;
    for (double t = start.t0; t > params.min_temperature; t *= params.cooling_rate) {
        trace.temperatures.push_back(t);
        for (std::size_t i = 0; i < params.iters_per_temp; ++i) {
            ++move;
            const auto [a, b] = select_pair(current, rng);
            const Weight delta = delta_cost_swap(current, network, a, b);
            if (accept_move(delta, t, rng)) {
                current.swap_members(a, b);
                current_cost += delta;
                ++trace.accepted;
                if (current_cost < result.best_cost) {
                    result.best_cost = current_cost;
                    result.best = current;
                }
            } else {
                ++trace.rejected;
            }
            if (params.audit_interval != 0 && move % params.audit_interval == 0) {
                const Weight full = score(current, network).cost;
                if (full != current_cost)
                    throw std::logic_error("running cost " + std::to_string(current_cost) +
                                           " disagrees with full score " + std::to_string(full) + " at move " +
                                           std::to_string(move));
            }
            trace.moves.push_back({move, current_cost, result.best_cost});
        }
    }
    trace.final_set = std::move(current);
    return result;
}

} // namespace cohort
