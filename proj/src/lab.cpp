// lab.cpp - sweep harness
#include "cohort/lab.hpp"

#include "cohort/parallel.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>

namespace cohort {

namespace {

constexpr struct {
    SweepTarget target;
    std::string_view name;
} kTargetNames[] = {
    {SweepTarget::BcMaxSize, "bc_max_size"}, {SweepTarget::BcMcRuns, "bc_mc_runs"},
    {SweepTarget::SaN, "sa_n"},              {SweepTarget::SaAp, "sa_ap"},
    {SweepTarget::SaAlpha, "sa_alpha"},      {SweepTarget::SaTmin, "sa_tmin"},
    {SweepTarget::SaIters, "sa_iters"},
};

bool is_count(double v)
{
    return v >= 1.0 && std::floor(v) == v && v < 1e9;
}

// Type-7 sample quantile of sorted data.
double quantile(const std::vector<double> &sorted, double q)
{
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

} // namespace

std::string_view to_string(SweepTarget target)
{
    for (const auto &entry : kTargetNames)
        if (entry.target == target)
            return entry.name;
    return "unknown";
}

std::optional<SweepTarget> parse_sweep_target(std::string_view text)
{
    std::string lowered(text);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (const auto &entry : kTargetNames)
        if (entry.name == lowered)
            return entry.target;
    return std::nullopt;
}

bool is_anneal_target(SweepTarget target)
{
    return target != SweepTarget::BcMaxSize && target != SweepTarget::BcMcRuns;
}

void SweepSpec::validate() const
{
    if (values.empty())
        throw ConfigError("sweep needs at least one value");
    if (runs_per_value < 1)
        throw ConfigError("runs_per_value must be at least 1");
    for (double v : values) {
        bool ok = std::isfinite(v);
        switch (target) {
        case SweepTarget::BcMaxSize:
        case SweepTarget::BcMcRuns:
        case SweepTarget::SaN:
        case SweepTarget::SaIters: ok = ok && is_count(v); break;
        case SweepTarget::SaAp:
        case SweepTarget::SaAlpha: ok = ok && v > 0.0 && v < 1.0; break;
        case SweepTarget::SaTmin: ok = ok && v > 0.0; break;
        }
        if (!ok)
            throw ConfigError("value " + std::to_string(v) + " is out of range for " +
                              std::string(to_string(target)));
    }
    if (is_anneal_target(target)) {
        if (start_mc_runs < 1)
            throw ConfigError("start_mc_runs must be at least 1");
        base_sa.validate();
    }
}

std::vector<double> Histogram::edges() const
{
    std::vector<double> out;
    for (std::size_t k = 0; k <= counts.size(); ++k)
        out.push_back(lo + static_cast<double>(k) * width);
    return out;
}

Histogram make_bins(std::span<const Weight> pooled)
{
    Histogram h;
    if (pooled.empty())
        return h;
    std::vector<double> sorted(pooled.begin(), pooled.end());
    std::sort(sorted.begin(), sorted.end());
    const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
    const double fd = 2.0 * iqr / std::cbrt(static_cast<double>(sorted.size()));
    h.width = std::max(1.0, std::ceil(fd));
    h.lo = sorted.front();
    const auto bins = static_cast<std::size_t>(std::floor((sorted.back() - h.lo) / h.width)) + 1;
    h.counts.assign(bins, 0);
    return h;
}

void fill(Histogram &h, std::span<const Weight> scores)
{
    std::fill(h.counts.begin(), h.counts.end(), 0);
    for (Weight s : scores) {
        auto k = static_cast<std::size_t>(std::floor((static_cast<double>(s) - h.lo) / h.width));
        k = std::min(k, h.counts.size() - 1);
        ++h.counts[k];
    }
}

std::uint64_t sweep_run_seed(const SweepSpec &spec, double value, std::size_t run)
{
    const auto tag = static_cast<std::uint64_t>(spec.target);
    const auto value_seed = derive_seed(derive_seed(spec.seed, tag), std::bit_cast<std::uint64_t>(value));
    return derive_seed(value_seed, run);
}

SweepReport run_sweep(const EnrollmentNetwork &network, const SweepSpec &spec, unsigned jobs)
{
    spec.validate();
    SweepReport report;
    report.target = spec.target;

    std::optional<CommunitySet> start;
    if (is_anneal_target(spec.target)) {
        auto mc = monte_carlo_best_choice(network, spec.base_bc, spec.start_mc_runs, jobs);
        report.start_score = mc.stats.best;
        start = std::move(mc.best);
    }

    auto one_run = [&](double value, std::size_t run) -> Weight {
        const auto seed = sweep_run_seed(spec, value, run);
        if (spec.target == SweepTarget::BcMaxSize) {
            auto p = spec.base_bc;
            p.max_size = static_cast<std::size_t>(value);
            p.seed = seed;
            return score(best_choice(network, p), network).total;
        }
        if (spec.target == SweepTarget::BcMcRuns) {
            auto p = spec.base_bc;
            p.seed = seed;
            return monte_carlo_best_choice(network, p, static_cast<std::size_t>(value)).stats.best;
        }
        auto p = spec.base_sa;
        p.seed = seed;
        switch (spec.target) {
        case SweepTarget::SaN: p.trial_swaps = static_cast<std::size_t>(value); break;
        case SweepTarget::SaAp: p.accept_prob = value; break;
        case SweepTarget::SaAlpha: p.cooling_rate = value; break;
        case SweepTarget::SaTmin: p.min_temperature = value; break;
        case SweepTarget::SaIters: p.iters_per_temp = static_cast<std::size_t>(value); break;
        default: break;
        }
        return -anneal(*start, network, p).best_cost;
    };

    for (double value : spec.values) {
        SweepRow row;
        row.value = value;
        row.scores.resize(spec.runs_per_value);
        const auto began = std::chrono::steady_clock::now();
        parallel_for(spec.runs_per_value, jobs, [&](std::size_t r) { row.scores[r] = one_run(value, r); });
        row.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - began).count();
        row.stats = summarize(row.scores);
        report.rows.push_back(std::move(row));
    }

    std::vector<Weight> pooled;
    for (const auto &row : report.rows)
        pooled.insert(pooled.end(), row.scores.begin(), row.scores.end());
    const Histogram bins = make_bins(pooled);
    for (auto &row : report.rows) {
        row.histogram = bins;
        fill(row.histogram, row.scores);
    }
    return report;
}

std::vector<ConvergencePoint> n_convergence_curve(const CommunitySet &set, const EnrollmentNetwork &network,
                                                  std::size_t max_n, Rng &rng)
{
    if (!set.swappable())
        throw NoSwapPossible();
    const Weight initial = score(set, network).cost;
    std::vector<ConvergencePoint> curve;
    curve.reserve(max_n);
    Weight sum = 0;
    for (std::size_t n = 1; n <= max_n; ++n) {
        const auto [a, b] = select_pair(set, rng);
        sum += initial + delta_cost_swap(set, network, a, b);
        curve.push_back({n, static_cast<double>(sum) / static_cast<double>(n)});
    }
    return curve;
}

} // namespace cohort
