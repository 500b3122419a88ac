// cohort_forge - enrollment network -> communities -> annealed refinement
//
// Exit codes: 0 success, 2 input error, 3 configuration error,
// 4 data-consistency error, 1 anything else.
#include "cohort/anneal.hpp"
#include "cohort/coarsen.hpp"
#include "cohort/enrollnet.hpp"
#include "cohort/io.hpp"
#include "cohort/lab.hpp"
#include "cohort/quality.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

namespace fs = std::filesystem;
using namespace cohort;

namespace {

struct RunConfig {
    std::string config_path;
    std::string input;
    std::string variant = "dense";
    std::size_t max_section_size = 30;
    std::vector<std::string> drop_kinds;
    std::string out_dir = ".";
    std::vector<std::string> formats{"json", "csv"};
    unsigned jobs = 1;
    std::optional<std::uint64_t> seed;

    std::string algorithm = "bc";
    std::string score_fn = "linear";
    std::size_t max_size = 10;
    std::size_t mc_runs = 100;

    std::string communities;
    std::size_t n = 600;
    double ap = 0.95;
    double alpha = 0.95;
    double tmin = 0.0001;
    std::size_t iters = 50;
    std::size_t trace_stride = 1;

    std::string spec;
    std::string quality;
};

bool wants(const RunConfig &cfg, const std::string &format)
{
    return std::find(cfg.formats.begin(), cfg.formats.end(), format) != cfg.formats.end();
}

// Flat `key = value` lines; '#' starts a comment. Keys are option names
// without the leading dashes; '_' and '-' are interchangeable.
void apply_config_file(CLI::App &sub, const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open config file " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const auto eq = line.find('=');
        auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        if (strip(line).empty())
            continue;
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
        auto key = strip(line.substr(0, eq));
        const auto value = strip(line.substr(eq + 1));
        std::replace(key.begin(), key.end(), '_', '-');
        if (key == "config")
            continue;
        CLI::Option *opt = sub.get_option_no_throw("--" + key);
        if (!opt)
            throw ConfigError(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
        if (opt->count() > 0)
            continue; // command line wins
        std::istringstream parts(value);
        std::string item;
        if (opt->get_expected_max() > 1) {
            while (std::getline(parts, item, ','))
                opt->add_result(strip(item));
        } else {
            opt->add_result(value);
        }
        try {
            opt->run_callback();
        } catch (const CLI::Error &e) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

std::uint64_t resolve_seed(const RunConfig &cfg)
{
    if (cfg.seed)
        return *cfg.seed;
    if (const char *env = std::getenv("COHORT_FORGE_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception &) {
            throw ConfigError(std::string("COHORT_FORGE_SEED is not an unsigned integer: ") + env);
        }
    }
    std::random_device rd;
    const std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) | rd();
    std::cerr << "no --seed given; using generated seed " << seed << '\n';
    return seed;
}

void write_text(const fs::path &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write " + path.string());
    out << text;
}

void write_json(const fs::path &path, const Json &doc)
{
    write_text(path, doc.dump(2) + "\n");
}

EnrollmentNetwork load_network(const RunConfig &cfg)
{
    if (cfg.input.empty())
        throw ConfigError("--input is required");
    NetworkOptions options;
    const auto variant = parse_network_variant(cfg.variant);
    if (!variant)
        throw ConfigError("unknown variant '" + cfg.variant + "' (dense|sparse)");
    options.variant = *variant;
    if (cfg.max_section_size < 1)
        throw ConfigError("--max-section-size must be at least 1");
    options.max_section_size = cfg.max_section_size;
    for (const auto &k : cfg.drop_kinds) {
        const auto kind = parse_component_kind(k);
        if (!kind)
            throw ConfigError("unknown component kind '" + k + "'");
        options.drop_kinds.insert(*kind);
    }
    const auto table = read_enrollment_csv_file(cfg.input);
    return build_network(table, options);
}

BestChoiceParams bc_params(const RunConfig &cfg, std::uint64_t seed)
{
    const auto fn = parse_score_function(cfg.score_fn);
    if (!fn)
        throw ConfigError("unknown score function '" + cfg.score_fn + "' (linear|nonlinear)");
    if (cfg.max_size < 1)
        throw ConfigError("--max-size must be at least 1");
    if (cfg.mc_runs < 1)
        throw ConfigError("--mc-runs must be at least 1");
    return {*fn, cfg.max_size, seed};
}

AnnealParams sa_params(const RunConfig &cfg, std::uint64_t seed)
{
    AnnealParams p;
    p.trial_swaps = cfg.n;
    p.accept_prob = cfg.ap;
    p.cooling_rate = cfg.alpha;
    p.min_temperature = cfg.tmin;
    p.iters_per_temp = cfg.iters;
    p.seed = seed;
    p.validate();
    return p;
}

fs::path out_dir(const RunConfig &cfg)
{
    fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    return dir;
}

struct Clustering {
    CommunitySet set;
    Json meta;
};

Clustering cluster(const RunConfig &cfg, const EnrollmentNetwork &network, std::uint64_t seed)
{
    Clustering out;
    out.meta = {{"algorithm", cfg.algorithm}};
    if (cfg.algorithm == "hc") {
        out.set = hyperedge_coarsen(network);
    } else if (cfg.algorithm == "mhc") {
        out.set = modified_hyperedge_coarsen(network);
    } else if (cfg.algorithm == "bc") {
        const auto params = bc_params(cfg, seed);
        auto mc = monte_carlo_best_choice(network, params, cfg.mc_runs, cfg.jobs);
        out.meta["score"] = std::string(to_string(params.score_fn));
        out.meta["max_size"] = params.max_size;
        out.meta["mc_runs"] = cfg.mc_runs;
        out.meta["seed"] = seed;
        out.meta["best_run"] = mc.best_run;
        out.meta["mean"] = round6(mc.stats.mean);
        out.meta["std"] = round6(mc.stats.std);
        out.meta["best"] = mc.stats.best;
        out.set = std::move(mc.best);
    } else {
        throw ConfigError("unknown algorithm '" + cfg.algorithm + "' (hc|mhc|bc)");
    }
    return out;
}

Json communities_doc(const CommunitySet &set, const EnrollmentNetwork &network, const Json &meta)
{
    Json communities = Json::array();
    for (std::size_t c = 0; c < set.size(); ++c) {
        Json members = Json::array();
        for (Index e : set.members(c))
            members.push_back(network.entities()[e]);
        communities.push_back({{"id", c}, {"members", std::move(members)}});
    }
    return {{"communities", std::move(communities)}, {"max_size", set.max_size()}, {"meta", meta}};
}

void emit_communities(const RunConfig &cfg, const fs::path &dir, const std::string &prefix, const CommunitySet &set,
                      const EnrollmentNetwork &network, const Json &meta)
{
    const auto report = score(set, network);
    write_json(dir / (prefix + "communities.json"), communities_doc(set, network, meta));
    write_json(dir / (prefix + "quality.json"), quality_to_json(set, report, network));
    if (wants(cfg, "dot"))
        write_text(dir / (prefix + "communities.dot"), quality_to_dot(set, report, network));
    std::cout << prefix << "communities: " << set.size() << "  S_T: " << report.total << '\n';
}

int cmd_build(const RunConfig &cfg)
{
    const auto network = load_network(cfg);
    const auto dir = out_dir(cfg);
    write_json(dir / "network.json", network_to_json(network));
    auto summary = summary_to_json(summarize(network));
    summary["variant"] = std::string(to_string(network.variant()));
    write_json(dir / "summary.json", summary);
    std::cout << "entities: " << summary["entities"] << "\nsections: " << summary["sections"]
              << "\nedges: " << summary["edges"] << "\nisolated entities: " << summary["isolated_entities"] << '\n';
    return 0;
}

int cmd_cluster(const RunConfig &cfg)
{
    const auto network = load_network(cfg);
    const auto seed = cfg.algorithm == "bc" ? resolve_seed(cfg) : 0;
    auto result = cluster(cfg, network, seed);
    emit_communities(cfg, out_dir(cfg), "", result.set, network, result.meta);
    return 0;
}

int cmd_refine(const RunConfig &cfg)
{
    const auto seed = resolve_seed(cfg);
    const auto params = sa_params(cfg, seed);
    const auto network = load_network(cfg);

    CommunitySet start;
    Json meta = {{"seed", seed}};
    if (!cfg.communities.empty()) {
        std::ifstream in(cfg.communities);
        if (!in)
            throw InputError("cannot open " + cfg.communities);
        Json doc;
        try {
            doc = Json::parse(in);
        } catch (const Json::parse_error &e) {
            throw InputError(cfg.communities + ": " + e.what());
        }
        start = communities_from_json(doc, network);
        meta["start"] = cfg.communities;
    } else {
        auto clustered = cluster(cfg, network, seed);
        meta["start"] = clustered.meta;
        start = std::move(clustered.set);
    }

    const auto dir = out_dir(cfg);
    const auto result = anneal(start, network, params);
    meta["input_total"] = -result.trace.initial_cost;
    meta["t0"] = round6(result.trace.t0);
    meta["t0_clamped"] = result.trace.t0_clamped;
    meta["mean_trial_cost"] = round6(result.trace.mean_trial_cost);
    meta["cooling_steps"] = result.trace.temperatures.size();
    meta["moves"] = result.trace.moves.size();
    meta["accepted"] = result.trace.accepted;
    meta["rejected"] = result.trace.rejected;
    meta["sa"] = {{"n", params.trial_swaps},
                  {"ap", params.accept_prob},
                  {"alpha", params.cooling_rate},
                  {"tmin", params.min_temperature},
                  {"iters", params.iters_per_temp}};

    emit_communities(cfg, dir, "refined_", result.best, network, meta);
    std::ofstream trace(dir / "trace.csv", std::ios::binary);
    write_trace_csv(trace, result.trace, params.iters_per_temp, cfg.trace_stride);
    return 0;
}

int cmd_sweep(const RunConfig &cfg)
{
    if (cfg.spec.empty())
        throw ConfigError("--spec is required");
    std::ifstream in(cfg.spec);
    if (!in)
        throw InputError("cannot open " + cfg.spec);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw ConfigError(cfg.spec + ": " + e.what());
    }
    auto spec = sweep_spec_from_json(doc);
    // --seed beats the spec file; a spec without a seed falls back like any other command.
    if (cfg.seed || !(doc.is_object() && doc.contains("seed"))) {
        spec.seed = resolve_seed(cfg);
        if (!(doc.contains("bc") && doc["bc"].contains("seed")))
            spec.base_bc.seed = spec.seed;
    }
    const auto network = load_network(cfg);
    const auto report = run_sweep(network, spec, cfg.jobs);

    const auto dir = out_dir(cfg);
    auto json = sweep_to_json(report);
    json["seed"] = spec.seed;
    write_json(dir / "sweep.json", json);
    if (wants(cfg, "csv")) {
        std::ofstream csv(dir / "sweep.csv", std::ios::binary);
        write_sweep_csv(csv, report);
    }
    for (const auto &row : report.rows)
        std::cerr << to_string(report.target) << '=' << format6(row.value) << "  mean " << format6(row.stats.mean)
                  << "  std " << format6(row.stats.std) << "  best " << row.stats.best << "  ("
                  << format6(row.runtime_seconds) << " s)\n";
    return 0;
}

int cmd_report(const RunConfig &cfg)
{
    if (cfg.quality.empty())
        throw ConfigError("--quality is required");
    std::ifstream in(cfg.quality);
    if (!in)
        throw InputError("cannot open " + cfg.quality);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw InputError(cfg.quality + ": " + e.what());
    }
    std::cout << format_quality_report(doc);
    return 0;
}

void add_input_options(CLI::App *sub, RunConfig &cfg)
{
    sub->add_option("--config", cfg.config_path, "Flat key = value file; flags override it");
    sub->add_option("-i,--input", cfg.input, "Enrollment CSV (entity_id,section_id[,component])");
    sub->add_option("--variant", cfg.variant, "dense | sparse");
    sub->add_option("--max-section-size", cfg.max_section_size, "Sparse: drop sections larger than this");
    sub->add_option("--drop-kinds", cfg.drop_kinds, "Sparse: drop sections of these kinds (LEC,TUT,LAB,OTHER)")
        ->delimiter(',');
    sub->add_option("-o,--out", cfg.out_dir, "Output directory");
}

void add_cluster_options(CLI::App *sub, RunConfig &cfg)
{
    sub->add_option("--algorithm", cfg.algorithm, "hc | mhc | bc");
    sub->add_option("--score", cfg.score_fn, "Best-Choice score: linear | nonlinear");
    sub->add_option("--max-size", cfg.max_size, "Best-Choice community size cap");
    sub->add_option("--mc-runs", cfg.mc_runs, "Best-Choice Monte-Carlo runs");
}

void add_run_options(CLI::App *sub, RunConfig &cfg)
{
    sub->add_option("--seed", cfg.seed, "RNG seed (fallback: COHORT_FORGE_SEED)");
    sub->add_option("-j,--jobs", cfg.jobs, "Worker threads for Monte-Carlo runs")->check(CLI::PositiveNumber);
    sub->add_option("--formats", cfg.formats, "Extra outputs: json,csv,dot")->delimiter(',');
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Partition membership networks into size-bounded communities"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto *build = app.add_subcommand("build", "Build the connectivity network and its summary");
    add_input_options(build, cfg);

    auto *clus = app.add_subcommand("cluster", "Create communities with hc, mhc or bc");
    add_input_options(clus, cfg);
    add_cluster_options(clus, cfg);
    add_run_options(clus, cfg);

    auto *refine = app.add_subcommand("refine", "Refine communities by simulated annealing");
    add_input_options(refine, cfg);
    add_cluster_options(refine, cfg);
    add_run_options(refine, cfg);
    refine->add_option("--communities", cfg.communities, "Starting communities JSON (default: run cluster)");
    refine->add_option("--n", cfg.n, "Trial swaps for the initial temperature");
    refine->add_option("--ap", cfg.ap, "Initial acceptance probability");
    refine->add_option("--alpha", cfg.alpha, "Cooling rate");
    refine->add_option("--tmin", cfg.tmin, "Minimum temperature");
    refine->add_option("--iters", cfg.iters, "Moves per temperature");
    refine->add_option("--trace-stride", cfg.trace_stride, "Write every k-th move to trace.csv");

    auto *sweep = app.add_subcommand("sweep", "Run a parameter sweep");
    add_input_options(sweep, cfg);
    add_run_options(sweep, cfg);
    sweep->add_option("--spec", cfg.spec, "Sweep spec JSON");

    auto *report = app.add_subcommand("report", "Pretty-print a quality JSON");
    report->add_option("--quality", cfg.quality, "Quality JSON written by cluster or refine")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 3;
    }

    try {
        CLI::App *active = app.get_subcommands().front();
        if (active != report && !cfg.config_path.empty())
            apply_config_file(*active, cfg.config_path);
        if (active == build)
            return cmd_build(cfg);
        if (active == clus)
            return cmd_cluster(cfg);
        if (active == refine)
            return cmd_refine(cfg);
        if (active == sweep)
            return cmd_sweep(cfg);
        return cmd_report(cfg);
    } catch (const InputError &e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 3;
    } catch (const NoSwapPossible &e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 4;
    } catch (const PartitionMismatch &e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
