#include "cohort/coarsen.hpp"
#include "cohort/synthetic.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace cohort;
using namespace cohort::test;

using Named = std::set<std::set<std::string>>;

TEST_CASE("hyperedge visit order: size ascending, then section index")
{
    const auto net = network_of(6, {{0, 1, 2}, {3, 4}, {5}, {0, 5}, {1, 2, 3, 4}});
    const auto order = hyperedge_visit_order(net);
    REQUIRE(order.size() == 4); // the one-member section is not a hyperedge
    CHECK(net.sections()[order[0]] == "h1");
    CHECK(net.sections()[order[1]] == "h3");
    CHECK(net.sections()[order[2]] == "h0");
    CHECK(net.sections()[order[3]] == "h4");
}

TEST_CASE("HC and MHC hand traces")
{
    {
        const auto net = network_of(3, {{0, 1}, {1, 2}});
        CHECK(named(hyperedge_coarsen(net), net) == Named{{"s0", "s1"}, {"s2"}});
        CHECK(named(modified_hyperedge_coarsen(net), net) == Named{{"s0", "s1"}, {"s2"}});
    }
    {
        const auto net = network_of(5, {{0, 1, 2}, {2, 3, 4}});
        const auto hc = hyperedge_coarsen(net);
        CHECK(named(hc, net) == Named{{"s0", "s1", "s2"}, {"s3"}, {"s4"}});
        CHECK(hc.max_size() == 3);
        CHECK(named(modified_hyperedge_coarsen(net), net) == Named{{"s0", "s1", "s2"}, {"s3", "s4"}});
    }
    {
        const auto net = network_of(4, {});
        CHECK(hyperedge_coarsen(net).size() == 4);
        CHECK(modified_hyperedge_coarsen(net).size() == 4);
    }
}

TEST_CASE("MHC singletons are a subset of HC singletons")
{
    Rng rng(31337);
    for (int round = 0; round < 100; ++round) {
        const auto net = random_network(rng, 5 + static_cast<Index>(rng.below(40)), 3 + static_cast<Index>(rng.below(15)), 0.15);
        const auto hc = singleton_names(hyperedge_coarsen(net), net);
        const auto mhc = singleton_names(modified_hyperedge_coarsen(net), net);
        REQUIRE(std::includes(hc.begin(), hc.end(), mhc.begin(), mhc.end()));
    }
}

TEST_CASE("bc_score evaluation")
{
    CHECK(bc_score(5, 2, 3, ScoreFunction::Linear).value() == doctest::Approx(1.0));
    CHECK(bc_score(5, 2, 3, ScoreFunction::Nonlinear).value() == doctest::Approx(0.2));
    CHECK(bc_score(5, 2, 3, ScoreFunction::Nonlinear) == Closeness{1, 5});
    CHECK(bc_score(0, 2, 3, ScoreFunction::Linear).value() == 0.0);
    CHECK(bc_score(0, 2, 3, ScoreFunction::Nonlinear).value() == 0.0);
    CHECK(Closeness{2, 4} == Closeness{1, 2});
    CHECK(Closeness{2, 5} < Closeness{1, 2});

    const auto net = network_of(4, {{0, 2}, {0, 3}, {1, 3}, {0, 2}});
    const std::vector<Index> u{idx(net, 0), idx(net, 1)}, v{idx(net, 2), idx(net, 3)};
    // connectivity 0-2:2, 0-3:1, 1-3:1
    CHECK(bc_score(u, v, net, ScoreFunction::Linear) == Closeness{4, 4});
    CHECK(bc_score(u, v, net, ScoreFunction::Nonlinear) == Closeness{4, 16});
}

TEST_CASE("best_choice: small fixed instances")
{
    {
        const auto net = network_of(2, {{0, 1}});
        const auto set = best_choice(net, {ScoreFunction::Linear, 2, 1});
        CHECK(set.size() == 1);
    }
    {
        // C(0,1)=3, C(2,3)=3, C(1,2)=1
        const auto net = network_of(4, {{0, 1}, {0, 1}, {0, 1}, {2, 3}, {2, 3}, {2, 3}, {1, 2}});
        for (auto fn : {ScoreFunction::Linear, ScoreFunction::Nonlinear}) {
            const auto set = best_choice(net, {fn, 2, 9});
            CHECK(named(set, net) == Named{{"s0", "s1"}, {"s2", "s3"}});
            CHECK(score(set, net).total == brute_best_total(dense_connectivity(net), 2));
        }
    }
    {
        const auto net = network_of(3, {{0, 1}, {1, 2}});
        // cap 1 forbids every merge
        CHECK(best_choice(net, {ScoreFunction::Linear, 1, 0}).size() == 3);
    }
}

TEST_CASE("best_choice merges agree with the rescan oracle")
{
    Rng rng(8);
    for (int round = 0; round < 150; ++round) {
        const Index n = 2 + static_cast<Index>(rng.below(7));
        const auto net = random_network(rng, n, 2 + static_cast<Index>(rng.below(6)), 0.35);
        const auto c = dense_connectivity(net);
        BestChoiceParams params{rng.below(2) ? ScoreFunction::Linear : ScoreFunction::Nonlinear,
                                2 + rng.below(3), rng.next()};
        std::vector<MergeStep> steps;
        const auto set = best_choice(net, params, [&](const MergeStep &s) { steps.push_back(s); });
        const auto check = rescan_oracle(net, c, params, steps);
        REQUIRE(check.mismatches == 0);
        REQUIRE(check.terminated_correctly);
        CHECK(set.size() == n - steps.size());
    }
}

TEST_CASE("best_choice: cap, determinism, merge bound")
{
    Rng rng(21);
    for (int round = 0; round < 30; ++round) {
        const Index n = 10 + static_cast<Index>(rng.below(120));
        const auto net = random_network(rng, n, 5 + static_cast<Index>(rng.below(30)), 0.1);
        const BestChoiceParams params{ScoreFunction::Linear, 2 + rng.below(10), rng.next()};
        std::size_t merges = 0;
        const auto a = best_choice(net, params, [&](const MergeStep &) { ++merges; });
        const auto b = best_choice(net, params);
        CHECK(a == b);
        CHECK(merges <= n - 1);
        for (const auto &comm : a.communities())
            REQUIRE(comm.size() <= params.max_size);
    }
}

TEST_CASE("best_choice: seeds explore tie-breaks")
{
    // Ring of six with equal weights: many optimal pairings.
    const auto net = network_of(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
    std::set<Named> outcomes;
    for (std::uint64_t seed = 0; seed < 40; ++seed)
        outcomes.insert(named(best_choice(net, {ScoreFunction::Linear, 2, seed}), net));
    CHECK(outcomes.size() > 1);
}

TEST_CASE("monte_carlo_best_choice")
{
    Rng rng(3);
    const auto net = random_network(rng, 60, 25, 0.08);
    const BestChoiceParams params{ScoreFunction::Linear, 5, 42};

    const auto single = monte_carlo_best_choice(net, params, 1);
    BestChoiceParams first = params;
    first.seed = derive_seed(params.seed, 0);
    CHECK(single.best == best_choice(net, first));
    CHECK(single.stats.std == 0.0);

    const auto serial = monte_carlo_best_choice(net, params, 12, 1);
    const auto threaded = monte_carlo_best_choice(net, params, 12, 4);
    CHECK(serial.scores == threaded.scores);
    CHECK(serial.best == threaded.best);
    CHECK(serial.stats.mean <= static_cast<double>(serial.stats.best));
    CHECK(serial.scores[serial.best_run] == serial.stats.best);
    for (std::size_t r = 0; r < serial.best_run; ++r)
        CHECK(serial.scores[r] < serial.stats.best);

    CHECK_THROWS_AS(monte_carlo_best_choice(net, params, 0), ConfigError);
}

TEST_CASE("monte_carlo_best_choice: unique optimum gives zero spread")
{
    // Two disjoint cliques joined by one weak link; every tie-break ends in
    // the same pair of communities.
    const auto net = network_of(6, {{0, 1, 2}, {0, 1, 2}, {3, 4, 5}, {3, 4, 5}, {2, 3}});
    const auto mc = monte_carlo_best_choice(net, {ScoreFunction::Linear, 3, 11}, 25);
    CHECK(mc.stats.std == 0.0);
    CHECK(mc.stats.mean == static_cast<double>(mc.stats.best));
    CHECK(named(mc.best, net) == Named{{"s0", "s1", "s2"}, {"s3", "s4", "s5"}});
}

TEST_CASE("summarize uses the population deviation")
{
    const std::vector<Weight> scores{2, 4, 4, 4, 5, 5, 7, 9};
    const auto s = summarize(scores);
    CHECK(s.mean == doctest::Approx(5.0));
    CHECK(s.std == doctest::Approx(2.0));
    CHECK(s.best == 9);
}

TEST_CASE("best S_T does not fall as the size cap grows")
{
    PlantedSpec spec;
    spec.entities = 120;
    spec.sections = 30;
    spec.group_size = 12;
    spec.sections_per_entity = 4;
    spec.affinity = 0.7;
    spec.seed = 17;
    const auto net = build_network(load_enrollment(planted_enrollment(spec)));
    Weight previous = std::numeric_limits<Weight>::min();
    for (std::size_t cap = 6; cap <= 12; ++cap) {
        const auto mc = monte_carlo_best_choice(net, {ScoreFunction::Linear, cap, 5}, 40);
        CHECK(mc.stats.best >= previous);
        previous = mc.stats.best;
    }
}

TEST_CASE("HC: cells skipped in a partial hyperedge stay singletons")
{
    // {1} is left over from h1 and may not join h2 afterwards.
    const auto net = network_of(5, {{0, 1}, {1, 2}, {2, 3, 4}});
    CHECK(named(hyperedge_coarsen(net), net) == Named{{"s0", "s1"}, {"s2"}, {"s3"}, {"s4"}});
    CHECK(named(modified_hyperedge_coarsen(net), net) == Named{{"s0", "s1"}, {"s2"}, {"s3", "s4"}});
}
