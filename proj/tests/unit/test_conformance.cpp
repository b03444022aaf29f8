#include <doctest.h>

#include <chrono>
#include <cmath>

#include "pmfd/conformance.hpp"
#include "pmfd/discovery.hpp"
#include "pmfd/errors.hpp"

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

using namespace pmfd;

TEST_CASE("the worked alignment example: costs 4 and 15, fitness about 0.73") {
    const auto net = test::fig2_net();
    const auto trace = test::fig4_trace();

    const auto alignment = align(trace, net);
    CHECK(alignment.cost == 4);

    CHECK(shortest_visible_completion(net) == 6);
    CHECK(worst_alignment_cost(trace, net) == 15);
    CHECK(fitness(trace, net) == doctest::Approx(1.0 - 4.0 / 15.0).epsilon(1e-9));

    // the alignment projections are consistent
    std::vector<std::string> log_side;
    for (const auto& m : alignment.moves)
        if (m.log_label) log_side.push_back(*m.log_label);
    CHECK(log_side == trace);
    std::vector<std::string> model_side;
    for (const auto& m : alignment.moves)
        if (m.model_transition && !net.is_silent(*m.model_transition))
            model_side.push_back(net.label(*m.model_transition));
    CHECK(test::replay_to_final(model_side, net));
}

TEST_CASE("alignment JSON dump lists every move") {
    const auto net = test::fig2_net();
    const auto alignment = align(test::fig4_trace(), net);
    const auto json = alignment_to_json(alignment, net);
    CHECK(json.find("\"cost\": 4") != std::string::npos);
    CHECK(json.find(">>") != std::string::npos); // at least one no-move
    CHECK(json.find("tr1") != std::string::npos);
}

TEST_CASE("perfectly replayable traces align at zero cost") {
    const auto net = test::fig2_net();
    const std::vector<std::string> good = {"tr1", "tr2", "tr3", "tr4", "tr5", "tr2", "tr6"};
    CHECK(align(good, net).cost == 0);
    CHECK(fitness(good, net) == 1.0);
}

TEST_CASE("fully unsynchronizable traces have fitness 0") {
    const auto net = tree_to_petri(ProcessTree::node(
        ProcessTree::Op::Sequence, {ProcessTree::leaf("s0->s1"), ProcessTree::leaf("s1->s2")}));
    const std::vector<std::string> junk = {"s7->s8", "s8->s9", "s7->s8"};
    // cost: 3 log moves + 2 model moves; worst: 3 + 2
    CHECK(align(junk, net).cost == 5);
    CHECK(worst_alignment_cost(junk, net) == 5);
    CHECK(fitness(junk, net) == doctest::Approx(0.0));
}

TEST_CASE("worst alignment arithmetic") {
    const auto seq = tree_to_petri(ProcessTree::node(
        ProcessTree::Op::Sequence, {ProcessTree::leaf("s0->s1"), ProcessTree::leaf("s1->s2")}));
    CHECK(worst_alignment_cost({"s0->s1", "s1->s2"}, seq) == 4); // 2 + 2

    const auto silent = tree_to_petri(ProcessTree::silent());
    CHECK(worst_alignment_cost({"s0->s1", "s1->s2", "s2->s0"}, silent) == 3); // 3 + 0
    CHECK(fitness({}, silent) == 1.0); // empty trace on an all-silent model
}

TEST_CASE("alignments against the example net match brute force") {
    const auto net = test::fig2_net();
    Rng rng(83);
    const auto alphabet = test::net_alphabet(net);
    for (int round = 0; round < 40; ++round) {
        const auto trace = test::random_trace(rng, alphabet, 8);
        CHECK(align(trace, net).cost == test::brute_force_alignment_cost(trace, net));
    }
}

TEST_CASE("alignment cost equals brute force on random tree nets") {
    Rng rng(89);
    int label_counter = 0;
    int rounds = 0;
    while (rounds < 60) {
        const auto tree = test::random_tree(rng, 2, label_counter);
        const auto net = tree_to_petri(tree);
        if (net.n_places() + net.n_transitions() > 20) continue;
        ++rounds;
        const auto alphabet = test::net_alphabet(net);
        const auto trace = test::random_trace(rng, alphabet, 8);
        CHECK(align(trace, net).cost == test::brute_force_alignment_cost(trace, net));
    }
}

TEST_CASE("alignment cost is invariant under transition renaming") {
    const auto net = test::fig2_net();
    PetriNet renamed({"source", "p1", "p2", "p3", "p4", "p5", "p6", "p7", "p8", "sink"},
                     {{"z9", "tr1"},
                      {"z8", "tr2"},
                      {"z7", "tr3"},
                      {"z6", "tr4"},
                      {"z5", "tr5"},
                      {"z4", ""},
                      {"z3", ""},
                      {"z2", "tr6"}},
                     {{"source", "z9"}, {"z9", "p1"}, {"z9", "p2"}, {"z9", "p3"},
                      {"p1", "z8"}, {"z8", "p4"}, {"p4", "z4"}, {"z4", "p1"},
                      {"p2", "z7"}, {"z7", "p5"}, {"p3", "z6"}, {"z6", "p6"},
                      {"p6", "z5"}, {"z5", "p7"}, {"p4", "z3"}, {"p5", "z3"},
                      {"p7", "z3"}, {"z3", "p8"}, {"p8", "z2"}, {"z2", "sink"}},
                     {{"source", 1}}, {{"sink", 1}});
    const auto trace = test::fig4_trace();
    CHECK(align(trace, net).cost == align(trace, renamed).cost);
}

TEST_CASE("alignment budgets are enforced") {
    const auto net = test::fig2_net();
    AlignOptions tight;
    tight.node_budget = 2;
    CHECK_THROWS_AS(align(test::fig4_trace(), net, tight), SearchBudgetExceededError);

    PetriNet unreachable({"source", "mid", "sink"}, {{"t", "a"}},
                         {{"source", "t"}, {"t", "mid"}}, {{"source", 1}}, {{"sink", 1}});
    CHECK_THROWS_AS(shortest_visible_completion(unreachable), UnsoundModelError);
    CHECK_THROWS_AS(fitness({"a"}, unreachable), UnsoundModelError);
}

TEST_CASE("fitness stays within [0,1] and is 1 only at zero cost") {
    const auto net = test::fig2_net();
    Rng rng(97);
    const auto alphabet = test::net_alphabet(net);
    for (int round = 0; round < 30; ++round) {
        const auto trace = test::random_trace(rng, alphabet, 10);
        const double f = fitness(trace, net);
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
        const auto cost = align(trace, net).cost;
        CHECK((f == 1.0) == (cost == 0));
    }
}

namespace {

std::vector<std::vector<double>> random_window(Rng& rng, std::size_t n, std::size_t p) {
    std::vector<std::vector<double>> w(n, std::vector<double>(p));
    for (auto& row : w)
        for (auto& v : row) v = rng.uniform(-1.0, 1.0);
    return w;
}

} // namespace

TEST_CASE("rmse basics") {
    Rng rng(5);
    const auto w = random_window(rng, 20, 3);
    CHECK(rmse(w, w) == doctest::Approx(0.0));

    std::vector<std::vector<double>> zeros(15, std::vector<double>(2, 0.0));
    std::vector<std::vector<double>> ones(7, std::vector<double>(2, 1.0));
    CHECK(rmse(zeros, ones) == doctest::Approx(1.0)); // any lengths: resampled hold

    CHECK_THROWS_AS(rmse(zeros, random_window(rng, 5, 3)), DimensionMismatchError);
}

TEST_CASE("rmse and r2 match direct recomputation on equal-length windows") {
    Rng rng(7);
    for (int round = 0; round < 50; ++round) {
        const std::size_t n = 2 + rng.uniform_index(40);
        const std::size_t p = 1 + rng.uniform_index(4);
        const auto a = random_window(rng, n, p);
        const auto b = random_window(rng, n, p);
        CHECK(rmse(a, b) == doctest::Approx(test::direct_rmse(a, b)).epsilon(1e-12));
        const auto expected = test::direct_r2(a, b);
        if (expected)
            CHECK(r2(a, b) == doctest::Approx(*expected).epsilon(1e-12));
    }
}

TEST_CASE("r2 anchors: identical, mean, and worse-than-mean simulations") {
    Rng rng(11);
    const auto obs = random_window(rng, 30, 2);
    CHECK(r2(obs, obs) == doctest::Approx(1.0));

    std::vector<double> mean(2, 0.0);
    for (const auto& s : obs)
        for (std::size_t f = 0; f < 2; ++f) mean[f] += s[f] / 30.0;
    std::vector<std::vector<double>> mean_sim(30, mean);
    CHECK(r2(obs, mean_sim) == doctest::Approx(0.0).epsilon(1e-9));

    std::vector<std::vector<double>> wrong(30, std::vector<double>{5.0, -5.0});
    CHECK(r2(obs, wrong) < 0.0);
    CHECK(r2(obs, wrong) == doctest::Approx(*test::direct_r2(obs, wrong)).epsilon(1e-12));

    std::vector<std::vector<double>> flat(10, std::vector<double>(2, 3.0));
    CHECK_THROWS_AS(r2(flat, mean_sim), ZeroVarianceObservedError);
}

TEST_CASE("rmse is symmetric on equal lengths; r2 is not symmetric") {
    Rng rng(13);
    const auto a = random_window(rng, 25, 3);
    const auto b = random_window(rng, 25, 3);
    CHECK(rmse(a, b) == doctest::Approx(rmse(b, a)).epsilon(1e-12));
    CHECK(r2(a, b) != r2(b, a));
}

TEST_CASE("resample_hold endpoints and degenerate lengths") {
    std::vector<std::vector<double>> w = {{0.0}, {1.0}, {2.0}, {3.0}};
    const auto up = resample_hold(w, 7);
    CHECK(up.front()[0] == 0.0);
    CHECK(up.back()[0] == 3.0);
    const auto down = resample_hold(w, 2);
    CHECK(down == std::vector<std::vector<double>>{{0.0}, {3.0}});
    const auto one = resample_hold(w, 1);
    CHECK(one.size() == 1);
}
