#include <doctest.h>

#include <algorithm>

#include "pmfd/errors.hpp"
#include "pmfd/petri.hpp"
#include "pmfd/rng.hpp"

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

using namespace pmfd;

TEST_CASE("only tr1 is enabled at the initial marking") {
    const auto net = test::fig2_net();
    const auto enabled = enabled_transitions(net, net.initial_marking());
    REQUIRE(enabled.size() == 1);
    CHECK(net.transition_id(enabled[0]) == "tr1");
}

TEST_CASE("empty marking enables nothing; input-free transitions always fire") {
    const auto net = test::fig2_net();
    CHECK(enabled_transitions(net, Marking(net.n_places(), 0)).empty());

    PetriNet free_net({"p"}, {{"t", "a"}}, {{"t", "p"}}, {}, {{"p", 1}});
    CHECK(enabled_transitions(free_net, Marking(1, 0)) ==
          std::vector<std::size_t>{free_net.transition_index("t")});
}

TEST_CASE("firing tr1 enables the three parallel branches") {
    const auto net = test::fig2_net();
    const auto m = fire(net, net.initial_marking(), net.transition_index("tr1"));
    auto enabled = enabled_transitions(net, m);
    std::vector<std::string> ids;
    for (const auto t : enabled) ids.push_back(net.transition_id(t));
    std::sort(ids.begin(), ids.end());
    CHECK(ids == std::vector<std::string>{"tr2", "tr3", "tr4"});
}

TEST_CASE("silent transitions follow the same firing rule") {
    const auto net = test::fig2_net();
    auto m = fire(net, net.initial_marking(), net.transition_index("tr1"));
    m = fire(net, m, net.transition_index("tr2"));
    const auto before = m;
    m = fire(net, m, net.transition_index("tau_redo"));
    CHECK(m[net.place_index("p1")] == before[net.place_index("p1")] + 1);
    CHECK(m[net.place_index("p4")] == before[net.place_index("p4")] - 1);
}

TEST_CASE("fire rejects disabled transitions") {
    const auto net = test::fig2_net();
    CHECK_THROWS_AS(fire(net, net.initial_marking(), net.transition_index("tr6")),
                    NotEnabledError);
}

TEST_CASE("token count changes by outdegree minus indegree") {
    const auto net = test::fig2_net();
    Rng rng(3);
    Marking m = net.initial_marking();
    for (int step = 0; step < 40; ++step) {
        const auto enabled = enabled_transitions(net, m);
        if (enabled.empty()) break;
        const auto t = enabled[rng.uniform_index(enabled.size())];
        const auto next = fire(net, m, t);
        long before = 0, after = 0;
        for (const auto v : m) before += v;
        for (const auto v : next) after += v;
        CHECK(after - before == static_cast<long>(net.outputs(t).size()) -
                                    static_cast<long>(net.inputs(t).size()));
        m = next;
    }
}

TEST_CASE("the example net is a sound workflow net") {
    const auto net = test::fig2_net();
    CHECK(is_workflow_net(net));
    const auto result = check_soundness(net, 100000);
    CHECK(result.sound());
}

TEST_CASE("sound nets replay random complete firing sequences to the final marking") {
    const auto net = test::fig2_net();
    Rng rng(11);
    for (int round = 0; round < 25; ++round) {
        Marking m = net.initial_marking();
        int guard = 0;
        while (m != net.final_marking() && guard++ < 200) {
            const auto enabled = enabled_transitions(net, m);
            REQUIRE(!enabled.empty()); // soundness: never stuck off the final marking
            m = fire(net, m, enabled[rng.uniform_index(enabled.size())]);
        }
        if (guard < 200) CHECK(m == net.final_marking());
    }
}

TEST_CASE("unsound nets are diagnosed") {
    // XOR split into an AND join: one branch alone can never complete
    PetriNet xor_and({"source", "p1", "p2", "sink"},
                     {{"ta", "a"}, {"tb", "b"}, {"tc", "c"}},
                     {{"source", "ta"},
                      {"ta", "p1"},
                      {"source", "tb"},
                      {"tb", "p2"},
                      {"p1", "tc"},
                      {"p2", "tc"},
                      {"tc", "sink"}},
                     {{"source", 1}}, {{"sink", 1}});
    const auto result = check_soundness(xor_and, 100000);
    CHECK(result.unsound());
    CHECK(result.reason == "NoOptionToComplete");

    PetriNet two_sources({"a", "b", "sink"}, {{"t", "x"}},
                         {{"a", "t"}, {"t", "sink"}}, {{"a", 1}}, {{"sink", 1}});
    CHECK(check_soundness(two_sources).unsound());
    CHECK(check_soundness(two_sources).reason == "NotWorkflow");
}

TEST_CASE("soundness exploration respects the marking budget") {
    const auto net = test::fig2_net();
    const auto result = check_soundness(net, 3);
    CHECK(result.verdict == SoundnessResult::Verdict::Unknown);
}

TEST_CASE("arc-degree simplicity anchor cases") {
    // every node exactly one-in/one-out: a cycle scores exactly 1
    PetriNet cycle({"p", "q"}, {{"t1", "a"}, {"t2", "b"}},
                   {{"p", "t1"}, {"t1", "q"}, {"q", "t2"}, {"t2", "p"}}, {{"p", 1}}, {{"q", 1}});
    CHECK(arc_degree_simplicity(cycle) == doctest::Approx(1.0));

    // mean degree 3 -> 0.5: one place feeding three transitions, each returning
    PetriNet dense({"p", "q"},
                   {{"t1", "a"}, {"t2", "b"}, {"t3", "c"}},
                   {{"p", "t1"}, {"p", "t2"}, {"p", "t3"},
                    {"t1", "q"}, {"t2", "q"}, {"t3", "q"},
                    {"q", "t1"}, {"q", "t2"}, {"q", "t3"},
                    {"t1", "p"}, {"t2", "p"}, {"t3", "p"}},
                   {{"p", 1}}, {{"q", 1}});
    // 24 arc endpoints over 5 nodes: mean degree 4.8 -> 1/(1+2.8)
    CHECK(arc_degree_simplicity(dense) == doctest::Approx(1.0 / 3.8));

    CHECK(arc_degree_simplicity(test::fig2_net()) ==
          doctest::Approx(test::direct_arc_degree_simplicity(test::fig2_net())));
}

TEST_CASE("arc-degree simplicity matches an independent arc recount") {
    Rng rng(31);
    int label_counter = 0;
    for (int round = 0; round < 30; ++round) {
        const auto tree = test::random_tree(rng, 3, label_counter);
        const auto net = tree_to_petri(tree);
        CHECK(arc_degree_simplicity(net) ==
              doctest::Approx(test::direct_arc_degree_simplicity(net)).epsilon(1e-12));
    }
}

TEST_CASE("arc-degree simplicity is invariant under relabeling") {
    const auto net = test::fig2_net();
    PetriNet renamed({"a0", "a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8", "a9"},
                     {{"x1", "tr1"},
                      {"x2", "tr2"},
                      {"x3", "tr3"},
                      {"x4", "tr4"},
                      {"x5", "tr5"},
                      {"x6", ""},
                      {"x7", ""},
                      {"x8", "tr6"}},
                     {{"a0", "x1"}, {"x1", "a1"}, {"x1", "a2"}, {"x1", "a3"},
                      {"a1", "x2"}, {"x2", "a4"}, {"a4", "x6"}, {"x6", "a1"},
                      {"a2", "x3"}, {"x3", "a5"}, {"a3", "x4"}, {"x4", "a6"},
                      {"a6", "x5"}, {"x5", "a7"}, {"a4", "x7"}, {"a5", "x7"},
                      {"a7", "x7"}, {"x7", "a8"}, {"a8", "x8"}, {"x8", "a9"}},
                     {{"a0", 1}}, {{"a9", 1}});
    CHECK(arc_degree_simplicity(renamed) == doctest::Approx(arc_degree_simplicity(net)));
}

TEST_CASE("isolated nodes are rejected") {
    PetriNet lonely({"p", "q", "island"}, {{"t", "a"}}, {{"p", "t"}, {"t", "q"}},
                    {{"p", 1}}, {{"q", 1}});
    CHECK_THROWS_AS(arc_degree_simplicity(lonely), IsolatedNodeError);
}

TEST_CASE("DOT export renders boxes, circles and fills silent transitions") {
    const auto net = test::fig2_net();
    const auto dot = export_dot(net);
    CHECK(std::count(dot.begin(), dot.end(), '{') == 1);
    std::size_t boxes = 0, filled = 0, pos = 0;
    while ((pos = dot.find("shape=box", pos)) != std::string::npos) {
        ++boxes;
        pos += 1;
    }
    pos = 0;
    while ((pos = dot.find("fillcolor=black", pos)) != std::string::npos) {
        ++filled;
        pos += 1;
    }
    CHECK(boxes == 8);
    CHECK(filled == 2);
    CHECK(dot == export_dot(net)); // stable output

    const auto empty = export_dot(PetriNet{});
    CHECK(empty.find("digraph") == 0);
    CHECK(empty.find("shape") == std::string::npos);
}

TEST_CASE("net JSON round trip preserves structure") {
    const auto net = test::fig2_net();
    const auto restored = net_from_json(net_to_json(net));
    CHECK(restored.n_places() == net.n_places());
    CHECK(restored.n_transitions() == net.n_transitions());
    CHECK(restored.arcs() == net.arcs());
    CHECK(restored.initial_marking() == net.initial_marking());
    CHECK(restored.final_marking() == net.final_marking());
    CHECK(export_dot(restored) == export_dot(net));
}

TEST_CASE("construction validates arcs and markings") {
    CHECK_THROWS_AS(PetriNet({"p", "q"}, {{"t", "a"}}, {{"p", "q"}}, {{"p", 1}}, {{"q", 1}}),
                    NetStructureError);
    CHECK_THROWS_AS(PetriNet({"p"}, {{"t", "a"}}, {{"p", "t"}}, {{"nope", 1}}, {}),
                    NetStructureError);
    CHECK_THROWS_AS(PetriNet({"p", "p"}, {}, {}, {}, {}), NetStructureError);
}
