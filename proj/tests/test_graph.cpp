#include <doctest.h>

#include <random>

#include "dscoh/graph.hpp"
#include "dscoh/treebank.hpp"
#include "helpers.hpp"

using namespace dscoh;

namespace {

std::vector<SimPair> exact_match_pairs(const ParseTree& a, const ParseTree& b) {
    std::vector<SimPair> out;
    for (int la : a.leaves())
        for (int lb : b.leaves())
            if (a.node(la).token->normalized == b.node(lb).token->normalized)
                out.push_back({la, lb, 1.0});
    return out;
}

}  // namespace

TEST_CASE("build_syn_sim_graph counts") {
    // two 3-node trees (root + 2 leaves) + 2 sim-edges: v=6, e=6, rank 1
    ParseTree a = parse_bracketed("(S cat sat)");
    ParseTree b = parse_bracketed("(S cat sat)");
    auto pairs = exact_match_pairs(a, b);
    REQUIRE(pairs.size() == 2);
    SynSimGraph g = build_syn_sim_graph(a, b, pairs);
    CHECK(g.vertex_count() == 6);
    CHECK(g.edges.size() == 6);
    CHECK(circuit_rank(g) == 1);
    for (const auto& e : g.edges)
        if (e.kind == EdgeKind::syn) CHECK(e.weight == 1.0);
}

TEST_CASE("no sim-edges means two acyclic components") {
    ParseTree a = parse_bracketed("(S cat sat)");
    ParseTree b = parse_bracketed("(S dog ran)");
    SynSimGraph g = build_syn_sim_graph(a, b, {});
    CHECK(connected_components(g.as_weighted()) == 2);
    CHECK(circuit_rank(g) == 0);
}

TEST_CASE("two 5-node trees with 3 sim-edges have rank 2") {
    ParseTree a = parse_bracketed("(S (NP w x) y)");  // 5 nodes
    ParseTree b = parse_bracketed("(S (NP w x) y)");
    REQUIRE(a.size() == 5);
    auto pairs = exact_match_pairs(a, b);
    REQUIRE(pairs.size() == 3);
    SynSimGraph g = build_syn_sim_graph(a, b, pairs);
    CHECK(circuit_rank(g) == 2);
}

TEST_CASE("dangling sim pair is rejected") {
    ParseTree a = parse_bracketed("(S cat)");
    ParseTree b = parse_bracketed("(S dog)");
    CHECK_THROWS_AS(build_syn_sim_graph(a, b, {{a.root(), b.leaves()[0], 1.0}}),
                    DanglingSimPair);
    CHECK_THROWS_AS(build_syn_sim_graph(a, b, {{a.leaves()[0], 99, 1.0}}),
                    DanglingSimPair);
}

TEST_CASE("circuit_rank on plain graphs") {
    WeightedGraph tree;
    tree.vertex_count = 4;
    tree.add_edge(0, 1, 1.0);
    tree.add_edge(1, 2, 1.0);
    tree.add_edge(1, 3, 1.0);
    CHECK(circuit_rank(tree) == 0);

    WeightedGraph square;
    square.vertex_count = 4;
    square.add_edge(0, 1, 1.0);
    square.add_edge(1, 2, 1.0);
    square.add_edge(2, 3, 1.0);
    square.add_edge(3, 0, 1.0);
    CHECK(circuit_rank(square) == 1);

    WeightedGraph k4;
    k4.vertex_count = 4;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) k4.add_edge(i, j, 1.0);
    CHECK(circuit_rank(k4) == 3);
}

TEST_CASE("contract_sim_edges") {
    ParseTree a = parse_bracketed("(S cat sat here)");
    ParseTree b = parse_bracketed("(S cat sat here)");
    auto pairs = exact_match_pairs(a, b);

    SUBCASE("single sim-edge: one super-vertex, no adjacencies") {
        SynSimGraph g = build_syn_sim_graph(a, b, {pairs[0]});
        SuperVertexComplex cx = contract_sim_edges(g);
        CHECK(cx.sim_edge_ids.size() == 1);
        CHECK(cx.adjacency.size() == 1);
        CHECK(cx.adjacency[0][0] == 0);
    }
    SUBCASE("three sim-edges on a connected graph are mutually reachable") {
        REQUIRE(pairs.size() == 3);
        SynSimGraph g = build_syn_sim_graph(a, b, pairs);
        SuperVertexComplex cx = contract_sim_edges(g);
        CHECK(cx.sim_edge_ids.size() == 3);
        CHECK(cx.connected());
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                CHECK(cx.adjacency[i][j] == cx.adjacency[j][i]);
    }
    SUBCASE("no sim-edges is an error") {
        SynSimGraph g = build_syn_sim_graph(a, b, {});
        CHECK_THROWS_AS(contract_sim_edges(g), NoSimEdges);
    }
}

TEST_CASE("four super-vertices from four sim-edges") {
    ParseTree a = parse_bracketed("(S (NP w x) (VP y z))");
    ParseTree b = parse_bracketed("(S (NP w x) (VP y z))");
    auto pairs = exact_match_pairs(a, b);
    REQUIRE(pairs.size() == 4);
    SynSimGraph g = build_syn_sim_graph(a, b, pairs);
    SuperVertexComplex cx = contract_sim_edges(g);
    CHECK(cx.sim_edge_ids.size() == 4);
    CHECK(cx.connected());
}

TEST_CASE("circuit rank identity on random syn-sim graphs") {
    std::mt19937 rng(23);
    for (int i = 0; i < 100; ++i) {
        int sims = 0;
        SynSimGraph g = dscoh_test::random_syn_sim_graph(rng, sims);
        CHECK(circuit_rank(g) == std::max(0, sims - 1));

        // removing sim-edges leaves exactly two acyclic components
        WeightedGraph syn_only;
        syn_only.vertex_count = g.vertex_count();
        for (const auto& e : g.edges)
            if (e.kind == EdgeKind::syn) syn_only.add_edge(e.u, e.v, e.weight);
        CHECK(connected_components(syn_only) == 2);
        CHECK(circuit_rank(syn_only) == 0);
    }
}

TEST_CASE("debug edge list export") {
    ParseTree a = parse_bracketed("(S cat)");
    ParseTree b = parse_bracketed("(S cat)");
    SynSimGraph g = build_syn_sim_graph(a, b, exact_match_pairs(a, b));
    std::string txt = to_edge_list(g);
    CHECK(txt.find("syn") != std::string::npos);
    CHECK(txt.find("sim") != std::string::npos);
}
