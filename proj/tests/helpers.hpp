#ifndef DSCOH_TEST_HELPERS_HPP
#define DSCOH_TEST_HELPERS_HPP

#include <random>
#include <set>
#include <string>
#include <vector>

#include "dscoh/graph.hpp"
#include "dscoh/lexsim.hpp"
#include "dscoh/treebank.hpp"

namespace dscoh_test {

inline const std::vector<std::string> kLabels = {"S", "NP", "VP", "PP", "SBAR", "ADJP"};
inline const std::vector<std::string> kWords = {
    "cat",  "dog",   "pizza", "movie", "eat",  "watch", "run",  "sleep",
    "red",  "blue",  "house", "tree",  "bird", "car",   "fish", "book"};

// Random well-formed parse tree with the given number of leaves.
inline dscoh::ParseTree random_tree(std::mt19937& rng, int leaf_target) {
    std::uniform_int_distribution<std::size_t> word(0, kWords.size() - 1);
    std::uniform_int_distribution<std::size_t> label(0, kLabels.size() - 1);

    dscoh::ParseTree t;
    std::vector<int> frontier;
    int leaf_index = 0;
    for (int i = 0; i < leaf_target; ++i) {
        dscoh::Token tok;
        tok.surface = kWords[word(rng)];
        tok.normalized = tok.surface;
        tok.leaf_index = leaf_index++;
        // wrap in a preterminal so leaves never sit beside subtrees
        frontier.push_back(t.add_internal(kLabels[label(rng)], {t.add_leaf(tok)}));
    }
    // Reduce the frontier with random-arity internal nodes, preserving order.
    while (frontier.size() > 1) {
        std::uniform_int_distribution<std::size_t> arity(2, std::min<std::size_t>(4, frontier.size()));
        std::size_t take = arity(rng);
        std::uniform_int_distribution<std::size_t> start(0, frontier.size() - take);
        std::size_t s = start(rng);
        std::vector<int> children(frontier.begin() + static_cast<long>(s),
                                  frontier.begin() + static_cast<long>(s + take));
        int parent = t.add_internal(kLabels[label(rng)], children);
        frontier.erase(frontier.begin() + static_cast<long>(s),
                       frontier.begin() + static_cast<long>(s + take));
        frontier.insert(frontier.begin() + static_cast<long>(s), parent);
    }
    t.set_root(frontier[0]);
    return t;
}

// Connected random weighted graph: spanning tree plus extra random edges.
inline dscoh::WeightedGraph random_connected_graph(std::mt19937& rng, int max_vertices,
                                                   int max_edges, bool integer_weights) {
    std::uniform_int_distribution<int> nv(2, max_vertices);
    int n = nv(rng);
    dscoh::WeightedGraph g;
    g.vertex_count = n;
    auto weight = [&rng, integer_weights]() {
        if (integer_weights) {
            std::uniform_int_distribution<int> w(1, 4);
            return static_cast<double>(w(rng));
        }
        std::uniform_real_distribution<double> w(0.5, 4.0);
        return w(rng);
    };
    std::set<std::pair<int, int>> used;
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        int u = pick(rng);
        g.add_edge(u, v, weight());
        used.insert({u, v});
    }
    int max_extra = std::min(max_edges - (n - 1), n * (n - 1) / 2 - (n - 1));
    if (max_extra > 0) {
        std::uniform_int_distribution<int> extra(0, max_extra);
        int want = extra(rng);
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (int tries = 0; want > 0 && tries < 200; ++tries) {
            int u = pick(rng);
            int v = pick(rng);
            if (u == v) continue;
            auto key = std::minmax(u, v);
            if (used.count({key.first, key.second})) continue;
            used.insert({key.first, key.second});
            g.add_edge(key.first, key.second, weight());
            --want;
        }
    }
    return g;
}

// Random syn-sim instance: two random trees plus a random cross-leaf pair set.
inline dscoh::SynSimGraph random_syn_sim_graph(std::mt19937& rng, int& sim_edges_out) {
    std::uniform_int_distribution<int> leaves(2, 6);
    dscoh::ParseTree a = random_tree(rng, leaves(rng));
    dscoh::ParseTree b = random_tree(rng, leaves(rng));
    std::vector<int> la = a.leaves();
    std::vector<int> lb = b.leaves();

    std::vector<std::pair<int, int>> all;
    for (int x : la)
        for (int y : lb) all.emplace_back(x, y);
    std::shuffle(all.begin(), all.end(), rng);
    std::uniform_int_distribution<std::size_t> count(0, std::min<std::size_t>(all.size(), 8));
    std::size_t take = count(rng);
    std::uniform_real_distribution<double> w(0.5, 1.0);

    std::vector<dscoh::SimPair> pairs;
    for (std::size_t i = 0; i < take; ++i)
        pairs.push_back({all[i].first, all[i].second, w(rng)});
    sim_edges_out = static_cast<int>(pairs.size());
    return dscoh::build_syn_sim_graph(a, b, pairs);
}

}  // namespace dscoh_test

#endif
