#ifndef DSCOH_GRAPH_HPP
#define DSCOH_GRAPH_HPP

#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

#include "dscoh/errors.hpp"
#include "dscoh/lexsim.hpp"
#include "dscoh/treebank.hpp"

namespace dscoh {

enum class EdgeKind { syn, sim };

// Plain undirected weighted graph with dense vertex ids and stable edge ids.
struct WeightedGraph {
    struct Edge {
        int u = -1;
        int v = -1;
        double weight = 1.0;
    };
    int vertex_count = 0;
    std::vector<Edge> edges;

    int add_edge(int u, int v, double w) {
        edges.push_back({u, v, w});
        return static_cast<int>(edges.size()) - 1;
    }
};

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[static_cast<std::size_t>(b)] = a;
        return true;
    }
};

}  // namespace detail

inline int connected_components(const WeightedGraph& g) {
    detail::UnionFind uf(g.vertex_count);
    int components = g.vertex_count;
    for (const auto& e : g.edges)
        if (uf.unite(e.u, e.v)) --components;
    return components;
}

// e - v + c, the dimension of the cycle space.
inline int circuit_rank(const WeightedGraph& g) {
    return static_cast<int>(g.edges.size()) - g.vertex_count + connected_components(g);
}

// Union of two pruned parse trees (syn-edges, weight 1) plus cross-tree
// similarity edges (sim-edges, weight phi_w).  Vertices are (side, node id)
// pairs flattened to dense indices; side 0 is tree A, side 1 is tree B.
struct SynSimGraph {
    struct Vertex {
        int side = 0;
        int node = -1;     // node id within its tree
        bool leaf = false;
    };
    struct Edge {
        int u = -1;
        int v = -1;
        double weight = 1.0;
        EdgeKind kind = EdgeKind::syn;
    };

    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<int> sim_edge_ids;  // indices into edges, in insertion order

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int sim_edge_count() const { return static_cast<int>(sim_edge_ids.size()); }

    // View as a plain graph; sim-edge weights may be overridden.
    WeightedGraph as_weighted(double sim_weight_override = -1.0) const {
        WeightedGraph g;
        g.vertex_count = vertex_count();
        for (const auto& e : edges) {
            double w = e.weight;
            if (e.kind == EdgeKind::sim && sim_weight_override >= 0.0) w = sim_weight_override;
            g.add_edge(e.u, e.v, w);
        }
        return g;
    }

    double total_syn_weight() const {
        double s = 0.0;
        for (const auto& e : edges)
            if (e.kind == EdgeKind::syn) s += e.weight;
        return s;
    }
};

inline SynSimGraph build_syn_sim_graph(const ParseTree& tree_a, const ParseTree& tree_b,
                                       const std::vector<SimPair>& pairs) {
    SynSimGraph g;
    std::vector<int> map_a(tree_a.size(), -1);
    std::vector<int> map_b(tree_b.size(), -1);

    auto add_tree = [&g](const ParseTree& t, int side, std::vector<int>& map) {
        for (int id = 0; id < static_cast<int>(t.size()); ++id) {
            map[static_cast<std::size_t>(id)] = g.vertex_count();
            g.vertices.push_back({side, id, t.is_leaf(id)});
        }
        for (int id = 0; id < static_cast<int>(t.size()); ++id)
            for (int c : t.node(id).children)
                g.edges.push_back({map[static_cast<std::size_t>(id)],
                                   map[static_cast<std::size_t>(c)], 1.0, EdgeKind::syn});
    };
    add_tree(tree_a, 0, map_a);
    add_tree(tree_b, 1, map_b);

    for (const auto& p : pairs) {
        if (!tree_a.is_leaf(p.leaf_a) || !tree_b.is_leaf(p.leaf_b))
            throw DanglingSimPair("sim pair references a non-leaf or absent node");
        g.sim_edge_ids.push_back(static_cast<int>(g.edges.size()));
        g.edges.push_back({map_a[static_cast<std::size_t>(p.leaf_a)],
                           map_b[static_cast<std::size_t>(p.leaf_b)], p.weight, EdgeKind::sim});
    }
    return g;
}

inline int circuit_rank(const SynSimGraph& g) { return circuit_rank(g.as_weighted()); }

// One super-vertex per contracted sim-edge.  adjacency[i][j] is the hop
// distance between super-vertices i and j in the contracted graph
// (-1 when unreachable).
struct SuperVertexComplex {
    std::vector<int> sim_edge_ids;              // source sim-edge per super-vertex
    std::vector<std::vector<int>> adjacency;    // pairwise distances

    bool connected() const {
        for (const auto& row : adjacency)
            for (int d : row)
                if (d < 0) return false;
        return true;
    }
};

inline SuperVertexComplex contract_sim_edges(const SynSimGraph& g) {
    if (g.sim_edge_count() == 0) throw NoSimEdges("graph has no sim-edges");

    // Contract each sim-edge: both endpoints map to one representative.
    detail::UnionFind uf(g.vertex_count());
    for (int eid : g.sim_edge_ids) uf.unite(g.edges[static_cast<std::size_t>(eid)].u,
                                            g.edges[static_cast<std::size_t>(eid)].v);

    std::map<int, int> rep_to_dense;
    auto dense = [&](int v) {
        int r = uf.find(v);
        auto it = rep_to_dense.find(r);
        if (it != rep_to_dense.end()) return it->second;
        int idx = static_cast<int>(rep_to_dense.size());
        rep_to_dense[r] = idx;
        return idx;
    };

    std::vector<std::vector<int>> adj;
    auto touch = [&](int v) {
        int d = dense(v);
        if (d >= static_cast<int>(adj.size())) adj.resize(static_cast<std::size_t>(d) + 1);
        return d;
    };
    for (int v = 0; v < g.vertex_count(); ++v) touch(v);
    for (const auto& e : g.edges) {
        int du = touch(e.u);
        int dv = touch(e.v);
        if (du == dv) continue;  // contracted loop
        adj[static_cast<std::size_t>(du)].push_back(dv);
        adj[static_cast<std::size_t>(dv)].push_back(du);
    }

    SuperVertexComplex cx;
    cx.sim_edge_ids = g.sim_edge_ids;
    std::vector<int> super_dense;
    for (int eid : g.sim_edge_ids)
        super_dense.push_back(dense(g.edges[static_cast<std::size_t>(eid)].u));

    cx.adjacency.assign(super_dense.size(), std::vector<int>(super_dense.size(), -1));
    for (std::size_t i = 0; i < super_dense.size(); ++i) {
        std::vector<int> dist(adj.size(), -1);
        std::queue<int> q;
        dist[static_cast<std::size_t>(super_dense[i])] = 0;
        q.push(super_dense[i]);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[static_cast<std::size_t>(u)])
                if (dist[static_cast<std::size_t>(v)] < 0) {
                    dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                    q.push(v);
                }
        }
        for (std::size_t j = 0; j < super_dense.size(); ++j)
            cx.adjacency[i][j] = dist[static_cast<std::size_t>(super_dense[j])];
    }
    return cx;
}

// Debug export: one "u v weight kind" line per edge.
inline std::string to_edge_list(const SynSimGraph& g) {
    std::ostringstream out;
    for (const auto& e : g.edges)
        out << e.u << '\t' << e.v << '\t' << e.weight << '\t'
            << (e.kind == EdgeKind::syn ? "syn" : "sim") << '\n';
    return out.str();
}

}  // namespace dscoh

#endif
