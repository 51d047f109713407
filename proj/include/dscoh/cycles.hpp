#ifndef DSCOH_CYCLES_HPP
#define DSCOH_CYCLES_HPP

#include <algorithm>
#include <array>
#include <limits>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dscoh/errors.hpp"
#include "dscoh/gf2.hpp"
#include "dscoh/graph.hpp"

namespace dscoh {

struct Cycle {
    std::vector<int> edge_ids;  // sorted
    double weight = 0.0;
};

struct CycleBasis {
    std::size_t edge_count = 0;
    std::vector<Cycle> cycles;

    double total_weight() const {
        double s = 0.0;
        for (const auto& c : cycles) s += c.weight;
        return s;
    }
    std::vector<Gf2Vec> incidence() const {
        std::vector<Gf2Vec> rows;
        rows.reserve(cycles.size());
        for (const auto& c : cycles) {
            Gf2Vec v(edge_count);
            for (int e : c.edge_ids) v.set(static_cast<std::size_t>(e));
            rows.push_back(std::move(v));
        }
        return rows;
    }
};

namespace detail {

// Single-source shortest paths with deterministic lexicographic tie-breaking:
// among equal-weight paths the lexicographically least vertex sequence wins,
// so candidate cycles are reproducible across runs and roots.
struct ShortestPaths {
    std::vector<double> dist;
    std::vector<std::vector<int>> vpath;  // vertex sequence from root
    std::vector<std::vector<int>> epath;  // edge ids from root
};

inline ShortestPaths lex_shortest_paths(const WeightedGraph& g, int root) {
    const double inf = std::numeric_limits<double>::infinity();
    ShortestPaths sp;
    sp.dist.assign(static_cast<std::size_t>(g.vertex_count), inf);
    sp.vpath.assign(static_cast<std::size_t>(g.vertex_count), {});
    sp.epath.assign(static_cast<std::size_t>(g.vertex_count), {});
    sp.dist[static_cast<std::size_t>(root)] = 0.0;
    sp.vpath[static_cast<std::size_t>(root)] = {root};

    // Relax to fixpoint; graphs here are sentence-scale so this is cheap.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int eid = 0; eid < static_cast<int>(g.edges.size()); ++eid) {
            const auto& e = g.edges[static_cast<std::size_t>(eid)];
            for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
                auto ua = static_cast<std::size_t>(a);
                auto ub = static_cast<std::size_t>(b);
                if (sp.dist[ua] == inf) continue;
                double nd = sp.dist[ua] + e.weight;
                if (nd > sp.dist[ub]) continue;
                std::vector<int> nv = sp.vpath[ua];
                nv.push_back(b);
                if (nd == sp.dist[ub] && !(nv < sp.vpath[ub])) continue;
                sp.dist[ub] = nd;
                sp.vpath[ub] = std::move(nv);
                sp.epath[ub] = sp.epath[ua];
                sp.epath[ub].push_back(eid);
                changed = true;
            }
        }
    }
    return sp;
}

// True iff the edge set is a single simple cycle (every incident vertex has
// degree exactly 2 and the edges form one connected component).
inline bool is_simple_cycle(const WeightedGraph& g, const std::vector<int>& edge_ids) {
    if (edge_ids.empty()) return false;
    std::vector<int> degree(static_cast<std::size_t>(g.vertex_count), 0);
    UnionFind uf(g.vertex_count);
    int merges = 0;
    for (int eid : edge_ids) {
        const auto& e = g.edges[static_cast<std::size_t>(eid)];
        ++degree[static_cast<std::size_t>(e.u)];
        ++degree[static_cast<std::size_t>(e.v)];
        if (uf.unite(e.u, e.v)) ++merges;
    }
    for (int eid : edge_ids) {
        const auto& e = g.edges[static_cast<std::size_t>(eid)];
        if (degree[static_cast<std::size_t>(e.u)] != 2 ||
            degree[static_cast<std::size_t>(e.v)] != 2)
            return false;
    }
    // A connected graph where all degrees are 2 has exactly v == e; one
    // component over the touched vertices means merges == e - 1.
    return merges == static_cast<int>(edge_ids.size()) - 1;
}

inline double edge_set_weight(const WeightedGraph& g, const std::vector<int>& edge_ids) {
    double w = 0.0;
    for (int eid : edge_ids) w += g.edges[static_cast<std::size_t>(eid)].weight;
    return w;
}

// Greedy GF(2) selection from weight-sorted candidates up to the target rank.
inline std::vector<Cycle> greedy_select(const WeightedGraph& g,
                                        std::vector<std::vector<int>> candidates,
                                        int target_rank) {
    std::vector<std::pair<double, std::vector<int>>> order;
    order.reserve(candidates.size());
    for (auto& c : candidates) order.emplace_back(edge_set_weight(g, c), std::move(c));
    std::sort(order.begin(), order.end());

    Gf2Basis basis(g.edges.size());
    std::vector<Cycle> picked;
    for (auto& [w, edge_ids] : order) {
        if (static_cast<int>(picked.size()) == target_rank) break;
        Gf2Vec v(g.edges.size());
        for (int e : edge_ids) v.set(static_cast<std::size_t>(e));
        if (basis.try_insert(v)) picked.push_back({std::move(edge_ids), w});
    }
    return picked;
}

}  // namespace detail

// Minimum cycle basis via Horton candidate cycles + greedy GF(2) selection.
// Returns an empty basis on forests; throws NotConnected on disconnected
// graphs that still carry cycles.
inline CycleBasis minimum_cycle_basis(const WeightedGraph& g) {
    CycleBasis basis;
    basis.edge_count = g.edges.size();
    int rank = circuit_rank(g);
    if (rank == 0) return basis;
    if (connected_components(g) != 1)
        throw NotConnected("minimum cycle basis requires a connected graph");

    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> candidates;
    for (int root = 0; root < g.vertex_count; ++root) {
        detail::ShortestPaths sp = detail::lex_shortest_paths(g, root);
        for (int eid = 0; eid < static_cast<int>(g.edges.size()); ++eid) {
            const auto& e = g.edges[static_cast<std::size_t>(eid)];
            std::vector<int> edge_ids = sp.epath[static_cast<std::size_t>(e.u)];
            edge_ids.push_back(eid);
            const auto& back = sp.epath[static_cast<std::size_t>(e.v)];
            edge_ids.insert(edge_ids.end(), back.begin(), back.end());
            std::sort(edge_ids.begin(), edge_ids.end());
            if (std::adjacent_find(edge_ids.begin(), edge_ids.end()) != edge_ids.end())
                continue;
            if (!detail::is_simple_cycle(g, edge_ids)) continue;
            if (seen.insert(edge_ids).second) candidates.push_back(std::move(edge_ids));
        }
    }

    basis.cycles = detail::greedy_select(g, std::move(candidates), rank);
    if (static_cast<int>(basis.cycles.size()) != rank)
        throw NotConnected("Horton candidates failed to span the cycle space");
    return basis;
}

// Exhaustive oracle: enumerates every simple cycle by edge-subset scan, then
// selects a minimum-weight independent set of circuit-rank cycles.
inline CycleBasis brute_force_cycle_basis(const WeightedGraph& g) {
    if (g.edges.size() > 16) throw TooLarge("brute-force oracle is limited to 16 edges");
    CycleBasis basis;
    basis.edge_count = g.edges.size();
    int rank = circuit_rank(g);
    if (rank == 0) return basis;

    std::vector<std::vector<int>> cycles;
    const auto m = static_cast<std::uint32_t>(g.edges.size());
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        std::vector<int> edge_ids;
        for (std::uint32_t b = 0; b < m; ++b)
            if (mask & (1u << b)) edge_ids.push_back(static_cast<int>(b));
        if (detail::is_simple_cycle(g, edge_ids)) cycles.push_back(std::move(edge_ids));
    }
    basis.cycles = detail::greedy_select(g, std::move(cycles), rank);
    if (static_cast<int>(basis.cycles.size()) != rank)
        throw NotConnected("cycle space rank not attained");
    return basis;
}

// One paired 2-word sub-phrase: the two leaves (graph vertex ids) plus the
// tree path length between them (1 for a single word paired with itself).
struct GpDescriptor {
    int leaf_u = -1;
    int leaf_v = -1;
    int path_length = 1;
};

struct BasicCycle {
    std::vector<int> edge_ids;                    // sorted, into SynSimGraph::edges
    double total_weight = 0.0;                    // under stored (phi_w) weights
    std::array<int, 2> sim_edge_ids{-1, -1};
    std::array<double, 2> sim_weights{0.0, 0.0};  // stored phi_w of the two sim-edges
    GpDescriptor gp_a;
    GpDescriptor gp_b;
};

// Splits a 2-sim-edge cycle into its two tree-side phrase descriptors.  The
// path length on a side is the number of that side's syn-edges on the cycle;
// a side where both sim-edges share the leaf gets path length 1.
inline std::pair<GpDescriptor, GpDescriptor> cycle_gp_descriptors(
    const std::vector<int>& edge_ids, const SynSimGraph& g) {
    std::vector<int> sims;
    int syn_a = 0;
    int syn_b = 0;
    for (int eid : edge_ids) {
        const auto& e = g.edges[static_cast<std::size_t>(eid)];
        if (e.kind == EdgeKind::sim) {
            sims.push_back(eid);
        } else if (g.vertices[static_cast<std::size_t>(e.u)].side == 0) {
            ++syn_a;
        } else {
            ++syn_b;
        }
    }
    if (sims.size() != 2)
        throw WrongSimEdgeCount("cycle has " + std::to_string(sims.size()) +
                                " sim-edges, expected 2");
    const auto& s1 = g.edges[static_cast<std::size_t>(sims[0])];
    const auto& s2 = g.edges[static_cast<std::size_t>(sims[1])];
    GpDescriptor gp_a{s1.u, s2.u, s1.u == s2.u ? 1 : syn_a};
    GpDescriptor gp_b{s1.v, s2.v, s1.v == s2.v ? 1 : syn_b};
    return {gp_a, gp_b};
}

namespace detail {

inline BasicCycle make_basic_cycle(std::vector<int> edge_ids, const SynSimGraph& g) {
    BasicCycle bc;
    bc.edge_ids = std::move(edge_ids);
    std::vector<int> sims;
    for (int eid : bc.edge_ids) {
        const auto& e = g.edges[static_cast<std::size_t>(eid)];
        bc.total_weight += e.weight;
        if (e.kind == EdgeKind::sim) sims.push_back(eid);
    }
    if (sims.size() != 2)
        throw CycleWithWrongSimEdgeCount("basic cycle has " + std::to_string(sims.size()) +
                                         " sim-edges, expected 2");
    bc.sim_edge_ids = {sims[0], sims[1]};
    bc.sim_weights = {g.edges[static_cast<std::size_t>(sims[0])].weight,
                      g.edges[static_cast<std::size_t>(sims[1])].weight};
    auto [gp_a, gp_b] = cycle_gp_descriptors(bc.edge_ids, g);
    bc.gp_a = gp_a;
    bc.gp_b = gp_b;
    return bc;
}

}  // namespace detail

// Stage-5 minimum cycle basis of a syn-sim graph.  Sim-edge weights are
// replaced by (total syn weight + 1) for the computation only, which forces
// every selected cycle to carry exactly two sim-edges; stored phi_w weights
// are untouched.
inline std::vector<BasicCycle> minimum_cycle_basis(const SynSimGraph& g) {
    std::vector<BasicCycle> out;
    if (g.sim_edge_count() <= 1) return out;
    double w_big = g.total_syn_weight() + 1.0;
    CycleBasis basis = minimum_cycle_basis(g.as_weighted(w_big));
    out.reserve(basis.cycles.size());
    for (auto& c : basis.cycles)
        out.push_back(detail::make_basic_cycle(std::move(c.edge_ids), g));
    return out;
}

namespace detail {

// Syn-edge path (edge ids) between two vertices on one tree side.
inline std::vector<int> syn_path(const SynSimGraph& g, int from, int to) {
    if (from == to) return {};
    std::vector<std::vector<std::pair<int, int>>> adj(
        static_cast<std::size_t>(g.vertex_count()));
    for (int eid = 0; eid < static_cast<int>(g.edges.size()); ++eid) {
        const auto& e = g.edges[static_cast<std::size_t>(eid)];
        if (e.kind != EdgeKind::syn) continue;
        adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, eid);
        adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, eid);
    }
    std::vector<std::pair<int, int>> back(static_cast<std::size_t>(g.vertex_count()),
                                          {-1, -1});
    std::queue<int> q;
    back[static_cast<std::size_t>(from)] = {from, -1};
    q.push(from);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        if (u == to) break;
        for (auto [v, eid] : adj[static_cast<std::size_t>(u)])
            if (back[static_cast<std::size_t>(v)].first < 0) {
                back[static_cast<std::size_t>(v)] = {u, eid};
                q.push(v);
            }
    }
    if (back[static_cast<std::size_t>(to)].first < 0)
        throw NotInTree("vertices are not syn-connected");
    std::vector<int> path;
    for (int v = to; v != from; v = back[static_cast<std::size_t>(v)].first)
        path.push_back(back[static_cast<std::size_t>(v)].second);
    return path;
}

}  // namespace detail

// The cycle basis obtained from the 1-coboundary of the anchor super-vertex:
// one cycle per non-anchor sim-edge, consisting of both sim-edges plus the
// unique tree paths joining their endpoints on each side.
inline std::vector<BasicCycle> coboundary_basis(const SynSimGraph& g, int anchor_sim_edge) {
    if (g.sim_edge_count() < 2)
        throw TooFewSimEdges("coboundary basis needs at least 2 sim-edges");
    const auto& a = g.edges[static_cast<std::size_t>(anchor_sim_edge)];
    std::vector<BasicCycle> out;
    for (int other : g.sim_edge_ids) {
        if (other == anchor_sim_edge) continue;
        const auto& o = g.edges[static_cast<std::size_t>(other)];
        std::vector<int> edge_ids = {anchor_sim_edge, other};
        auto pa = detail::syn_path(g, a.u, o.u);
        auto pb = detail::syn_path(g, a.v, o.v);
        edge_ids.insert(edge_ids.end(), pa.begin(), pa.end());
        edge_ids.insert(edge_ids.end(), pb.begin(), pb.end());
        std::sort(edge_ids.begin(), edge_ids.end());
        out.push_back(detail::make_basic_cycle(std::move(edge_ids), g));
    }
    return out;
}

struct LemmaReport {
    int sim_edge_count = 0;
    int component_count = 0;
    bool l1_connected = false;         // contracted complex is connected (H^0 dim 1)
    bool l2_all_anchors = false;       // every anchor: e_sim - 1 independent cycles
    bool l3_span_equality = false;     // union of coboundaries spans the MCB space
    bool l2_applicable = false;        // e_sim >= 2
    bool all_pass() const { return l1_connected && l2_all_anchors && l3_span_equality; }
};

inline LemmaReport verify_cohomology_lemmas(const SynSimGraph& g) {
    LemmaReport r;
    r.sim_edge_count = g.sim_edge_count();
    WeightedGraph plain = g.as_weighted();
    r.component_count = connected_components(plain);
    r.l1_connected = (r.component_count == 1);
    r.l2_applicable = r.sim_edge_count >= 2;

    if (!r.l2_applicable) {
        // circuit rank 0: the lemmas about bases are vacuous
        r.l2_all_anchors = true;
        r.l3_span_equality = true;
        return r;
    }

    int expected = r.sim_edge_count - 1;
    std::vector<Gf2Vec> union_rows;
    r.l2_all_anchors = true;
    for (int anchor : g.sim_edge_ids) {
        auto cycles = coboundary_basis(g, anchor);
        std::vector<Gf2Vec> rows;
        for (const auto& c : cycles) {
            Gf2Vec v(g.edges.size());
            for (int e : c.edge_ids) v.set(static_cast<std::size_t>(e));
            rows.push_back(v);
            union_rows.push_back(std::move(v));
        }
        if (static_cast<int>(cycles.size()) != expected ||
            gf2_rank(g.edges.size(), rows) != static_cast<std::size_t>(expected))
            r.l2_all_anchors = false;
    }

    std::vector<BasicCycle> mcb;
    try {
        mcb = minimum_cycle_basis(g);
    } catch (const Error&) {
        // a basic cycle without exactly 2 sim-edges: the Lemma-2 derivation broke
        r.l3_span_equality = false;
        return r;
    }
    std::vector<Gf2Vec> mcb_rows;
    for (const auto& c : mcb) {
        Gf2Vec v(g.edges.size());
        for (int e : c.edge_ids) v.set(static_cast<std::size_t>(e));
        mcb_rows.push_back(std::move(v));
    }
    std::size_t rank_union = gf2_rank(g.edges.size(), union_rows);
    std::size_t rank_mcb = gf2_rank(g.edges.size(), mcb_rows);
    std::vector<Gf2Vec> both = union_rows;
    both.insert(both.end(), mcb_rows.begin(), mcb_rows.end());
    std::size_t rank_both = gf2_rank(g.edges.size(), both);
    r.l3_span_equality = (rank_union == static_cast<std::size_t>(expected)) &&
                         (rank_mcb == rank_union) && (rank_both == rank_union);
    return r;
}

}  // namespace dscoh

#endif
