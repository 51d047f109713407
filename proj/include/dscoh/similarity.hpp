#ifndef DSCOH_SIMILARITY_HPP
#define DSCOH_SIMILARITY_HPP

#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dscoh/cycles.hpp"
#include "dscoh/errors.hpp"
#include "dscoh/graph.hpp"
#include "dscoh/lexsim.hpp"
#include "dscoh/treebank.hpp"

namespace dscoh {

struct DscohConfig {
    double theta_w = 0.6;
    double theta_c1 = 3.0;
    double theta_c2 = 3.0;
    PruneConfig prune;
};

struct Document {
    std::string id;
    std::vector<ParseTree> sentences;  // pre-parsed constituency trees
};

// GP significance weight: theta_c1 / (p1^theta_c2 + p2^theta_c2).
inline double significance_weight(int p1, int p2, double theta_c1, double theta_c2) {
    return theta_c1 / (std::pow(static_cast<double>(p1), theta_c2) +
                       std::pow(static_cast<double>(p2), theta_c2));
}

// Sentence length weight: 2|B| / (C(Li,2) + Li + C(Lj,2) + Lj).
inline double sentence_length_weight(int basis_size, int leaves_i, int leaves_j) {
    auto half_pairs = [](int n) {
        return static_cast<double>(n) * (n - 1) / 2.0 + static_cast<double>(n);
    };
    return 2.0 * basis_size / (half_pairs(leaves_i) + half_pairs(leaves_j));
}

// phi_c: significance weight times the smaller of the cycle's two sim weights.
inline double cycle_similarity(const BasicCycle& cycle, const DscohConfig& cfg) {
    double w_c = significance_weight(cycle.gp_a.path_length, cycle.gp_b.path_length,
                                     cfg.theta_c1, cfg.theta_c2);
    return w_c * std::min(cycle.sim_weights[0], cycle.sim_weights[1]);
}

// Per-cycle explanation: the paired words, their tree path lengths, and the
// similarity contributions.
struct CycleRecord {
    std::pair<std::string, std::string> words_a;
    std::pair<std::string, std::string> words_b;
    int path_a = 1;
    int path_b = 1;
    double sim_weight_a = 0.0;
    double sim_weight_b = 0.0;
    double significance = 0.0;
    double phi_c = 0.0;
};

struct SentencePairRecord {
    int k = 0;  // sentence index in document A
    int h = 0;  // sentence index in document B
    int sim_edge_count = 0;
    int basis_size = 0;
    double sentence_weight = 0.0;
    double score = 0.0;
    std::vector<CycleRecord> cycles;
};

struct PairBreakdown {
    std::vector<SentencePairRecord> pairs;
    double total = 0.0;
};

// Stages 2-8 for a single raw sentence pair.  Returns 0 with an empty record
// when either pruned tree vanishes or fewer than 2 sim-edges exist.
inline std::pair<double, SentencePairRecord> sentence_pair_similarity(
    const ParseTree& raw_a, const ParseTree& raw_b, const EmbeddingTable& table,
    const DscohConfig& cfg) {
    SentencePairRecord rec;
    ParseTree a = prune(raw_a, cfg.prune);
    ParseTree b = prune(raw_b, cfg.prune);
    if (a.empty() || b.empty()) return {0.0, rec};

    std::vector<SimPair> pairs = find_sim_pairs(a, b, table, cfg.theta_w);
    rec.sim_edge_count = static_cast<int>(pairs.size());
    if (pairs.size() <= 1) return {0.0, rec};

    SynSimGraph g = build_syn_sim_graph(a, b, pairs);
    std::vector<BasicCycle> basis = minimum_cycle_basis(g);
    rec.basis_size = static_cast<int>(basis.size());
    rec.sentence_weight = sentence_length_weight(
        rec.basis_size, static_cast<int>(a.leaf_count()), static_cast<int>(b.leaf_count()));

    auto word_of = [&](int vertex) -> const std::string& {
        const auto& v = g.vertices[static_cast<std::size_t>(vertex)];
        const ParseTree& t = v.side == 0 ? a : b;
        return t.node(v.node).token->surface;
    };

    double phi_sum = 0.0;
    for (const auto& c : basis) {
        CycleRecord cr;
        cr.words_a = {word_of(c.gp_a.leaf_u), word_of(c.gp_a.leaf_v)};
        cr.words_b = {word_of(c.gp_b.leaf_u), word_of(c.gp_b.leaf_v)};
        cr.path_a = c.gp_a.path_length;
        cr.path_b = c.gp_b.path_length;
        cr.sim_weight_a = c.sim_weights[0];
        cr.sim_weight_b = c.sim_weights[1];
        cr.significance =
            significance_weight(cr.path_a, cr.path_b, cfg.theta_c1, cfg.theta_c2);
        cr.phi_c = cycle_similarity(c, cfg);
        phi_sum += cr.phi_c;
        rec.cycles.push_back(std::move(cr));
    }
    rec.score = rec.sentence_weight * phi_sum;
    return {rec.score, rec};
}

// phi_D: sum of sentence-pair similarities over all (k, h).  Arguments are
// canonicalized by id so swapped calls are bit-identical.
inline std::pair<double, PairBreakdown> document_similarity(const Document& a,
                                                            const Document& b,
                                                            const EmbeddingTable& table,
                                                            const DscohConfig& cfg) {
    const Document& first = b.id < a.id ? b : a;
    const Document& second = b.id < a.id ? a : b;
    PairBreakdown breakdown;
    double total = 0.0;
    for (int k = 0; k < static_cast<int>(first.sentences.size()); ++k) {
        for (int h = 0; h < static_cast<int>(second.sentences.size()); ++h) {
            auto [score, rec] = sentence_pair_similarity(first.sentences[static_cast<std::size_t>(k)],
                                                         second.sentences[static_cast<std::size_t>(h)],
                                                         table, cfg);
            rec.k = k;
            rec.h = h;
            total += score;
            breakdown.pairs.push_back(std::move(rec));
        }
    }
    breakdown.total = total;
    return {total, breakdown};
}

struct SimilarityMatrix {
    std::vector<std::string> ids;
    std::vector<std::vector<double>> values;  // symmetric, values[i][j] == phi_D
};

inline SimilarityMatrix similarity_matrix(const std::vector<Document>& docs,
                                          const EmbeddingTable& table,
                                          const DscohConfig& cfg,
                                          bool normalize = false) {
    std::set<std::string> ids;
    for (const auto& d : docs)
        if (!ids.insert(d.id).second)
            throw DuplicateDocumentId("duplicate document id '" + d.id + "'");

    std::size_t n = docs.size();
    SimilarityMatrix m;
    m.values.assign(n, std::vector<double>(n, 0.0));
    for (const auto& d : docs) m.ids.push_back(d.id);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double v = document_similarity(docs[i], docs[j], table, cfg).first;
            m.values[i][j] = v;
            m.values[j][i] = v;
        }
    }
    if (normalize) {
        double mx = 0.0;
        for (const auto& row : m.values)
            for (double v : row) mx = std::max(mx, v);
        if (mx > 0.0)
            for (auto& row : m.values)
                for (double& v : row) v /= mx;
    }
    return m;
}

}  // namespace dscoh

#endif
