#ifndef DSCOH_LEXSIM_HPP
#define DSCOH_LEXSIM_HPP

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "dscoh/errors.hpp"
#include "dscoh/treebank.hpp"

namespace dscoh {

// Normalized word -> unit vector.  Vectors are L2-normalized at load.
class EmbeddingTable {
public:
    EmbeddingTable() = default;

    std::size_t size() const { return vectors_.size(); }
    std::size_t dimension() const { return dimension_; }

    const std::vector<double>* find(const std::string& word) const {
        auto it = vectors_.find(word);
        return it == vectors_.end() ? nullptr : &it->second;
    }

    // Last occurrence wins on duplicate words.
    void insert(const std::string& word, std::vector<double> vec) {
        if (dimension_ == 0) dimension_ = vec.size();
        if (vec.size() != dimension_)
            throw DimensionMismatch("vector for '" + word + "' has dimension " +
                                    std::to_string(vec.size()) + ", expected " +
                                    std::to_string(dimension_));
        double norm = 0.0;
        for (double x : vec) norm += x * x;
        norm = std::sqrt(norm);
        if (norm > 0.0)
            for (double& x : vec) x /= norm;
        vectors_[word] = std::move(vec);
    }

private:
    std::size_t dimension_ = 0;
    std::unordered_map<std::string, std::vector<double>> vectors_;
};

// Text format: one "word c1 ... cd" record per line; an optional leading
// "count dim" header (two integer fields) is detected and skipped.
inline EmbeddingTable load_embeddings(std::istream& in) {
    EmbeddingTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;  // blank line
        std::vector<double> vec;
        std::string field;
        bool numeric_word = !word.empty() &&
            word.find_first_not_of("0123456789") == std::string::npos;
        while (ls >> field) {
            std::size_t used = 0;
            double value = 0.0;
            try {
                value = std::stod(field, &used);
            } catch (const std::exception&) {
                throw NonNumericComponent("non-numeric component '" + field + "'");
            }
            if (used != field.size())
                throw NonNumericComponent("non-numeric component '" + field + "'");
            vec.push_back(value);
        }
        if (first && numeric_word && vec.size() == 1 &&
            vec[0] == std::floor(vec[0])) {
            first = false;  // "count dim" header
            continue;
        }
        first = false;
        if (vec.empty())
            throw DimensionMismatch("record for '" + word + "' has no components");
        table.insert(word, std::move(vec));
    }
    if (table.size() == 0) throw EmptyTable("no embedding records");
    return table;
}

// Lexical similarity phi_w in [0, 1].  Identical normalized words score 1
// regardless of the table; distinct out-of-vocabulary words score 0; negative
// cosine clamps to 0.
inline double lexical_similarity(const EmbeddingTable& table, const std::string& w1,
                                 const std::string& w2) {
    if (w1 == w2) return 1.0;
    const std::vector<double>* a = table.find(w1);
    const std::vector<double>* b = table.find(w2);
    if (!a || !b) return 0.0;
    double dot = 0.0;
    for (std::size_t i = 0; i < a->size(); ++i) dot += (*a)[i] * (*b)[i];
    return std::clamp(dot, 0.0, 1.0);
}

// One cross-tree leaf pair with phi_w >= theta_w.
struct SimPair {
    int leaf_a = -1;  // node id in tree A
    int leaf_b = -1;  // node id in tree B
    double weight = 0.0;
};

// All cross-sentence leaf pairs whose lexical similarity clears theta_w.
// Every leaf occurrence participates independently; output ordered by the
// leaves' sentence positions.
inline std::vector<SimPair> find_sim_pairs(const ParseTree& tree_a, const ParseTree& tree_b,
                                           const EmbeddingTable& table, double theta_w) {
    std::vector<SimPair> out;
    for (int la : tree_a.leaves()) {
        const std::string& wa = tree_a.node(la).token->normalized;
        for (int lb : tree_b.leaves()) {
            const std::string& wb = tree_b.node(lb).token->normalized;
            double phi = lexical_similarity(table, wa, wb);
            if (phi >= theta_w) out.push_back({la, lb, phi});
        }
    }
    return out;
}

}  // namespace dscoh

#endif
