#ifndef DSCOH_IO_HPP
#define DSCOH_IO_HPP

#include <cstdio>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dscoh/errors.hpp"
#include "dscoh/eval.hpp"
#include "dscoh/similarity.hpp"
#include "dscoh/treebank.hpp"

namespace dscoh {

struct MalformedFile : Error { using Error::Error; };

// Shortest round-trippable decimal rendering, stable across runs.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    for (int prec = 1; prec < 17; ++prec) {
        char shorter[64];
        std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
        std::sscanf(shorter, "%lf", &back);
        if (back == v) return shorter;
    }
    return buf;
}

// JSON-Lines corpus: {"id": ..., "trees": ["(S ...)", ...]} per line.
inline std::vector<Document> load_corpus(std::istream& in) {
    std::vector<Document> docs;
    std::set<std::string> seen;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw MalformedFile("corpus line " + std::to_string(line_no) + ": " + e.what());
        }
        if (!j.is_object() || !j.contains("id") || !j["id"].is_string() ||
            !j.contains("trees") || !j["trees"].is_array())
            throw MalformedFile("corpus line " + std::to_string(line_no) +
                                ": expected {\"id\", \"trees\"}");
        Document d;
        d.id = j["id"].get<std::string>();
        if (d.id.empty())
            throw MalformedFile("corpus line " + std::to_string(line_no) + ": empty id");
        if (!seen.insert(d.id).second)
            throw DuplicateDocumentId("corpus line " + std::to_string(line_no) +
                                      ": duplicate id '" + d.id + "'");
        for (const auto& t : j["trees"]) {
            if (!t.is_string())
                throw MalformedFile("corpus line " + std::to_string(line_no) +
                                    ": tree is not a string");
            try {
                d.sentences.push_back(parse_bracketed(t.get<std::string>()));
            } catch (const Error& e) {
                throw MalformedFile("corpus line " + std::to_string(line_no) + ": " + e.what());
            }
        }
        docs.push_back(std::move(d));
    }
    return docs;
}

// One normalized token per line; blank lines ignored.
inline std::set<std::string> load_word_list(std::istream& in) {
    std::set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n' ||
                                 line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        if (!line.empty()) out.insert(detail::to_lower(line));
    }
    return out;
}

struct RunConfig {
    DscohConfig dscoh;
    std::string stopwords_path;
    std::string entities_path;
    std::string pos_whitelist_path;
    std::string embeddings_path;
    bool normalize_matrix = false;
    std::uint64_t seed = 0;
};

inline RunConfig load_run_config(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw MalformedFile(std::string("config: ") + e.what());
    }
    RunConfig cfg;
    if (j.contains("theta_w")) cfg.dscoh.theta_w = j["theta_w"].get<double>();
    if (j.contains("theta_c1")) cfg.dscoh.theta_c1 = j["theta_c1"].get<double>();
    if (j.contains("theta_c2")) cfg.dscoh.theta_c2 = j["theta_c2"].get<double>();
    if (j.contains("stopwords_path")) cfg.stopwords_path = j["stopwords_path"].get<std::string>();
    if (j.contains("entities_path")) cfg.entities_path = j["entities_path"].get<std::string>();
    if (j.contains("pos_whitelist_path"))
        cfg.pos_whitelist_path = j["pos_whitelist_path"].get<std::string>();
    if (j.contains("embeddings_path")) cfg.embeddings_path = j["embeddings_path"].get<std::string>();
    if (j.contains("normalize_matrix")) cfg.normalize_matrix = j["normalize_matrix"].get<bool>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (cfg.dscoh.theta_w <= 0.0 || cfg.dscoh.theta_w > 1.0)
        throw MalformedFile("config: theta_w must be in (0, 1]");
    return cfg;
}

// Matrix TSV: header row/column of document ids.
inline void write_matrix_tsv(std::ostream& out, const SimilarityMatrix& m) {
    out << "id";
    for (const auto& id : m.ids) out << '\t' << id;
    out << '\n';
    for (std::size_t i = 0; i < m.ids.size(); ++i) {
        out << m.ids[i];
        for (std::size_t j = 0; j < m.ids.size(); ++j)
            out << '\t' << format_double(m.values[i][j]);
        out << '\n';
    }
}

inline SimilarityMatrix load_matrix_tsv(std::istream& in) {
    SimilarityMatrix m;
    std::string line;
    if (!std::getline(in, line)) throw MalformedFile("matrix: empty file");
    {
        std::istringstream header(line);
        std::string field;
        if (!std::getline(header, field, '\t') || field != "id")
            throw MalformedFile("matrix: header must start with 'id'");
        while (std::getline(header, field, '\t')) m.ids.push_back(field);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        if (!std::getline(row, field, '\t')) throw MalformedFile("matrix: bad row");
        std::vector<double> values;
        while (std::getline(row, field, '\t')) {
            try {
                values.push_back(std::stod(field));
            } catch (const std::exception&) {
                throw MalformedFile("matrix: non-numeric entry '" + field + "'");
            }
        }
        if (values.size() != m.ids.size())
            throw MalformedFile("matrix: row width does not match header");
        m.values.push_back(std::move(values));
    }
    if (m.values.size() != m.ids.size())
        throw MalformedFile("matrix: row count does not match header");
    return m;
}

struct LabeledPair {
    std::string id_a;
    std::string id_b;
    double human_score = 0.0;
};

// TSV: id_a <TAB> id_b <TAB> score.
inline std::vector<LabeledPair> load_labeled_pairs(std::istream& in) {
    std::vector<LabeledPair> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::istringstream row(line);
        LabeledPair p;
        std::string score;
        if (!std::getline(row, p.id_a, '\t') || !std::getline(row, p.id_b, '\t') ||
            !std::getline(row, score, '\t'))
            throw MalformedFile("pairs line " + std::to_string(line_no) +
                                ": expected id_a<TAB>id_b<TAB>score");
        try {
            p.human_score = std::stod(score);
        } catch (const std::exception&) {
            throw MalformedFile("pairs line " + std::to_string(line_no) +
                                ": non-numeric score '" + score + "'");
        }
        out.push_back(std::move(p));
    }
    return out;
}

// TSV: id <TAB> cluster.
inline Partition load_partition_tsv(std::istream& in) {
    Partition p;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::istringstream row(line);
        std::string id, cluster;
        if (!std::getline(row, id, '\t') || !std::getline(row, cluster, '\t'))
            throw MalformedFile("partition line " + std::to_string(line_no) +
                                ": expected id<TAB>cluster");
        try {
            p.labels[id] = std::stoi(cluster);
        } catch (const std::exception&) {
            throw MalformedFile("partition line " + std::to_string(line_no) +
                                ": non-integer cluster '" + cluster + "'");
        }
    }
    return p;
}

inline void write_partition_tsv(std::ostream& out, const Partition& p) {
    for (const auto& [id, cluster] : p.labels) out << id << '\t' << cluster << '\n';
}

inline nlohmann::json breakdown_to_json(const PairBreakdown& b) {
    nlohmann::json out;
    out["total"] = b.total;
    out["sentence_pairs"] = nlohmann::json::array();
    for (const auto& rec : b.pairs) {
        nlohmann::json r;
        r["k"] = rec.k;
        r["h"] = rec.h;
        r["sim_edges"] = rec.sim_edge_count;
        r["basis_size"] = rec.basis_size;
        r["sentence_weight"] = rec.sentence_weight;
        r["score"] = rec.score;
        r["cycles"] = nlohmann::json::array();
        for (const auto& c : rec.cycles) {
            nlohmann::json cj;
            cj["gp_a"] = {c.words_a.first, c.words_a.second};
            cj["gp_b"] = {c.words_b.first, c.words_b.second};
            cj["path_a"] = c.path_a;
            cj["path_b"] = c.path_b;
            cj["sim_weights"] = {c.sim_weight_a, c.sim_weight_b};
            cj["significance"] = c.significance;
            cj["phi_c"] = c.phi_c;
            r["cycles"].push_back(std::move(cj));
        }
        out["sentence_pairs"].push_back(std::move(r));
    }
    return out;
}

inline std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedFile("cannot open file: " + path);
    return in;
}

inline PruneConfig load_prune_config(const RunConfig& cfg) {
    PruneConfig p;
    if (!cfg.stopwords_path.empty()) {
        auto in = open_or_throw(cfg.stopwords_path);
        p.stopwords = load_word_list(in);
    }
    if (!cfg.entities_path.empty()) {
        auto in = open_or_throw(cfg.entities_path);
        p.entities = load_word_list(in);
    }
    if (!cfg.pos_whitelist_path.empty()) {
        auto in = open_or_throw(cfg.pos_whitelist_path);
        p.pos_whitelist = load_word_list(in);
    }
    return p;
}

}  // namespace dscoh

#endif
