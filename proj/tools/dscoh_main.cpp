// dscoh: document semantic similarity via paired 2-word phrases and
// minimum cycle bases of syn-sim graphs.
//
// Subcommands: sim, matrix, cluster, eval, verify-lemmas, prune.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dscoh/cycles.hpp"
#include "dscoh/eval.hpp"
#include "dscoh/io.hpp"
#include "dscoh/lexsim.hpp"
#include "dscoh/similarity.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMalformed = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitLemmaFailure = 3;

struct LoadedRun {
    dscoh::RunConfig config;
    std::vector<dscoh::Document> corpus;
    dscoh::EmbeddingTable table;
};

LoadedRun load_run(const std::string& corpus_path, const std::string& config_path) {
    LoadedRun run;
    if (!config_path.empty()) {
        auto in = dscoh::open_or_throw(config_path);
        run.config = dscoh::load_run_config(in);
    }
    run.config.dscoh.prune = dscoh::load_prune_config(run.config);
    if (!run.config.embeddings_path.empty()) {
        auto in = dscoh::open_or_throw(run.config.embeddings_path);
        run.table = dscoh::load_embeddings(in);
    }
    if (!corpus_path.empty()) {
        auto in = dscoh::open_or_throw(corpus_path);
        run.corpus = dscoh::load_corpus(in);
    }
    return run;
}

const dscoh::Document* find_doc(const std::vector<dscoh::Document>& docs,
                                const std::string& id) {
    for (const auto& d : docs)
        if (d.id == id) return &d;
    return nullptr;
}

int cmd_sim(const std::string& corpus_path, const std::string& config_path,
            const std::string& id_a, const std::string& id_b, bool explain) {
    LoadedRun run = load_run(corpus_path, config_path);
    const dscoh::Document* a = find_doc(run.corpus, id_a);
    const dscoh::Document* b = find_doc(run.corpus, id_b);
    if (!a || !b) {
        std::cerr << "unknown document id: " << (a ? id_b : id_a) << "\n";
        return kExitMismatch;
    }
    auto [score, breakdown] =
        dscoh::document_similarity(*a, *b, run.table, run.config.dscoh);
    std::cout << dscoh::format_double(score) << "\n";
    if (explain) std::cout << dscoh::breakdown_to_json(breakdown).dump(2) << "\n";
    return kExitOk;
}

int cmd_matrix(const std::string& corpus_path, const std::string& config_path,
               const std::string& out_path) {
    LoadedRun run = load_run(corpus_path, config_path);
    dscoh::SimilarityMatrix m = dscoh::similarity_matrix(
        run.corpus, run.table, run.config.dscoh, run.config.normalize_matrix);
    if (out_path.empty()) {
        dscoh::write_matrix_tsv(std::cout, m);
    } else {
        std::ofstream out(out_path);
        if (!out) throw dscoh::MalformedFile("cannot write file: " + out_path);
        dscoh::write_matrix_tsv(out, m);
    }
    return kExitOk;
}

int cmd_cluster(const std::string& matrix_path, int k, const std::string& out_path,
                const std::string& truth_path, std::uint64_t seed, bool seed_given,
                const std::string& config_path) {
    std::uint64_t effective_seed = seed;
    if (!config_path.empty() && !seed_given) {
        auto in = dscoh::open_or_throw(config_path);
        effective_seed = dscoh::load_run_config(in).seed;
    }
    auto min = dscoh::open_or_throw(matrix_path);
    dscoh::SimilarityMatrix m = dscoh::load_matrix_tsv(min);
    std::vector<int> labels;
    try {
        labels = dscoh::spectral_cluster(m.values, k, effective_seed);
    } catch (const dscoh::KTooLarge& e) {
        std::cerr << e.what() << "\n";
        return kExitMismatch;
    }
    dscoh::Partition part;
    for (std::size_t i = 0; i < m.ids.size(); ++i) part.labels[m.ids[i]] = labels[i];
    if (out_path.empty()) {
        dscoh::write_partition_tsv(std::cout, part);
    } else {
        std::ofstream out(out_path);
        if (!out) throw dscoh::MalformedFile("cannot write file: " + out_path);
        dscoh::write_partition_tsv(out, part);
    }
    if (!truth_path.empty()) {
        auto tin = dscoh::open_or_throw(truth_path);
        dscoh::Partition truth = dscoh::load_partition_tsv(tin);
        try {
            std::cout << "ARI\t" << dscoh::format_double(dscoh::adjusted_rand_index(part, truth))
                      << "\n";
            std::cout << "NMI\t"
                      << dscoh::format_double(dscoh::normalized_mutual_info(part, truth)) << "\n";
            std::cout << "FMI\t" << dscoh::format_double(dscoh::fowlkes_mallows(part, truth))
                      << "\n";
        } catch (const dscoh::KeyMismatch& e) {
            std::cerr << e.what() << "\n";
            return kExitMismatch;
        }
    }
    return kExitOk;
}

int cmd_eval(const std::string& matrix_path, const std::string& pairs_path) {
    auto min = dscoh::open_or_throw(matrix_path);
    dscoh::SimilarityMatrix m = dscoh::load_matrix_tsv(min);
    auto pin = dscoh::open_or_throw(pairs_path);
    std::vector<dscoh::LabeledPair> pairs = dscoh::load_labeled_pairs(pin);

    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < m.ids.size(); ++i) index[m.ids[i]] = i;
    std::vector<double> ours, human;
    for (const auto& p : pairs) {
        auto ia = index.find(p.id_a);
        auto ib = index.find(p.id_b);
        if (ia == index.end() || ib == index.end()) {
            std::cerr << "pair references id missing from matrix: " << p.id_a << ", "
                      << p.id_b << "\n";
            return kExitMismatch;
        }
        ours.push_back(m.values[ia->second][ib->second]);
        human.push_back(p.human_score);
    }
    std::cout << "spearman\t" << dscoh::format_double(dscoh::spearman(ours, human)) << "\n";
    return kExitOk;
}

void print_lemma_report(std::ostream& out, int k, int h, const dscoh::LemmaReport& r) {
    out << "sentence_pair\t" << k << "\t" << h << "\tsim_edges=" << r.sim_edge_count
        << "\tL1=" << (r.l1_connected ? "pass" : "fail")
        << "\tL2=" << (r.l2_applicable ? (r.l2_all_anchors ? "pass" : "fail") : "vacuous")
        << "\tL3=" << (r.l2_applicable ? (r.l3_span_equality ? "pass" : "fail") : "vacuous")
        << "\n";
}

int cmd_verify_lemmas(const std::string& corpus_path, const std::string& config_path,
                      const std::string& id_a, const std::string& id_b, bool corrupt) {
    LoadedRun run = load_run(corpus_path, config_path);
    const dscoh::Document* a = find_doc(run.corpus, id_a);
    const dscoh::Document* b = find_doc(run.corpus, id_b);
    if (!a || !b) {
        std::cerr << "unknown document id: " << (a ? id_b : id_a) << "\n";
        return kExitMismatch;
    }
    bool all_ok = true;
    for (int k = 0; k < static_cast<int>(a->sentences.size()); ++k) {
        for (int h = 0; h < static_cast<int>(b->sentences.size()); ++h) {
            dscoh::ParseTree pa = dscoh::prune(a->sentences[static_cast<std::size_t>(k)],
                                               run.config.dscoh.prune);
            dscoh::ParseTree pb = dscoh::prune(b->sentences[static_cast<std::size_t>(h)],
                                               run.config.dscoh.prune);
            if (pa.empty() || pb.empty()) {
                std::cout << "sentence_pair\t" << k << "\t" << h << "\tempty_tree\tvacuous\n";
                continue;
            }
            auto pairs = dscoh::find_sim_pairs(pa, pb, run.table, run.config.dscoh.theta_w);
            dscoh::SynSimGraph g = dscoh::build_syn_sim_graph(pa, pb, pairs);
            if (corrupt && !g.edges.empty()) {
                // debug hook: break the syn-forest invariant to exercise exit 3
                g.edges.push_back({0, g.vertex_count() - 1, 1.0, dscoh::EdgeKind::syn});
            }
            if (g.sim_edge_count() == 0) {
                std::cout << "sentence_pair\t" << k << "\t" << h
                          << "\tsim_edges=0\tvacuous\n";
                continue;
            }
            dscoh::LemmaReport r = dscoh::verify_cohomology_lemmas(g);
            print_lemma_report(std::cout, k, h, r);
            if (!r.all_pass()) all_ok = false;
        }
    }
    return all_ok ? kExitOk : kExitLemmaFailure;
}

int cmd_prune(const std::string& corpus_path, const std::string& config_path,
              const std::vector<std::string>& ids) {
    LoadedRun run = load_run(corpus_path, config_path);
    for (const auto& d : run.corpus) {
        if (!ids.empty() && std::find(ids.begin(), ids.end(), d.id) == ids.end()) continue;
        for (std::size_t s = 0; s < d.sentences.size(); ++s) {
            dscoh::ParseTree p = dscoh::prune(d.sentences[s], run.config.dscoh.prune);
            std::cout << d.id << '\t' << s << '\t' << dscoh::serialize_bracketed(p) << "\n";
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"document semantic similarity via minimum cycle bases of syn-sim graphs"};
    app.require_subcommand(1);

    std::string corpus_path, config_path, out_path, truth_path, matrix_path;
    std::string id_a, id_b;
    std::vector<std::string> ids;
    bool explain = false;
    bool corrupt = false;
    int k = 2;
    std::uint64_t seed = 0;

    auto* sim = app.add_subcommand("sim", "similarity between two documents");
    sim->add_option("--corpus", corpus_path)->required();
    sim->add_option("--config", config_path);
    sim->add_option("id_a", id_a)->required();
    sim->add_option("id_b", id_b)->required();
    sim->add_flag("--explain", explain, "emit the cycle-level breakdown as JSON");

    auto* matrix = app.add_subcommand("matrix", "pairwise similarity matrix as TSV");
    matrix->add_option("--corpus", corpus_path)->required();
    matrix->add_option("--config", config_path);
    matrix->add_option("--out", out_path);

    auto* cluster = app.add_subcommand("cluster", "spectral clustering of a matrix TSV");
    cluster->add_option("--matrix", matrix_path)->required();
    cluster->add_option("--config", config_path);
    cluster->add_option("--k", k)->required();
    cluster->add_option("--out", out_path);
    cluster->add_option("--truth", truth_path, "truth partition TSV; prints ARI/NMI/FMI");
    auto* seed_opt = cluster->add_option("--seed", seed);

    auto* eval = app.add_subcommand("eval", "Spearman against human-labeled pairs");
    eval->add_option("--matrix", matrix_path)->required();
    eval->add_option("--truth", truth_path, "LabeledPairs TSV: id_a<TAB>id_b<TAB>score")
        ->required();

    auto* verify = app.add_subcommand("verify-lemmas", "cohomology diagnostics per sentence pair");
    verify->add_option("--corpus", corpus_path)->required();
    verify->add_option("--config", config_path);
    verify->add_option("id_a", id_a)->required();
    verify->add_option("id_b", id_b)->required();
    verify->add_flag("--corrupt", corrupt)->group("");  // hidden debug hook

    auto* prune_cmd = app.add_subcommand("prune", "print pruned trees");
    prune_cmd->add_option("--corpus", corpus_path)->required();
    prune_cmd->add_option("--config", config_path);
    prune_cmd->add_option("ids", ids);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_sim(corpus_path, config_path, id_a, id_b, explain);
        if (matrix->parsed()) return cmd_matrix(corpus_path, config_path, out_path);
        if (cluster->parsed())
            return cmd_cluster(matrix_path, k, out_path, truth_path, seed,
                               seed_opt->count() > 0, config_path);
        if (eval->parsed()) return cmd_eval(matrix_path, truth_path);
        if (verify->parsed())
            return cmd_verify_lemmas(corpus_path, config_path, id_a, id_b, corrupt);
        if (prune_cmd->parsed()) return cmd_prune(corpus_path, config_path, ids);
    } catch (const dscoh::DuplicateDocumentId& e) {
        std::cerr << e.what() << "\n";
        return kExitMismatch;
    } catch (const dscoh::Error& e) {
        std::cerr << e.what() << "\n";
        return kExitMalformed;
    }
    return kExitOk;
}
