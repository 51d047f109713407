#include <doctest.h>

#include <queue>
#include <random>

#include "dscoh/treebank.hpp"
#include "helpers.hpp"

using namespace dscoh;

TEST_CASE("parse_bracketed basic structure") {
    ParseTree t = parse_bracketed("(S (NP (DT the) (NN cat)) (VP (VBD sat)))");
    REQUIRE(!t.empty());
    CHECK(t.node(t.root()).label == "S");
    auto leaves = t.leaves();
    REQUIRE(leaves.size() == 3);
    CHECK(t.node(leaves[0]).token->surface == "the");
    CHECK(t.node(leaves[1]).token->surface == "cat");
    CHECK(t.node(leaves[2]).token->surface == "sat");
    CHECK(t.node(leaves[2]).token->leaf_index == 2);
}

TEST_CASE("parse_bracketed minimal tree") {
    ParseTree t = parse_bracketed("(X a)");
    CHECK(t.node(t.root()).label == "X");
    REQUIRE(t.leaves().size() == 1);
    CHECK(t.node(t.leaves()[0]).token->surface == "a");
}

TEST_CASE("parse_bracketed normalizes case") {
    ParseTree t = parse_bracketed("(X Cat)");
    CHECK(t.node(t.leaves()[0]).token->surface == "Cat");
    CHECK(t.node(t.leaves()[0]).token->normalized == "cat");
}

TEST_CASE("parse_bracketed errors") {
    CHECK_THROWS_AS(parse_bracketed("(S (NP"), UnbalancedBrackets);
    CHECK_THROWS_AS(parse_bracketed(""), EmptyInput);
    CHECK_THROWS_AS(parse_bracketed("   \t "), EmptyInput);
    CHECK_THROWS_AS(parse_bracketed("(X a (Y b))"), LeafWithChildren);
    CHECK_THROWS_AS(parse_bracketed("(X a) trailing"), UnbalancedBrackets);
    CHECK_THROWS_AS(parse_bracketed("(X)"), UnbalancedBrackets);
}

TEST_CASE("serialize_bracketed round trips") {
    CHECK(serialize_bracketed(parse_bracketed("(X a)")) == "(X a)");
    CHECK(serialize_bracketed(ParseTree{}) == "");
    std::string s = "(S (NP (DT the) (NN cat)) (VP (VBD sat)))";
    CHECK(serialize_bracketed(parse_bracketed(s)) == s);
}

TEST_CASE("round-trip property on random trees") {
    std::mt19937 rng(7);
    for (int i = 0; i < 100; ++i) {
        ParseTree t = dscoh_test::random_tree(rng, 1 + static_cast<int>(rng() % 9));
        ParseTree back = parse_bracketed(serialize_bracketed(t));
        CHECK(structurally_equal(t, back));
    }
}

TEST_CASE("prune removes single stopword leaf") {
    PruneConfig cfg;
    cfg.stopwords = {"the"};
    CHECK(prune(parse_bracketed("(DT the)"), cfg).empty());
}

TEST_CASE("prune collapses unary chains") {
    PruneConfig cfg;
    ParseTree p = prune(parse_bracketed("(S (VP (VBD eat)))"), cfg);
    REQUIRE(!p.empty());
    CHECK(p.size() == 1);
    CHECK(p.node(p.root()).token->surface == "eat");
}

TEST_CASE("prune drops stopwords and punctuation") {
    PruneConfig cfg;
    cfg.stopwords = {"the"};
    ParseTree p = prune(parse_bracketed("(S (NP (DT the) (NN pizza)) (. .))"), cfg);
    REQUIRE(!p.empty());
    auto leaves = p.leaves();
    REQUIRE(leaves.size() == 1);
    CHECK(p.node(leaves[0]).token->surface == "pizza");
}

TEST_CASE("entity whitelist overrides stopword removal") {
    PruneConfig cfg;
    cfg.stopwords = {"apple"};
    cfg.entities = {"apple"};
    ParseTree p = prune(parse_bracketed("(NP (NNP Apple))"), cfg);
    REQUIRE(!p.empty());
    CHECK(p.node(p.root()).token->surface == "Apple");
}

TEST_CASE("pos whitelist filters internal labels; empty accepts all") {
    PruneConfig cfg;
    cfg.pos_whitelist = {"s", "np", "nn"};
    ParseTree p = prune(parse_bracketed("(S (NP (NN cat)) (VP (VBD sat)))"), cfg);
    REQUIRE(!p.empty());
    REQUIRE(p.leaves().size() == 1);
    CHECK(p.node(p.leaves()[0]).token->surface == "cat");

    PruneConfig open;
    CHECK(prune(parse_bracketed("(S (NP (NN cat)) (VP (VBD sat)))"), open).leaves().size() == 2);
}

TEST_CASE("prune is idempotent and leaf-preserving on random trees") {
    std::mt19937 rng(11);
    PruneConfig cfg;
    cfg.stopwords = {"cat", "red", "blue", "book"};
    for (int i = 0; i < 100; ++i) {
        ParseTree t = dscoh_test::random_tree(rng, 2 + static_cast<int>(rng() % 8));
        ParseTree once = prune(t, cfg);
        ParseTree twice = prune(once, cfg);
        CHECK(structurally_equal(once, twice));

        // every pruned leaf is an original leaf surface, and never a stopword
        std::set<std::string> originals;
        for (int l : t.leaves()) originals.insert(t.node(l).token->surface);
        for (int l : once.leaves()) {
            const Token& tok = *once.node(l).token;
            CHECK(originals.count(tok.surface) == 1);
            CHECK(cfg.stopwords.count(tok.normalized) == 0);
            CHECK(!detail::is_punctuation_token(tok.normalized));
        }
        if (!once.empty()) {
            for (int id = 0; id < static_cast<int>(once.size()); ++id)
                if (!once.is_leaf(id)) CHECK(once.node(id).children.size() >= 2);
        }
    }
}

namespace {

// Independent BFS oracle over a map-based adjacency, for cross-checking
// leaf_path_length.
int bfs_path_length(const ParseTree& t, int a, int b) {
    if (a == b) return 1;
    std::map<int, std::vector<int>> adj;
    for (int id = 0; id < static_cast<int>(t.size()); ++id)
        for (int c : t.node(id).children) {
            adj[id].push_back(c);
            adj[c].push_back(id);
        }
    std::map<int, int> dist{{a, 0}};
    std::queue<int> q;
    q.push(a);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v : adj[u])
            if (!dist.count(v)) {
                dist[v] = dist[u] + 1;
                q.push(v);
            }
    }
    return dist.at(b);
}

}  // namespace

TEST_CASE("leaf_path_length basics") {
    ParseTree siblings = parse_bracketed("(NP the cat)");
    auto sib = siblings.leaves();
    CHECK(leaf_path_length(siblings, sib[0], sib[1]) == 2);  // shared parent

    ParseTree t = parse_bracketed("(S (NP (DT the) (NN cat)) (VP (VBD sat)))");
    auto leaves = t.leaves();
    CHECK(leaf_path_length(t, leaves[0], leaves[1]) == 4);  // up DT, NP, down NN
    CHECK(leaf_path_length(t, leaves[0], leaves[0]) == 1);  // single-word expansion
    CHECK(leaf_path_length(t, leaves[0], leaves[2]) == leaf_path_length(t, leaves[2], leaves[0]));
    CHECK_THROWS_AS(leaf_path_length(t, t.root(), leaves[0]), NotALeaf);
    CHECK_THROWS_AS(leaf_path_length(t, 999, leaves[0]), NotInTree);
}

TEST_CASE("leaf_path_length on a pruned sentence matches a BFS oracle") {
    ParseTree raw = parse_bracketed(
        "(S (NP (PRP we)) (VP (VBP eat) (NP (NN pizza)) (SBAR (WHADVP (WRB when)) "
        "(S (NP (PRP we)) (VP (VBP watch) (NP (DT a) (NN movie)))))))");
    PruneConfig cfg;
    cfg.stopwords = {"we", "when", "a"};
    ParseTree p = prune(raw, cfg);
    REQUIRE(!p.empty());

    int eat = -1, movie = -1;
    for (int l : p.leaves()) {
        if (p.node(l).token->surface == "eat") eat = l;
        if (p.node(l).token->surface == "movie") movie = l;
    }
    REQUIRE(eat >= 0);
    REQUIRE(movie >= 0);
    CHECK(leaf_path_length(p, eat, movie) == bfs_path_length(p, eat, movie));

    std::mt19937 rng(3);
    for (int i = 0; i < 50; ++i) {
        ParseTree t = dscoh_test::random_tree(rng, 2 + static_cast<int>(rng() % 6));
        auto leaves = t.leaves();
        int a = leaves[rng() % leaves.size()];
        int b = leaves[rng() % leaves.size()];
        int got = leaf_path_length(t, a, b);
        CHECK(got == (a == b ? 1 : bfs_path_length(t, a, b)));
        if (a != b) CHECK(got >= 2);
    }
}
