#ifndef DSCOH_TREEBANK_HPP
#define DSCOH_TREEBANK_HPP

#include <algorithm>
#include <cctype>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "dscoh/errors.hpp"

namespace dscoh {

struct Token {
    std::string surface;
    std::string normalized;  // lowercased surface
    int leaf_index = 0;      // position in the original sentence
};

struct TreeNode {
    std::string label;                 // constituent label; empty for leaves
    std::vector<int> children;         // ordered child node ids
    std::optional<Token> token;        // present iff leaf
};

// Rooted ordered labeled tree.  The empty tree is a first-class value
// (no nodes, root() == -1); Algorithm-style pruning returns it freely.
class ParseTree {
public:
    ParseTree() = default;

    bool empty() const { return root_ < 0; }
    int root() const { return root_; }
    std::size_t size() const { return nodes_.size(); }
    const TreeNode& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
    bool contains(int id) const { return id >= 0 && static_cast<std::size_t>(id) < nodes_.size(); }
    bool is_leaf(int id) const { return contains(id) && nodes_[static_cast<std::size_t>(id)].token.has_value(); }

    // Leaf node ids in sentence order.
    std::vector<int> leaves() const {
        std::vector<int> out;
        if (empty()) return out;
        collect_leaves(root_, out);
        return out;
    }
    std::size_t leaf_count() const { return leaves().size(); }

    int add_leaf(const Token& tok) {
        TreeNode n;
        n.token = tok;
        nodes_.push_back(std::move(n));
        return static_cast<int>(nodes_.size()) - 1;
    }
    int add_internal(const std::string& label, std::vector<int> children) {
        TreeNode n;
        n.label = label;
        n.children = std::move(children);
        nodes_.push_back(std::move(n));
        return static_cast<int>(nodes_.size()) - 1;
    }
    void set_root(int id) { root_ = id; }

private:
    void collect_leaves(int id, std::vector<int>& out) const {
        const TreeNode& n = nodes_[static_cast<std::size_t>(id)];
        if (n.token) {
            out.push_back(id);
            return;
        }
        for (int c : n.children) collect_leaves(c, out);
    }

    std::vector<TreeNode> nodes_;
    int root_ = -1;
};

struct PruneConfig {
    std::set<std::string> stopwords;      // normalized
    std::set<std::string> entities;       // normalized, removal-exempt whitelist
    std::set<std::string> pos_whitelist;  // empty means "accept all labels"
};

namespace detail {

inline std::string to_lower(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

inline bool is_punctuation_token(const std::string& s) {
    if (s.empty()) return true;
    for (unsigned char c : s)
        if (std::isalnum(c)) return false;
    return true;
}

struct BracketLexer {
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return text[pos];
    }
    std::string atom() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
               text[pos] != '(' && text[pos] != ')')
            ++pos;
        return text.substr(start, pos - start);
    }
};

inline int parse_node(BracketLexer& lex, ParseTree& tree, int& next_leaf_index) {
    if (lex.done() || lex.peek() != '(')
        throw UnbalancedBrackets("expected '('");
    ++lex.pos;  // consume '('
    if (lex.done()) throw UnbalancedBrackets("unterminated node");
    std::string label = lex.atom();
    if (label.empty()) throw UnbalancedBrackets("node without label");

    std::vector<int> children;
    bool saw_token_child = false;
    while (true) {
        if (lex.done()) throw UnbalancedBrackets("missing ')'");
        char c = lex.peek();
        if (c == ')') {
            ++lex.pos;
            break;
        }
        if (c == '(') {
            if (saw_token_child)
                throw LeafWithChildren("token followed by '(' under label " + label);
            children.push_back(parse_node(lex, tree, next_leaf_index));
        } else {
            std::string tok = lex.atom();
            Token t;
            t.surface = tok;
            t.normalized = to_lower(tok);
            t.leaf_index = next_leaf_index++;
            children.push_back(tree.add_leaf(t));
            saw_token_child = true;
        }
    }
    if (children.empty()) throw UnbalancedBrackets("node '" + label + "' has no children");
    return tree.add_internal(label, std::move(children));
}

}  // namespace detail

// Parses one Penn-bracketed s-expression: (LABEL child child ...), leaf = bare token.
inline ParseTree parse_bracketed(const std::string& text) {
    detail::BracketLexer lex{text};
    if (lex.done()) throw EmptyInput("empty input");
    ParseTree tree;
    int next_leaf_index = 0;
    int root = detail::parse_node(lex, tree, next_leaf_index);
    if (!lex.done()) throw UnbalancedBrackets("trailing content after root node");
    tree.set_root(root);
    return tree;
}

namespace detail {

inline void serialize_node(const ParseTree& t, int id, std::string& out) {
    const TreeNode& n = t.node(id);
    if (n.token) {
        out += n.token->surface;
        return;
    }
    out += '(';
    out += n.label;
    for (int c : n.children) {
        out += ' ';
        serialize_node(t, c, out);
    }
    out += ')';
}

}  // namespace detail

// Empty tree serializes to "".  A bare-leaf tree serializes to its token.
inline std::string serialize_bracketed(const ParseTree& tree) {
    if (tree.empty()) return "";
    std::string out;
    detail::serialize_node(tree, tree.root(), out);
    return out;
}

namespace detail {

// Copies the subtree rooted at src_id into dst, returning the new root id (or -1
// when pruned away).  Implements the tree-pruning recursion: single-leaf filter,
// label filter, unary-chain collapse, recursive multi-child prune.
inline int prune_rec(const ParseTree& src, int src_id, const PruneConfig& cfg, ParseTree& dst) {
    const TreeNode& n = src.node(src_id);
    if (n.token) {
        const Token& t = *n.token;
        bool keep = cfg.entities.count(t.normalized) > 0 ||
                    (cfg.stopwords.count(t.normalized) == 0 && !is_punctuation_token(t.normalized));
        return keep ? dst.add_leaf(t) : -1;
    }
    if (!cfg.pos_whitelist.empty() && cfg.pos_whitelist.count(to_lower(n.label)) == 0)
        return -1;
    if (n.children.size() == 1) return prune_rec(src, n.children[0], cfg, dst);

    std::vector<int> kept;
    for (int c : n.children) {
        int pc = prune_rec(src, c, cfg, dst);
        if (pc >= 0) kept.push_back(pc);
    }
    if (kept.empty()) return -1;
    if (kept.size() == 1) return kept[0];
    return dst.add_internal(n.label, std::move(kept));
}

}  // namespace detail

inline ParseTree prune(const ParseTree& tree, const PruneConfig& cfg) {
    ParseTree out;
    if (tree.empty()) return out;
    int root = detail::prune_rec(tree, tree.root(), cfg, out);
    if (root >= 0) out.set_root(root);
    return out;
}

// Number of edges on the unique tree path between two leaves; 1 when
// leaf_a == leaf_b (a single word expanded into a 2-word pair).
inline int leaf_path_length(const ParseTree& tree, int leaf_a, int leaf_b) {
    if (!tree.contains(leaf_a) || !tree.contains(leaf_b))
        throw NotInTree("node id out of range");
    if (!tree.is_leaf(leaf_a) || !tree.is_leaf(leaf_b))
        throw NotALeaf("path endpoints must be leaves");
    if (leaf_a == leaf_b) return 1;

    std::vector<std::vector<int>> adj(tree.size());
    for (std::size_t id = 0; id < tree.size(); ++id) {
        for (int c : tree.node(static_cast<int>(id)).children) {
            adj[id].push_back(c);
            adj[static_cast<std::size_t>(c)].push_back(static_cast<int>(id));
        }
    }
    std::vector<int> dist(tree.size(), -1);
    std::queue<int> q;
    dist[static_cast<std::size_t>(leaf_a)] = 0;
    q.push(leaf_a);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        if (u == leaf_b) return dist[static_cast<std::size_t>(u)];
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                q.push(v);
            }
        }
    }
    throw NotInTree("leaves are not connected");
}

// Structural equality on shape, labels, and token surfaces.
inline bool structurally_equal(const ParseTree& a, const ParseTree& b) {
    if (a.empty() || b.empty()) return a.empty() == b.empty();
    struct Cmp {
        const ParseTree& a;
        const ParseTree& b;
        bool eq(int x, int y) const {
            const TreeNode& na = a.node(x);
            const TreeNode& nb = b.node(y);
            if (na.token.has_value() != nb.token.has_value()) return false;
            if (na.token) return na.token->surface == nb.token->surface;
            if (na.label != nb.label || na.children.size() != nb.children.size()) return false;
            for (std::size_t i = 0; i < na.children.size(); ++i)
                if (!eq(na.children[i], nb.children[i])) return false;
            return true;
        }
    };
    return Cmp{a, b}.eq(a.root(), b.root());
}

}  // namespace dscoh

#endif
