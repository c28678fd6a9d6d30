/* tree.hpp -- derivation trees: construction, validation, traversal
 *
 * This file is part of libcfg, a small toolkit for context-free grammars.
 *
 * A derivation tree node is labeled with a grammar symbol, or with the
 * epsilon marker (an empty label). The tree for an epsilon production
 * A -> eps has the epsilon node as the only child of A; epsilon never
 * appears anywhere else in a well-formed tree. Trees may be partial:
 * leaves labeled with variables are derivations still in progress.
 */

#ifndef CFG_TREE_HPP
#define CFG_TREE_HPP

#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfg/grammar.hpp"

namespace cfg {

struct DerivationTree {
    std::optional<Symbol> label; // empty optional is the epsilon marker
    std::vector<DerivationTree> children;

    bool operator==(const DerivationTree&) const = default;

    bool is_epsilon() const { return !label.has_value(); }
    bool is_leaf() const { return children.empty(); }
};

inline DerivationTree leaf(Symbol s) { return DerivationTree{std::move(s), {}}; }
inline DerivationTree epsilon_leaf() { return DerivationTree{std::nullopt, {}}; }

/// Path from the root: each entry selects a child by index.
using TreePath = std::vector<std::size_t>;

/// Node addressed by a path, or nullptr when the path leaves the tree.
inline const DerivationTree* node_at(const DerivationTree& t, const TreePath& path) {
    const DerivationTree* node = &t;
    for (std::size_t i : path) {
        if (i >= node->children.size()) return nullptr;
        node = &node->children[i];
    }
    return node;
}

inline DerivationTree* node_at(DerivationTree& t, const TreePath& path) {
    return const_cast<DerivationTree*>(node_at(std::as_const(t), path));
}

namespace detail {

inline bool subtree_conforms(const DerivationTree& t, const Grammar& g) {
    if (t.is_leaf()) {
        if (t.is_epsilon()) return true; // placement is checked by the parent
        return g.variables.count(*t.label) || g.terminals.count(*t.label);
    }

    if (t.is_epsilon() || !is_variable(*t.label) || !g.variables.count(*t.label))
        return false;

    std::vector<Symbol> body;
    if (t.children.size() == 1 && t.children.front().is_epsilon()) {
        // epsilon production: the epsilon node must itself be a leaf
        if (!t.children.front().is_leaf()) return false;
    } else {
        for (const DerivationTree& child : t.children) {
            if (child.is_epsilon()) return false; // epsilon only as an only child
            body.push_back(*child.label);
        }
    }

    Production p{*t.label, std::move(body)};
    if (std::find(g.productions.begin(), g.productions.end(), p) == g.productions.end())
        return false;

    for (const DerivationTree& child : t.children) {
        if (!subtree_conforms(child, g)) return false;
    }
    return true;
}

} // namespace detail

/// True when every internal node of t applies a production of g and
/// epsilon nodes appear only as the sole child of an epsilon rule's head.
/// The root may be any symbol; use check_tree for full derivation trees.
inline bool subtree_valid(const DerivationTree& t, const Grammar& g) {
    return detail::subtree_conforms(t, g);
}

/// True when t is a derivation tree of g: structurally valid and rooted
/// at the axiom.
inline bool check_tree(const DerivationTree& t, const Grammar& g) {
    return !t.is_epsilon() && *t.label == g.axiom && subtree_valid(t, g);
}

/// Thrown by yield_of on a partial tree; carries the offending leaves.
class PartialTreeError : public std::runtime_error {
public:
    explicit PartialTreeError(std::vector<Symbol> leaves)
        : std::runtime_error(build_message(leaves)), variable_leaves_(std::move(leaves)) {}

    const std::vector<Symbol>& variable_leaves() const { return variable_leaves_; }

private:
    static std::string build_message(const std::vector<Symbol>& leaves) {
        std::string msg = "tree is partial; variable leaves:";
        for (const Symbol& s : leaves) msg += " " + s.name;
        return msg;
    }

    std::vector<Symbol> variable_leaves_;
};

namespace detail {

inline void collect_yield(const DerivationTree& t, Word& out, std::vector<Symbol>& pending) {
    if (t.is_leaf()) {
        if (t.is_epsilon()) return;
        if (is_variable(*t.label)) {
            pending.push_back(*t.label);
        } else {
            out.push_back(*t.label);
        }
        return;
    }
    for (const DerivationTree& child : t.children) collect_yield(child, out, pending);
}

} // namespace detail

/// The terminal word spelled by the leaves, left to right. Throws
/// PartialTreeError when some leaf is still a variable.
inline Word yield_of(const DerivationTree& t) {
    Word out;
    std::vector<Symbol> pending;
    detail::collect_yield(t, out, pending);
    if (!pending.empty()) throw PartialTreeError(std::move(pending));
    return out;
}

/// One derivation step: apply production `production` (an index into the
/// grammar's production list) at the leaf addressed by `path`.
struct DerivationStep {
    TreePath path;
    std::size_t production;
};

/// Replays a derivation from the axiom, growing the tree step by step.
/// Throws std::invalid_argument when a step addresses a missing node, a
/// non-leaf, a terminal leaf, or a production whose head is not the leaf's
/// label.
inline DerivationTree tree_from_derivation(const Grammar& g,
                                           const std::vector<DerivationStep>& steps) {
    DerivationTree root = leaf(g.axiom);
    for (std::size_t n = 0; n < steps.size(); ++n) {
        const DerivationStep& step = steps[n];
        std::string where = "step " + std::to_string(n) + ": ";

        DerivationTree* node = node_at(root, step.path);
        if (!node) throw std::invalid_argument(where + "path leaves the tree");
        if (!node->is_leaf()) throw std::invalid_argument(where + "node already expanded");
        if (node->is_epsilon() || !is_variable(*node->label))
            throw std::invalid_argument(where + "node is not a variable leaf");
        if (step.production >= g.productions.size())
            throw std::invalid_argument(where + "production index out of range");

        const Production& p = g.productions[step.production];
        if (p.head != *node->label)
            throw std::invalid_argument(where + "production head '" + p.head.name +
                                        "' does not match leaf '" + node->label->name + "'");

        if (p.body.empty()) {
            node->children.push_back(epsilon_leaf());
        } else {
            for (const Symbol& s : p.body) node->children.push_back(leaf(s));
        }
    }
    return root;
}

/// Length in edges of a longest root-to-leaf path; a lone node has
/// length 0.
inline std::size_t longest_path_length(const DerivationTree& t) {
    std::size_t best = 0;
    for (const DerivationTree& child : t.children)
        best = std::max(best, 1 + longest_path_length(child));
    return best;
}

/// Path (as child indices) to the first variable leaf in left-to-right
/// order, or an empty optional when the tree is complete.
inline std::optional<TreePath> leftmost_variable_leaf(const DerivationTree& t) {
    if (t.is_leaf()) {
        if (!t.is_epsilon() && is_variable(*t.label)) return TreePath{};
        return std::nullopt;
    }
    for (std::size_t i = 0; i < t.children.size(); ++i) {
        if (auto sub = leftmost_variable_leaf(t.children[i])) {
            sub->insert(sub->begin(), i);
            return sub;
        }
    }
    return std::nullopt;
}

/// The sequence of sentential forms of the leftmost derivation the tree
/// encodes, starting from the root symbol and ending at the yield (or at
/// the frontier, for a partial tree).
inline std::vector<std::vector<Symbol>> leftmost_derivation(const DerivationTree& t) {
    // The frontier holds the unexpanded fringe; each round expands the
    // leftmost node that has children.
    std::vector<const DerivationTree*> frontier{&t};

    auto form_of = [](const std::vector<const DerivationTree*>& nodes) {
        std::vector<Symbol> form;
        for (const DerivationTree* n : nodes) {
            if (!n->is_epsilon()) form.push_back(*n->label);
        }
        return form;
    };

    std::vector<std::vector<Symbol>> forms{form_of(frontier)};
    while (true) {
        std::size_t i = 0;
        while (i < frontier.size() && frontier[i]->is_leaf()) ++i;
        if (i == frontier.size()) break;

        const DerivationTree* node = frontier[i];
        frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(i));
        for (std::size_t c = node->children.size(); c > 0; --c)
            frontier.insert(frontier.begin() + static_cast<std::ptrdiff_t>(i),
                            &node->children[c - 1]);
        forms.push_back(form_of(frontier));
    }
    return forms;
}

/// Renders the tree one node per line, children indented two spaces under
/// their parent; epsilon nodes print as `<eps>`.
inline std::string render_tree(const DerivationTree& t) {
    std::ostringstream out;
    auto walk = [&](auto&& self, const DerivationTree& node, std::size_t depth) -> void {
        for (std::size_t i = 0; i < depth; ++i) out << "  ";
        out << (node.is_epsilon() ? "<eps>" : node.label->name) << '\n';
        for (const DerivationTree& child : node.children) self(self, child, depth + 1);
    };
    walk(walk, t, 0);
    return out.str();
}

} // namespace cfg

#endif // CFG_TREE_HPP
