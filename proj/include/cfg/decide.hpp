/* decide.hpp -- membership, emptiness, finiteness, bounded enumeration
 *
 * This file is part of libcfg, a small toolkit for context-free grammars.
 *
 * Two kinds of procedures live here. member / is_empty / is_finite are
 * the efficient decision procedures (CYK and fixpoint computations). The
 * oracle_* functions decide the same questions by bounded search with the
 * textbook bounds: emptiness by looking for a word of length at most 2^N
 * and finiteness by looking for a word of length in (2^N, 2^(2N)], where
 * N is the number of variables of the Chomsky normal form. The oracles
 * exist to be slow and obviously correct; they refuse to run (cap-exceeded
 * error) when the implied derivation-length bound, 2^(N+1)-1 respectively
 * 2^(2(N+1))-1, exceeds their step cap.
 */

#ifndef CFG_DECIDE_HPP
#define CFG_DECIDE_HPP

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfg/grammar.hpp"
#include "cfg/transform.hpp"
#include "cfg/tree.hpp"

namespace cfg {

/// Thrown when a bounded procedure would need to exceed its cap. The
/// caps exist to keep the oracles and the enumerator at desk scale; raise
/// them explicitly when a larger instance is intended.
class CapExceededError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultEnumerationCap = 12;
inline constexpr std::size_t kDefaultStepCap = 4096;

/// All words of length at most max_len that the grammar generates,
/// computed by a fixpoint over (variable, length)-indexed word sets. This
/// walks the grammar directly, with no normal form involved, which makes
/// it a useful independent check against everything built on conversion.
/// Throws CapExceededError when max_len exceeds the cap.
inline std::set<Word> enumerate_words(const Grammar& g, std::size_t max_len,
                                      std::size_t cap = kDefaultEnumerationCap) {
    if (max_len > cap)
        throw CapExceededError("enumeration up to length " + std::to_string(max_len) +
                               " exceeds the cap of " + std::to_string(cap));

    std::map<Symbol, std::vector<std::set<Word>>> table;
    for (const Symbol& v : g.variables) table[v].assign(max_len + 1, {});

    bool changed = true;
    while (changed) {
        changed = false;
        for (const Production& p : g.productions) {
            auto& rows = table[p.head];
            Word acc;
            auto build = [&](auto&& self, std::size_t pos) -> void {
                if (pos == p.body.size()) {
                    if (rows[acc.size()].insert(acc).second) changed = true;
                    return;
                }
                const Symbol& s = p.body[pos];
                if (is_terminal(s)) {
                    if (acc.size() + 1 > max_len) return;
                    acc.push_back(s);
                    self(self, pos + 1);
                    acc.pop_back();
                } else {
                    const auto& src = table.at(s);
                    for (std::size_t len = 0; len + acc.size() <= max_len; ++len) {
                        for (const Word& w : src[len]) {
                            acc.insert(acc.end(), w.begin(), w.end());
                            self(self, pos + 1);
                            acc.resize(acc.size() - len);
                        }
                    }
                }
            };
            build(build, 0);
        }
    }

    std::set<Word> result;
    for (const auto& row : table.at(g.axiom)) result.insert(row.begin(), row.end());
    return result;
}

/// enumerate_words over the language of a converted grammar, epsilon bit
/// included.
inline std::set<Word> enumerate_words(const CnfGrammar& g, std::size_t max_len,
                                      std::size_t cap = kDefaultEnumerationCap) {
    std::set<Word> result = enumerate_words(g.grammar, max_len, cap);
    if (g.generates_epsilon) result.insert(Word{});
    return result;
}

namespace detail {

inline void require_known_terminals(const Grammar& g, const Word& w) {
    for (const Symbol& s : w) {
        if (!is_terminal(s) || !g.terminals.count(s))
            throw std::invalid_argument("word symbol '" + s.name +
                                        "' is not a terminal of the grammar");
    }
}

} // namespace detail

/// The CYK parse table of a word under a grammar in Chomsky normal form.
/// cell(pos, len) holds every variable that derives the slice of the word
/// starting at pos (0-based) of length len. Witness extraction is
/// deterministic: each cell remembers the first derivation that reached
/// it when scanning split points in increasing order and productions in
/// grammar order.
class CykTable {
public:
    /// Fills the table; cost is O(|w|^3 * |P|). Throws
    /// std::invalid_argument when the word uses symbols outside the
    /// grammar's terminal alphabet.
    CykTable(CnfGrammar g, Word w) : g_(std::move(g)), w_(std::move(w)) {
        detail::require_known_terminals(g_.grammar, w_);
        vars_.assign(g_.grammar.variables.begin(), g_.grammar.variables.end());

        std::size_t n = w_.size();
        cells_.assign(n * n, std::vector<Back>(vars_.size()));

        const auto& prods = g_.grammar.productions;
        for (std::size_t pos = 0; pos < n; ++pos) {
            for (std::size_t pi = 0; pi < prods.size(); ++pi) {
                const Production& p = prods[pi];
                if (p.body.size() == 1 && p.body[0] == w_[pos])
                    mark(pos, 1, p.head, pi, 0);
            }
        }
        for (std::size_t len = 2; len <= n; ++len) {
            for (std::size_t pos = 0; pos + len <= n; ++pos) {
                for (std::size_t split = 1; split < len; ++split) {
                    for (std::size_t pi = 0; pi < prods.size(); ++pi) {
                        const Production& p = prods[pi];
                        if (p.body.size() != 2) continue;
                        if (contains(pos, split, p.body[0]) &&
                            contains(pos + split, len - split, p.body[1]))
                            mark(pos, len, p.head, pi, split);
                    }
                }
            }
        }
    }

    const Word& word() const { return w_; }
    const CnfGrammar& grammar() const { return g_; }

    bool contains(std::size_t pos, std::size_t len, const Symbol& v) const {
        const Back* b = find(pos, len, v);
        return b && b->filled;
    }

    std::set<Symbol> cell(std::size_t pos, std::size_t len) const {
        std::set<Symbol> out;
        for (std::size_t vi = 0; vi < vars_.size(); ++vi) {
            if (cells_[index(pos, len)][vi].filled) out.insert(vars_[vi]);
        }
        return out;
    }

    /// Whether the whole word is derivable from the axiom. The empty word
    /// is decided by the epsilon bit.
    bool accepts() const {
        if (w_.empty()) return g_.generates_epsilon;
        return contains(0, w_.size(), g_.grammar.axiom);
    }

    /// Derivation tree for the slice at (pos, len) rooted at v. Throws
    /// std::invalid_argument when the cell does not contain v.
    DerivationTree witness(std::size_t pos, std::size_t len, const Symbol& v) const {
        const Back* b = find(pos, len, v);
        if (!b || !b->filled)
            throw std::invalid_argument("'" + v.name + "' does not derive that slice");
        const Production& p = g_.grammar.productions[b->production];
        DerivationTree node = leaf(v);
        if (b->split == 0) {
            node.children.push_back(leaf(w_[pos]));
        } else {
            node.children.push_back(witness(pos, b->split, p.body[0]));
            node.children.push_back(witness(pos + b->split, len - b->split, p.body[1]));
        }
        return node;
    }

    /// Derivation tree for the whole word from the axiom; empty optional
    /// when the word is not accepted or is the empty word (which has no
    /// tree in the core grammar).
    std::optional<DerivationTree> witness() const {
        if (w_.empty() || !accepts()) return std::nullopt;
        return witness(0, w_.size(), g_.grammar.axiom);
    }

private:
    struct Back {
        bool filled = false;
        std::size_t production = 0;
        std::size_t split = 0; // 0 means a terminal rule
    };

    std::size_t index(std::size_t pos, std::size_t len) const {
        return (len - 1) * w_.size() + pos;
    }

    std::size_t var_index(const Symbol& v) const {
        auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
        if (it == vars_.end() || *it != v) return vars_.size();
        return static_cast<std::size_t>(it - vars_.begin());
    }

    const Back* find(std::size_t pos, std::size_t len, const Symbol& v) const {
        if (len == 0 || len > w_.size() || pos + len > w_.size()) return nullptr;
        std::size_t vi = var_index(v);
        if (vi == vars_.size()) return nullptr;
        return &cells_[index(pos, len)][vi];
    }

    void mark(std::size_t pos, std::size_t len, const Symbol& head, std::size_t production,
              std::size_t split) {
        Back& b = cells_[index(pos, len)][var_index(head)];
        if (b.filled) return; // keep the first derivation found
        b = {true, production, split};
    }

    CnfGrammar g_;
    Word w_;
    std::vector<Symbol> vars_; // sorted; defines the index space
    std::vector<std::vector<Back>> cells_;
};

/// CYK membership. Throws std::invalid_argument on symbols outside the
/// grammar's terminal alphabet.
inline bool member(const CnfGrammar& g, const Word& w) {
    if (w.empty()) return g.generates_epsilon;
    return CykTable(g, w).accepts();
}

/// Derivation tree witnessing membership, or an empty optional when w is
/// not in the language. The empty word yields an empty optional too: its
/// membership is decided by the epsilon bit and it has no tree in the
/// core grammar.
inline std::optional<DerivationTree> derivation_of(const CnfGrammar& g, const Word& w) {
    if (w.empty()) return std::nullopt;
    return CykTable(g, w).witness();
}

/// Whether the grammar generates no word at all (the empty word counts as
/// a word). Decided by the generating-variables fixpoint.
inline bool is_empty(const Grammar& g) {
    return !generating_variables(g).count(g.axiom);
}

namespace detail {

/// Whether the variable graph of a normal form core (an edge from the
/// head to each body variable of every pair rule) has a cycle. The core
/// has no useless symbols, so any cycle can be driven from the axiom and
/// back down to terminals, producing arbitrarily long words.
inline bool core_has_cycle(const Grammar& core) {
    std::map<Symbol, std::vector<Symbol>> next;
    for (const Production& p : core.productions) {
        if (p.body.size() == 2) {
            next[p.head].push_back(p.body[0]);
            next[p.head].push_back(p.body[1]);
        }
    }

    enum class State { New, Active, Done };
    std::map<Symbol, State> state;
    auto visit = [&](auto&& self, const Symbol& v) -> bool {
        State& s = state[v];
        if (s == State::Active) return true;
        if (s == State::Done) return false;
        s = State::Active;
        for (const Symbol& w : next[v]) {
            if (self(self, w)) return true;
        }
        state[v] = State::Done;
        return false;
    };

    for (const Symbol& v : core.variables) {
        if (visit(visit, v)) return true;
    }
    return false;
}

} // namespace detail

/// Whether the language is finite. A language is infinite exactly when
/// the variable graph of its normal form core has a cycle.
inline bool is_finite(const Grammar& g) {
    return !detail::core_has_cycle(cnf_core(g).grammar);
}

namespace detail {

/// Breadth-first search over leftmost sentential forms of a normal form
/// core for a terminal word of length in [min_len, max_len]. Forms longer
/// than max_len are pruned (in a normal form, forms never shrink), and
/// expansion stops at derivation length max_steps.
inline std::optional<Word> bounded_word_search(const Grammar& core, std::size_t min_len,
                                               std::size_t max_len, std::size_t max_steps) {
    struct Item {
        std::vector<Symbol> form;
        std::size_t steps;
    };

    std::deque<Item> queue{{{core.axiom}, 0}};
    std::set<std::vector<Symbol>> visited{{core.axiom}};

    while (!queue.empty()) {
        Item item = std::move(queue.front());
        queue.pop_front();

        auto leftmost = std::find_if(item.form.begin(), item.form.end(), is_variable);
        if (leftmost == item.form.end()) {
            if (item.form.size() >= min_len) return Word(item.form.begin(), item.form.end());
            continue;
        }
        if (item.steps >= max_steps) continue;

        for (const Production& p : core.productions) {
            if (p.head != *leftmost) continue;
            std::vector<Symbol> next;
            next.reserve(item.form.size() + 1);
            next.insert(next.end(), item.form.begin(), leftmost);
            next.insert(next.end(), p.body.begin(), p.body.end());
            next.insert(next.end(), leftmost + 1, item.form.end());
            if (next.size() > max_len) continue;
            if (visited.insert(next).second) queue.push_back({std::move(next), item.steps + 1});
        }
    }
    return std::nullopt;
}

inline std::size_t checked_power_of_two(std::size_t exponent, std::size_t step_cap,
                                        const char* what) {
    if (exponent >= 63 || ((std::size_t{1} << (exponent + 1)) - 1) > step_cap)
        throw CapExceededError(std::string(what) + " would need up to 2^" +
                               std::to_string(exponent + 1) +
                               "-1 derivation steps, above the step cap of " +
                               std::to_string(step_cap));
    return std::size_t{1} << exponent;
}

} // namespace detail

/// Decides whether the core language of g is nonempty by searching for a
/// word of length at most 2^N, N the number of variables: if none exists
/// there, none exists at all, because any longer word pumps down below
/// the bound. Ignores the epsilon bit; the caller owns that case. Throws
/// CapExceededError when the implied derivation bound 2^(N+1)-1 exceeds
/// step_cap.
inline bool oracle_nonempty(const CnfGrammar& g, std::size_t step_cap = kDefaultStepCap) {
    std::size_t n = g.grammar.variables.size();
    std::size_t max_len = detail::checked_power_of_two(n, step_cap, "emptiness search");
    return detail::bounded_word_search(g.grammar, 0, max_len, (max_len << 1) - 1).has_value();
}

/// Decides whether the core language of g is infinite by searching for a
/// word of length in (2^N, 2^(2N)], N the number of variables: such a
/// word pumps up forever, and an infinite language always contains one.
/// The search runs over achievable lengths rather than literal
/// derivations; it answers exactly the same question. Throws
/// CapExceededError when the implied derivation bound 2^(2(N+1))-1
/// exceeds step_cap.
inline bool oracle_infinite(const CnfGrammar& g, std::size_t step_cap = kDefaultStepCap) {
    std::size_t n = g.grammar.variables.size();
    std::size_t window_end = detail::checked_power_of_two(2 * n + 1, step_cap,
                                                          "finiteness search") >>
                             1; // 2^(2N), capped via the derivation bound 2^(2(N+1))-1
    if (g.grammar.productions.empty()) return false;
    std::size_t window_begin = std::size_t{1} << n; // exclusive

    // achievable[v][k]: v derives some word of length k. In a normal form
    // length k only ever combines lengths below k, so one ascending pass
    // suffices.
    std::vector<Symbol> vars(g.grammar.variables.begin(), g.grammar.variables.end());
    auto var_index = [&](const Symbol& v) {
        return static_cast<std::size_t>(
            std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
    };
    std::vector<std::vector<char>> achievable(vars.size(),
                                              std::vector<char>(window_end + 1, 0));
    for (const Production& p : g.grammar.productions) {
        if (p.body.size() == 1) achievable[var_index(p.head)][1] = 1;
    }
    for (std::size_t len = 2; len <= window_end; ++len) {
        for (const Production& p : g.grammar.productions) {
            if (p.body.size() != 2) continue;
            auto& row = achievable[var_index(p.head)];
            if (row[len]) continue;
            const auto& left = achievable[var_index(p.body[0])];
            const auto& right = achievable[var_index(p.body[1])];
            for (std::size_t l = 1; l < len; ++l) {
                if (left[l] && right[len - l]) {
                    row[len] = 1;
                    break;
                }
            }
        }
    }

    const auto& axiom_row = achievable[var_index(g.grammar.axiom)];
    for (std::size_t len = window_begin + 1; len <= window_end; ++len) {
        if (axiom_row[len]) return true;
    }
    return false;
}

} // namespace cfg

#endif // CFG_DECIDE_HPP
