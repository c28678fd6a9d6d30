/* grammar.hpp -- context-free grammar value types and well-formedness checks
 *
 * This file is part of libcfg, a small toolkit for context-free grammars.
 * All types are immutable values after construction; nothing here mutates
 * shared state, so everything can be used freely across threads.
 */

#ifndef CFG_GRAMMAR_HPP
#define CFG_GRAMMAR_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace cfg {

enum class SymbolKind { Variable, Terminal };

/// A named grammar symbol. Two symbols are equal iff kind and name both
/// match; ordering is by kind first, then name, which keeps symbol sets
/// deterministic to iterate.
struct Symbol {
    SymbolKind kind;
    std::string name;

    auto operator<=>(const Symbol&) const = default;
};

inline Symbol var(std::string name) {
    return Symbol{SymbolKind::Variable, std::move(name)};
}

inline Symbol term(std::string name) {
    return Symbol{SymbolKind::Terminal, std::move(name)};
}

inline bool is_variable(const Symbol& s) { return s.kind == SymbolKind::Variable; }
inline bool is_terminal(const Symbol& s) { return s.kind == SymbolKind::Terminal; }

/// A word over the terminal alphabet. The empty vector encodes the empty
/// word.
using Word = std::vector<Symbol>;

/// Builds a word of single-character terminals, one per input character.
/// Convenient for tests and for the character-wise CLI word syntax.
inline Word word_from_chars(std::string_view chars) {
    Word w;
    w.reserve(chars.size());
    for (char c : chars) {
        w.push_back(term(std::string(1, c)));
    }
    return w;
}

/// One rewrite rule A -> alpha. The head is always a single variable (this
/// is exactly the context-freeness condition); an empty body encodes an
/// epsilon production.
struct Production {
    Symbol head;
    std::vector<Symbol> body;

    auto operator<=>(const Production&) const = default;
};

/// A context-free grammar (V, T, P, S). Productions are an ordered
/// sequence, not a set, so that serialization and transformation outputs
/// are deterministic.
struct Grammar {
    std::set<Symbol> variables;
    std::set<Symbol> terminals;
    std::vector<Production> productions;
    Symbol axiom;

    bool operator==(const Grammar&) const = default;
};

/// The identifier alphabet for symbol names. `eps` is reserved for the
/// empty word and is not a valid name.
inline bool valid_identifier(std::string_view name) {
    if (name.empty() || name == "eps") return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
               (c >= '0' && c <= '9') || c == '_' || c == '\'';
    });
}

/// Builds a grammar from an axiom and a production list, collecting the
/// symbol sets from the symbols that occur. Symbol kinds are taken at face
/// value, so ill-kinded inputs surface later through validate().
inline Grammar make_grammar(Symbol axiom, std::vector<Production> productions) {
    Grammar g;
    g.axiom = std::move(axiom);
    g.variables.insert(g.axiom);
    for (const Production& p : productions) {
        g.variables.insert(p.head);
        for (const Symbol& s : p.body) {
            (is_variable(s) ? g.variables : g.terminals).insert(s);
        }
    }
    g.productions = std::move(productions);
    return g;
}

namespace detail {

inline std::string describe(const Symbol& s) {
    return (is_variable(s) ? "variable '" : "terminal '") + s.name + "'";
}

inline std::string describe(const Production& p) {
    std::string out = p.head.name + " ->";
    if (p.body.empty()) {
        out += " eps";
    } else {
        for (const Symbol& s : p.body) out += " " + s.name;
    }
    return out;
}

} // namespace detail

/// Checks every grammar invariant and reports each violation as a
/// human-readable description. An empty result means the grammar is
/// well-formed. Violations are data, not errors: callers that require a
/// well-formed grammar decide themselves what to do with a non-empty list.
inline std::vector<std::string> validate(const Grammar& g) {
    std::vector<std::string> violations;

    for (const Symbol& s : g.variables) {
        if (!is_variable(s))
            violations.push_back(detail::describe(s) + " listed among the variables");
        if (!valid_identifier(s.name))
            violations.push_back("invalid identifier '" + s.name + "'");
    }
    for (const Symbol& s : g.terminals) {
        if (!is_terminal(s))
            violations.push_back(detail::describe(s) + " listed among the terminals");
        if (!valid_identifier(s.name))
            violations.push_back("invalid identifier '" + s.name + "'");
    }

    // Disjointness is a name-level condition: kinds already differ.
    for (const Symbol& v : g.variables) {
        if (g.terminals.count(term(v.name)))
            violations.push_back("name '" + v.name + "' is both a variable and a terminal");
    }

    if (!g.variables.count(g.axiom))
        violations.push_back("axiom '" + g.axiom.name + "' is not a variable of the grammar");

    for (const Production& p : g.productions) {
        if (!is_variable(p.head) || !g.variables.count(p.head)) {
            violations.push_back("production head " + detail::describe(p.head) +
                                 " is not a variable of the grammar");
        }
        for (const Symbol& s : p.body) {
            const auto& home = is_variable(s) ? g.variables : g.terminals;
            if (!home.count(s))
                violations.push_back("production '" + detail::describe(p) + "' uses " +
                                     detail::describe(s) + " that the grammar does not declare");
        }
    }

    std::set<Production> seen;
    for (const Production& p : g.productions) {
        if (!seen.insert(p).second)
            violations.push_back("duplicate production '" + detail::describe(p) + "'");
    }

    return violations;
}

inline bool well_formed(const Grammar& g) { return validate(g).empty(); }

/// Grammar equality up to production order (the order in which rules are
/// stored is presentation detail, the rule set is not).
inline bool equal_modulo_order(const Grammar& a, const Grammar& b) {
    if (a.variables != b.variables || a.terminals != b.terminals || a.axiom != b.axiom)
        return false;
    std::set<Production> pa(a.productions.begin(), a.productions.end());
    std::set<Production> pb(b.productions.begin(), b.productions.end());
    return pa == pb;
}

/// First name of the sequence `base`, `base'`, `base''`, ... that does not
/// occur in `used`. Primes are part of the identifier alphabet, so the
/// result is always a valid identifier when the base is.
inline std::string fresh_name(std::string base, const std::set<std::string>& used) {
    while (used.count(base)) base += '\'';
    return base;
}

/// All symbol names a grammar uses, for collision avoidance.
inline std::set<std::string> symbol_names(const Grammar& g) {
    std::set<std::string> names;
    for (const Symbol& s : g.variables) names.insert(s.name);
    for (const Symbol& s : g.terminals) names.insert(s.name);
    return names;
}

} // namespace cfg

#endif // CFG_GRAMMAR_HPP
