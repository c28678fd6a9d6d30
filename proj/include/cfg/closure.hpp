/* closure.hpp -- closure of context-free languages under union,
 * concatenation, star, substitution, and homomorphism
 *
 * This file is part of libcfg, a small toolkit for context-free grammars.
 *
 * Each construction builds one grammar out of others by wiring their
 * axioms together. Variable sets are made disjoint first: a colliding
 * variable gets a suffix (_1 / _2 for the binary operations, _<terminal>
 * for substitution images), then primes until the name is unused.
 * Terminals are never renamed; operand languages share their alphabets by
 * name.
 */

#ifndef CFG_CLOSURE_HPP
#define CFG_CLOSURE_HPP

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfg/grammar.hpp"

namespace cfg {

namespace detail {

/// Renames the variables of g whose names occur in `avoid` by appending
/// `suffix` (then primes, if still taken). `used` accumulates every name
/// given out, so sequential calls stay collision-free.
inline Grammar rename_apart(const Grammar& g, const std::set<std::string>& avoid,
                            const std::string& suffix, std::set<std::string>& used) {
    std::map<Symbol, Symbol> renamed;
    for (const Symbol& v : g.variables) {
        if (!avoid.count(v.name)) continue;
        Symbol fresh = var(fresh_name(v.name + suffix, used));
        used.insert(fresh.name);
        renamed.emplace(v, std::move(fresh));
    }
    if (renamed.empty()) return g;

    auto rename = [&](const Symbol& s) {
        auto it = renamed.find(s);
        return it == renamed.end() ? s : it->second;
    };

    Grammar out;
    out.axiom = rename(g.axiom);
    out.terminals = g.terminals;
    for (const Symbol& v : g.variables) out.variables.insert(rename(v));
    for (const Production& p : g.productions) {
        Production q{rename(p.head), {}};
        q.body.reserve(p.body.size());
        for (const Symbol& s : p.body) q.body.push_back(rename(s));
        out.productions.push_back(std::move(q));
    }
    return out;
}

/// Disjoint copies of two operand grammars plus a fresh axiom for the
/// combined grammar.
struct DisjointPair {
    Grammar first;
    Grammar second;
    Symbol axiom;
};

inline DisjointPair make_disjoint(const Grammar& g1, const Grammar& g2) {
    std::set<std::string> names1 = symbol_names(g1);
    std::set<std::string> names2 = symbol_names(g2);

    std::set<std::string> used = names1;
    used.insert(names2.begin(), names2.end());

    std::set<std::string> avoid1;
    for (const Symbol& v : g1.variables) {
        if (names2.count(v.name)) avoid1.insert(v.name);
    }
    std::set<std::string> avoid2;
    for (const Symbol& v : g2.variables) {
        if (names1.count(v.name)) avoid2.insert(v.name);
    }

    DisjointPair pair;
    pair.first = rename_apart(g1, avoid1, "_1", used);
    pair.second = rename_apart(g2, avoid2, "_2", used);
    pair.axiom = var(fresh_name("S", used));
    return pair;
}

inline Grammar assemble(Symbol axiom, std::vector<Production> top,
                        const std::vector<const Grammar*>& parts) {
    Grammar out;
    out.axiom = axiom;
    out.variables.insert(std::move(axiom));
    out.productions = std::move(top);
    for (const Grammar* g : parts) {
        out.variables.insert(g->variables.begin(), g->variables.end());
        out.terminals.insert(g->terminals.begin(), g->terminals.end());
        out.productions.insert(out.productions.end(), g->productions.begin(),
                               g->productions.end());
    }
    return out;
}

} // namespace detail

/// L(result) = L(g1) + L(g2): a fresh axiom derives either operand axiom.
inline Grammar union_of(const Grammar& g1, const Grammar& g2) {
    detail::DisjointPair p = detail::make_disjoint(g1, g2);
    std::vector<Production> top{{p.axiom, {p.first.axiom}}, {p.axiom, {p.second.axiom}}};
    return detail::assemble(p.axiom, std::move(top), {&p.first, &p.second});
}

/// L(result) = L(g1) L(g2): a fresh axiom derives both operand axioms in
/// sequence.
inline Grammar concat(const Grammar& g1, const Grammar& g2) {
    detail::DisjointPair p = detail::make_disjoint(g1, g2);
    std::vector<Production> top{{p.axiom, {p.first.axiom, p.second.axiom}}};
    return detail::assemble(p.axiom, std::move(top), {&p.first, &p.second});
}

/// L(result) = L(g)*: a fresh axiom S' with S' -> S S' | eps.
inline Grammar star(const Grammar& g) {
    std::set<std::string> used = symbol_names(g);
    Symbol axiom = var(fresh_name("S", used));
    std::vector<Production> top{{axiom, {g.axiom, axiom}}, {axiom, {}}};
    return detail::assemble(axiom, std::move(top), {&g});
}

/// A substitution maps each terminal to the grammar of its image
/// language.
using Substitution = std::map<Symbol, Grammar>;

/// L(result) = the substitution image of L(g): every occurrence of a
/// terminal a in a word of L(g) is replaced by some word of L(f(a)). In
/// the grammar this is literal: each terminal occurrence becomes the
/// axiom of its image grammar. Throws std::invalid_argument when f lacks
/// a terminal of g; mappings for symbols g never uses are ignored.
inline Grammar substitute(const Grammar& g, const Substitution& f) {
    for (const Symbol& t : g.terminals) {
        if (!f.count(t))
            throw std::invalid_argument("substitution does not map terminal '" + t.name + "'");
    }

    // The result's terminals come only from the image grammars.
    std::set<std::string> image_names;
    for (const Symbol& t : g.terminals) image_names.merge(symbol_names(f.at(t)));

    std::set<std::string> used = image_names;
    used.merge(symbol_names(g));

    std::set<std::string> avoid;
    for (const Symbol& v : g.variables) {
        if (image_names.count(v.name)) avoid.insert(v.name);
    }
    Grammar source = detail::rename_apart(g, avoid, "_0", used);

    std::map<Symbol, Grammar> images;
    std::set<std::string> source_names = symbol_names(source);
    for (const Symbol& t : source.terminals) {
        std::set<std::string> clash = source_names;
        for (const auto& [other, image] : images) {
            if (other != t) clash.merge(symbol_names(image));
        }
        std::set<std::string> image_avoid;
        for (const Symbol& v : f.at(t).variables) {
            if (clash.count(v.name)) image_avoid.insert(v.name);
        }
        images.emplace(t, detail::rename_apart(f.at(t), image_avoid, "_" + t.name, used));
    }

    Grammar out;
    out.axiom = source.axiom;
    out.variables = source.variables;
    for (const Production& p : source.productions) {
        Production q{p.head, {}};
        q.body.reserve(p.body.size());
        for (const Symbol& s : p.body) {
            q.body.push_back(is_terminal(s) ? images.at(s).axiom : s);
        }
        out.productions.push_back(std::move(q));
    }
    for (const auto& [t, image] : images) {
        out.variables.insert(image.variables.begin(), image.variables.end());
        out.terminals.insert(image.terminals.begin(), image.terminals.end());
        out.productions.insert(out.productions.end(), image.productions.begin(),
                               image.productions.end());
    }
    return out;
}

/// The homomorphic image of L(g) under h, as the special case of
/// substitution where every image language is a single word. Throws
/// std::invalid_argument when h lacks a terminal of g.
inline Grammar homomorphism(const Grammar& g, const std::map<Symbol, Word>& h) {
    Substitution f;
    for (const auto& [t, image] : h) {
        Grammar single;
        single.axiom = var("W");
        single.variables.insert(single.axiom);
        for (const Symbol& s : image) single.terminals.insert(s);
        single.productions.push_back({single.axiom, image});
        f.emplace(t, std::move(single));
    }
    return substitute(g, f);
}

} // namespace cfg

#endif // CFG_CLOSURE_HPP
