/* transform.hpp -- grammar cleanup passes and Chomsky normal form
 *
 * This file is part of libcfg, a small toolkit for context-free grammars.
 *
 * The passes compose into the standard pipeline
 *
 *     remove_epsilon -> remove_unit -> remove_useless -> to_cnf
 *
 * and each preserves the generated language, except that epsilon removal
 * drops the empty word and returns whether it was generated. to_cnf runs
 * the whole pipeline and carries that bit alongside the core grammar, so
 * no language information is lost.
 *
 * Order matters in remove_useless: non-generating symbols are removed
 * first, reachability second. Removing non-generating symbols can cut the
 * only rules that made other symbols reachable, so the reverse order can
 * leave useless symbols behind.
 */

#ifndef CFG_TRANSFORM_HPP
#define CFG_TRANSFORM_HPP

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfg/grammar.hpp"

namespace cfg {

/// Thrown when an operation needs a nonempty language and the grammar
/// generates none.
class EmptyLanguageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Variables that derive at least one terminal word (least fixpoint).
inline std::set<Symbol> generating_variables(const Grammar& g) {
    std::set<Symbol> generating;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Production& p : g.productions) {
            if (generating.count(p.head)) continue;
            bool all = std::all_of(p.body.begin(), p.body.end(), [&](const Symbol& s) {
                return is_terminal(s) || generating.count(s);
            });
            if (all) {
                generating.insert(p.head);
                changed = true;
            }
        }
    }
    return generating;
}

/// Symbols (variables and terminals) reachable from the axiom.
inline std::set<Symbol> reachable_symbols(const Grammar& g) {
    std::set<Symbol> reachable{g.axiom};
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Production& p : g.productions) {
            if (!reachable.count(p.head)) continue;
            for (const Symbol& s : p.body) {
                if (reachable.insert(s).second) changed = true;
            }
        }
    }
    return reachable;
}

struct UselessRemoval {
    Grammar grammar;
    std::set<Symbol> nongenerating; // variables dropped by the first pass
    std::set<Symbol> unreachable;   // symbols dropped by the second pass
};

/// Removes every symbol that cannot occur in a derivation of a terminal
/// word from the axiom, in the only order that is sound: non-generating
/// variables first, then unreachable symbols. Throws EmptyLanguageError
/// when the axiom itself is non-generating, because no grammar for the
/// empty language has only useful symbols.
inline UselessRemoval remove_useless(const Grammar& g) {
    UselessRemoval result;

    std::set<Symbol> gen = generating_variables(g);
    if (!gen.count(g.axiom))
        throw EmptyLanguageError("axiom '" + g.axiom.name +
                                 "' generates no terminal word; the language is empty");

    Grammar trimmed;
    trimmed.axiom = g.axiom;
    trimmed.variables = gen;
    trimmed.terminals = g.terminals;
    for (const Production& p : g.productions) {
        bool keep = gen.count(p.head) &&
                    std::all_of(p.body.begin(), p.body.end(), [&](const Symbol& s) {
                        return is_terminal(s) || gen.count(s);
                    });
        if (keep) trimmed.productions.push_back(p);
    }
    for (const Symbol& v : g.variables) {
        if (!gen.count(v)) result.nongenerating.insert(v);
    }

    std::set<Symbol> reach = reachable_symbols(trimmed);
    Grammar out;
    out.axiom = g.axiom;
    for (const Symbol& v : trimmed.variables) {
        (reach.count(v) ? out.variables : result.unreachable).insert(v);
    }
    for (const Symbol& t : trimmed.terminals) {
        (reach.count(t) ? out.terminals : result.unreachable).insert(t);
    }
    for (const Production& p : trimmed.productions) {
        if (reach.count(p.head)) out.productions.push_back(p);
    }

    result.grammar = std::move(out);
    return result;
}

struct EpsilonFree {
    Grammar grammar;
    bool generates_epsilon; // whether the input generated the empty word
    std::size_t removed;    // number of epsilon productions in the input
};

/// Nullable variables: those deriving the empty word.
inline std::set<Symbol> nullable_variables(const Grammar& g) {
    std::set<Symbol> nullable;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Production& p : g.productions) {
            if (nullable.count(p.head)) continue;
            bool all = std::all_of(p.body.begin(), p.body.end(), [&](const Symbol& s) {
                return is_variable(s) && nullable.count(s);
            });
            if (all) {
                nullable.insert(p.head);
                changed = true;
            }
        }
    }
    return nullable;
}

/// Eliminates epsilon productions. Every production is replaced by the
/// variants obtained by dropping any subset of its nullable body symbols;
/// empty variants are discarded. The generated language loses exactly the
/// empty word, and `generates_epsilon` records whether it was there.
inline EpsilonFree remove_epsilon(const Grammar& g) {
    std::set<Symbol> nullable = nullable_variables(g);
    if (nullable.empty()) return {g, false, 0};

    Grammar out;
    out.axiom = g.axiom;
    out.variables = g.variables;
    out.terminals = g.terminals;

    std::size_t removed = 0;
    std::set<Production> seen;
    for (const Production& p : g.productions) {
        if (p.body.empty()) ++removed;

        std::vector<std::size_t> optional_at;
        for (std::size_t i = 0; i < p.body.size(); ++i) {
            if (is_variable(p.body[i]) && nullable.count(p.body[i]))
                optional_at.push_back(i);
        }
        // Masks enumerate which nullable occurrences to drop; mask 0 keeps
        // the body intact, so originals come before their variants.
        for (std::size_t mask = 0; mask < (std::size_t{1} << optional_at.size()); ++mask) {
            Production variant{p.head, {}};
            std::size_t next = 0;
            for (std::size_t i = 0; i < p.body.size(); ++i) {
                bool drop = next < optional_at.size() && optional_at[next] == i &&
                            ((mask >> next) & 1);
                if (next < optional_at.size() && optional_at[next] == i) ++next;
                if (!drop) variant.body.push_back(p.body[i]);
            }
            if (variant.body.empty()) continue;
            if (seen.insert(variant).second) out.productions.push_back(std::move(variant));
        }
    }

    return {std::move(out), nullable.count(g.axiom) > 0, removed};
}

/// Eliminates unit productions A -> B. Requires an epsilon-free grammar
/// (otherwise a body could become a single variable again later in the
/// pipeline and the closure computed here would be wrong); throws
/// std::invalid_argument when that precondition fails.
inline Grammar remove_unit(const Grammar& g) {
    for (const Production& p : g.productions) {
        if (p.body.empty())
            throw std::invalid_argument("remove_unit requires an epsilon-free grammar");
    }

    auto is_unit = [](const Production& p) {
        return p.body.size() == 1 && is_variable(p.body[0]);
    };
    if (std::none_of(g.productions.begin(), g.productions.end(), is_unit)) return g;

    Grammar out;
    out.axiom = g.axiom;
    out.variables = g.variables;
    out.terminals = g.terminals;

    std::set<Production> seen;
    for (const Symbol& a : g.variables) {
        // Unit closure of a, in breadth-first discovery order.
        std::vector<Symbol> closure{a};
        std::set<Symbol> in_closure{a};
        for (std::size_t i = 0; i < closure.size(); ++i) {
            for (const Production& p : g.productions) {
                if (p.head == closure[i] && is_unit(p) && in_closure.insert(p.body[0]).second)
                    closure.push_back(p.body[0]);
            }
        }
        for (const Symbol& b : closure) {
            for (const Production& p : g.productions) {
                if (p.head != b || is_unit(p)) continue;
                Production lifted{a, p.body};
                if (seen.insert(lifted).second) out.productions.push_back(std::move(lifted));
            }
        }
    }
    return out;
}

/// A grammar in Chomsky normal form plus the epsilon bit that the
/// conversion peeled off. The core grammar has only rules A -> B C and
/// A -> a; the degenerate core with no productions at all represents the
/// empty language (with the bit deciding between the empty language and
/// the language containing only the empty word).
struct CnfGrammar {
    Grammar grammar;
    bool generates_epsilon = false;
};

namespace detail {

/// Lifts terminals out of long bodies and splits bodies longer than two.
/// Expects output of the cleanup pipeline (epsilon-free, unit-free,
/// useless-free).
inline Grammar to_cnf_core_rules(const Grammar& g) {
    std::set<std::string> used = symbol_names(g);

    // Pass 1: in bodies of length >= 2, replace each terminal by a fresh
    // variable, one shared variable per terminal, named after it.
    std::map<Symbol, Symbol> lifted;
    std::vector<Symbol> lift_order;
    std::vector<Production> pass1;
    for (const Production& p : g.productions) {
        Production q = p;
        if (q.body.size() >= 2) {
            for (Symbol& s : q.body) {
                if (!is_terminal(s)) continue;
                auto it = lifted.find(s);
                if (it == lifted.end()) {
                    Symbol fresh = var(fresh_name("_T_" + s.name, used));
                    used.insert(fresh.name);
                    it = lifted.emplace(s, std::move(fresh)).first;
                    lift_order.push_back(s);
                }
                s = it->second;
            }
        }
        pass1.push_back(std::move(q));
    }
    for (const Symbol& t : lift_order) pass1.push_back({lifted.at(t), {t}});

    // Pass 2: split bodies of length > 2 into chains of fresh variables.
    std::size_t counter = 1;
    Grammar out;
    out.axiom = g.axiom;
    out.terminals = g.terminals;
    out.variables = g.variables;
    for (const auto& [t, v] : lifted) out.variables.insert(v);
    for (Production& p : pass1) {
        if (p.body.size() <= 2) {
            out.productions.push_back(std::move(p));
            continue;
        }
        Symbol head = p.head;
        std::vector<Symbol> rest = std::move(p.body);
        while (rest.size() > 2) {
            Symbol fresh = var(fresh_name("_B" + std::to_string(counter++), used));
            used.insert(fresh.name);
            out.variables.insert(fresh);
            out.productions.push_back({head, {rest[0], fresh}});
            head = std::move(fresh);
            rest.erase(rest.begin());
        }
        out.productions.push_back({std::move(head), std::move(rest)});
    }
    return out;
}

} // namespace detail

/// Converts to Chomsky normal form, tolerating the empty language: the
/// result then has the degenerate empty core. See to_cnf for the strict
/// variant.
inline CnfGrammar cnf_core(const Grammar& g) {
    auto degenerate = [&](bool eps) {
        Grammar core;
        core.axiom = g.axiom;
        core.variables.insert(g.axiom);
        return CnfGrammar{std::move(core), eps};
    };

    if (!generating_variables(g).count(g.axiom)) return degenerate(false);

    EpsilonFree ef = remove_epsilon(g);
    if (!generating_variables(ef.grammar).count(g.axiom)) {
        // Everything the axiom generated was the empty word.
        return degenerate(true);
    }

    Grammar cleaned = remove_useless(remove_unit(ef.grammar)).grammar;
    return {detail::to_cnf_core_rules(cleaned), ef.generates_epsilon};
}

/// Converts to Chomsky normal form. Throws EmptyLanguageError when the
/// grammar generates no word at all; a grammar generating only the empty
/// word converts to the degenerate empty core with the epsilon bit set.
inline CnfGrammar to_cnf(const Grammar& g) {
    CnfGrammar core = cnf_core(g);
    if (core.grammar.productions.empty() && !core.generates_epsilon)
        throw EmptyLanguageError("axiom '" + g.axiom.name +
                                 "' generates no terminal word; the language is empty");
    return core;
}

/// Checks the Chomsky normal form invariants: well-formedness, every body
/// either two variables or one terminal, and no useless symbols. The
/// degenerate empty core passes.
inline std::vector<std::string> validate_cnf(const CnfGrammar& cnf) {
    const Grammar& g = cnf.grammar;
    std::vector<std::string> violations = validate(g);

    if (g.productions.empty()) {
        if (g.variables != std::set<Symbol>{g.axiom} || !g.terminals.empty())
            violations.push_back("an empty core must contain exactly the axiom and no terminals");
        return violations;
    }

    for (const Production& p : g.productions) {
        bool pair = p.body.size() == 2 && is_variable(p.body[0]) && is_variable(p.body[1]);
        bool unit_terminal = p.body.size() == 1 && is_terminal(p.body[0]);
        if (!pair && !unit_terminal)
            violations.push_back("production '" + detail::describe(p) +
                                 "' is not in Chomsky normal form");
    }

    std::set<Symbol> gen = generating_variables(g);
    std::set<Symbol> reach = reachable_symbols(g);
    for (const Symbol& v : g.variables) {
        if (!gen.count(v))
            violations.push_back("variable '" + v.name + "' is non-generating");
        if (!reach.count(v))
            violations.push_back("variable '" + v.name + "' is unreachable");
    }
    for (const Symbol& t : g.terminals) {
        if (!reach.count(t))
            violations.push_back("terminal '" + t.name + "' is unreachable");
    }
    return violations;
}

/// Combined cleanup result: see reduce.
struct Reduction {
    Grammar grammar;
    bool generates_epsilon = false;
    std::set<Symbol> nongenerating;
    std::set<Symbol> unreachable;
    std::size_t epsilon_removed = 0;
    std::size_t unit_removed = 0;
};

/// Runs the cleanup pipeline without the final normal form step: removes
/// epsilon productions, unit productions, and useless symbols. Throws
/// EmptyLanguageError for the empty language; a grammar generating only
/// the empty word reduces to an empty production list with the epsilon
/// bit set.
inline Reduction reduce(const Grammar& g) {
    Reduction result;

    if (!generating_variables(g).count(g.axiom))
        throw EmptyLanguageError("axiom '" + g.axiom.name +
                                 "' generates no terminal word; the language is empty");

    EpsilonFree ef = remove_epsilon(g);
    result.generates_epsilon = ef.generates_epsilon;
    result.epsilon_removed = ef.removed;

    if (!generating_variables(ef.grammar).count(g.axiom)) {
        result.grammar.axiom = g.axiom;
        result.grammar.variables.insert(g.axiom);
        return result;
    }

    Grammar unit_free = remove_unit(ef.grammar);
    for (const Production& p : ef.grammar.productions) {
        if (p.body.size() == 1 && is_variable(p.body[0])) ++result.unit_removed;
    }

    UselessRemoval ur = remove_useless(unit_free);
    result.grammar = std::move(ur.grammar);
    result.nongenerating = std::move(ur.nongenerating);
    result.unreachable = std::move(ur.unreachable);
    return result;
}

} // namespace cfg

#endif // CFG_TRANSFORM_HPP
