/* pumping.hpp -- executable pumping lemma: decomposition and refutation
 *
 * This file is part of libcfg, a small toolkit for context-free grammars.
 *
 * Two directions of the lemma live here. decompose makes the positive
 * direction executable: given a grammar in normal form and a long enough
 * member word, it returns a split z = uvwxy with |vx| >= 1 and
 * |vwx| <= N that pumps (u v^i w x^i y stays in the language for all i).
 * refute_cfl makes the contrapositive executable: for a candidate
 * language given as a membership predicate, it tries every legal split of
 * a witness word and records, per split, an exponent where pumping falls
 * out of the language. A certificate covering every split proves the
 * language is not context-free for that constant.
 */

#ifndef CFG_PUMPING_HPP
#define CFG_PUMPING_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cfg/decide.hpp"
#include "cfg/grammar.hpp"
#include "cfg/transform.hpp"
#include "cfg/tree.hpp"

namespace cfg {

/// The pumping constant N = 2^m, m the number of variables of the normal
/// form. Every member word of length at least N decomposes. Throws
/// std::overflow_error when 2^m does not fit a std::size_t.
inline std::size_t pumping_constant(const CnfGrammar& g) {
    std::size_t m = g.grammar.variables.size();
    if (m >= 63)
        throw std::overflow_error("pumping constant 2^" + std::to_string(m) +
                                  " does not fit a machine word");
    return std::size_t{1} << m;
}

/// A split z = u v w x y produced by decompose, with the constant it was
/// produced for and the variable that repeats along the longest path.
struct PumpDecomposition {
    Word u, v, w, x, y;
    std::size_t constant_n = 0;
    Symbol repeated_variable;
};

/// u v^i w x^i y.
inline Word pump(const PumpDecomposition& d, std::size_t i) {
    Word out = d.u;
    auto append = [&](const Word& part, std::size_t times) {
        for (std::size_t k = 0; k < times; ++k) out.insert(out.end(), part.begin(), part.end());
    };
    append(d.v, i);
    out.insert(out.end(), d.w.begin(), d.w.end());
    append(d.x, i);
    out.insert(out.end(), d.y.begin(), d.y.end());
    return out;
}

namespace detail {

/// Root-to-leaf node chain of a longest path; ties pick the leftmost
/// child, so the result is deterministic.
inline void longest_chain(const DerivationTree& t, std::vector<const DerivationTree*>& out) {
    out.push_back(&t);
    const DerivationTree* best = nullptr;
    std::size_t best_height = 0;
    for (const DerivationTree& child : t.children) {
        std::size_t h = longest_path_length(child);
        if (!best || h > best_height) {
            best = &child;
            best_height = h;
        }
    }
    if (best) longest_chain(*best, out);
}

inline std::size_t yield_length(const DerivationTree& t) {
    if (t.is_leaf()) return !t.is_epsilon() && is_terminal(*t.label) ? 1 : 0;
    std::size_t total = 0;
    for (const DerivationTree& child : t.children) total += yield_length(child);
    return total;
}

} // namespace detail

/// Decomposes a member word z with |z| >= N along a longest path of its
/// derivation tree: among the lowest m+1 variables on that path two must
/// share a label; the lower occurrence yields w, the upper one vwx. That
/// placement is what forces |vx| >= 1 (the upper node starts a pair rule,
/// so the sibling subtree contributes at least one terminal) and
/// |vwx| <= N (a subtree hanging at height at most m+1 spans at most 2^m
/// letters). The repeat search runs bottom-up and takes the first pair,
/// so results are deterministic. Throws std::invalid_argument when z is
/// not in the core language or is shorter than N.
inline PumpDecomposition decompose(const CnfGrammar& g, const Word& z) {
    std::size_t n = pumping_constant(g);
    if (z.size() < n)
        throw std::invalid_argument("word of length " + std::to_string(z.size()) +
                                    " is shorter than the pumping constant " +
                                    std::to_string(n));

    std::optional<DerivationTree> tree = derivation_of(g, z);
    if (!tree) throw std::invalid_argument("word is not in the language of the grammar");

    std::vector<const DerivationTree*> chain;
    detail::longest_chain(*tree, chain);

    // Spans of the chain nodes within z, walked down from the root.
    struct ChainNode {
        const DerivationTree* node;
        std::size_t begin;
        std::size_t end;
    };
    std::vector<ChainNode> vars;
    std::size_t begin = 0;
    std::size_t end = z.size();
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        vars.push_back({chain[i], begin, end});
        const DerivationTree* next = chain[i + 1];
        for (const DerivationTree& child : chain[i]->children) {
            std::size_t len = detail::yield_length(child);
            if (&child == next) {
                end = begin + len;
                break;
            }
            begin += len;
        }
    }

    // The lowest m+1 variables of the chain contain a repeated label.
    std::size_t m = g.grammar.variables.size();
    std::size_t window = std::min(vars.size(), m + 1);
    std::map<Symbol, std::size_t> below;
    std::size_t upper = vars.size();
    std::size_t lower = vars.size();
    for (std::size_t k = 0; k < window; ++k) {
        std::size_t i = vars.size() - 1 - k;
        const Symbol& label = *vars[i].node->label;
        if (auto it = below.find(label); it != below.end()) {
            upper = i;
            lower = it->second;
            break;
        }
        below[label] = i;
    }
    if (upper == vars.size())
        throw std::logic_error("no repeated variable among the lowest m+1 path nodes");

    auto slice = [&](std::size_t from, std::size_t to) {
        return Word(z.begin() + static_cast<std::ptrdiff_t>(from),
                    z.begin() + static_cast<std::ptrdiff_t>(to));
    };
    PumpDecomposition d;
    d.u = slice(0, vars[upper].begin);
    d.v = slice(vars[upper].begin, vars[lower].begin);
    d.w = slice(vars[lower].begin, vars[lower].end);
    d.x = slice(vars[lower].end, vars[upper].end);
    d.y = slice(vars[upper].end, z.size());
    d.constant_n = n;
    d.repeated_variable = *vars[upper].node->label;

    if (d.v.size() + d.x.size() == 0 || d.v.size() + d.w.size() + d.x.size() > n)
        throw std::logic_error("decomposition violates the pumping bounds");
    return d;
}

/// Verifies that a decomposition pumps: u v^i w x^i y stays in the
/// language for every i in [0, max_i].
inline bool pump_check(const CnfGrammar& g, const PumpDecomposition& d, std::size_t max_i) {
    for (std::size_t i = 0; i <= max_i; ++i) {
        if (!member(g, pump(d, i))) return false;
    }
    return true;
}

/// A candidate language given extensionally: a name, its alphabet, and a
/// membership predicate.
struct LanguagePredicate {
    std::string name;
    std::set<Symbol> alphabet;
    std::function<bool(const Word&)> membership;
};

/// One refuted split: the first exponent at which pumping left the
/// language.
struct SplitFailure {
    PumpDecomposition split;
    std::size_t exponent;
};

/// Result of trying every legal split of a witness word. When pumpable is
/// empty, failures covers all splits and the language cannot satisfy the
/// pumping lemma with constant n.
struct RefutationOutcome {
    std::string predicate;
    std::size_t constant_n = 0;
    Word witness;
    std::size_t max_exponent = 0;
    std::vector<SplitFailure> failures;
    std::vector<PumpDecomposition> pumpable;

    bool refuted() const { return pumpable.empty(); }
};

/// Enumerates every split z = uvwxy of the witness with |vx| >= 1 and
/// |vwx| <= n, in lexicographic order of (|u|, |v|, |w|, |x|), and pumps
/// each with exponents 0..max_i until the predicate rejects. The witness
/// must be a member of length at least n; n must be positive.
inline RefutationOutcome refute_cfl(const LanguagePredicate& language, std::size_t n,
                                    const Word& witness, std::size_t max_i = 2) {
    if (n == 0) throw std::invalid_argument("the pumping constant must be positive");
    if (!language.membership(witness))
        throw std::invalid_argument("witness is not in the language");
    if (witness.size() < n)
        throw std::invalid_argument("witness of length " + std::to_string(witness.size()) +
                                    " is shorter than n=" + std::to_string(n));

    RefutationOutcome outcome;
    outcome.predicate = language.name;
    outcome.constant_n = n;
    outcome.witness = witness;
    outcome.max_exponent = max_i;

    const std::size_t len = witness.size();
    auto slice = [&](std::size_t from, std::size_t to) {
        return Word(witness.begin() + static_cast<std::ptrdiff_t>(from),
                    witness.begin() + static_cast<std::ptrdiff_t>(to));
    };

    for (std::size_t lu = 0; lu <= len; ++lu) {
        for (std::size_t lv = 0; lv <= std::min(n, len - lu); ++lv) {
            for (std::size_t lw = 0; lu + lv + lw <= len && lv + lw <= n; ++lw) {
                std::size_t max_lx = std::min(n - lv - lw, len - lu - lv - lw);
                for (std::size_t lx = lv == 0 ? 1 : 0; lx <= max_lx; ++lx) {
                    PumpDecomposition d;
                    d.u = slice(0, lu);
                    d.v = slice(lu, lu + lv);
                    d.w = slice(lu + lv, lu + lv + lw);
                    d.x = slice(lu + lv + lw, lu + lv + lw + lx);
                    d.y = slice(lu + lv + lw + lx, len);
                    d.constant_n = n;

                    std::optional<std::size_t> failed_at;
                    for (std::size_t i = 0; i <= max_i; ++i) {
                        if (!language.membership(pump(d, i))) {
                            failed_at = i;
                            break;
                        }
                    }
                    if (failed_at) {
                        outcome.failures.push_back({std::move(d), *failed_at});
                    } else {
                        outcome.pumpable.push_back(std::move(d));
                    }
                }
            }
        }
    }
    return outcome;
}

namespace detail {

inline std::string piece_text(const Word& w) {
    bool chars_only = std::all_of(w.begin(), w.end(),
                                  [](const Symbol& s) { return s.name.size() == 1; });
    std::string out;
    for (const Symbol& s : w) {
        if (!chars_only && !out.empty()) out += ' ';
        out += s.name;
    }
    return out;
}

} // namespace detail

/// Renders an outcome as a certificate, one split per line:
///
///     predicate=anbncn n=4 witness=aabbcc
///     u= v=a w= x= y=abbcc fails_at_i=0
///     ...
///
/// For a non-refuted outcome the surviving splits are listed instead,
/// marked `pumps`.
inline std::string render_certificate(const RefutationOutcome& outcome) {
    std::ostringstream out;
    out << "predicate=" << outcome.predicate << " n=" << outcome.constant_n
        << " witness=" << detail::piece_text(outcome.witness) << '\n';

    auto split_line = [&](const PumpDecomposition& d) {
        out << "u=" << detail::piece_text(d.u) << " v=" << detail::piece_text(d.v)
            << " w=" << detail::piece_text(d.w) << " x=" << detail::piece_text(d.x)
            << " y=" << detail::piece_text(d.y);
    };

    if (outcome.refuted()) {
        for (const SplitFailure& f : outcome.failures) {
            split_line(f.split);
            out << " fails_at_i=" << f.exponent << '\n';
        }
    } else {
        for (const PumpDecomposition& d : outcome.pumpable) {
            split_line(d);
            out << " pumps" << '\n';
        }
    }
    return out.str();
}

/// A predicate bundled with a witness builder: witness(n) returns a
/// member word of length at least n, suitable for refute_cfl.
struct RegisteredLanguage {
    LanguagePredicate predicate;
    std::function<Word(std::size_t)> witness;
};

namespace detail {

inline std::size_t count_prefix(const Word& w, std::size_t from, const Symbol& s) {
    std::size_t count = 0;
    while (from + count < w.size() && w[from + count] == s) ++count;
    return count;
}

} // namespace detail

/// The built-in candidate languages for the refutation driver:
///
///   anbn    a^k b^k, k >= 1        (context-free: the negative control)
///   anbncn  a^k b^k c^k, k >= 1    (not context-free)
///   a2n     a^(2^k), k >= 1        (not context-free)
inline const std::vector<RegisteredLanguage>& builtin_languages() {
    static const std::vector<RegisteredLanguage> languages = [] {
        Symbol a = term("a"), b = term("b"), c = term("c");

        auto block_word = [](std::initializer_list<std::pair<Symbol, std::size_t>> blocks) {
            Word w;
            for (const auto& [s, count] : blocks) w.insert(w.end(), count, s);
            return w;
        };

        std::vector<RegisteredLanguage> out;

        out.push_back({LanguagePredicate{
                           "anbn",
                           {a, b},
                           [=](const Word& w) {
                               std::size_t k = detail::count_prefix(w, 0, a);
                               return !w.empty() && w.size() == 2 * k &&
                                      detail::count_prefix(w, k, b) == k;
                           },
                       },
                       [=](std::size_t n) { return block_word({{a, n}, {b, n}}); }});

        out.push_back({LanguagePredicate{
                           "anbncn",
                           {a, b, c},
                           [=](const Word& w) {
                               std::size_t k = detail::count_prefix(w, 0, a);
                               return !w.empty() && w.size() == 3 * k &&
                                      detail::count_prefix(w, k, b) == k &&
                                      detail::count_prefix(w, 2 * k, c) == k;
                           },
                       },
                       [=](std::size_t n) { return block_word({{a, n}, {b, n}, {c, n}}); }});

        // The witness for constant n is a^(2^n); split enumeration is
        // quartic in its length, so large n is refused rather than left
        // to grind.
        out.push_back({LanguagePredicate{
                           "a2n",
                           {a},
                           [=](const Word& w) {
                               if (detail::count_prefix(w, 0, a) != w.size()) return false;
                               std::size_t len = w.size();
                               return len >= 2 && (len & (len - 1)) == 0;
                           },
                       },
                       [=](std::size_t n) {
                           if (n > 10)
                               throw CapExceededError(
                                   "the a2n witness a^(2^" + std::to_string(n) +
                                   ") is too long to pump at desk scale");
                           return Word(std::size_t{1} << std::max<std::size_t>(n, 1), a);
                       }});

        return out;
    }();
    return languages;
}

/// Looks up a built-in language by name; nullptr when absent.
inline const RegisteredLanguage* find_language(std::string_view name) {
    for (const RegisteredLanguage& lang : builtin_languages()) {
        if (lang.predicate.name == name) return &lang;
    }
    return nullptr;
}

} // namespace cfg

#endif // CFG_PUMPING_HPP
