/* cli.hpp -- the `cfg` command line tool
 *
 * This file is part of libcfg, a small toolkit for context-free grammars.
 *
 * One verb per library operation, batch style: read files, write the
 * product to stdout, diagnostics to stderr. Exit codes are uniform across
 * verbs: 0 for success (and for "yes" on query verbs), 1 for "no", 2 for
 * any error (unreadable file, syntax error, bad word, exceeded cap).
 */

#ifndef CFG_CLI_HPP
#define CFG_CLI_HPP

#include <cstddef>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cfg/closure.hpp"
#include "cfg/decide.hpp"
#include "cfg/grammar.hpp"
#include "cfg/pumping.hpp"
#include "cfg/text.hpp"
#include "cfg/transform.hpp"
#include "cfg/tree.hpp"

namespace cfg::cli {

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline Grammar load_grammar(const std::string& path) {
    try {
        return parse_grammar(read_file(path));
    } catch (const ParseError& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

inline bool within_alphabet(const Grammar& g, const Word& w) {
    return std::all_of(w.begin(), w.end(),
                       [&](const Symbol& s) { return g.terminals.count(s) > 0; });
}

/// Splits a `--map key=value` argument at the first '='.
inline std::pair<std::string, std::string> split_mapping(const std::string& text) {
    std::size_t eq = text.find('=');
    if (eq == std::string::npos)
        throw std::runtime_error("mapping '" + text + "' is not of the form key=value");
    std::string key = text.substr(0, eq);
    if (!valid_identifier(key))
        throw std::runtime_error("mapping key '" + key + "' is not a terminal identifier");
    return {std::move(key), text.substr(eq + 1)};
}

/// Word syntax for homomorphism images, where no grammar fixes the
/// alphabet: `eps` or the empty string is the empty word, whitespace
/// separates names, and a plain string is split character-wise.
inline Word parse_image_word(const std::string& text) {
    if (text.empty() || text == "eps") return {};
    Word w;
    if (text.find_first_of(" \t") != std::string::npos) {
        std::istringstream in(text);
        std::string name;
        while (in >> name) w.push_back(term(name));
    } else {
        for (char c : text) w.push_back(term(std::string(1, c)));
    }
    for (const Symbol& s : w) {
        if (!valid_identifier(s.name))
            throw std::runtime_error("'" + s.name + "' is not a terminal identifier");
    }
    return w;
}

inline void emit_grammar(std::ostream& out, const Grammar& g, bool generates_epsilon) {
    if (generates_epsilon) out << "# generates epsilon\n";
    out << serialize_grammar(g);
}

inline void emit_reduction_report(std::ostream& err, const Reduction& r) {
    auto names = [](const std::set<Symbol>& symbols) {
        std::string out;
        for (const Symbol& s : symbols) {
            if (!out.empty()) out += ' ';
            out += s.name;
        }
        return out;
    };
    if (r.epsilon_removed)
        err << "epsilon productions removed: " << r.epsilon_removed << '\n';
    if (r.unit_removed) err << "unit productions removed: " << r.unit_removed << '\n';
    if (!r.nongenerating.empty())
        err << "nongenerating symbols removed: " << names(r.nongenerating) << '\n';
    if (!r.unreachable.empty())
        err << "unreachable symbols removed: " << names(r.unreachable) << '\n';
}

} // namespace detail

/// Runs the tool on the given arguments (without the program name).
/// Returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"context-free grammar toolkit"};
    app.name("cfg");
    app.require_subcommand(1);
    app.footer("Exit codes: 0 success or yes, 1 no, 2 error.");

    std::string grammar_path;
    std::string second_path;
    std::string word_text;
    std::size_t max_len = 0;
    std::size_t enumeration_cap = kDefaultEnumerationCap;
    std::vector<std::size_t> exponents{0, 1, 2};
    std::string language_name;
    std::size_t refute_n = 0;
    std::size_t max_exponent = 2;
    std::vector<std::string> mappings;

    auto* check = app.add_subcommand("check", "parse a grammar file and report problems");
    check->add_option("grammar", grammar_path, "grammar file")->required();

    auto* reduce_cmd = app.add_subcommand(
        "reduce", "remove epsilon productions, unit productions, and useless symbols");
    reduce_cmd->add_option("grammar", grammar_path, "grammar file")->required();

    auto* cnf_cmd = app.add_subcommand("cnf", "convert to Chomsky normal form");
    cnf_cmd->add_option("grammar", grammar_path, "grammar file")->required();

    auto* member_cmd = app.add_subcommand("member", "decide membership of a word");
    member_cmd->add_option("grammar", grammar_path, "grammar file")->required();
    member_cmd->add_option("word", word_text, "word; `eps` or '' for the empty word")
        ->required();

    auto* empty_cmd = app.add_subcommand("empty", "decide whether the language is empty");
    empty_cmd->add_option("grammar", grammar_path, "grammar file")->required();

    auto* finite_cmd = app.add_subcommand("finite", "decide whether the language is finite");
    finite_cmd->add_option("grammar", grammar_path, "grammar file")->required();

    auto* enumerate_cmd =
        app.add_subcommand("enumerate", "list all generated words up to a length");
    enumerate_cmd->add_option("grammar", grammar_path, "grammar file")->required();
    enumerate_cmd->add_option("--max-len", max_len, "maximum word length")->required();
    enumerate_cmd->add_option("--cap", enumeration_cap, "safety cap on --max-len");

    auto* pump_cmd =
        app.add_subcommand("pump", "decompose a member word per the pumping lemma");
    pump_cmd->add_option("grammar", grammar_path, "grammar file")->required();
    pump_cmd->add_option("word", word_text, "member word of length >= N")->required();
    pump_cmd->add_option("--i", exponents, "pump exponents to print")->delimiter(',');

    auto* refute_cmd = app.add_subcommand(
        "refute", "try to refute context-freeness of a built-in language");
    refute_cmd->add_option("--language", language_name, "candidate language name")
        ->required();
    refute_cmd->add_option("--n", refute_n, "pumping constant to assume")->required();
    refute_cmd->add_option("--max-i", max_exponent, "largest pump exponent to try");

    auto* union_cmd = app.add_subcommand("union", "grammar for the union of two languages");
    union_cmd->add_option("grammar1", grammar_path, "grammar file")->required();
    union_cmd->add_option("grammar2", second_path, "grammar file")->required();

    auto* concat_cmd =
        app.add_subcommand("concat", "grammar for the concatenation of two languages");
    concat_cmd->add_option("grammar1", grammar_path, "grammar file")->required();
    concat_cmd->add_option("grammar2", second_path, "grammar file")->required();

    auto* star_cmd = app.add_subcommand("star", "grammar for the Kleene star of a language");
    star_cmd->add_option("grammar", grammar_path, "grammar file")->required();

    auto* subst_cmd = app.add_subcommand(
        "subst", "substitute a grammar's language for each terminal");
    subst_cmd->add_option("grammar", grammar_path, "grammar file")->required();
    subst_cmd->add_option("--map", mappings, "terminal=grammar-file, once per terminal")
        ->required();

    auto* hom_cmd = app.add_subcommand("hom", "apply a homomorphism to the terminals");
    hom_cmd->add_option("grammar", grammar_path, "grammar file")->required();
    hom_cmd->add_option("--map", mappings, "terminal=image-word, once per terminal")
        ->required();

    auto* tree_cmd = app.add_subcommand("tree", "print a derivation tree of a member word");
    tree_cmd->add_option("grammar", grammar_path, "grammar file")->required();
    tree_cmd->add_option("word", word_text, "word; `eps` or '' for the empty word")
        ->required();

    std::vector<const char*> argv{"cfg"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.front()->help());
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (app.got_subcommand(check)) {
            Grammar g;
            try {
                g = parse_grammar(detail::read_file(grammar_path));
            } catch (const ParseError& e) {
                out << grammar_path << ": " << e.what() << '\n';
                return 1;
            }
            std::vector<std::string> violations = validate(g);
            for (const std::string& v : violations) out << grammar_path << ": " << v << '\n';
            return violations.empty() ? 0 : 1;
        }

        if (app.got_subcommand(reduce_cmd)) {
            Reduction r = reduce(detail::load_grammar(grammar_path));
            detail::emit_reduction_report(err, r);
            detail::emit_grammar(out, r.grammar, r.generates_epsilon);
            return 0;
        }

        if (app.got_subcommand(cnf_cmd)) {
            CnfGrammar c = to_cnf(detail::load_grammar(grammar_path));
            detail::emit_grammar(out, c.grammar, c.generates_epsilon);
            return 0;
        }

        if (app.got_subcommand(member_cmd)) {
            Grammar g = detail::load_grammar(grammar_path);
            Word w = parse_word(g, word_text);
            CnfGrammar core = cnf_core(g);
            // A symbol the conversion dropped as useless cannot occur in
            // any member word, even though it is a fine query symbol.
            bool yes = detail::within_alphabet(core.grammar, w) && member(core, w);
            out << (yes ? "true" : "false") << '\n';
            return yes ? 0 : 1;
        }

        if (app.got_subcommand(empty_cmd)) {
            bool yes = is_empty(detail::load_grammar(grammar_path));
            out << (yes ? "true" : "false") << '\n';
            return yes ? 0 : 1;
        }

        if (app.got_subcommand(finite_cmd)) {
            bool yes = is_finite(detail::load_grammar(grammar_path));
            out << (yes ? "true" : "false") << '\n';
            return yes ? 0 : 1;
        }

        if (app.got_subcommand(enumerate_cmd)) {
            Grammar g = detail::load_grammar(grammar_path);
            std::set<Word> words = enumerate_words(g, max_len, enumeration_cap);
            std::vector<Word> ordered(words.begin(), words.end());
            std::stable_sort(ordered.begin(), ordered.end(),
                             [](const Word& a, const Word& b) { return a.size() < b.size(); });
            for (const Word& w : ordered) out << render_word(w) << '\n';
            return 0;
        }

        if (app.got_subcommand(pump_cmd)) {
            Grammar g = detail::load_grammar(grammar_path);
            CnfGrammar core = to_cnf(g);
            PumpDecomposition d = decompose(core, parse_word(g, word_text));
            out << "n=" << d.constant_n << " u=" << cfg::detail::piece_text(d.u)
                << " v=" << cfg::detail::piece_text(d.v)
                << " w=" << cfg::detail::piece_text(d.w)
                << " x=" << cfg::detail::piece_text(d.x)
                << " y=" << cfg::detail::piece_text(d.y) << '\n';
            for (std::size_t i : exponents)
                out << "i=" << i << ' ' << render_word(pump(d, i)) << '\n';
            return 0;
        }

        if (app.got_subcommand(refute_cmd)) {
            const RegisteredLanguage* lang = find_language(language_name);
            if (!lang) {
                std::string known;
                for (const RegisteredLanguage& l : builtin_languages())
                    known += (known.empty() ? "" : ", ") + l.predicate.name;
                throw std::runtime_error("unknown language '" + language_name +
                                         "'; built in: " + known);
            }
            RefutationOutcome outcome =
                refute_cfl(lang->predicate, refute_n, lang->witness(refute_n), max_exponent);
            out << render_certificate(outcome);
            return outcome.refuted() ? 0 : 1;
        }

        if (app.got_subcommand(union_cmd) || app.got_subcommand(concat_cmd)) {
            Grammar g1 = detail::load_grammar(grammar_path);
            Grammar g2 = detail::load_grammar(second_path);
            Grammar result =
                app.got_subcommand(union_cmd) ? union_of(g1, g2) : concat(g1, g2);
            out << serialize_grammar(result);
            return 0;
        }

        if (app.got_subcommand(star_cmd)) {
            out << serialize_grammar(star(detail::load_grammar(grammar_path)));
            return 0;
        }

        if (app.got_subcommand(subst_cmd)) {
            Grammar g = detail::load_grammar(grammar_path);
            Substitution f;
            for (const std::string& m : mappings) {
                auto [key, value] = detail::split_mapping(m);
                if (!f.emplace(term(key), detail::load_grammar(value)).second)
                    throw std::runtime_error("terminal '" + key + "' mapped twice");
            }
            out << serialize_grammar(substitute(g, f));
            return 0;
        }

        if (app.got_subcommand(hom_cmd)) {
            Grammar g = detail::load_grammar(grammar_path);
            std::map<Symbol, Word> h;
            for (const std::string& m : mappings) {
                auto [key, value] = detail::split_mapping(m);
                if (!h.emplace(term(key), detail::parse_image_word(value)).second)
                    throw std::runtime_error("terminal '" + key + "' mapped twice");
            }
            out << serialize_grammar(homomorphism(g, h));
            return 0;
        }

        if (app.got_subcommand(tree_cmd)) {
            Grammar g = detail::load_grammar(grammar_path);
            Word w = parse_word(g, word_text);
            CnfGrammar core = cnf_core(g);
            if (w.empty()) {
                if (!core.generates_epsilon) {
                    err << "word is not in the language\n";
                    return 1;
                }
                out << "<eps>\n";
                return 0;
            }
            std::optional<DerivationTree> witness;
            if (detail::within_alphabet(core.grammar, w))
                witness = derivation_of(core, w);
            if (!witness) {
                err << "word is not in the language\n";
                return 1;
            }
            out << render_tree(*witness);
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    err << "error: no verb selected\n";
    return 2;
}

} // namespace cfg::cli

#endif // CFG_CLI_HPP
