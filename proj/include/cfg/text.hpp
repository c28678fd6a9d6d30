/* text.hpp -- the grammar file format: parsing, serialization, word syntax
 *
 * This file is part of libcfg, a small toolkit for context-free grammars.
 *
 * The format is line based:
 *
 *     # comment, runs to end of line
 *     start: S
 *     S -> a S b | a b
 *     A -> eps
 *
 * The first significant line names the axiom. Every later line is one
 * rule group `head -> alt | alt | ...`; an alternative is a nonempty
 * sequence of identifiers, or the reserved word `eps` standing alone for
 * the empty body. Identifiers are over [A-Za-z0-9_']. The variables are
 * exactly the left-hand sides (plus the axiom); every other identifier is
 * a terminal.
 */

#ifndef CFG_TEXT_HPP
#define CFG_TEXT_HPP

#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cfg/grammar.hpp"

namespace cfg {

/// Syntax or structure error in grammar text. Positions are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

namespace detail {

inline bool ident_char(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '\'';
}

struct Token {
    enum Kind { Ident, Arrow, Pipe } kind;
    std::string text;
    std::size_t column; // 1-based
};

/// Splits one line into tokens. The comment marker has already been
/// stripped by the caller.
inline std::vector<Token> tokenize_line(std::string_view line, std::size_t line_no) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
        } else if (ident_char(c)) {
            std::size_t begin = i;
            while (i < line.size() && ident_char(line[i])) ++i;
            tokens.push_back({Token::Ident, std::string(line.substr(begin, i - begin)), begin + 1});
        } else if (c == '-') {
            if (i + 1 >= line.size() || line[i + 1] != '>')
                throw ParseError(line_no, i + 1, "expected '->'");
            tokens.push_back({Token::Arrow, "->", i + 1});
            i += 2;
        } else if (c == '|') {
            tokens.push_back({Token::Pipe, "|", i + 1});
            ++i;
        } else {
            throw ParseError(line_no, i + 1, std::string("unexpected character '") + c + "'");
        }
    }
    return tokens;
}

} // namespace detail

/// Parses grammar text. The variable set is inferred: every left-hand
/// side is a variable, as is the axiom; all remaining identifiers are
/// terminals. Throws ParseError on malformed input, on a duplicate
/// production, and when rules exist but none has the axiom as head.
inline Grammar parse_grammar(std::string_view text) {
    using detail::Token;

    struct RawProduction {
        std::string head;
        std::vector<std::string> body;
        std::size_t line;
        std::size_t column;
    };

    std::string axiom_name;
    std::size_t axiom_line = 0;
    bool saw_start = false;
    std::vector<RawProduction> raw;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);

        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos) continue;

        if (!saw_start) {
            // The first significant line must be `start: <identifier>`.
            std::size_t colon = line.find(':');
            if (colon == std::string_view::npos ||
                line.substr(first, colon - first) != "start")
                throw ParseError(line_no, first + 1, "expected 'start: <identifier>'");
            std::vector<Token> name = detail::tokenize_line(line.substr(colon + 1), line_no);
            for (Token& t : name) t.column += colon + 1;
            if (name.size() != 1 || name[0].kind != Token::Ident ||
                !valid_identifier(name[0].text))
                throw ParseError(line_no, name.empty() ? line.size() + 1 : name[0].column,
                                 "expected an identifier after 'start:'");
            axiom_name = name[0].text;
            axiom_line = line_no;
            saw_start = true;
            continue;
        }

        std::vector<Token> tokens = detail::tokenize_line(line, line_no);

        // Rule line: IDENT -> alt (| alt)*
        if (tokens[0].kind != Token::Ident)
            throw ParseError(line_no, tokens[0].column, "expected a rule head identifier");
        if (tokens[0].text == "eps")
            throw ParseError(line_no, tokens[0].column, "'eps' cannot be a rule head");
        if (tokens.size() < 2 || tokens[1].kind != Token::Arrow)
            throw ParseError(line_no,
                             tokens.size() < 2 ? tokens[0].column + tokens[0].text.size()
                                               : tokens[1].column,
                             "expected '->' after the rule head");

        const std::string& head = tokens[0].text;
        std::vector<Token> alt;
        std::size_t alt_column = tokens.size() > 2 ? tokens[2].column : tokens[1].column;

        auto flush_alt = [&](std::size_t error_column) {
            if (alt.empty())
                throw ParseError(line_no, error_column, "empty alternative; use 'eps' for the empty word");
            std::vector<std::string> body;
            if (alt.size() == 1 && alt[0].text == "eps") {
                // empty body
            } else {
                for (const Token& t : alt) {
                    if (t.text == "eps")
                        throw ParseError(line_no, t.column,
                                         "'eps' cannot appear inside a longer alternative");
                    body.push_back(t.text);
                }
            }
            raw.push_back({head, std::move(body), line_no, alt_column});
            alt.clear();
        };

        for (std::size_t i = 2; i < tokens.size(); ++i) {
            const Token& t = tokens[i];
            if (t.kind == Token::Pipe) {
                flush_alt(t.column);
                alt_column = i + 1 < tokens.size() ? tokens[i + 1].column : t.column;
            } else if (t.kind == Token::Ident) {
                if (alt.empty()) alt_column = t.column;
                alt.push_back(t);
            } else {
                throw ParseError(line_no, t.column, "unexpected '->' inside a rule body");
            }
        }
        flush_alt(tokens.back().column + tokens.back().text.size());
    }

    if (!saw_start) throw ParseError(line_no ? line_no : 1, 1, "missing 'start:' line");

    std::set<std::string> heads;
    for (const RawProduction& p : raw) heads.insert(p.head);

    if (!raw.empty() && !heads.count(axiom_name))
        throw ParseError(axiom_line, 1,
                         "axiom '" + axiom_name + "' never appears as a left-hand side");

    auto classify = [&](const std::string& name) {
        return (heads.count(name) || name == axiom_name) ? var(name) : term(name);
    };

    Grammar g;
    g.axiom = var(axiom_name);
    g.variables.insert(g.axiom);
    std::set<Production> seen;
    for (const RawProduction& p : raw) {
        Production prod;
        prod.head = var(p.head);
        g.variables.insert(prod.head);
        for (const std::string& name : p.body) {
            Symbol s = classify(name);
            (is_variable(s) ? g.variables : g.terminals).insert(s);
            prod.body.push_back(std::move(s));
        }
        if (!seen.insert(prod).second)
            throw ParseError(p.line, p.column, "duplicate production '" + detail::describe(prod) + "'");
        g.productions.push_back(std::move(prod));
    }
    return g;
}

/// Serializes a grammar back to the file format. Output is canonical and
/// byte-deterministic: the axiom's rule group comes first, remaining
/// groups follow sorted by head name, and alternatives within a group are
/// sorted. parse_grammar(serialize_grammar(g)) reproduces g up to
/// production order; variables without any rule other than an empty
/// grammar's axiom are not representable and are silently dropped.
inline std::string serialize_grammar(const Grammar& g) {
    std::map<std::string, std::vector<const Production*>> groups;
    for (const Production& p : g.productions) groups[p.head.name].push_back(&p);

    auto render_body = [](const Production& p) {
        if (p.body.empty()) return std::string("eps");
        std::string out;
        for (const Symbol& s : p.body) {
            if (!out.empty()) out += ' ';
            out += s.name;
        }
        return out;
    };

    std::ostringstream out;
    out << "start: " << g.axiom.name << '\n';

    auto emit_group = [&](const std::string& head) {
        auto it = groups.find(head);
        if (it == groups.end()) return;
        std::vector<std::string> alts;
        alts.reserve(it->second.size());
        for (const Production* p : it->second) alts.push_back(render_body(*p));
        std::sort(alts.begin(), alts.end());
        out << head << " ->";
        for (std::size_t i = 0; i < alts.size(); ++i)
            out << (i ? " | " : " ") << alts[i];
        out << '\n';
    };

    emit_group(g.axiom.name);
    for (const auto& [head, prods] : groups) {
        if (head != g.axiom.name) emit_group(head);
    }
    return out.str();
}

/// Parses the CLI word syntax against a grammar's alphabet. The empty
/// string and the reserved word `eps` denote the empty word. A string
/// with whitespace is split into terminal names. Otherwise, when every
/// terminal of the grammar is a single character the string is split
/// character-wise, else it is taken as one terminal name. Throws
/// std::invalid_argument when a piece is not a terminal of the grammar.
inline Word parse_word(const Grammar& g, std::string_view text) {
    if (text.empty() || text == "eps") return {};

    std::vector<std::string> names;
    if (text.find_first_of(" \t") != std::string_view::npos) {
        std::size_t i = 0;
        while (i < text.size()) {
            while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
            std::size_t begin = i;
            while (i < text.size() && text[i] != ' ' && text[i] != '\t') ++i;
            if (i > begin) names.emplace_back(text.substr(begin, i - begin));
        }
    } else {
        bool chars_only = !g.terminals.empty() &&
                          std::all_of(g.terminals.begin(), g.terminals.end(),
                                      [](const Symbol& t) { return t.name.size() == 1; });
        if (chars_only) {
            for (char c : text) names.emplace_back(1, c);
        } else {
            names.emplace_back(text);
        }
    }

    Word w;
    w.reserve(names.size());
    for (const std::string& name : names) {
        Symbol t = term(name);
        if (!g.terminals.count(t))
            throw std::invalid_argument("'" + name + "' is not a terminal of the grammar");
        w.push_back(std::move(t));
    }
    return w;
}

/// Renders a word for output: `eps` for the empty word, the concatenated
/// characters when every symbol is a single character, space-separated
/// names otherwise.
inline std::string render_word(const Word& w) {
    if (w.empty()) return "eps";
    bool chars_only = std::all_of(w.begin(), w.end(),
                                  [](const Symbol& s) { return s.name.size() == 1; });
    std::string out;
    for (const Symbol& s : w) {
        if (!chars_only && !out.empty()) out += ' ';
        out += s.name;
    }
    return out;
}

} // namespace cfg

#endif // CFG_TEXT_HPP
