/* test_grammar.cpp -- grammar value types, validation, and the file format */

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "cfg/grammar.hpp"
#include "cfg/text.hpp"

#include "corpus.hpp"

using namespace cfg;

TEST_CASE("symbols order by kind then name") {
    CHECK(var("S") == var("S"));
    CHECK(var("S") != term("S"));
    CHECK(var("Z") < term("a")); // variables first
    CHECK(term("a") < term("b"));
    CHECK(is_variable(var("S")));
    CHECK(is_terminal(term("a")));
}

TEST_CASE("make_grammar collects symbol sets from the productions") {
    Grammar g = make_grammar(var("S"), {
                                           {var("S"), {term("a"), var("S"), term("b")}},
                                           {var("S"), {term("a"), term("b")}},
                                       });
    CHECK(g.variables == std::set<Symbol>{var("S")});
    CHECK(g.terminals == std::set<Symbol>{term("a"), term("b")});
    CHECK(g.productions.size() == 2);
    CHECK(g.axiom == var("S"));
    CHECK(well_formed(g));
}

TEST_CASE("validate reports each violation") {
    SECTION("axiom outside the variable set") {
        Grammar g = make_grammar(var("S"), {{var("S"), {term("a")}}});
        g.axiom = var("T");
        auto violations = validate(g);
        REQUIRE(violations.size() == 1);
        CHECK(violations[0].find("axiom 'T'") != std::string::npos);
    }

    SECTION("undeclared body symbol") {
        Grammar g = make_grammar(var("S"), {{var("S"), {term("a")}}});
        g.productions.push_back({var("S"), {term("z")}});
        auto violations = validate(g);
        REQUIRE(violations.size() == 1);
        CHECK(violations[0].find("terminal 'z'") != std::string::npos);
    }

    SECTION("duplicate production") {
        Grammar g = make_grammar(var("S"), {{var("S"), {term("a")}}});
        g.productions.push_back({var("S"), {term("a")}});
        auto violations = validate(g);
        REQUIRE(violations.size() == 1);
        CHECK(violations[0].find("duplicate production 'S -> a'") != std::string::npos);
    }

    SECTION("a name used as both variable and terminal") {
        Grammar g = make_grammar(var("S"), {{var("S"), {term("a")}}});
        g.terminals.insert(term("S"));
        g.productions.push_back({var("S"), {term("S")}});
        auto violations = validate(g);
        CHECK(!violations.empty());
        CHECK(violations[0].find("both a variable and a terminal") != std::string::npos);
    }

    SECTION("invalid identifiers") {
        Grammar g = make_grammar(var("S"), {{var("S"), {term("a!")}}});
        auto violations = validate(g);
        CHECK(!violations.empty());
        CHECK(violations[0].find("invalid identifier 'a!'") != std::string::npos);

        CHECK(!valid_identifier("eps"));
        CHECK(!valid_identifier(""));
        CHECK(!valid_identifier("a b"));
        CHECK(valid_identifier("A'"));
        CHECK(valid_identifier("_T_a"));
        CHECK(valid_identifier("x9"));
    }

    SECTION("terminal-kind head") {
        Grammar g = make_grammar(var("S"), {{var("S"), {term("a")}}});
        g.productions.push_back({term("a"), {term("a")}});
        auto violations = validate(g);
        CHECK(!violations.empty());
        CHECK(violations[0].find("head") != std::string::npos);
    }
}

TEST_CASE("cfg::parse_grammar on the balanced-block grammar") {
    Grammar g = parse_grammar("start: S\nS -> a S b | a b\n");
    CHECK(g.axiom == var("S"));
    CHECK(g.variables == std::set<Symbol>{var("S")});
    CHECK(g.terminals == std::set<Symbol>{term("a"), term("b")});
    REQUIRE(g.productions.size() == 2);
    CHECK(g.productions[0] == Production{var("S"), {term("a"), var("S"), term("b")}});
    CHECK(g.productions[1] == Production{var("S"), {term("a"), term("b")}});
}

TEST_CASE("cfg::parse_grammar syntax") {
    SECTION("comments, blank lines, and missing final newline") {
        Grammar g = parse_grammar("# top\n\nstart: S # axiom\n\nS -> a # rule\nS -> b");
        CHECK(g.productions.size() == 2);
        CHECK(g.terminals == std::set<Symbol>{term("a"), term("b")});
    }

    SECTION("epsilon alternatives become empty bodies") {
        Grammar g = parse_grammar("start: S\nS -> a S a | eps\n");
        REQUIRE(g.productions.size() == 2);
        CHECK(g.productions[1].body.empty());
    }

    SECTION("primed and underscored identifiers") {
        Grammar g = parse_grammar("start: S'\nS' -> _T_a x9\n_T_a -> a\n");
        CHECK(g.variables == std::set<Symbol>{var("S'"), var("_T_a")});
        CHECK(g.terminals == std::set<Symbol>{term("x9"), term("a")});
    }

    SECTION("an axiom-only file is the empty grammar") {
        Grammar g = parse_grammar("start: S\n");
        CHECK(g.axiom == var("S"));
        CHECK(g.variables == std::set<Symbol>{var("S")});
        CHECK(g.terminals.empty());
        CHECK(g.productions.empty());
        CHECK(well_formed(g));
    }

    SECTION("variables are exactly the left-hand sides plus the axiom") {
        Grammar g = parse_grammar("start: S\nS -> A b\nA -> a\n");
        CHECK(g.variables == std::set<Symbol>{var("S"), var("A")});
        CHECK(g.terminals == std::set<Symbol>{term("a"), term("b")});
    }
}

TEST_CASE("cfg::parse_grammar errors carry line and column") {
    auto error_at = [](const std::string& text, std::size_t line, std::size_t column,
                       const std::string& needle) {
        try {
            parse_grammar(text);
            FAIL("expected a ParseError for: " << text);
        } catch (const ParseError& e) {
            CHECK(e.line() == line);
            CHECK(e.column() == column);
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };

    error_at("", 1, 1, "missing 'start:'");
    error_at("S -> a\n", 1, 1, "expected 'start: <identifier>'");
    error_at("start: \n", 1, 8, "expected an identifier");
    error_at("start: eps\n", 1, 8, "expected an identifier");
    error_at("start: S\nS -> a $ b\n", 2, 8, "unexpected character '$'");
    error_at("start: S\nS - a\n", 2, 3, "expected '->'");
    error_at("start: S\nS a b\n", 2, 3, "expected '->' after the rule head");
    error_at("start: S\neps -> a\n", 2, 1, "'eps' cannot be a rule head");
    error_at("start: S\nS -> a eps\n", 2, 8, "inside a longer alternative");
    error_at("start: S\nS -> a | | b\n", 2, 10, "empty alternative");
    error_at("start: S\nS -> a |\n", 2, 9, "empty alternative");
    error_at("start: S\nS -> a\nS -> a\n", 3, 6, "duplicate production 'S -> a'");
    error_at("start: S\nA -> a\n", 1, 1, "axiom 'S' never appears as a left-hand side");
}

TEST_CASE("cfg::serialize_grammar is canonical") {
    SECTION("axiom block first, groups sorted, alternatives sorted") {
        Grammar g = parse_grammar("start: S\nB -> b\nS -> B A\nA -> a\nS -> a\n");
        CHECK(serialize_grammar(g) == "start: S\nS -> B A | a\nA -> a\nB -> b\n");
    }

    SECTION("epsilon bodies print as eps") {
        Grammar g = corpus::load("even_pal.cfg");
        CHECK(serialize_grammar(g) == "start: S\nS -> a S a | b S b | eps\n");
    }

    SECTION("the empty grammar prints as a bare start line") {
        CHECK(serialize_grammar(parse_grammar("start: S\n")) == "start: S\n");
    }
}

TEST_CASE("the corpus parses, validates, and round-trips") {
    for (const std::string& name : corpus::all_names()) {
        INFO(name);
        Grammar g = corpus::load(name);
        CHECK(validate(g).empty());
        Grammar again = parse_grammar(serialize_grammar(g));
        CHECK(equal_modulo_order(g, again));
    }
}

namespace {

/// A random grammar in which every variable has at least one rule and
/// every terminal occurs in some body, which is exactly the class the
/// file format can represent.
Grammar random_representable_grammar(std::mt19937& rng) {
    const std::vector<std::string> var_names{"S", "A", "B", "C"};
    const std::vector<std::string> term_names{"a", "b", "c"};
    std::uniform_int_distribution<std::size_t> var_count(1, var_names.size());
    std::uniform_int_distribution<std::size_t> body_len(0, 4);
    std::uniform_int_distribution<std::size_t> rule_count(1, 3);

    std::size_t nvars = var_count(rng);
    std::set<Production> productions;
    for (std::size_t v = 0; v < nvars; ++v) {
        std::size_t rules = rule_count(rng);
        for (std::size_t r = 0; r < rules; ++r) {
            Production p{var(var_names[v]), {}};
            std::size_t len = body_len(rng);
            for (std::size_t i = 0; i < len; ++i) {
                if (std::uniform_int_distribution<int>(0, 1)(rng)) {
                    p.body.push_back(
                        var(var_names[std::uniform_int_distribution<std::size_t>(
                            0, nvars - 1)(rng)]));
                } else {
                    p.body.push_back(
                        term(term_names[std::uniform_int_distribution<std::size_t>(
                            0, term_names.size() - 1)(rng)]));
                }
            }
            productions.insert(std::move(p));
        }
    }
    return make_grammar(var("S"),
                        std::vector<Production>(productions.begin(), productions.end()));
}

} // namespace

TEST_CASE("serialize/parse round-trip holds on random representable grammars") {
    std::mt19937 rng(20240817);
    for (int i = 0; i < 200; ++i) {
        Grammar g = random_representable_grammar(rng);
        INFO("iteration " << i << ":\n" << serialize_grammar(g));
        REQUIRE(validate(g).empty());
        Grammar again = parse_grammar(serialize_grammar(g));
        REQUIRE(equal_modulo_order(g, again));
    }
}

TEST_CASE("cfg::parse_word applies the word syntax") {
    Grammar anbn = corpus::load("anbn.cfg");

    SECTION("single-character alphabets split character-wise") {
        CHECK(parse_word(anbn, "aabb") == corpus::w("aabb"));
    }

    SECTION("eps and the empty string are the empty word") {
        CHECK(parse_word(anbn, "eps").empty());
        CHECK(parse_word(anbn, "").empty());
    }

    SECTION("whitespace separates terminal names") {
        CHECK(parse_word(anbn, "a a b b") == corpus::w("aabb"));
    }

    SECTION("multi-character terminals need no spaces when unambiguous") {
        Grammar g = parse_grammar("start: S\nS -> ab S | ab\n");
        Word w = parse_word(g, "ab");
        REQUIRE(w.size() == 1);
        CHECK(w[0] == term("ab"));
        CHECK(parse_word(g, "ab ab").size() == 2);
    }

    SECTION("symbols outside the alphabet are rejected") {
        CHECK_THROWS_AS(parse_word(anbn, "abz"), std::invalid_argument);
        CHECK_THROWS_AS(parse_word(anbn, "a z b"), std::invalid_argument);
    }
}

TEST_CASE("cfg::render_word") {
    CHECK(render_word({}) == "eps");
    CHECK(render_word(corpus::w("aab")) == "aab");
    CHECK(render_word({term("ab"), term("c")}) == "ab c");
}
