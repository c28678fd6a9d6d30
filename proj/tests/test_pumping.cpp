/* test_pumping.cpp -- decomposition, pumping checks, refutation certificates */

#include <catch2/catch_amalgamated.hpp>

#include <cstddef>
#include <string>
#include <vector>

#include "cfg/decide.hpp"
#include "cfg/grammar.hpp"
#include "cfg/pumping.hpp"
#include "cfg/transform.hpp"

#include "corpus.hpp"

using namespace cfg;

namespace {

Word rep(std::string_view chars, std::size_t times) {
    Word out;
    for (std::size_t i = 0; i < times; ++i) {
        Word part = corpus::w(chars);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

Word cat(std::initializer_list<Word> parts) {
    Word out;
    for (const Word& part : parts) out.insert(out.end(), part.begin(), part.end());
    return out;
}

bool same_split(const PumpDecomposition& a, const PumpDecomposition& b) {
    return a.u == b.u && a.v == b.v && a.w == b.w && a.x == b.x && a.y == b.y;
}

/// Split counting by a plain filter over all quadruples, structured
/// nothing like the enumeration in refute_cfl.
std::size_t count_legal_splits(std::size_t len, std::size_t n) {
    std::size_t count = 0;
    for (std::size_t lu = 0; lu <= len; ++lu)
        for (std::size_t lv = 0; lv <= len; ++lv)
            for (std::size_t lw = 0; lw <= len; ++lw)
                for (std::size_t lx = 0; lx <= len; ++lx) {
                    if (lu + lv + lw + lx > len) continue;
                    if (lv + lx == 0) continue;
                    if (lv + lw + lx > n) continue;
                    ++count;
                }
    return count;
}

} // namespace

TEST_CASE("cfg::pumping_constant is 2^(number of variables)") {
    CHECK(pumping_constant(to_cnf(corpus::load("anbn.cfg"))) == 16);
    CHECK(pumping_constant(to_cnf(corpus::load("acat.cfg"))) == 2);
    CHECK(pumping_constant(to_cnf(corpus::load("equal_ab.cfg"))) == 128);

    Grammar wide;
    wide.axiom = var("V0");
    for (int i = 0; i < 63; ++i) wide.variables.insert(var("V" + std::to_string(i)));
    CHECK_THROWS_AS(pumping_constant(CnfGrammar{wide, false}), std::overflow_error);
}

TEST_CASE("cfg::pump builds u v^i w x^i y") {
    PumpDecomposition d;
    d.u = corpus::w("a");
    d.v = corpus::w("b");
    d.w = corpus::w("c");
    d.x = corpus::w("d");
    d.y = corpus::w("e");
    CHECK(pump(d, 0) == corpus::w("ace"));
    CHECK(pump(d, 1) == corpus::w("abcde"));
    CHECK(pump(d, 2) == corpus::w("abbcdde"));
}

TEST_CASE("cfg::decompose splits a member word deterministically") {
    CnfGrammar anbn = to_cnf(corpus::load("anbn.cfg"));
    Word z = cat({rep("a", 8), rep("b", 8)});

    PumpDecomposition d = decompose(anbn, z);
    CHECK(d.constant_n == 16);
    CHECK(d.repeated_variable == var("S"));
    CHECK(d.u == rep("a", 6));
    CHECK(d.v == corpus::w("a"));
    CHECK(d.w == corpus::w("ab"));
    CHECK(d.x == corpus::w("b"));
    CHECK(d.y == rep("b", 6));
    CHECK(same_split(d, decompose(anbn, z)));
    CHECK(pump_check(anbn, d, 3));
}

TEST_CASE("cfg::decompose handles a chain shorter than m+1") {
    CnfGrammar acat = to_cnf(corpus::load("acat.cfg")); // one variable, N = 2
    PumpDecomposition d = decompose(acat, corpus::w("aa"));
    CHECK(d.u.empty());
    CHECK(d.v.empty());
    CHECK(d.w == corpus::w("a"));
    CHECK(d.x == corpus::w("a"));
    CHECK(d.y.empty());
    CHECK(pump_check(acat, d, 3));
}

TEST_CASE("cfg::decompose rejects unusable words") {
    CnfGrammar anbn = to_cnf(corpus::load("anbn.cfg"));
    CHECK_THROWS_MATCHES(
        decompose(anbn, rep("ab", 7)), std::invalid_argument,
        Catch::Matchers::MessageMatches(
            Catch::Matchers::ContainsSubstring("shorter than the pumping constant")));
    CHECK_THROWS_MATCHES(decompose(anbn, rep("a", 16)), std::invalid_argument,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("not in the language")));
}

TEST_CASE("cfg::decompose satisfies the pumping bounds on whole length windows") {
    for (const std::string& name : {"anbn.cfg", "aplus.cfg", "acat.cfg"}) {
        INFO(name);
        Grammar g = corpus::load(name);
        CnfGrammar core = to_cnf(g);
        std::size_t n = pumping_constant(core);
        for (const Word& z : enumerate_words(g, n + 4, n + 4)) {
            if (z.size() < n) continue;
            CAPTURE(render_word(z));
            PumpDecomposition d = decompose(core, z);
            REQUIRE(d.v.size() + d.x.size() >= 1);
            REQUIRE(d.v.size() + d.w.size() + d.x.size() <= n);
            REQUIRE(pump(d, 1) == z);
            REQUIRE(pump_check(core, d, 3));
        }
    }
}

TEST_CASE("cfg::pump_check rejects a split that does not pump") {
    CnfGrammar anbn = to_cnf(corpus::load("anbn.cfg"));
    PumpDecomposition bad;
    bad.u = Word{};
    bad.v = corpus::w("a"); // pumping only the a side unbalances the word
    bad.w = corpus::w("ab");
    bad.x = Word{};
    bad.y = corpus::w("b");
    CHECK(pump(bad, 1) == corpus::w("aabb"));
    CHECK(!pump_check(anbn, bad, 2));
}

TEST_CASE("cfg::refute_cfl refutes a^k b^k c^k") {
    const RegisteredLanguage* lang = find_language("anbncn");
    REQUIRE(lang != nullptr);
    Word witness = lang->witness(4);
    CHECK(witness == cat({rep("a", 4), rep("b", 4), rep("c", 4)}));

    RefutationOutcome outcome = refute_cfl(lang->predicate, 4, witness);
    CHECK(outcome.refuted());
    CHECK(outcome.pumpable.empty());
    CHECK(outcome.failures.size() == count_legal_splits(12, 4));
    CHECK(outcome.failures.size() == 295);

    SECTION("every recorded failure is real and minimal") {
        for (const SplitFailure& f : outcome.failures) {
            REQUIRE(pump(f.split, 1) == witness);
            REQUIRE(f.exponent <= outcome.max_exponent);
            CHECK(!lang->predicate.membership(pump(f.split, f.exponent)));
            for (std::size_t i = 0; i < f.exponent; ++i) {
                CHECK(lang->predicate.membership(pump(f.split, i)));
            }
        }
    }
}

TEST_CASE("cfg::refute_cfl cannot refute the context-free control") {
    const RegisteredLanguage* lang = find_language("anbn");
    REQUIRE(lang != nullptr);
    RefutationOutcome outcome = refute_cfl(lang->predicate, 4, lang->witness(4));
    CHECK(!outcome.refuted());
    CHECK(outcome.failures.size() + outcome.pumpable.size() == count_legal_splits(8, 4));

    SECTION("the surviving splits really pump") {
        REQUIRE(!outcome.pumpable.empty());
        for (const PumpDecomposition& d : outcome.pumpable) {
            for (std::size_t i = 0; i <= outcome.max_exponent; ++i) {
                CHECK(lang->predicate.membership(pump(d, i)));
            }
        }
    }

    SECTION("the classic boundary split is among the survivors") {
        PumpDecomposition boundary;
        boundary.u = rep("a", 3);
        boundary.v = corpus::w("a");
        boundary.w = Word{};
        boundary.x = corpus::w("b");
        boundary.y = rep("b", 3);
        bool found = false;
        for (const PumpDecomposition& d : outcome.pumpable) {
            if (same_split(d, boundary)) found = true;
        }
        CHECK(found);
    }
}

TEST_CASE("cfg::refute_cfl refutes a^(2^k) with every split failing immediately") {
    const RegisteredLanguage* lang = find_language("a2n");
    REQUIRE(lang != nullptr);
    Word witness = lang->witness(4);
    REQUIRE(witness.size() == 16);

    RefutationOutcome outcome = refute_cfl(lang->predicate, 4, witness);
    CHECK(outcome.refuted());
    CHECK(outcome.failures.size() == count_legal_splits(16, 4));
    for (const SplitFailure& f : outcome.failures) {
        // removing 1..4 letters from a^16 never leaves a power of two
        CHECK(f.exponent == 0);
    }
}

TEST_CASE("cfg::refute_cfl rejects bad inputs") {
    const LanguagePredicate& pred = find_language("anbn")->predicate;
    CHECK_THROWS_AS(refute_cfl(pred, 0, corpus::w("ab")), std::invalid_argument);
    CHECK_THROWS_AS(refute_cfl(pred, 2, corpus::w("aab")), std::invalid_argument);
    CHECK_THROWS_AS(refute_cfl(pred, 4, corpus::w("ab")), std::invalid_argument);
}

TEST_CASE("cfg::render_certificate lists splits in enumeration order") {
    const RegisteredLanguage* lang = find_language("anbncn");
    RefutationOutcome outcome = refute_cfl(lang->predicate, 1, corpus::w("abc"));
    REQUIRE(outcome.refuted());
    CHECK(render_certificate(outcome) ==
          "predicate=anbncn n=1 witness=abc\n"
          "u= v= w= x=a y=bc fails_at_i=0\n"
          "u= v=a w= x= y=bc fails_at_i=0\n"
          "u=a v= w= x=b y=c fails_at_i=0\n"
          "u=a v=b w= x= y=c fails_at_i=0\n"
          "u=ab v= w= x=c y= fails_at_i=0\n"
          "u=ab v=c w= x= y= fails_at_i=0\n");
}

TEST_CASE("cfg::render_certificate marks surviving splits") {
    const RegisteredLanguage* lang = find_language("anbn");
    RefutationOutcome outcome = refute_cfl(lang->predicate, 2, corpus::w("aabb"));
    REQUIRE(!outcome.refuted());
    std::string text = render_certificate(outcome);
    CHECK(text.find("predicate=anbn n=2 witness=aabb\n") == 0);
    CHECK(text.find(" pumps\n") != std::string::npos);
    CHECK(text.find("fails_at_i") == std::string::npos);
}

TEST_CASE("built-in language predicates") {
    SECTION("anbn") {
        const LanguagePredicate& p = find_language("anbn")->predicate;
        CHECK(p.alphabet == std::set<Symbol>{term("a"), term("b")});
        CHECK(p.membership(corpus::w("ab")));
        CHECK(p.membership(corpus::w("aaabbb")));
        CHECK(!p.membership(Word{}));
        CHECK(!p.membership(corpus::w("a")));
        CHECK(!p.membership(corpus::w("ba")));
        CHECK(!p.membership(corpus::w("aab")));
    }

    SECTION("anbncn") {
        const LanguagePredicate& p = find_language("anbncn")->predicate;
        CHECK(p.membership(corpus::w("abc")));
        CHECK(p.membership(corpus::w("aabbcc")));
        CHECK(!p.membership(Word{}));
        CHECK(!p.membership(corpus::w("acb")));
        CHECK(!p.membership(corpus::w("aabbc")));
        CHECK(!p.membership(corpus::w("abcc")));
    }

    SECTION("a2n") {
        const LanguagePredicate& p = find_language("a2n")->predicate;
        CHECK(p.membership(corpus::w("aa")));
        CHECK(p.membership(corpus::w("aaaa")));
        CHECK(p.membership(rep("a", 8)));
        CHECK(!p.membership(Word{}));
        CHECK(!p.membership(corpus::w("a")));
        CHECK(!p.membership(corpus::w("aaa")));
        CHECK(!p.membership(rep("a", 6)));
        CHECK(!p.membership(corpus::w("b")));
    }

    SECTION("witness builders") {
        CHECK(find_language("anbn")->witness(3) == corpus::w("aaabbb"));
        CHECK(find_language("anbncn")->witness(2) == corpus::w("aabbcc"));
        CHECK(find_language("a2n")->witness(1) == corpus::w("aa"));
        CHECK(find_language("a2n")->witness(4) == rep("a", 16));
        CHECK_THROWS_AS(find_language("a2n")->witness(11), CapExceededError);
    }

    SECTION("lookup") {
        CHECK(find_language("nope") == nullptr);
    }
}

TEST_CASE("cfg::detail::piece_text") {
    CHECK(detail::piece_text(Word{}) == "");
    CHECK(detail::piece_text(corpus::w("ab")) == "ab");
    CHECK(detail::piece_text(Word{term("aa"), term("b")}) == "aa b");
}
