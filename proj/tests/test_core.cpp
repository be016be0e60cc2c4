#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "randsub/core.hpp"
#include "randsub/error.hpp"
#include "randsub/examples.hpp"

#include "oracles.hpp"

#include <cmath>
#include <random>
#include <set>

using namespace randsub;

namespace {

std::string str(const RandomSubstitution& sub, const Word& w) { return sub.alphabet().format(w); }

ErrorKind kind_of(std::string_view text) {
    try {
        parse_spec(text);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("spec parsed unexpectedly: " << text);
    return ErrorKind::InvalidArgument;
}

} // namespace

TEST_CASE("random Fibonacci spec") {
    auto sub = parse_spec("alphabet: a b\nrule a -> ab:0.5 | ba:0.5\nrule b -> a:1\n");
    CHECK(sub.size() == 2);
    CHECK(sub.rule(0).arity() == 2);
    CHECK(sub.rule(1).arity() == 1);
    CHECK(sub.max_image_len() == 2);
    CHECK(sub.min_image_len() == 1);
    CHECK_FALSE(sub.is_deterministic());
}

TEST_CASE("identity and merged duplicates") {
    auto id = parse_spec("alphabet: a\nrule a -> a:1\n");
    CHECK(id.is_deterministic());
    CHECK(id.size() == 1);

    auto merged = parse_spec("alphabet: a\nrule a -> aa:0.5 | aa:0.5\n");
    REQUIRE(merged.rule(0).arity() == 1);
    CHECK(merged.rule(0).images[0].probability == doctest::Approx(1.0));
    CHECK(str(merged, merged.rule(0).images[0].word) == "aa");
}

TEST_CASE("comments, fractions and uniform defaults") {
    auto sub = parse_spec("# header\n\nalphabet: x y   # two letters\nrule x -> xy:1/3 | yx:2/3\nrule y -> x\n");
    CHECK(sub.rule(0).images[0].probability == doctest::Approx(1.0 / 3.0));
    auto uniform = load_example("full-shift-2");
    for (const auto& im : uniform.rule(0).images)
        CHECK(im.probability == doctest::Approx(0.25));
}

TEST_CASE("multi-character letters use dotted words") {
    auto sub = parse_spec("alphabet: aa b\nrule aa -> aa.b | b.aa\nrule b -> aa\n");
    CHECK_FALSE(sub.alphabet().single_char());
    Word w = sub.alphabet().parse_word("aa.b.aa");
    CHECK(w.size() == 3);
    CHECK(sub.alphabet().format(w) == "aa.b.aa");
}

TEST_CASE("spec errors") {
    CHECK(kind_of("rule a -> a\n") == ErrorKind::Syntax);
    CHECK(kind_of("alphabet: a b\nrule a -> ab\n") == ErrorKind::Syntax);
    CHECK(kind_of("alphabet: a\nrule a -> a\nrule a -> a\n") == ErrorKind::Syntax);
    CHECK(kind_of("alphabet: a\nrule a -> ac\n") == ErrorKind::UnknownLetter);
    CHECK(kind_of("alphabet: a\nrule c -> a\n") == ErrorKind::UnknownLetter);
    CHECK(kind_of("alphabet: a\nrule a -> a:0.5 | aa:0.4\n") == ErrorKind::BadProbability);
    CHECK(kind_of("alphabet: a\nrule a -> a:1.5\n") == ErrorKind::BadProbability);
    CHECK(kind_of("alphabet: a\nrule a -> a:0.5 | aa\n") == ErrorKind::Syntax);
    CHECK(kind_of("alphabet: a\nrule a -> a | \n") == ErrorKind::EmptyImage);
}

TEST_CASE("syntax errors carry a position") {
    try {
        parse_spec("alphabet: a\nrule a ->> a\n");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() >= 1);
    }
}

TEST_CASE("serialize round trip") {
    for (const auto& ex : bundled_examples()) {
        auto sub = parse_spec(ex.spec);
        auto again = parse_spec(serialize(sub));
        CHECK(serialize(again) == serialize(sub));
    }
}

TEST_CASE("probability assignments") {
    CHECK(parse_probability("1/4") == doctest::Approx(0.25));
    CHECK(parse_probability("0.125") == doctest::Approx(0.125));
    CHECK_THROWS_AS(parse_probability("1/0"), Error);
    auto pa = parse_probability_assignment("0.3 0.7 ; 1");
    REQUIRE(pa.size() == 2);
    CHECK(pa[0][1] == doctest::Approx(0.7));
    auto fib = load_example("random-fibonacci").with_probabilities(pa);
    CHECK(fib.rule(0).images[0].probability == doctest::Approx(0.3));
    CHECK_THROWS_AS(load_example("random-fibonacci").with_probabilities({{1.0}, {1.0}}), Error);
}

TEST_CASE("realisations of the Fibonacci letter a") {
    auto sub = load_example("random-fibonacci");
    auto r = realisations(sub, sub.alphabet().parse_word("a"));
    REQUIRE(r.size() == 2);
    CHECK(str(sub, r[0].word) == "ba");
    CHECK(str(sub, r[1].word) == "ab");
    CHECK(r[0].probability == doctest::Approx(0.5));
}

TEST_CASE("realisations of aba") {
    const double p = 0.3, q = 0.7;
    auto sub = parse_spec("alphabet: a b\nrule a -> ab:0.3 | ba:0.7\nrule b -> aa\n");
    auto r = realisations(sub, sub.alphabet().parse_word("aba"));
    std::map<std::string, double> got;
    for (const auto& x : r)
        got[str(sub, x.word)] = x.probability;
    std::map<std::string, double> want{{"abaaab", p * p}, {"abaaba", p * q}, {"baaaab", q * p}, {"baaaba", q * q}};
    REQUIRE(got.size() == want.size());
    for (const auto& [w, pr] : want)
        CHECK(got[w] == doctest::Approx(pr).epsilon(1e-12));
}

TEST_CASE("deterministic substitutions have one realisation") {
    auto sub = parse_spec("alphabet: a b\nrule a -> ab\nrule b -> a\n");
    auto r = realisations(sub, sub.alphabet().parse_word("abaab"));
    REQUIRE(r.size() == 1);
    CHECK(r[0].probability == doctest::Approx(1.0));
    CHECK(str(sub, r[0].word) == oracle::deterministic_iterate({{'a', "ab"}, {'b', "a"}}, "abaab", 1));
}

TEST_CASE("power realisations") {
    auto sub = parse_spec("alphabet: a b\nrule a -> ab | ba\nrule b -> aa\n");
    std::set<std::string> got;
    for (const auto& x : power_realisations(sub, 0, 2))
        got.insert(str(sub, x.word));
    CHECK(got == std::set<std::string>{"abaa", "baaa", "aaab", "aaba"});

    auto zero = power_realisations(sub, 1, 0);
    REQUIRE(zero.size() == 1);
    CHECK(str(sub, zero[0].word) == "b");

    auto pd = load_example("period-doubling");
    for (const auto& x : power_realisations(pd, 0, 2))
        CHECK(x.word.size() == 4);
}

TEST_CASE("realisation budget") {
    auto sub = load_example("full-shift-2");
    Word u = sub.alphabet().parse_word("0000000");
    CHECK_THROWS_AS(realisations(sub, u, 100), Error);
    try {
        realisations(sub, u, 100);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BudgetExceeded);
    }
}

TEST_CASE("property: realisation probabilities sum to one and lengths are bounded") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 3;
        std::vector<std::string> names;
        for (std::size_t a = 0; a < n; ++a)
            names.push_back(std::string(1, static_cast<char>('a' + a)));
        std::vector<Rule> rules;
        for (std::size_t a = 0; a < n; ++a) {
            Rule rule{static_cast<Letter>(a), {}};
            const std::size_t k = 1 + rng() % 3;
            std::vector<double> w(k);
            double total = 0.0;
            for (auto& x : w)
                total += x = 1.0 + static_cast<double>(rng() % 9);
            for (std::size_t i = 0; i < k; ++i) {
                Word img;
                const std::size_t len = 1 + rng() % 3;
                for (std::size_t j = 0; j < len; ++j)
                    img.push_back(static_cast<Letter>(rng() % n));
                rule.images.push_back({img, w[i] / total});
            }
            rules.push_back(std::move(rule));
        }
        RandomSubstitution sub(Alphabet(names), rules);
        Word u;
        const std::size_t len = 1 + rng() % 4;
        for (std::size_t i = 0; i < len; ++i)
            u.push_back(static_cast<Letter>(rng() % n));
        double sum = 0.0;
        for (const auto& r : realisations(sub, u)) {
            sum += r.probability;
            CHECK(r.word.size() >= u.size() * sub.min_image_len());
            CHECK(r.word.size() <= u.size() * sub.max_image_len());
        }
        CHECK(std::abs(sum - 1.0) < 1e-9);
    }
}
