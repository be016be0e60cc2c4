#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "randsub/dynamics.hpp"
#include "randsub/error.hpp"
#include "randsub/examples.hpp"
#include "randsub/language.hpp"
#include "randsub/series.hpp"

#include "generators.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace randsub;

namespace {

Word w(const RandomSubstitution& sub, std::string_view text) { return sub.alphabet().parse_word(text); }

// trace([[1,1],[1,0]]^n), the Lucas numbers
std::size_t lucas(std::size_t n) {
    std::size_t a = 2, b = 1;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t c = a + b;
        a = b;
        b = c;
    }
    return a;
}

} // namespace

TEST_CASE("strong affixes") {
    auto fib = load_example("random-fibonacci");
    CHECK(is_strong_affix(w(fib, "ab"), w(fib, "abab")));
    CHECK_FALSE(is_strong_affix(w(fib, "ab"), w(fib, "ba")));
    CHECK(is_strong_affix(w(fib, "aba"), w(fib, "aba")));
    CHECK_THROWS_AS(is_strong_affix(w(fib, "abab"), w(fib, "ab")), Error);
}

TEST_CASE("splitting pairs") {
    auto fib = load_example("random-fibonacci");
    auto entries = splitting_pairs(fib, 1);
    REQUIRE(entries.size() == 2);
    REQUIRE(entries[0].pair);
    CHECK(fib.alphabet().format(entries[0].pair->shorter) == "ba");
    CHECK(fib.alphabet().format(entries[0].pair->longer) == "ab");
    CHECK_FALSE(entries[1].pair);

    auto ps = load_example("power-splitting");
    auto e = splitting_pairs(ps, 2);
    REQUIRE(e.size() == 4);
    CHECK_FALSE(e[0].pair);
    CHECK_FALSE(e[1].pair);
    CHECK(e[2].power == 2);
    CHECK(e[2].pair);
    CHECK(e[3].pair);

    auto det = parse_spec("alphabet: a b\nrule a -> ab\nrule b -> a\n");
    for (const auto& entry : splitting_pairs(det, 4))
        CHECK_FALSE(entry.pair);

    auto redundant = load_example("redundant-image");
    for (const auto& entry : splitting_pairs(redundant, 3))
        CHECK_FALSE(entry.pair);
}

TEST_CASE("entropy bracket of period doubling") {
    auto pd = load_example("period-doubling");
    auto b = entropy_bracket(pd, 12, 1);
    const double exact = 2.0 / 3.0 * std::numbers::ln2;
    CHECK(b.lower >= std::numbers::ln2 / 6.0 - 1e-12);
    REQUIRE(b.lower_witness);
    CHECK(pd.alphabet().format(b.lower_witness->shorter) == "01");
    CHECK(pd.alphabet().format(b.lower_witness->longer) == "10");
    CHECK(b.witness_max_length == 2);
    CHECK(b.witness_frequency == doctest::Approx(2.0 / 3.0));
    for (const auto& [ell, v] : b.upper_profile)
        CHECK(v >= exact - 1e-9);
    CHECK(b.lower <= exact);
    CHECK_FALSE(b.caveat);
}

TEST_CASE("entropy bracket of zero-entropy and full-shift examples") {
    auto redundant = entropy_bracket(load_example("redundant-image"), 12, 3);
    CHECK(redundant.lower == 0.0);
    CHECK_FALSE(redundant.lower_witness);
    for (const auto& [ell, v] : redundant.upper_profile)
        CHECK(v <= std::numbers::ln2 / static_cast<double>(ell) + 1e-12);

    auto full = entropy_bracket(load_example("full-shift-2"), 8, 1);
    for (const auto& [ell, v] : full.upper_profile)
        CHECK(std::abs(v - std::numbers::ln2) < 1e-12);
    CHECK(full.lower <= std::numbers::ln2);
}

TEST_CASE("periodic census of bundled examples") {
    auto sofic = periodic_census(load_example("sofic-ab"), 8, 16);
    for (std::size_t n = 1; n <= 8; ++n)
        CHECK(sofic.count(n) == (n % 2 ? 0 : (std::size_t{1} << (n / 2 + 1)) - 2));

    auto golden = periodic_census(load_example("golden"), 10, 20);
    for (std::size_t n = 1; n <= 10; ++n)
        CHECK(golden.count(n) == lucas(n));

    auto full = periodic_census(load_example("full-shift-2"), 6, 12);
    for (std::size_t n = 1; n <= 6; ++n)
        CHECK(full.count(n) == (std::size_t{1} << n));

    // The Fibonacci word has no factor u^e with e > 2 + φ, so periods up to 8
    // die once the horizon passes 3.62 · 8.
    auto fib = parse_spec("alphabet: a b\nrule a -> ab\nrule b -> a\n");
    for (std::size_t n = 1; n <= 8; ++n)
        CHECK(periodic_census(fib, 8, 30).count(n) == 0);
    // At horizon 2n the square of a conjugate of abaababa is still a factor.
    CHECK(periodic_census(fib, 8, 16).count(8) == 8);
}

TEST_CASE("period doubling census agrees with desubstitution") {
    const oracle::Rules rules{{'0', {"01", "10"}}, {'1', {"00"}}};
    const auto short_words = oracle::language(rules, 4);
    std::map<std::string, bool> memo;
    auto pd = load_example("period-doubling");
    for (std::size_t horizon : {18, 24}) {
        auto census = periodic_census(pd, 9, horizon);
        for (std::size_t n = 1; n <= 9; ++n) {
            std::size_t count = 0;
            for (std::size_t x = 0; x < (std::size_t{1} << n); ++x) {
                std::string root;
                for (std::size_t i = 0; i < n; ++i)
                    root.push_back((x >> i) & 1 ? '1' : '0');
                std::string line;
                while (line.size() < horizon + n)
                    line += root;
                bool ok = true;
                for (std::size_t s = 0; s < n && ok; ++s)
                    ok = oracle::legal_by_desubstitution(rules, 2, short_words, line.substr(s, horizon), memo);
                count += ok;
            }
            CAPTURE(horizon);
            CAPTURE(n);
            CHECK(census.count(n) == count);
        }
    }
}

TEST_CASE("census roots and threads") {
    auto sub = load_example("sofic-ab");
    auto one = periodic_census(sub, 6, 12, true, kDefaultWindowBudget, 1);
    auto many = periodic_census(sub, 6, 12, true, kDefaultWindowBudget, 4);
    CHECK(one.counts == many.counts);
    CHECK(one.roots == many.roots);
    REQUIRE(one.roots[1].size() == 2);
    CHECK(sub.alphabet().format(one.roots[1][0]) == "ab");
    CHECK(std::is_sorted(one.roots[3].begin(), one.roots[3].end()));
    CHECK_THROWS_AS(periodic_census(sub, 6, 5), Error);
}

TEST_CASE("census counts shrink as the horizon grows") {
    auto sub = load_example("period-doubling");
    auto table = legal_words(sub, 22);
    auto prev = periodic_census(table, 8, 8);
    for (std::size_t h = 10; h <= 22; h += 2) {
        auto next = periodic_census(table, 8, h);
        for (std::size_t n = 1; n <= 8; ++n)
            CHECK(next.count(n) <= prev.count(n));
        prev = next;
    }
}

TEST_CASE("zeta series") {
    auto sofic = zeta_series(periodic_census(load_example("sofic-ab"), 12, 24), 12);
    auto want = oracle::divide_series({1, 0, -1}, {1, 0, -2}, 13);
    for (std::size_t k = 0; k <= 12; ++k)
        CHECK(std::abs(sofic.coefficients[k] - want[k]) < 1e-9);

    auto golden = zeta_series(periodic_census(load_example("golden"), 10, 20), 10);
    auto gwant = oracle::divide_series({1}, {1, -1, -1}, 11);
    for (std::size_t k = 0; k <= 10; ++k)
        CHECK(std::abs(golden.coefficients[k] - gwant[k]) < 1e-9);

    PeriodicCensus empty;
    empty.horizon = 10;
    empty.n_max = 5;
    empty.counts.assign(5, 0);
    auto one = zeta_series(empty, 5);
    CHECK(one.coefficients[0] == 1.0);
    for (std::size_t k = 1; k <= 5; ++k)
        CHECK(one.coefficients[k] == 0.0);

    CHECK_THROWS_AS(zeta_series(empty, 6), Error);
}

TEST_CASE("power series exp and log") {
    // exp(z) = Σ z^k / k!
    auto e = PowerSeries({0, 1, 0, 0, 0, 0}).exp();
    double fact = 1.0;
    for (std::size_t k = 0; k <= 5; ++k) {
        if (k > 0)
            fact *= static_cast<double>(k);
        CHECK(e[k] == doctest::Approx(1.0 / fact));
    }
    // log(1 / (1 - z)) = Σ z^k / k
    auto l = PowerSeries({1, 1, 1, 1, 1, 1}).log();
    for (std::size_t k = 1; k <= 5; ++k)
        CHECK(l[k] == doctest::Approx(1.0 / static_cast<double>(k)));
    CHECK_THROWS_AS(PowerSeries({1, 1}).exp(), Error);
    CHECK_THROWS_AS(PowerSeries({2, 1}).log(), Error);
}

TEST_CASE("property: exp and log are inverse") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> c(1 + rng() % 14);
        c[0] = 0.0;
        for (std::size_t k = 1; k < c.size(); ++k)
            c[k] = unif(rng);
        auto back = PowerSeries(c).exp().log();
        for (std::size_t k = 0; k < c.size(); ++k)
            CHECK(std::abs(back[k] - c[k]) < 1e-9 * std::max(1.0, std::abs(c[k])));
    }
}

TEST_CASE("mixing gaps") {
    auto pd = load_example("period-doubling");
    auto gaps = mixing_gaps(pd, w(pd, "11"), w(pd, "11"), 10);
    CHECK(gaps == std::vector<std::size_t>{2, 4, 6, 8, 10});

    auto golden = load_example("golden");
    CHECK(mixing_gaps(golden, w(golden, "0"), w(golden, "0"), 6) == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6});

    auto full = load_example("full-shift-2");
    CHECK(mixing_gaps(full, w(full, "101"), w(full, "11"), 5).size() == 6);

    CHECK_THROWS_AS(mixing_gaps(golden, w(golden, "11"), w(golden, "0"), 3), Error);
}

TEST_CASE("property: census divisor consistency and zeta round trip") {
    std::mt19937_64 rng(17);
    auto check = [](const RandomSubstitution& sub) {
        CAPTURE(serialize(sub));
        auto census = periodic_census(sub, 6, 12);
        for (std::size_t n = 1; n <= 6; ++n)
            for (std::size_t d = 1; d < n; ++d)
                if (n % d == 0)
                    CHECK(census.count(n) >= census.count(d));
        auto z = zeta_series(census, 6);
        auto back = z.coefficients.log();
        for (std::size_t n = 1; n <= 6; ++n)
            CHECK(std::abs(back[n] - z.log_terms[n]) < 1e-9 * std::max(1.0, z.log_terms[n]));
    };
    for (const char* name : {"random-fibonacci", "period-doubling", "golden", "sofic-ab", "power-splitting"})
        check(load_example(name));
    for (int trial = 0; trial < 30; ++trial)
        check(gen::primitive_substitution(rng, {3, 2, 3}));
}

TEST_CASE("bundled exact entropies lie inside the bracket") {
    for (const auto& ex : bundled_examples()) {
        if (!ex.exact_entropy)
            continue;
        CAPTURE(ex.name);
        auto b = entropy_bracket(parse_spec(ex.spec), 10, 2);
        CHECK(b.lower <= *ex.exact_entropy + 1e-12);
        for (const auto& [ell, v] : b.upper_profile)
            CHECK(*ex.exact_entropy <= v + 1e-12);
    }
}

TEST_CASE("upper bound does not increase with lmax") {
    auto sub = load_example("random-fibonacci");
    double prev = entropy_bracket(sub, 1, 1).upper;
    for (std::size_t l = 2; l <= 12; ++l) {
        double next = entropy_bracket(sub, l, 1).upper;
        CHECK(next <= prev);
        prev = next;
    }
}

TEST_CASE("more periods reveal more periodic sequences") {
    // distinct sequences of least period n, by Möbius inversion over divisors
    auto primitive_counts = [](const PeriodicCensus& c) {
        std::vector<long> least(c.n_max + 1, 0);
        for (std::size_t n = 1; n <= c.n_max; ++n) {
            least[n] = static_cast<long>(c.count(n));
            for (std::size_t d = 1; d < n; ++d)
                if (n % d == 0)
                    least[n] -= least[d];
        }
        return least;
    };
    for (auto [name, horizon] : {std::pair{"period-doubling", 16}, {"golden", 16}, {"sofic-ab", 16}, {"full-shift-2", 10}}) {
        CAPTURE(name);
        const auto h = static_cast<std::size_t>(horizon);
        auto table = legal_words(load_example(name), h);
        auto small = primitive_counts(periodic_census(table, h / 4, h));
        auto large = primitive_counts(periodic_census(table, h / 2, h));
        long total_small = 0, total_large = 0;
        for (std::size_t n = 1; n < small.size(); ++n)
            total_small += small[n];
        for (std::size_t n = 1; n < large.size(); ++n) {
            CHECK(large[n] >= 0);
            CHECK(large[n] % static_cast<long>(n) == 0);
            total_large += large[n];
        }
        if (total_small > 0)
            CHECK(total_large > total_small);
    }
}
