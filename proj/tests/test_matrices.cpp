#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "randsub/error.hpp"
#include "randsub/examples.hpp"
#include "randsub/matrices.hpp"

#include "generators.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace randsub;

namespace {

void check_matrix(const NonnegMatrix& m, const std::vector<std::vector<double>>& want, double tol = 1e-12) {
    REQUIRE(m.dim() == want.size());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            CHECK(std::abs(m(i, j) - want[i][j]) < tol);
}

NonnegMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    std::vector<double> flat;
    for (const auto& r : rows)
        flat.insert(flat.end(), r.begin(), r.end());
    return NonnegMatrix(rows.size(), flat);
}

} // namespace

TEST_CASE("substitution matrices") {
    check_matrix(substitution_matrix(load_example("period-doubling")), {{1, 2}, {1, 0}});
    check_matrix(substitution_matrix(load_example("random-fibonacci")), {{1, 1}, {1, 0}});
    check_matrix(substitution_matrix(load_example("random-fibonacci").with_probabilities({{0.9, 0.1}, {1.0}})),
                 {{1, 1}, {1, 0}});
    check_matrix(substitution_matrix(parse_spec("alphabet: a\nrule a -> a\n")), {{1}});
    check_matrix(substitution_matrix(load_example("golden")), {{1.5, 0.5}, {0.5, 1.0}});
}

TEST_CASE("support matrices ignore probabilities") {
    auto degenerate = parse_spec("alphabet: a b\nrule a -> b:0 | a:1\nrule b -> ab\n");
    auto s = support_matrix(degenerate);
    auto m = substitution_matrix(degenerate);
    CHECK(s(1, 0) == 1.0);
    CHECK(m(1, 0) == 0.0);
    check_matrix(support_matrix(load_example("golden")), {{1, 1}, {1, 1}});
    check_matrix(support_matrix(load_example("random-fibonacci")), {{1, 1}, {1, 0}});
}

TEST_CASE("primitivity and irreducibility") {
    CHECK(is_primitive(load_example("random-fibonacci")));
    CHECK(is_primitive(load_example("empty-demo")));
    auto diag = parse_spec("alphabet: a b\nrule a -> a\nrule b -> b\n");
    CHECK_FALSE(is_irreducible(diag));
    CHECK_FALSE(is_primitive(diag));
    auto swap = parse_spec("alphabet: a b\nrule a -> b\nrule b -> a\n");
    CHECK(is_irreducible(swap));
    CHECK_FALSE(is_primitive(swap));
}

TEST_CASE("Wielandt extremal matrix") {
    // Cycle 0 -> 1 -> ... -> n-1 -> 0 plus the chord n-1 -> 1.
    for (std::size_t n = 2; n <= 9; ++n) {
        NonnegMatrix m(n);
        for (std::size_t i = 0; i + 1 < n; ++i)
            m(i + 1, i) = 1.0;
        m(0, n - 1) = 1.0;
        m(1, n - 1) = 1.0;
        CHECK(is_primitive_matrix(m));
        // dropping the chord leaves a plain cycle
        m(1, n - 1) = 0.0;
        CHECK_FALSE(is_primitive_matrix(m));
        CHECK(is_irreducible_matrix(m));
    }
}

TEST_CASE("property: primitivity agrees with the naive power oracle") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng() % 5;
        std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
        NonnegMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (rng() % 3 == 0) {
                    a[i][j] = 1;
                    m(i, j) = 1.0;
                }
        CHECK(is_primitive_matrix(m) == oracle::primitive(a));
    }
}

TEST_CASE("Perron-Frobenius data of period doubling") {
    auto pd = perron_data(substitution_matrix(load_example("period-doubling")));
    CHECK(std::abs(pd.lambda - 2.0) < 1e-12);
    CHECK(pd.residual < 1e-12);
    CHECK(std::abs(pd.right[0] - 2.0 / 3.0) < 1e-12);
    CHECK(std::abs(pd.right[1] - 1.0 / 3.0) < 1e-12);
    CHECK(std::abs(pd.left[0] - 1.0) < 1e-9);
    CHECK(std::abs(pd.left[1] - 1.0) < 1e-9);
}

TEST_CASE("Perron-Frobenius data of Fibonacci and the identity") {
    auto fib = perron_data(substitution_matrix(load_example("random-fibonacci")));
    CHECK(std::abs(fib.lambda - std::numbers::phi) < 1e-12);
    CHECK(std::abs(fib.right[0] / fib.right[1] - std::numbers::phi) < 1e-9);

    auto id = perron_data(from_rows({{1}}));
    CHECK(id.lambda == doctest::Approx(1.0));
    CHECK(id.right[0] == doctest::Approx(1.0));
    CHECK(id.left[0] == doctest::Approx(1.0));
}

TEST_CASE("non-primitive input") {
    try {
        perron_data(from_rows({{0, 1}, {1, 0}}));
        FAIL("expected NotPrimitiveMatrix");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotPrimitiveMatrix);
    }
    CHECK_THROWS_AS(NonnegMatrix(2, {1, 2, 3}), Error);
}

TEST_CASE("property: normalisation identities and Gershgorin bounds") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unif(0.0, 3.0);
    int tested = 0;
    while (tested < 200) {
        const std::size_t n = 1 + rng() % 6;
        NonnegMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (rng() % 2)
                    m(i, j) = unif(rng);
        if (!is_primitive_matrix(m))
            continue;
        ++tested;
        auto pd = perron_data(m);
        double sum = 0.0, dot = 0.0, cmin = 1e300, cmax = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(pd.right[i] > 0.0);
            CHECK(pd.left[i] > 0.0);
            sum += pd.right[i];
            dot += pd.left[i] * pd.right[i];
            cmin = std::min(cmin, m.column_sum(i));
            cmax = std::max(cmax, m.column_sum(i));
        }
        CHECK(std::abs(sum - 1.0) < 1e-12);
        CHECK(std::abs(dot - 1.0) < 1e-12);
        CHECK(pd.residual < 1e-9 * std::max(1.0, pd.lambda));
        // min and max column sums bracket the Perron root
        CHECK(pd.lambda >= cmin - 1e-9);
        CHECK(pd.lambda <= cmax + 1e-9);
        // left eigenvector: Mᵀ L = λ L
        auto ml = m.apply_transpose(pd.left);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(ml[i] - pd.lambda * pd.left[i]) < 1e-8 * std::max(1.0, pd.lambda * pd.left[i]));
    }
}

TEST_CASE("property: column sums are expected image lengths") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        auto sub = gen::any_substitution(rng);
        auto m = substitution_matrix(sub);
        for (const auto& rule : sub.rules()) {
            double expected = 0.0;
            for (const auto& im : rule.images)
                expected += im.probability * static_cast<double>(im.word.size());
            CHECK(std::abs(m.column_sum(rule.source) - expected) < 1e-12);
        }
    }
}
