#include "randsub/examples.hpp"

#include "randsub/error.hpp"

#include <cmath>
#include <numbers>

namespace randsub {

namespace {

// Σ_{i ≥ 2} log(i) / τ^{i+2}
double random_fibonacci_entropy() {
    const double tau = std::numbers::phi;
    double sum = 0.0;
    for (int i = 2; i < 400; ++i)
        sum += std::log(static_cast<double>(i)) / std::pow(tau, i + 2);
    return sum;
}

std::vector<BundledExample> make_registry() {
    return {
        {"random-fibonacci", "a -> {ba, ab}, b -> a; p = 1/2",
         "alphabet: a b\n"
         "rule a -> ba:1/2 | ab:1/2\n"
         "rule b -> a:1\n",
         random_fibonacci_entropy()},
        {"period-doubling", "random period doubling 0 -> {01, 10}, 1 -> 00",
         "alphabet: 0 1\n"
         "rule 0 -> 01:1/2 | 10:1/2\n"
         "rule 1 -> 00:1\n",
         2.0 / 3.0 * std::numbers::ln2},
        {"golden", "0 -> {010, 0}, 1 -> {01, 1}; subshift is the golden-mean shift",
         "alphabet: 0 1\n"
         "rule 0 -> 010:1/2 | 0:1/2\n"
         "rule 1 -> 01:1/2 | 1:1/2\n",
         std::log(std::numbers::phi)},
        {"full-shift-2", "0, 1 -> {00, 01, 10, 11}; subshift is the full 2-shift",
         "alphabet: 0 1\n"
         "rule 0 -> 00 | 01 | 10 | 11\n"
         "rule 1 -> 00 | 01 | 10 | 11\n",
         std::numbers::ln2},
        {"sofic-ab", "a, b -> {ab, ba}; strictly sofic subshift",
         "alphabet: a b\n"
         "rule a -> ab | ba\n"
         "rule b -> ab | ba\n",
         std::numbers::ln2 / 2.0},
        {"empty-demo", "a -> {a, b}, b -> a; primitive with empty subshift",
         "alphabet: a b\n"
         "rule a -> a | b\n"
         "rule b -> a\n",
         std::nullopt},
        {"redundant-image", "a -> {ab, abab}, b -> ab; zero entropy",
         "alphabet: a b\n"
         "rule a -> ab | abab\n"
         "rule b -> ab\n",
         0.0},
        {"power-splitting", "a -> {ab, abab}, b -> abb; splitting pairs only for the square",
         "alphabet: a b\n"
         "rule a -> ab | abab\n"
         "rule b -> abb\n",
         std::nullopt},
    };
}

} // namespace

const std::vector<BundledExample>& bundled_examples() {
    static const std::vector<BundledExample> registry = make_registry();
    return registry;
}

const BundledExample& find_example(std::string_view name) {
    for (const auto& ex : bundled_examples())
        if (ex.name == name)
            return ex;
    std::string known;
    for (const auto& ex : bundled_examples())
        known += (known.empty() ? "" : ", ") + ex.name;
    throw Error(ErrorKind::InvalidArgument, "unknown example '" + std::string(name) + "' (known: " + known + ")");
}

RandomSubstitution load_example(std::string_view name) { return parse_spec(find_example(name).spec); }

} // namespace randsub
