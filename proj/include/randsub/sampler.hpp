#pragma once

/**
 * @file sampler.hpp
 * @brief Seeded Monte-Carlo realisations and empirical word frequencies.
 *
 * Randomness comes from a counter-based generator: the uniform variate used
 * for the letter at position i of the level-d word is a pure function of
 * (seed, d, i). Any expansion order therefore yields the same realisation,
 * and a depth-first expansion can stream the result without storing it.
 *
 * Generator (SplitMix64 finaliser `mix`):
 *   h = mix(mix(mix(seed) ^ d) ^ i),  u = (h >> 11) · 2⁻⁵³.
 * Images are picked by inverse CDF over the rule's images in declaration
 * order: the first image q with u < p_1 + … + p_q.
 */

#include "randsub/core.hpp"
#include "randsub/induced.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace randsub {

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept;
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t depth, std::uint64_t position) noexcept;
/// Uniform in [0, 1) with 53 random bits.
double counter_uniform(std::uint64_t seed, std::uint64_t depth, std::uint64_t position) noexcept;

/// Index of the image selected by `u` (inverse CDF, declaration order).
std::size_t choose_image(const Rule& rule, double u);

/// Streams the letters of one realisation of ϑ^k(a), left to right.
void stream_realisation(const RandomSubstitution& sub, Letter a, std::size_t k, std::uint64_t seed,
                        const std::function<void(Letter)>& sink);

Word sample_realisation(const RandomSubstitution& sub, Letter a, std::size_t k, std::uint64_t seed);

/// Relative counts of all length-ℓ windows, sorted by word.
std::vector<std::pair<Word, double>> empirical_frequencies(const Word& w, std::size_t ell);

struct FrequencyRow {
    Word word;
    double empirical = 0.0;
    double predicted = 0.0;
    double abs_dev = 0.0;
};

struct SampleReport {
    std::uint64_t seed = 0;
    Letter start_letter = 0;
    std::size_t depth = 0;
    std::size_t ell = 0;
    std::size_t sample_length = 0;
    /// Union of observed and predicted words, canonical order.
    std::vector<FrequencyRow> rows;
    FrequencyVector predicted;
    double max_abs_deviation = 0.0;
};

/// Samples ϑ^k(start) and compares its ℓ-window frequencies with R_ℓ. The
/// sample is streamed, never stored.
SampleReport frequency_report(const RandomSubstitution& sub, std::size_t ell, std::size_t k, std::uint64_t seed,
                              Letter start = 0, std::size_t budget = kDefaultWindowBudget);

/// `word,empirical,predicted,abs_dev` rows followed by a `# ...` summary line.
std::string to_csv(const SampleReport& report, const Alphabet& alphabet);

} // namespace randsub
