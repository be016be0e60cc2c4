#pragma once

/**
 * @file dynamics.hpp
 * @brief Splitting pairs, entropy brackets, periodic points, zeta series and
 * mixing probes for the subshift of a random substitution.
 *
 * Everything here works at finite scale: complexity counts give rigorous
 * upper bounds on entropy, splitting pairs give lower bounds, and periodic
 * points are certified only up to a legality horizon.
 */

#include "randsub/core.hpp"
#include "randsub/language.hpp"
#include "randsub/series.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace randsub {

/// u is both a prefix and a suffix of v. Throws LengthOrder if |u| > |v|.
bool is_strong_affix(const Word& u, const Word& v);

struct SplittingPair {
    std::size_t power = 0;
    Letter letter = 0;
    Word shorter;  // |shorter| ≤ |longer|, not a strong affix of it
    Word longer;
};

struct SplittingEntry {
    std::size_t power = 0;
    Letter letter = 0;
    std::optional<SplittingPair> pair;
};

/// One entry per (k, letter), k = 1 … k_max, letters in alphabet order.
/// Each entry holds the first splitting pair among the distinct
/// realisations of ϑ^k(a) in canonical order, if any.
std::vector<SplittingEntry> splitting_pairs(const RandomSubstitution& sub, std::size_t k_max,
                                            std::size_t budget = kDefaultRealisationBudget);

struct EntropyBracket {
    /// (ℓ, log C(ℓ) / ℓ); every value bounds h_top from above.
    std::vector<std::pair<std::size_t, double>> upper_profile;
    double upper = 0.0;

    double lower = 0.0;
    /// Witness for `lower`; unset when no splitting pair was found.
    std::optional<SplittingPair> lower_witness;
    double witness_frequency = 0.0;      // ν(a)
    std::size_t witness_max_length = 0;  // N_k
    /// Bound emitted although primitivity could not certify ν(a).
    bool caveat = false;
    std::string status;

    std::optional<double> exact_known;
};

/// Upper profile from complexity up to ell_max; lower bound
/// max ν(a) · log 2 / (2 N_k) over letters a admitting a splitting pair for
/// ϑ^k, k ≤ k_max, where N_k is the longest realisation of ϑ^k.
EntropyBracket entropy_bracket(const RandomSubstitution& sub, std::size_t ell_max, std::size_t k_max,
                               std::size_t window_budget = kDefaultWindowBudget,
                               std::size_t realisation_budget = kDefaultRealisationBudget);
/// Same, reusing a language table that covers ell_max.
EntropyBracket entropy_bracket(const LanguageTable& table, std::size_t ell_max, std::size_t k_max,
                               std::size_t realisation_budget = kDefaultRealisationBudget);

struct PeriodicCensus {
    std::size_t horizon = 0;
    std::size_t n_max = 0;
    /// counts[n - 1] = |Fix_L(Sⁿ)|: words u of length n whose periodic
    /// extension u^∞ has every length-L window legal. Rotations count
    /// separately, so a period-d orbit contributes d sequences.
    std::vector<std::size_t> counts;
    /// roots[n - 1], canonical order; filled only when requested.
    std::vector<std::vector<Word>> roots;

    std::size_t count(std::size_t n) const { return counts.at(n - 1); }
};

/// Requires horizon ≥ n_max so a window covers a full period; the usual
/// choice is horizon = 2·n_max.
PeriodicCensus periodic_census(const RandomSubstitution& sub, std::size_t n_max, std::size_t horizon,
                               bool keep_roots = false, std::size_t window_budget = kDefaultWindowBudget,
                               std::size_t threads = 1);
PeriodicCensus periodic_census(const LanguageTable& table, std::size_t n_max, std::size_t horizon,
                               bool keep_roots = false, std::size_t threads = 1);

struct ZetaSeries {
    PowerSeries coefficients;           // ζ(z) truncated at degree n_max
    std::vector<double> log_terms;      // index n: |Fix(Sⁿ)| / n, index 0 unused
};

/// ζ(z) = exp(Σ_{n ≤ n_max} |Fix(Sⁿ)| zⁿ / n), truncated at degree n_max.
ZetaSeries zeta_series(const PeriodicCensus& census, std::size_t n_max);

/// {n ≤ n_max : ∃ w, |w| = n, uwv legal}, ascending.
std::vector<std::size_t> mixing_gaps(const RandomSubstitution& sub, const Word& u, const Word& v,
                                     std::size_t n_max, std::size_t window_budget = kDefaultWindowBudget);
std::vector<std::size_t> mixing_gaps(const LanguageTable& table, const Word& u, const Word& v,
                                     std::size_t n_max);

} // namespace randsub
