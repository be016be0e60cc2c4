#pragma once

/**
 * @file induced.hpp
 * @brief Collared substitution on legal ℓ-words and word frequencies.
 *
 * The induced substitution θ_ℓ acts on the alphabet 𝒜_ℓ of legal words of
 * length ℓ. A realisation v of ϑ(w) for w = w₀…w_{ℓ−1} is sent to the
 * sequence of its length-ℓ windows starting at positions 0 … |ϑ(w₀)|−1, with
 * the probability of the letterwise choice. The normalised right
 * Perron–Frobenius eigenvector R_ℓ of its expected matrix gives the ℓ-word
 * frequencies.
 */

#include "randsub/core.hpp"
#include "randsub/language.hpp"
#include "randsub/matrices.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace randsub {

struct InducedSubstitution {
    std::size_t ell = 0;
    /// 𝒜_ℓ in lexicographic order; letter i of `substitution` is base_words[i].
    std::vector<Word> base_words;
    RandomSubstitution substitution;
};

InducedSubstitution induced_substitution(const RandomSubstitution& sub, std::size_t ell,
                                         std::size_t budget = kDefaultWindowBudget);
/// Reuses an existing table (extended if shorter than ℓ).
InducedSubstitution induced_substitution(const LanguageTable& table, std::size_t ell,
                                         std::size_t budget = kDefaultWindowBudget);

NonnegMatrix induced_matrix(const InducedSubstitution& ind);
bool induced_is_primitive(const InducedSubstitution& ind);

struct FrequencyVector {
    std::size_t ell = 0;
    std::vector<Word> words;     // canonical order
    std::vector<double> values;  // R_ℓ, ‖·‖₁ = 1
    ProbabilityAssignment provenance;
    double lambda = 0.0;         // Perron–Frobenius eigenvalue of M_ℓ

    /// R_ℓ(w); zero for words outside 𝒜_ℓ.
    double value(const Word& w) const;
};

/// R_ℓ keyed by legal ℓ-word. Requires θ_ℓ primitive (support-wise); the
/// eigenvector is taken from the probability-weighted matrix, so degenerate
/// substitutions get zero entries where the weighted matrix has no mass.
FrequencyVector word_frequencies(const RandomSubstitution& sub, std::size_t ell,
                                 double tol = kDefaultPerronTolerance,
                                 std::size_t budget = kDefaultWindowBudget);

inline constexpr double kDefaultScanTolerance = 1e-6;

struct ErgodicityWitness {
    std::size_t ell = 0;
    Word word;
    std::size_t point_a = 0;  // grid indices, point_a < point_b
    std::size_t point_b = 0;
    double value_a = 0.0;
    double value_b = 0.0;
};

struct ErgodicityVerdict {
    /// Set iff some R_ℓ entry moved by more than the tolerance across the
    /// grid, which rules out unique ergodicity. Unset means the frequencies
    /// agreed up to ell_max on this grid, which proves nothing.
    std::optional<ErgodicityWitness> witness;
    std::size_t ell_max = 0;
    std::vector<std::size_t> evaluated_points;
    std::vector<std::size_t> excluded_points;  // degenerate grid points

    bool not_uniquely_ergodic() const { return witness.has_value(); }
};

/// Compares R_ℓ, ℓ = 1 … ell_max, across the non-degenerate grid points.
/// The witness is taken at the smallest ℓ showing variation, on the word
/// with the largest relative spread (max − min) / max; ties go to the first
/// word in canonical order.
ErgodicityVerdict unique_ergodicity_scan(const RandomSubstitution& sub, std::size_t ell_max,
                                         const std::vector<ProbabilityAssignment>& grid,
                                         double tol = kDefaultScanTolerance, std::size_t threads = 1,
                                         std::size_t budget = kDefaultWindowBudget);

struct RatioViolation {
    Letter letter = 0;
    std::size_t image_a = 0;
    std::size_t image_b = 0;
    Letter count_letter_a = 0;
    Letter count_letter_b = 0;
    double lhs = 0.0;  // |w_a|_{i1} − |w_b|_{i1}
    double rhs = 0.0;  // (|w_a|_{i2} − |w_b|_{i2}) · R_{i1} / R_{i2}
};

struct RatioReport {
    std::vector<double> letter_frequencies;  // R₁
    std::size_t checked = 0;
    std::vector<RatioViolation> violations;

    bool holds() const { return violations.empty(); }
};

/// For every letter, image pair and letter pair, checks that the difference
/// of letter counts between two images is proportional to R₁. A violation
/// means R₁ depends on the probabilities.
RatioReport ratio_condition_check(const RandomSubstitution& sub, double tol = 1e-9);

} // namespace randsub
