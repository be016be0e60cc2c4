#pragma once

/**
 * @file language.hpp
 * @brief Legal words of a random substitution, up to a length bound.
 *
 * The table is the fixpoint of window closure: start from the letters and
 * keep adding every window of length ≤ max_len of every realisation of ϑ(u)
 * for words u already in the table. Any such window of ϑ(v) already sits in
 * ϑ(u) for a factor u of v with |u| ≤ max_len, so the closure only has to
 * substitute short words.
 */

#include "randsub/core.hpp"

#include <cstddef>
#include <vector>

namespace randsub {

inline constexpr std::size_t kDefaultWindowBudget = 10'000'000;

class LanguageTable {
public:
    const RandomSubstitution& substitution() const noexcept { return sub_; }
    std::size_t max_len() const noexcept { return words_by_len_.size() - 1; }

    /// Sorted legal words of length ℓ, 1 ≤ ℓ ≤ max_len().
    const std::vector<Word>& words(std::size_t len) const;
    std::size_t count(std::size_t len) const { return words(len).size(); }

    /// Closure round after which no new word of length ℓ appeared.
    std::size_t stabilized_at(std::size_t len) const;

    /// Membership; |u| must not exceed max_len().
    bool contains(const Word& u) const;

    /// Total window extractions spent building the table.
    std::size_t windows_examined() const noexcept { return windows_examined_; }

private:
    friend LanguageTable legal_words(const RandomSubstitution&, std::size_t, std::size_t);

    explicit LanguageTable(const RandomSubstitution& sub) : sub_(sub) {}

    RandomSubstitution sub_;
    std::vector<std::vector<Word>> words_by_len_;
    std::vector<std::size_t> stabilized_at_;
    std::size_t windows_examined_ = 0;
};

/// True iff X_ϑ is empty: for primitive ϑ this happens exactly when every
/// image has length 1. Throws NotPrimitive otherwise.
bool is_empty_subshift(const RandomSubstitution& sub);

/// Builds the table to length `max_len`. Throws EmptySubshift when the
/// language is finite (no legal word of some length ≤ max_len, or all
/// images of length 1), BudgetExceeded after `budget` window extractions.
LanguageTable legal_words(const RandomSubstitution& sub, std::size_t max_len,
                          std::size_t budget = kDefaultWindowBudget);

/// Rebuilds `table` to cover `max_len` when it is shorter.
LanguageTable extend(const LanguageTable& table, std::size_t max_len,
                     std::size_t budget = kDefaultWindowBudget);

bool is_legal(const LanguageTable& table, const Word& u);

/// C(ℓ) = |𝓛^ℓ| for ℓ = 1 … max_len (index 0 holds ℓ = 1).
std::vector<std::size_t> complexity(const LanguageTable& table, std::size_t max_len);

} // namespace randsub
