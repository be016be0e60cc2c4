#pragma once

/**
 * @file core.hpp
 * @brief Alphabets, words and finite-set-valued random substitutions.
 *
 * A random substitution assigns to each letter a finite weighted set of
 * non-empty image words. Applying it to a word substitutes every letter
 * independently and concatenates; the possible outcomes are the
 * realisations of that word.
 */

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace randsub {

using Letter = std::uint16_t;

inline constexpr std::size_t kMaxAlphabetSize = 65535;
inline constexpr std::size_t kDefaultRealisationBudget = 1'000'000;
inline constexpr double kProbabilityTolerance = 1e-9;

/// Finite sequence of letter indices. Ordered lexicographically by index.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Letter> symbols) : symbols_(std::move(symbols)) {}
    Word(std::initializer_list<Letter> symbols) : symbols_(symbols) {}

    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    Letter operator[](std::size_t i) const { return symbols_[i]; }
    Letter front() const { return symbols_.front(); }
    Letter back() const { return symbols_.back(); }

    std::span<const Letter> symbols() const noexcept { return symbols_; }
    auto begin() const noexcept { return symbols_.begin(); }
    auto end() const noexcept { return symbols_.end(); }

    void push_back(Letter a) { symbols_.push_back(a); }
    void pop_back() { symbols_.pop_back(); }
    void append(const Word& other) { symbols_.insert(symbols_.end(), other.begin(), other.end()); }
    void append(std::span<const Letter> other) { symbols_.insert(symbols_.end(), other.begin(), other.end()); }
    void resize(std::size_t n) { symbols_.resize(n); }
    void clear() noexcept { symbols_.clear(); }

    /// Letters [pos, pos + len).
    Word subword(std::size_t pos, std::size_t len) const;
    /// Number of occurrences of `a` (|u|_a).
    std::size_t count(Letter a) const;
    bool is_prefix_of(const Word& v) const;
    bool is_suffix_of(const Word& v) const;
    /// Subword relation u ◁ v.
    bool is_factor_of(const Word& v) const;

    friend Word operator+(Word lhs, const Word& rhs) {
        lhs.append(rhs);
        return lhs;
    }
    auto operator<=>(const Word&) const = default;
    bool operator==(const Word&) const = default;

private:
    std::vector<Letter> symbols_;
};

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept;
};

/// Ordered list of distinct letter tokens. Index = declaration order.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> letters);

    std::size_t size() const noexcept { return letters_.size(); }
    const std::string& name(Letter a) const { return letters_.at(a); }
    const std::vector<std::string>& letters() const noexcept { return letters_; }
    bool contains(std::string_view token) const;
    Letter index(std::string_view token) const;

    /// True when every token is a single character, so words print undotted.
    bool single_char() const noexcept { return single_char_; }

    /// Parses "abba" (single-character alphabets) or "ab.cd.ab" (dotted form).
    Word parse_word(std::string_view text) const;
    std::string format(const Word& w) const;

private:
    std::vector<std::string> letters_;
    std::unordered_map<std::string, Letter> index_;
    bool single_char_ = true;
};

struct Image {
    Word word;
    double probability = 0.0;
};

struct Rule {
    Letter source = 0;
    std::vector<Image> images;

    std::size_t arity() const noexcept { return images.size(); }
};

/// Probability vectors for every rule, in rule order and image order.
using ProbabilityAssignment = std::vector<std::vector<double>>;

class RandomSubstitution {
public:
    /// Validates and canonicalises: one rule per letter, ordered by letter;
    /// non-empty images; duplicate images merged; probabilities in [0,1]
    /// summing to 1.
    RandomSubstitution(Alphabet alphabet, std::vector<Rule> rules);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t size() const noexcept { return alphabet_.size(); }
    const std::vector<Rule>& rules() const noexcept { return rules_; }
    const Rule& rule(Letter a) const { return rules_.at(a); }

    std::size_t max_image_len() const noexcept { return max_image_len_; }
    std::size_t min_image_len() const noexcept { return min_image_len_; }
    bool is_degenerate() const noexcept { return degenerate_; }
    bool is_deterministic() const noexcept;

    ProbabilityAssignment probabilities() const;
    /// Same support, new probability vectors.
    RandomSubstitution with_probabilities(const ProbabilityAssignment& probs) const;

private:
    Alphabet alphabet_;
    std::vector<Rule> rules_;
    std::size_t max_image_len_ = 0;
    std::size_t min_image_len_ = 0;
    bool degenerate_ = false;
};

RandomSubstitution parse_spec(std::string_view text);
std::string serialize(const RandomSubstitution& sub);

/// Parses one probability literal: decimal or fraction "1/3".
double parse_probability(std::string_view text);
/// Parses "p p ; p ; ..." (one group per rule, images in declaration order).
ProbabilityAssignment parse_probability_assignment(std::string_view text);

struct Realisation {
    Word word;
    double probability = 0.0;
};

/// Calls `visit(word, probability)` for every letterwise choice of images of
/// ϑ(u), in lexicographic order of the per-letter choice indices. Choices are
/// not merged; distinct choices can produce the same word.
void for_each_choice(const RandomSubstitution& sub, const Word& u,
                     const std::function<void(const Word&, double)>& visit);

/// Distinct realisations of ϑ(u) with aggregated probabilities, ordered by
/// first occurrence in choice order.
std::vector<Realisation> realisations(const RandomSubstitution& sub, const Word& u,
                                      std::size_t budget = kDefaultRealisationBudget);

/// Distinct realisations of ϑ^k(a). k = 0 yields (a, 1).
std::vector<Realisation> power_realisations(const RandomSubstitution& sub, Letter a, std::size_t k,
                                            std::size_t budget = kDefaultRealisationBudget);

} // namespace randsub
