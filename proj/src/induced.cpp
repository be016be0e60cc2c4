#include "randsub/induced.hpp"

#include "randsub/error.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <unordered_map>

namespace randsub {

namespace {

std::string induced_letter_name(const Alphabet& base, const Word& w) {
    if (base.single_char())
        return base.format(w);
    std::string name;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0)
            name += '_';
        name += base.name(w[i]);
    }
    return name;
}

} // namespace

InducedSubstitution induced_substitution(const RandomSubstitution& sub, std::size_t ell, std::size_t budget) {
    return induced_substitution(legal_words(sub, ell, budget), ell, budget);
}

InducedSubstitution induced_substitution(const LanguageTable& table, std::size_t ell, std::size_t budget) {
    if (ell == 0)
        throw Error(ErrorKind::InvalidArgument, "window length must be at least 1");
    if (table.max_len() < ell)
        return induced_substitution(extend(table, ell, budget), ell, budget);

    const RandomSubstitution& sub = table.substitution();
    const std::vector<Word>& words = table.words(ell);
    if (words.size() > kMaxAlphabetSize)
        throw Error(ErrorKind::BudgetExceeded, "too many legal words of length " + std::to_string(ell));

    auto index_of = [&](const Word& w) -> Letter {
        auto it = std::lower_bound(words.begin(), words.end(), w);
        if (it == words.end() || *it != w)
            throw Error(ErrorKind::InvalidArgument, "induced window is not a legal word");
        return static_cast<Letter>(it - words.begin());
    };

    std::size_t examined = 0;
    std::vector<std::string> names;
    std::vector<Rule> rules;
    for (std::size_t i = 0; i < words.size(); ++i) {
        const Word& w = words[i];
        names.push_back(induced_letter_name(sub.alphabet(), w));

        std::vector<Image> images;
        std::unordered_map<Word, std::size_t, WordHash> seen;
        auto add = [&](const Word& head, double head_p, const Word& tail, double tail_p) {
            // |tail| ≥ ℓ − 1 because images are non-empty, so every window
            // starting inside ϑ(w₀) fits.
            Word v = head + tail;
            Word image;
            for (std::size_t k = 0; k < head.size(); ++k)
                image.push_back(index_of(v.subword(k, ell)));
            examined += head.size();
            if (examined > budget)
                throw Error(ErrorKind::BudgetExceeded, "induced substitution exceeded the budget of " +
                                                           std::to_string(budget) + " window extractions");
            auto [it, inserted] = seen.try_emplace(image, images.size());
            if (inserted)
                images.push_back({std::move(image), head_p * tail_p});
            else
                images[it->second].probability += head_p * tail_p;
        };

        const Word rest = w.subword(1, ell - 1);
        for (const auto& head : sub.rule(w[0]).images) {
            if (rest.empty())
                add(head.word, head.probability, Word{}, 1.0);
            else
                for_each_choice(sub, rest, [&](const Word& tail, double p) { add(head.word, head.probability, tail, p); });
        }
        rules.push_back({static_cast<Letter>(i), std::move(images)});
    }

    return InducedSubstitution{ell, words, RandomSubstitution(Alphabet(std::move(names)), std::move(rules))};
}

NonnegMatrix induced_matrix(const InducedSubstitution& ind) { return substitution_matrix(ind.substitution); }

bool induced_is_primitive(const InducedSubstitution& ind) { return is_primitive(ind.substitution); }

double FrequencyVector::value(const Word& w) const {
    auto it = std::lower_bound(words.begin(), words.end(), w);
    if (it == words.end() || *it != w)
        return 0.0;
    return values[static_cast<std::size_t>(it - words.begin())];
}

FrequencyVector word_frequencies(const RandomSubstitution& sub, std::size_t ell, double tol, std::size_t budget) {
    InducedSubstitution ind = induced_substitution(sub, ell, budget);
    if (!induced_is_primitive(ind))
        throw Error(ErrorKind::NotPrimitive,
                    "induced substitution on words of length " + std::to_string(ell) + " is not primitive");
    PerronData pd = perron_data(induced_matrix(ind), tol, /*require_primitive=*/false);
    return FrequencyVector{ell, std::move(ind.base_words), std::move(pd.right), sub.probabilities(), pd.lambda};
}

ErgodicityVerdict unique_ergodicity_scan(const RandomSubstitution& sub, std::size_t ell_max,
                                         const std::vector<ProbabilityAssignment>& grid, double tol,
                                         std::size_t threads, std::size_t budget) {
    if (ell_max == 0)
        throw Error(ErrorKind::InvalidArgument, "ell_max must be at least 1");
    if (!is_primitive(sub))
        throw Error(ErrorKind::NotPrimitive, "ergodicity scan needs a primitive substitution");

    ErgodicityVerdict verdict;
    verdict.ell_max = ell_max;
    std::vector<RandomSubstitution> points;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        RandomSubstitution at = sub.with_probabilities(grid[g]);
        if (at.is_degenerate()) {
            verdict.excluded_points.push_back(g);
        } else {
            verdict.evaluated_points.push_back(g);
            points.push_back(std::move(at));
        }
    }
    if (points.size() < 2)
        return verdict;

    // freqs[point][ell - 1]
    auto compute = [&](std::size_t p) {
        std::vector<FrequencyVector> out;
        for (std::size_t ell = 1; ell <= ell_max; ++ell)
            out.push_back(word_frequencies(points[p], ell, kDefaultPerronTolerance, budget));
        return out;
    };
    std::vector<std::vector<FrequencyVector>> freqs(points.size());
    if (threads > 1) {
        for (std::size_t start = 0; start < points.size(); start += threads) {
            std::vector<std::future<std::vector<FrequencyVector>>> jobs;
            for (std::size_t p = start; p < std::min(points.size(), start + threads); ++p)
                jobs.push_back(std::async(std::launch::async, compute, p));
            for (std::size_t j = 0; j < jobs.size(); ++j)
                freqs[start + j] = jobs[j].get();
        }
    } else {
        for (std::size_t p = 0; p < points.size(); ++p)
            freqs[p] = compute(p);
    }

    for (std::size_t ell = 1; ell <= ell_max; ++ell) {
        const auto& words = freqs[0][ell - 1].words;
        double best_rel = -1.0;
        for (std::size_t w = 0; w < words.size(); ++w) {
            std::size_t lo = 0, hi = 0;
            for (std::size_t p = 1; p < points.size(); ++p) {
                if (freqs[p][ell - 1].values[w] < freqs[lo][ell - 1].values[w])
                    lo = p;
                if (freqs[p][ell - 1].values[w] > freqs[hi][ell - 1].values[w])
                    hi = p;
            }
            double vlo = freqs[lo][ell - 1].values[w];
            double vhi = freqs[hi][ell - 1].values[w];
            if (vhi - vlo <= tol)
                continue;
            double rel = (vhi - vlo) / vhi;
            if (rel > best_rel) {
                best_rel = rel;
                std::size_t a = std::min(lo, hi), b = std::max(lo, hi);
                verdict.witness = ErgodicityWitness{ell,
                                                    words[w],
                                                    verdict.evaluated_points[a],
                                                    verdict.evaluated_points[b],
                                                    freqs[a][ell - 1].values[w],
                                                    freqs[b][ell - 1].values[w]};
            }
        }
        if (verdict.witness)
            break;
    }
    return verdict;
}

RatioReport ratio_condition_check(const RandomSubstitution& sub, double tol) {
    if (!is_primitive(sub))
        throw Error(ErrorKind::NotPrimitive, "ratio check needs a primitive substitution");
    RatioReport report;
    report.letter_frequencies = perron_data(substitution_matrix(sub), kDefaultPerronTolerance, false).right;
    const auto& r = report.letter_frequencies;
    const std::size_t n = sub.size();
    for (const auto& rule : sub.rules()) {
        const auto& ims = rule.images;
        for (std::size_t qa = 0; qa < ims.size(); ++qa)
            for (std::size_t qb = qa + 1; qb < ims.size(); ++qb)
                for (std::size_t i1 = 0; i1 < n; ++i1)
                    for (std::size_t i2 = i1 + 1; i2 < n; ++i2) {
                        auto diff = [&](std::size_t i) {
                            return static_cast<double>(ims[qa].word.count(static_cast<Letter>(i))) -
                                   static_cast<double>(ims[qb].word.count(static_cast<Letter>(i)));
                        };
                        double lhs = diff(i1);
                        double rhs = diff(i2) * r[i1] / r[i2];
                        ++report.checked;
                        if (std::abs(lhs - rhs) > tol)
                            report.violations.push_back({rule.source, qa, qb, static_cast<Letter>(i1),
                                                         static_cast<Letter>(i2), lhs, rhs});
                    }
    }
    return report;
}

} // namespace randsub
