#include "randsub/dynamics.hpp"

#include "randsub/error.hpp"
#include "randsub/matrices.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>

namespace randsub {

bool is_strong_affix(const Word& u, const Word& v) {
    if (u.size() > v.size())
        throw Error(ErrorKind::LengthOrder, "strong affix test needs |u| <= |v|");
    return u.is_prefix_of(v) && u.is_suffix_of(v);
}

std::vector<SplittingEntry> splitting_pairs(const RandomSubstitution& sub, std::size_t k_max, std::size_t budget) {
    if (k_max == 0)
        throw Error(ErrorKind::InvalidArgument, "k_max must be at least 1");
    std::vector<SplittingEntry> out;
    for (std::size_t k = 1; k <= k_max; ++k) {
        for (std::size_t a = 0; a < sub.size(); ++a) {
            SplittingEntry entry{k, static_cast<Letter>(a), std::nullopt};
            auto reals = power_realisations(sub, static_cast<Letter>(a), k, budget);
            for (std::size_t i = 0; i < reals.size() && !entry.pair; ++i) {
                for (std::size_t j = i + 1; j < reals.size(); ++j) {
                    const Word* u = &reals[i].word;
                    const Word* v = &reals[j].word;
                    if (u->size() > v->size())
                        std::swap(u, v);
                    if (!is_strong_affix(*u, *v)) {
                        entry.pair = SplittingPair{k, static_cast<Letter>(a), *u, *v};
                        break;
                    }
                }
            }
            out.push_back(std::move(entry));
        }
    }
    return out;
}

namespace {

// Longest realisation of ϑ^k(b) for every letter b.
std::vector<std::size_t> max_power_lengths(const RandomSubstitution& sub, std::size_t k) {
    std::vector<std::size_t> len(sub.size(), 1);
    for (std::size_t step = 0; step < k; ++step) {
        std::vector<std::size_t> next(sub.size(), 0);
        for (const auto& rule : sub.rules())
            for (const auto& im : rule.images) {
                std::size_t total = 0;
                for (Letter c : im.word)
                    total += len[c];
                next[rule.source] = std::max(next[rule.source], total);
            }
        len = std::move(next);
    }
    return len;
}

} // namespace

EntropyBracket entropy_bracket(const RandomSubstitution& sub, std::size_t ell_max, std::size_t k_max,
                               std::size_t window_budget, std::size_t realisation_budget) {
    return entropy_bracket(legal_words(sub, ell_max, window_budget), ell_max, k_max, realisation_budget);
}

EntropyBracket entropy_bracket(const LanguageTable& table, std::size_t ell_max, std::size_t k_max,
                               std::size_t realisation_budget) {
    if (ell_max == 0)
        throw Error(ErrorKind::InvalidArgument, "ell_max must be at least 1");
    const RandomSubstitution& sub = table.substitution();
    EntropyBracket bracket;

    auto counts = complexity(table, ell_max);
    bracket.upper = std::numeric_limits<double>::infinity();
    for (std::size_t ell = 1; ell <= ell_max; ++ell) {
        double h = std::log(static_cast<double>(counts[ell - 1])) / static_cast<double>(ell);
        bracket.upper_profile.emplace_back(ell, h);
        bracket.upper = std::min(bracket.upper, h);
    }

    const bool primitive = is_primitive(sub);
    std::vector<double> nu;
    try {
        nu = perron_data(substitution_matrix(sub), kDefaultPerronTolerance, primitive).right;
    } catch (const Error& e) {
        if (primitive)
            throw;
        bracket.status = std::string("no letter frequencies: ") + e.what();
        return bracket;
    }

    for (const auto& entry : splitting_pairs(sub, k_max, realisation_budget)) {
        if (!entry.pair || nu[entry.letter] <= 0.0)
            continue;
        std::size_t n_k = 0;
        for (std::size_t len : max_power_lengths(sub, entry.power))
            n_k = std::max(n_k, len);
        double bound = nu[entry.letter] * std::numbers::ln2 / (2.0 * static_cast<double>(n_k));
        if (!bracket.lower_witness || bound > bracket.lower) {
            bracket.lower = bound;
            bracket.lower_witness = entry.pair;
            bracket.witness_frequency = nu[entry.letter];
            bracket.witness_max_length = n_k;
        }
    }
    if (bracket.lower_witness) {
        bracket.caveat = !primitive;
        bracket.status = primitive ? "splitting pair found"
                                   : "splitting pair found; substitution not primitive, frequency not certified";
    } else {
        bracket.status = "no splitting pair found up to k_max = " + std::to_string(k_max);
    }
    return bracket;
}

namespace {

class CensusScan {
public:
    CensusScan(const LanguageTable& table, std::size_t n, std::size_t horizon, bool keep)
        : table_(table), n_(n), horizon_(horizon), keep_(keep) {}

    void run_from(Letter first) {
        root_.clear();
        root_.push_back(first);
        if (table_.contains(root_))
            grow();
    }

    std::size_t count() const { return count_; }
    std::vector<Word>& roots() { return roots_; }

private:
    void grow() {
        if (root_.size() == n_) {
            if (periodic_extension_legal()) {
                ++count_;
                if (keep_)
                    roots_.push_back(root_);
            }
            return;
        }
        const std::size_t alphabet = table_.substitution().size();
        for (std::size_t a = 0; a < alphabet; ++a) {
            root_.push_back(static_cast<Letter>(a));
            if (table_.contains(root_))
                grow();
            root_.pop_back();
        }
    }

    bool periodic_extension_legal() {
        for (std::size_t start = 0; start < n_; ++start) {
            window_.clear();
            for (std::size_t t = 0; t < horizon_; ++t)
                window_.push_back(root_[(start + t) % n_]);
            if (!table_.contains(window_))
                return false;
        }
        return true;
    }

    const LanguageTable& table_;
    std::size_t n_;
    std::size_t horizon_;
    bool keep_;
    Word root_;
    Word window_;
    std::size_t count_ = 0;
    std::vector<Word> roots_;
};

} // namespace

PeriodicCensus periodic_census(const RandomSubstitution& sub, std::size_t n_max, std::size_t horizon, bool keep_roots,
                               std::size_t window_budget, std::size_t threads) {
    if (horizon == 0)
        throw Error(ErrorKind::InvalidArgument, "horizon must be at least 1");
    return periodic_census(legal_words(sub, horizon, window_budget), n_max, horizon, keep_roots, threads);
}

PeriodicCensus periodic_census(const LanguageTable& table, std::size_t n_max, std::size_t horizon, bool keep_roots,
                               std::size_t threads) {
    if (n_max == 0)
        throw Error(ErrorKind::InvalidArgument, "n_max must be at least 1");
    if (horizon < n_max)
        throw Error(ErrorKind::InvalidArgument, "horizon " + std::to_string(horizon) +
                                                    " must be at least n_max = " + std::to_string(n_max));
    if (table.max_len() < horizon)
        return periodic_census(extend(table, horizon), n_max, horizon, keep_roots, threads);

    PeriodicCensus census;
    census.horizon = horizon;
    census.n_max = n_max;
    const std::size_t alphabet = table.substitution().size();
    for (std::size_t n = 1; n <= n_max; ++n) {
        auto scan_letter = [&](std::size_t a) {
            CensusScan scan(table, n, horizon, keep_roots);
            scan.run_from(static_cast<Letter>(a));
            return std::make_pair(scan.count(), std::move(scan.roots()));
        };
        std::vector<std::pair<std::size_t, std::vector<Word>>> parts(alphabet);
        if (threads > 1) {
            for (std::size_t start = 0; start < alphabet; start += threads) {
                std::vector<std::future<std::pair<std::size_t, std::vector<Word>>>> jobs;
                for (std::size_t a = start; a < std::min(alphabet, start + threads); ++a)
                    jobs.push_back(std::async(std::launch::async, scan_letter, a));
                for (std::size_t j = 0; j < jobs.size(); ++j)
                    parts[start + j] = jobs[j].get();
            }
        } else {
            for (std::size_t a = 0; a < alphabet; ++a)
                parts[a] = scan_letter(a);
        }
        std::size_t total = 0;
        std::vector<Word> roots;
        for (auto& [c, r] : parts) {
            total += c;
            roots.insert(roots.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
        }
        census.counts.push_back(total);
        census.roots.push_back(std::move(roots));
    }
    return census;
}

ZetaSeries zeta_series(const PeriodicCensus& census, std::size_t n_max) {
    if (census.counts.size() < n_max)
        throw Error(ErrorKind::InvalidArgument, "census covers n <= " + std::to_string(census.counts.size()) +
                                                    ", zeta needs n <= " + std::to_string(n_max));
    ZetaSeries z;
    z.log_terms.assign(n_max + 1, 0.0);
    for (std::size_t n = 1; n <= n_max; ++n)
        z.log_terms[n] = static_cast<double>(census.counts[n - 1]) / static_cast<double>(n);
    z.coefficients = PowerSeries(z.log_terms).exp();
    return z;
}

std::vector<std::size_t> mixing_gaps(const RandomSubstitution& sub, const Word& u, const Word& v, std::size_t n_max,
                                     std::size_t window_budget) {
    return mixing_gaps(legal_words(sub, u.size() + v.size() + n_max, window_budget), u, v, n_max);
}

std::vector<std::size_t> mixing_gaps(const LanguageTable& table, const Word& u, const Word& v, std::size_t n_max) {
    if (u.empty() || v.empty())
        throw Error(ErrorKind::InvalidArgument, "mixing probe needs non-empty words");
    const std::size_t need = u.size() + v.size() + n_max;
    if (table.max_len() < need)
        return mixing_gaps(extend(table, need), u, v, n_max);
    if (!table.contains(u) || !table.contains(v))
        throw Error(ErrorKind::InvalidArgument, "mixing probe needs legal words u and v");

    std::vector<std::size_t> gaps;
    for (std::size_t n = 0; n <= n_max; ++n) {
        const auto& words = table.words(u.size() + n + v.size());
        for (auto it = std::lower_bound(words.begin(), words.end(), u); it != words.end() && u.is_prefix_of(*it); ++it) {
            if (v.is_suffix_of(*it)) {
                gaps.push_back(n);
                break;
            }
        }
    }
    return gaps;
}

} // namespace randsub
