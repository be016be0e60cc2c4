#include "randsub/sampler.hpp"

#include "randsub/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <unordered_map>

namespace randsub {

std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t depth, std::uint64_t position) noexcept {
    return splitmix64_mix(splitmix64_mix(splitmix64_mix(seed) ^ depth) ^ position);
}

double counter_uniform(std::uint64_t seed, std::uint64_t depth, std::uint64_t position) noexcept {
    return static_cast<double>(counter_hash(seed, depth, position) >> 11) * 0x1.0p-53;
}

std::size_t choose_image(const Rule& rule, double u) {
    double cumulative = 0.0;
    std::size_t last_positive = rule.images.size();
    for (std::size_t q = 0; q < rule.images.size(); ++q) {
        if (rule.images[q].probability <= 0.0)
            continue;
        cumulative += rule.images[q].probability;
        last_positive = q;
        if (u < cumulative)
            return q;
    }
    if (last_positive == rule.images.size())
        throw Error(ErrorKind::DegenerateRule, "rule has no image with positive probability");
    // Rounding left the cumulative sum just below 1.
    return last_positive;
}

namespace {

class Expander {
public:
    Expander(const RandomSubstitution& sub, std::size_t depth, std::uint64_t seed,
             const std::function<void(Letter)>& sink)
        : sub_(sub), depth_(depth), seed_(seed), sink_(sink), positions_(depth, 0) {}

    // Depth-first order visits the letters of every level left to right, so
    // positions_[level] is the letter's index in the level-`level` word.
    void expand(Letter x, std::size_t level) {
        if (level == depth_) {
            sink_(x);
            return;
        }
        const Rule& rule = sub_.rule(x);
        std::uint64_t pos = positions_[level]++;
        std::size_t q = choose_image(rule, counter_uniform(seed_, level, pos));
        for (Letter y : rule.images[q].word)
            expand(y, level + 1);
    }

private:
    const RandomSubstitution& sub_;
    std::size_t depth_;
    std::uint64_t seed_;
    const std::function<void(Letter)>& sink_;
    std::vector<std::uint64_t> positions_;
};

// Sliding ℓ-window counter over a letter stream.
class WindowCounter {
public:
    explicit WindowCounter(std::size_t ell) : ell_(ell) {}

    void push(Letter a) {
        window_.push_back(a);
        if (window_.size() > ell_) {
            std::rotate(window_.begin(), window_.begin() + 1, window_.end());
            window_.resize(ell_);
        }
        ++letters_;
        if (window_.size() == ell_) {
            ++counts_[Word(window_)];
            ++total_;
        }
    }

    std::size_t letters() const { return letters_; }

    std::vector<std::pair<Word, double>> frequencies() const {
        std::vector<std::pair<Word, double>> out;
        out.reserve(counts_.size());
        for (const auto& [w, c] : counts_)
            out.emplace_back(w, static_cast<double>(c) / static_cast<double>(total_));
        std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        return out;
    }

private:
    std::size_t ell_;
    std::vector<Letter> window_;
    std::unordered_map<Word, std::size_t, WordHash> counts_;
    std::size_t letters_ = 0;
    std::size_t total_ = 0;
};

} // namespace

void stream_realisation(const RandomSubstitution& sub, Letter a, std::size_t k, std::uint64_t seed,
                        const std::function<void(Letter)>& sink) {
    if (a >= sub.size())
        throw Error(ErrorKind::UnknownLetter, "start letter outside the alphabet");
    Expander(sub, k, seed, sink).expand(a, 0);
}

Word sample_realisation(const RandomSubstitution& sub, Letter a, std::size_t k, std::uint64_t seed) {
    Word w;
    stream_realisation(sub, a, k, seed, [&](Letter x) { w.push_back(x); });
    return w;
}

std::vector<std::pair<Word, double>> empirical_frequencies(const Word& w, std::size_t ell) {
    if (ell == 0)
        throw Error(ErrorKind::InvalidArgument, "window length must be at least 1");
    if (w.size() < ell)
        throw Error(ErrorKind::WordTooShort, "word of length " + std::to_string(w.size()) +
                                                 " has no window of length " + std::to_string(ell));
    WindowCounter counter(ell);
    for (Letter a : w)
        counter.push(a);
    return counter.frequencies();
}

SampleReport frequency_report(const RandomSubstitution& sub, std::size_t ell, std::size_t k, std::uint64_t seed,
                              Letter start, std::size_t budget) {
    SampleReport report;
    report.seed = seed;
    report.start_letter = start;
    report.depth = k;
    report.ell = ell;
    report.predicted = word_frequencies(sub, ell, kDefaultPerronTolerance, budget);

    WindowCounter counter(ell);
    stream_realisation(sub, start, k, seed, [&](Letter x) { counter.push(x); });
    report.sample_length = counter.letters();
    if (report.sample_length < ell)
        throw Error(ErrorKind::WordTooShort, "sample of length " + std::to_string(report.sample_length) +
                                                 " has no window of length " + std::to_string(ell));

    std::map<Word, FrequencyRow> rows;
    for (std::size_t i = 0; i < report.predicted.words.size(); ++i)
        rows[report.predicted.words[i]] = {report.predicted.words[i], 0.0, report.predicted.values[i], 0.0};
    for (const auto& [w, f] : counter.frequencies()) {
        auto& row = rows[w];
        row.word = w;
        row.empirical = f;
    }
    for (auto& [w, row] : rows) {
        row.abs_dev = std::abs(row.empirical - row.predicted);
        report.max_abs_deviation = std::max(report.max_abs_deviation, row.abs_dev);
        report.rows.push_back(row);
    }
    return report;
}

std::string to_csv(const SampleReport& report, const Alphabet& alphabet) {
    std::string out = "word,empirical,predicted,abs_dev\n";
    char buf[128];
    for (const auto& row : report.rows) {
        std::snprintf(buf, sizeof buf, ",%.12g,%.12g,%.12g\n", row.empirical, row.predicted, row.abs_dev);
        out += alphabet.format(row.word) + buf;
    }
    std::snprintf(buf, sizeof buf, "%.12g", report.max_abs_deviation);
    out += "# seed=" + std::to_string(report.seed) + " letter=" + alphabet.name(report.start_letter) +
           " depth=" + std::to_string(report.depth) + " ell=" + std::to_string(report.ell) +
           " sample_length=" + std::to_string(report.sample_length) + " max_abs_deviation=" + buf +
           " (empirical evidence, not a proof of ergodicity)\n";
    return out;
}

} // namespace randsub
