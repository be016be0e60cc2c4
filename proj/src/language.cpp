#include "randsub/language.hpp"

#include "randsub/error.hpp"
#include "randsub/matrices.hpp"

#include <algorithm>
#include <unordered_set>

namespace randsub {

const std::vector<Word>& LanguageTable::words(std::size_t len) const {
    if (len == 0 || len > max_len())
        throw Error(ErrorKind::InvalidArgument, "word length " + std::to_string(len) + " outside table range 1.." +
                                                    std::to_string(max_len()));
    return words_by_len_[len];
}

std::size_t LanguageTable::stabilized_at(std::size_t len) const {
    words(len);
    return stabilized_at_[len];
}

bool LanguageTable::contains(const Word& u) const {
    if (u.empty())
        return true;
    const auto& ws = words(u.size());
    return std::binary_search(ws.begin(), ws.end(), u);
}

bool is_empty_subshift(const RandomSubstitution& sub) {
    if (!is_primitive(sub))
        throw Error(ErrorKind::NotPrimitive, "emptiness criterion needs a primitive substitution");
    return sub.max_image_len() == 1;
}

namespace {

// Enumerates the windows of ϑ(u) that start inside the image of u's first
// letter and end inside the image of its last letter. Every other window of
// ϑ(u) is a window of ϑ(u') for a proper factor u' of u.
class WindowClosure {
public:
    WindowClosure(const RandomSubstitution& sub, std::size_t max_len, std::size_t budget)
        : sub_(sub), max_len_(max_len), budget_(budget), sets_(max_len + 1), last_round_(max_len + 1, 0) {
        const std::size_t n = sub.size();
        suffixes_.resize(n);
        prefixes_.resize(n);
        for (const auto& rule : sub.rules()) {
            std::vector<Word> suf, pre;
            for (const auto& im : rule.images) {
                for (std::size_t len = 1; len <= im.word.size(); ++len) {
                    suf.push_back(im.word.subword(im.word.size() - len, len));
                    pre.push_back(im.word.subword(0, len));
                }
            }
            for (auto* v : {&suf, &pre}) {
                std::sort(v->begin(), v->end(), [](const Word& x, const Word& y) {
                    return x.size() != y.size() ? x.size() < y.size() : x < y;
                });
                v->erase(std::unique(v->begin(), v->end()), v->end());
            }
            suffixes_[rule.source] = std::move(suf);
            prefixes_[rule.source] = std::move(pre);
        }
    }

    void run() {
        std::vector<Word> frontier;
        for (std::size_t a = 0; a < sub_.size(); ++a) {
            Word w{static_cast<Letter>(a)};
            sets_[1].insert(w);
            frontier.push_back(std::move(w));
        }
        std::size_t round = 0;
        while (!frontier.empty()) {
            ++round;
            round_ = round;
            next_.clear();
            for (const auto& u : frontier)
                close_over(u);
            frontier.swap(next_);
        }
    }

    std::vector<std::vector<Word>> sorted_words() const {
        std::vector<std::vector<Word>> out(max_len_ + 1);
        for (std::size_t len = 1; len <= max_len_; ++len) {
            out[len].assign(sets_[len].begin(), sets_[len].end());
            std::sort(out[len].begin(), out[len].end());
        }
        return out;
    }

    const std::vector<std::size_t>& last_round() const { return last_round_; }
    std::size_t examined() const { return examined_; }

private:
    void insert(const Word& w) {
        if (++examined_ > budget_)
            throw Error(ErrorKind::BudgetExceeded, "language closure exceeded the budget of " +
                                                       std::to_string(budget_) + " window extractions");
        if (sets_[w.size()].insert(w).second) {
            last_round_[w.size()] = round_;
            next_.push_back(w);
        }
    }

    void close_over(const Word& u) {
        const std::size_t m = u.size();
        if (m == 1) {
            for (const auto& im : sub_.rule(u[0]).images)
                for (std::size_t pos = 0; pos < im.word.size(); ++pos)
                    for (std::size_t len = 1; len <= std::min(max_len_, im.word.size() - pos); ++len)
                        insert(im.word.subword(pos, len));
            return;
        }
        // A window spans at least one letter of each end image plus all of the middle.
        if ((m - 2) * sub_.min_image_len() + 2 > max_len_)
            return;
        middle_.clear();
        expand_middle(u, 1);
    }

    void expand_middle(const Word& u, std::size_t i) {
        const std::size_t m = u.size();
        if (i + 1 == m) {
            emit_crossing(u);
            return;
        }
        const std::size_t mark = middle_.size();
        for (const auto& im : sub_.rule(u[i]).images) {
            if (mark + im.word.size() + 2 > max_len_)
                continue;
            middle_.append(im.word);
            expand_middle(u, i + 1);
            middle_.resize(mark);
        }
    }

    void emit_crossing(const Word& u) {
        const std::size_t room = max_len_ - middle_.size();
        Word w;
        for (const auto& s : suffixes_[u.front()]) {
            if (s.size() + 1 > room)
                break;
            for (const auto& p : prefixes_[u.back()]) {
                if (s.size() + p.size() > room)
                    break;
                w.clear();
                w.append(s);
                w.append(middle_);
                w.append(p);
                insert(w);
            }
        }
    }

    const RandomSubstitution& sub_;
    std::size_t max_len_;
    std::size_t budget_;
    std::vector<std::unordered_set<Word, WordHash>> sets_;
    std::vector<std::size_t> last_round_;
    std::vector<std::vector<Word>> suffixes_;
    std::vector<std::vector<Word>> prefixes_;
    std::vector<Word> next_;
    Word middle_;
    std::size_t round_ = 0;
    std::size_t examined_ = 0;
};

} // namespace

LanguageTable legal_words(const RandomSubstitution& sub, std::size_t max_len, std::size_t budget) {
    if (max_len == 0)
        throw Error(ErrorKind::InvalidArgument, "maximum word length must be at least 1");
    if (sub.max_image_len() == 1)
        throw Error(ErrorKind::EmptySubshift, "empty subshift: all images have length 1");

    WindowClosure closure(sub, max_len, budget);
    closure.run();

    LanguageTable table(sub);
    table.words_by_len_ = closure.sorted_words();
    table.stabilized_at_ = closure.last_round();
    table.windows_examined_ = closure.examined();
    for (std::size_t len = 1; len <= max_len; ++len)
        if (table.words_by_len_[len].empty())
            throw Error(ErrorKind::EmptySubshift,
                        "empty subshift: no legal word of length " + std::to_string(len));
    return table;
}

LanguageTable extend(const LanguageTable& table, std::size_t max_len, std::size_t budget) {
    if (max_len <= table.max_len())
        return table;
    return legal_words(table.substitution(), max_len, budget);
}

bool is_legal(const LanguageTable& table, const Word& u) {
    if (u.size() <= table.max_len())
        return table.contains(u);
    return extend(table, u.size()).contains(u);
}

std::vector<std::size_t> complexity(const LanguageTable& table, std::size_t max_len) {
    if (max_len > table.max_len())
        return complexity(extend(table, max_len), max_len);
    std::vector<std::size_t> out;
    for (std::size_t len = 1; len <= max_len; ++len)
        out.push_back(table.count(len));
    return out;
}

} // namespace randsub
