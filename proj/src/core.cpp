#include "randsub/core.hpp"

#include "randsub/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

namespace randsub {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Syntax: return "syntax error";
    case ErrorKind::UnknownLetter: return "unknown letter";
    case ErrorKind::BadProbability: return "bad probability";
    case ErrorKind::EmptyImage: return "empty image";
    case ErrorKind::BudgetExceeded: return "budget exceeded";
    case ErrorKind::EmptySubshift: return "empty subshift";
    case ErrorKind::NotPrimitive: return "not primitive";
    case ErrorKind::NotPrimitiveMatrix: return "matrix not primitive";
    case ErrorKind::NoConvergence: return "no convergence";
    case ErrorKind::LengthOrder: return "length order";
    case ErrorKind::WordTooShort: return "word too short";
    case ErrorKind::DegenerateRule: return "degenerate rule";
    case ErrorKind::InvalidArgument: return "invalid argument";
    }
    return "error";
}

SyntaxError::SyntaxError(ErrorKind kind, std::size_t line, std::size_t column, const std::string& message)
    : Error(kind, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line), column_(column) {}

// ---------------------------------------------------------------------------
// Word

Word Word::subword(std::size_t pos, std::size_t len) const {
    if (pos + len > symbols_.size())
        throw Error(ErrorKind::InvalidArgument, "subword out of range");
    return Word(std::vector<Letter>(symbols_.begin() + static_cast<std::ptrdiff_t>(pos),
                                    symbols_.begin() + static_cast<std::ptrdiff_t>(pos + len)));
}

std::size_t Word::count(Letter a) const {
    return static_cast<std::size_t>(std::count(symbols_.begin(), symbols_.end(), a));
}

bool Word::is_prefix_of(const Word& v) const {
    return size() <= v.size() && std::equal(begin(), end(), v.begin());
}

bool Word::is_suffix_of(const Word& v) const {
    return size() <= v.size() && std::equal(begin(), end(), v.end() - static_cast<std::ptrdiff_t>(size()));
}

bool Word::is_factor_of(const Word& v) const {
    return std::search(v.begin(), v.end(), begin(), end()) != v.end();
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
    // FNV-1a over the letter indices.
    std::uint64_t h = 1469598103934665603ULL;
    for (Letter a : w) {
        h ^= static_cast<std::uint64_t>(a) + 1;
        h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
}

// ---------------------------------------------------------------------------
// Alphabet

namespace {

bool valid_token(std::string_view t) {
    if (t.empty() || t == "->" || t == "rule")
        return false;
    return std::none_of(t.begin(), t.end(), [](char c) {
        return c == '.' || c == ':' || c == '|' || c == '#' || c == '/' || c == ';' || c == ',' ||
               std::isspace(static_cast<unsigned char>(c));
    });
}

} // namespace

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
    if (letters_.empty())
        throw Error(ErrorKind::InvalidArgument, "alphabet must contain at least one letter");
    if (letters_.size() > kMaxAlphabetSize)
        throw Error(ErrorKind::InvalidArgument, "alphabet too large");
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        const auto& t = letters_[i];
        if (!valid_token(t))
            throw Error(ErrorKind::InvalidArgument, "invalid letter token '" + t + "'");
        if (!index_.emplace(t, static_cast<Letter>(i)).second)
            throw Error(ErrorKind::InvalidArgument, "duplicate letter '" + t + "'");
        if (t.size() != 1)
            single_char_ = false;
    }
}

bool Alphabet::contains(std::string_view token) const {
    return index_.find(std::string(token)) != index_.end();
}

Letter Alphabet::index(std::string_view token) const {
    auto it = index_.find(std::string(token));
    if (it == index_.end())
        throw Error(ErrorKind::UnknownLetter, "unknown letter '" + std::string(token) + "'");
    return it->second;
}

Word Alphabet::parse_word(std::string_view text) const {
    Word w;
    if (text.find('.') != std::string_view::npos) {
        std::size_t start = 0;
        while (true) {
            auto dot = text.find('.', start);
            auto token = text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
            if (token.empty())
                throw Error(ErrorKind::Syntax, "empty letter in dotted word '" + std::string(text) + "'");
            w.push_back(index(token));
            if (dot == std::string_view::npos)
                break;
            start = dot + 1;
        }
    } else if (single_char_) {
        for (char c : text)
            w.push_back(index(std::string_view(&c, 1)));
    } else if (!text.empty()) {
        w.push_back(index(text));
    }
    return w;
}

std::string Alphabet::format(const Word& w) const {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!single_char_ && i > 0)
            out += '.';
        out += name(w[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// RandomSubstitution

RandomSubstitution::RandomSubstitution(Alphabet alphabet, std::vector<Rule> rules)
    : alphabet_(std::move(alphabet)) {
    const std::size_t n = alphabet_.size();
    if (n == 0)
        throw Error(ErrorKind::InvalidArgument, "empty alphabet");
    std::vector<std::optional<Rule>> slots(n);
    for (auto& r : rules) {
        if (r.source >= n)
            throw Error(ErrorKind::UnknownLetter, "rule for letter index outside the alphabet");
        if (slots[r.source])
            throw Error(ErrorKind::Syntax, "duplicate rule for letter '" + alphabet_.name(r.source) + "'");
        slots[r.source] = std::move(r);
    }
    max_image_len_ = 0;
    min_image_len_ = std::numeric_limits<std::size_t>::max();
    for (std::size_t a = 0; a < n; ++a) {
        const auto& letter = alphabet_.name(static_cast<Letter>(a));
        if (!slots[a])
            throw Error(ErrorKind::Syntax, "missing rule for letter '" + letter + "'");
        Rule merged{static_cast<Letter>(a), {}};
        double total = 0.0;
        for (auto& im : slots[a]->images) {
            if (im.word.empty())
                throw Error(ErrorKind::EmptyImage, "empty image in rule for '" + letter + "'");
            for (Letter b : im.word)
                if (b >= n)
                    throw Error(ErrorKind::UnknownLetter, "image of '" + letter + "' uses a letter outside the alphabet");
            if (!(im.probability >= 0.0 && im.probability <= 1.0 + kProbabilityTolerance))
                throw Error(ErrorKind::BadProbability, "probability outside [0,1] in rule for '" + letter + "'");
            im.probability = std::min(im.probability, 1.0);
            total += im.probability;
            auto it = std::find_if(merged.images.begin(), merged.images.end(),
                                   [&](const Image& x) { return x.word == im.word; });
            if (it != merged.images.end())
                it->probability += im.probability;
            else
                merged.images.push_back(std::move(im));
        }
        if (merged.images.empty())
            throw Error(ErrorKind::EmptyImage, "rule for '" + letter + "' has no images");
        if (std::abs(total - 1.0) > kProbabilityTolerance)
            throw Error(ErrorKind::BadProbability, "probabilities of rule for '" + letter + "' sum to " +
                                                       std::to_string(total) + ", not 1");
        for (auto& im : merged.images) {
            im.probability = std::min(im.probability, 1.0);
            max_image_len_ = std::max(max_image_len_, im.word.size());
            min_image_len_ = std::min(min_image_len_, im.word.size());
            if (im.probability == 0.0)
                degenerate_ = true;
        }
        rules_.push_back(std::move(merged));
    }
}

bool RandomSubstitution::is_deterministic() const noexcept {
    return std::all_of(rules_.begin(), rules_.end(), [](const Rule& r) { return r.images.size() == 1; });
}

ProbabilityAssignment RandomSubstitution::probabilities() const {
    ProbabilityAssignment out;
    for (const auto& r : rules_) {
        std::vector<double> p;
        for (const auto& im : r.images)
            p.push_back(im.probability);
        out.push_back(std::move(p));
    }
    return out;
}

RandomSubstitution RandomSubstitution::with_probabilities(const ProbabilityAssignment& probs) const {
    if (probs.size() != rules_.size())
        throw Error(ErrorKind::BadProbability, "expected " + std::to_string(rules_.size()) +
                                                   " probability vectors, got " + std::to_string(probs.size()));
    std::vector<Rule> rules = rules_;
    for (std::size_t a = 0; a < rules.size(); ++a) {
        if (probs[a].size() != rules[a].images.size())
            throw Error(ErrorKind::BadProbability, "rule for '" + alphabet_.name(static_cast<Letter>(a)) + "' has " +
                                                       std::to_string(rules[a].images.size()) + " images, got " +
                                                       std::to_string(probs[a].size()) + " probabilities");
        for (std::size_t q = 0; q < probs[a].size(); ++q)
            rules[a].images[q].probability = probs[a][q];
    }
    return RandomSubstitution(alphabet_, std::move(rules));
}

// ---------------------------------------------------------------------------
// Spec format

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::optional<double> parse_decimal(std::string_view s) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

// Column (1-based) of `part` inside `line`; both views share storage.
std::size_t column_of(std::string_view line, std::string_view part) {
    return static_cast<std::size_t>(part.data() - line.data()) + 1;
}

} // namespace

double parse_probability(std::string_view text) {
    text = trim(text);
    std::optional<double> value;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = parse_decimal(trim(text.substr(0, slash)));
        auto den = parse_decimal(trim(text.substr(slash + 1)));
        if (!num || !den)
            throw Error(ErrorKind::Syntax, "malformed fraction '" + std::string(text) + "'");
        if (*den == 0.0)
            throw Error(ErrorKind::BadProbability, "zero denominator in '" + std::string(text) + "'");
        value = *num / *den;
    } else {
        value = parse_decimal(text);
        if (!value)
            throw Error(ErrorKind::Syntax, "malformed probability '" + std::string(text) + "'");
    }
    if (!(*value >= 0.0 && *value <= 1.0))
        throw Error(ErrorKind::BadProbability, "probability " + std::string(text) + " outside [0,1]");
    return *value;
}

ProbabilityAssignment parse_probability_assignment(std::string_view text) {
    ProbabilityAssignment out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto semi = text.find(';', start);
        auto group = trim(text.substr(start, semi == std::string_view::npos ? std::string_view::npos : semi - start));
        std::vector<double> probs;
        std::istringstream in{std::string(group)};
        std::string token;
        while (in >> token)
            probs.push_back(parse_probability(token));
        if (probs.empty())
            throw Error(ErrorKind::Syntax, "empty probability group in '" + std::string(text) + "'");
        out.push_back(std::move(probs));
        if (semi == std::string_view::npos)
            break;
        start = semi + 1;
    }
    return out;
}

RandomSubstitution parse_spec(std::string_view text) {
    std::optional<Alphabet> alphabet;
    std::vector<Rule> rules;
    std::vector<bool> seen;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        std::string_view body = trim(line);
        if (body.empty())
            continue;

        if (!alphabet) {
            constexpr std::string_view kHeader = "alphabet:";
            if (body.substr(0, kHeader.size()) != kHeader)
                throw SyntaxError(ErrorKind::Syntax, line_no, column_of(raw, body), "expected 'alphabet:'");
            std::vector<std::string> letters;
            std::istringstream in{std::string(body.substr(kHeader.size()))};
            std::string token;
            while (in >> token)
                letters.push_back(token);
            try {
                alphabet.emplace(std::move(letters));
            } catch (const Error& e) {
                throw SyntaxError(ErrorKind::Syntax, line_no, column_of(raw, body), e.what());
            }
            seen.assign(alphabet->size(), false);
            continue;
        }

        constexpr std::string_view kRule = "rule";
        if (body.substr(0, kRule.size()) != kRule || body.size() == kRule.size() ||
            !std::isspace(static_cast<unsigned char>(body[kRule.size()])))
            throw SyntaxError(ErrorKind::Syntax, line_no, column_of(raw, body), "expected 'rule <letter> -> ...'");
        auto rest = trim(body.substr(kRule.size()));
        auto arrow = rest.find("->");
        if (arrow == std::string_view::npos)
            throw SyntaxError(ErrorKind::Syntax, line_no, column_of(raw, rest), "missing '->'");
        auto source_tok = trim(rest.substr(0, arrow));
        if (!alphabet->contains(source_tok))
            throw SyntaxError(ErrorKind::UnknownLetter, line_no, column_of(raw, rest),
                              "rule for undeclared letter '" + std::string(source_tok) + "'");
        Letter source = alphabet->index(source_tok);
        if (seen[source])
            throw SyntaxError(ErrorKind::Syntax, line_no, column_of(raw, rest),
                              "duplicate rule for letter '" + std::string(source_tok) + "'");
        seen[source] = true;

        Rule rule{source, {}};
        std::size_t with_prob = 0;
        auto images_text = rest.substr(arrow + 2);
        std::size_t start = 0;
        while (true) {
            auto bar = images_text.find('|', start);
            auto item_raw = images_text.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start);
            auto item = trim(item_raw);
            std::size_t col = item.empty() ? column_of(raw, item_raw) : column_of(raw, item);
            auto colon = item.find(':');
            auto word_text = trim(item.substr(0, colon));
            if (word_text.empty())
                throw SyntaxError(ErrorKind::EmptyImage, line_no, col, "empty image word");
            Image im;
            try {
                im.word = alphabet->parse_word(word_text);
            } catch (const Error& e) {
                throw SyntaxError(e.kind(), line_no, col, e.what());
            }
            if (colon != std::string_view::npos) {
                ++with_prob;
                try {
                    im.probability = parse_probability(item.substr(colon + 1));
                } catch (const Error& e) {
                    throw SyntaxError(e.kind(), line_no, col, e.what());
                }
            }
            rule.images.push_back(std::move(im));
            if (bar == std::string_view::npos)
                break;
            start = bar + 1;
        }
        if (with_prob == 0) {
            for (auto& im : rule.images)
                im.probability = 1.0 / static_cast<double>(rule.images.size());
        } else if (with_prob != rule.images.size()) {
            throw SyntaxError(ErrorKind::Syntax, line_no, column_of(raw, rest),
                              "probabilities must be given for all images of a rule or for none");
        }
        double total = 0.0;
        for (const auto& im : rule.images)
            total += im.probability;
        if (std::abs(total - 1.0) > kProbabilityTolerance)
            throw SyntaxError(ErrorKind::BadProbability, line_no, column_of(raw, rest),
                              "probabilities sum to " + std::to_string(total) + ", not 1");
        rules.push_back(std::move(rule));
    }

    if (!alphabet)
        throw SyntaxError(ErrorKind::Syntax, line_no, 1, "missing 'alphabet:' line");
    for (std::size_t a = 0; a < seen.size(); ++a)
        if (!seen[a])
            throw SyntaxError(ErrorKind::Syntax, line_no, 1,
                              "missing rule for letter '" + alphabet->name(static_cast<Letter>(a)) + "'");
    return RandomSubstitution(std::move(*alphabet), std::move(rules));
}

std::string serialize(const RandomSubstitution& sub) {
    const auto& alpha = sub.alphabet();
    std::string out = "alphabet:";
    for (const auto& t : alpha.letters())
        out += " " + t;
    out += "\n";
    char buf[64];
    for (const auto& r : sub.rules()) {
        out += "rule " + alpha.name(r.source) + " ->";
        for (std::size_t q = 0; q < r.images.size(); ++q) {
            std::snprintf(buf, sizeof buf, "%.12g", r.images[q].probability);
            out += (q == 0 ? " " : " | ") + alpha.format(r.images[q].word) + ":" + buf;
        }
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Realisations

void for_each_choice(const RandomSubstitution& sub, const Word& u,
                     const std::function<void(const Word&, double)>& visit) {
    const std::size_t m = u.size();
    if (m == 0)
        throw Error(ErrorKind::InvalidArgument, "cannot substitute the empty word");
    std::vector<std::size_t> choice(m, 0);
    std::vector<std::size_t> mark(m + 1, 0);
    std::vector<double> prob(m + 1, 1.0);
    Word w;

    auto fill = [&](std::size_t from) {
        w.resize(mark[from]);
        for (std::size_t i = from; i < m; ++i) {
            const Image& im = sub.rule(u[i]).images[choice[i]];
            w.append(im.word);
            mark[i + 1] = w.size();
            prob[i + 1] = prob[i] * im.probability;
        }
    };

    fill(0);
    visit(w, prob[m]);
    std::size_t i = m;
    while (i > 0) {
        --i;
        if (++choice[i] < sub.rule(u[i]).arity()) {
            fill(i);
            visit(w, prob[m]);
            i = m;
        } else {
            choice[i] = 0;
        }
    }
}

namespace {

class RealisationAccumulator {
public:
    explicit RealisationAccumulator(std::size_t budget) : budget_(budget) {}

    void add(const Word& w, double p) {
        auto [it, inserted] = index_.try_emplace(w, out_.size());
        if (inserted) {
            if (out_.size() >= budget_)
                throw Error(ErrorKind::BudgetExceeded,
                            "more than " + std::to_string(budget_) + " distinct realisations");
            out_.push_back({w, p});
        } else {
            out_[it->second].probability += p;
        }
    }

    std::vector<Realisation> take() { return std::move(out_); }

private:
    std::size_t budget_;
    std::unordered_map<Word, std::size_t, WordHash> index_;
    std::vector<Realisation> out_;
};

} // namespace

std::vector<Realisation> realisations(const RandomSubstitution& sub, const Word& u, std::size_t budget) {
    RealisationAccumulator acc(budget);
    for_each_choice(sub, u, [&](const Word& w, double p) { acc.add(w, p); });
    return acc.take();
}

std::vector<Realisation> power_realisations(const RandomSubstitution& sub, Letter a, std::size_t k,
                                            std::size_t budget) {
    if (a >= sub.size())
        throw Error(ErrorKind::UnknownLetter, "letter index outside the alphabet");
    std::vector<Realisation> current{{Word{a}, 1.0}};
    for (std::size_t step = 0; step < k; ++step) {
        RealisationAccumulator acc(budget);
        for (const auto& [w, p] : current)
            for_each_choice(sub, w, [&](const Word& v, double q) { acc.add(v, p * q); });
        current = acc.take();
    }
    return current;
}

} // namespace randsub
