#include "randsub/cli.hpp"

#include "randsub/core.hpp"
#include "randsub/dynamics.hpp"
#include "randsub/examples.hpp"
#include "randsub/induced.hpp"
#include "randsub/language.hpp"
#include "randsub/matrices.hpp"
#include "randsub/sampler.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace randsub::cli {

namespace {

const std::set<std::string> kSubcommands = {"info",       "language", "matrix",   "induced", "freq",  "ergodicity",
                                            "entropy",    "periodic", "zeta",     "mixing",  "sample"};

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::InvalidArgument, "cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_matrix(std::ostream& out, const NonnegMatrix& m, const std::vector<std::string>& labels) {
    out << "matrix";
    for (const auto& l : labels)
        out << ',' << l;
    out << '\n';
    for (std::size_t i = 0; i < m.dim(); ++i) {
        out << labels[i];
        for (std::size_t j = 0; j < m.dim(); ++j)
            out << ',' << num(m(i, j));
        out << '\n';
    }
}

void write_vector(std::ostream& out, const std::string& label, const std::vector<double>& v) {
    out << label;
    for (double x : v)
        out << ',' << num(x);
    out << '\n';
}

class Runner {
public:
    Runner(const RunConfig& config, std::ostream& out, std::ostream& err)
        : cfg_(config), out_(out), err_(err), sub_(load()) {}

    void dispatch() {
        const auto& cmd = cfg_.subcommand;
        if (cmd == "info") info();
        else if (cmd == "language") language();
        else if (cmd == "matrix") matrix();
        else if (cmd == "induced") induced();
        else if (cmd == "freq") freq();
        else if (cmd == "ergodicity") ergodicity();
        else if (cmd == "entropy") entropy();
        else if (cmd == "periodic") periodic();
        else if (cmd == "zeta") zeta();
        else if (cmd == "mixing") mixing();
        else if (cmd == "sample") sample();
    }

private:
    RandomSubstitution load() const {
        if (cfg_.example)
            return load_example(*cfg_.example);
        return parse_spec(read_file(*cfg_.spec_path));
    }

    std::size_t window_budget() const { return cfg_.budget.value_or(kDefaultWindowBudget); }
    std::size_t realisation_budget() const { return cfg_.budget.value_or(kDefaultRealisationBudget); }
    std::size_t horizon() const { return cfg_.horizon.value_or(2 * cfg_.nmax); }
    const Alphabet& alpha() const { return sub_.alphabet(); }

    void info() {
        out_ << "key,value\n";
        out_ << "letters," << alpha().size() << '\n';
        out_ << "max_image_len," << sub_.max_image_len() << '\n';
        out_ << "min_image_len," << sub_.min_image_len() << '\n';
        out_ << "deterministic," << (sub_.is_deterministic() ? "true" : "false") << '\n';
        out_ << "degenerate," << (sub_.is_degenerate() ? "true" : "false") << '\n';
        out_ << "irreducible," << (is_irreducible(sub_) ? "true" : "false") << '\n';
        const bool primitive = is_primitive(sub_);
        out_ << "primitive," << (primitive ? "true" : "false") << '\n';
        if (primitive)
            out_ << "empty_subshift," << (is_empty_subshift(sub_) ? "true" : "false") << '\n';
        out_ << '\n' << serialize(sub_);
    }

    void language() {
        auto table = legal_words(sub_, cfg_.lmax, window_budget());
        out_ << "length,count\n";
        for (std::size_t len = 1; len <= cfg_.lmax; ++len)
            out_ << len << ',' << table.count(len) << '\n';
        if (cfg_.dump_words) {
            out_ << "\nlength,word\n";
            for (std::size_t len = 1; len <= cfg_.lmax; ++len)
                for (const auto& w : table.words(len))
                    out_ << len << ',' << alpha().format(w) << '\n';
        }
    }

    void matrix() {
        auto m = substitution_matrix(sub_);
        write_matrix(out_, m, alpha().letters());
        if (!is_primitive(sub_))
            throw Error(ErrorKind::NotPrimitive, "substitution is not primitive; no Perron-Frobenius data");
        auto pd = perron_data(m, cfg_.tol.value_or(kDefaultPerronTolerance), !sub_.is_degenerate());
        out_ << "lambda," << num(pd.lambda) << '\n';
        out_ << "residual," << num(pd.residual) << '\n';
        out_ << "vector";
        for (const auto& l : alpha().letters())
            out_ << ',' << l;
        out_ << '\n';
        write_vector(out_, "right", pd.right);
        write_vector(out_, "left", pd.left);
    }

    void induced() {
        auto ind = induced_substitution(sub_, cfg_.ell, window_budget());
        out_ << serialize(ind.substitution) << '\n';
        write_matrix(out_, induced_matrix(ind), ind.substitution.alphabet().letters());
    }

    RandomSubstitution with_cli_probs() const {
        if (!cfg_.probs)
            return sub_;
        return sub_.with_probabilities(parse_probability_assignment(*cfg_.probs));
    }

    void freq() {
        auto sub = with_cli_probs();
        auto f = word_frequencies(sub, cfg_.ell, cfg_.tol.value_or(kDefaultPerronTolerance), window_budget());
        out_ << "word,frequency\n";
        for (std::size_t i = 0; i < f.words.size(); ++i)
            out_ << alpha().format(f.words[i]) << ',' << num(f.values[i]) << '\n';
    }

    void ergodicity() {
        std::vector<ProbabilityAssignment> grid;
        std::istringstream lines(read_file(*cfg_.grid_path));
        std::string line;
        while (std::getline(lines, line)) {
            if (auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            if (line.find_first_not_of(" \t\r") == std::string::npos)
                continue;
            grid.push_back(parse_probability_assignment(line));
        }
        auto verdict = unique_ergodicity_scan(sub_, cfg_.lmax, grid, cfg_.tol.value_or(kDefaultScanTolerance),
                                              cfg_.threads, window_budget());
        for (std::size_t g : verdict.excluded_points)
            err_ << "warning: grid point " << g << " is degenerate and was excluded from the verdict\n";
        out_ << "key,value\n";
        if (verdict.witness) {
            const auto& w = *verdict.witness;
            out_ << "verdict,NotUniquelyErgodic\n";
            out_ << "ell," << w.ell << '\n';
            out_ << "word," << alpha().format(w.word) << '\n';
            out_ << "point_a," << w.point_a << '\n';
            out_ << "point_b," << w.point_b << '\n';
            out_ << "value_a," << num(w.value_a) << '\n';
            out_ << "value_b," << num(w.value_b) << '\n';
        } else {
            out_ << "verdict,ConsistentUpTo\n";
            out_ << "ell_max," << verdict.ell_max << '\n';
            out_ << "points," << verdict.evaluated_points.size() << '\n';
            out_ << "note,frequencies agree on this grid; this does not prove unique ergodicity\n";
        }
    }

    void entropy() {
        auto b = entropy_bracket(sub_, cfg_.lmax, cfg_.kmax, window_budget(), realisation_budget());
        if (cfg_.example)
            b.exact_known = find_example(*cfg_.example).exact_entropy;
        out_ << "ell,log_complexity_over_ell\n";
        for (const auto& [ell, h] : b.upper_profile)
            out_ << ell << ',' << num(h) << '\n';
        out_ << "\nkey,value\n";
        out_ << "upper," << num(b.upper) << '\n';
        out_ << "lower," << num(b.lower) << '\n';
        if (b.lower_witness) {
            const auto& w = *b.lower_witness;
            out_ << "witness_letter," << alpha().name(w.letter) << '\n';
            out_ << "witness_power," << w.power << '\n';
            out_ << "witness_pair," << alpha().format(w.shorter) << ' ' << alpha().format(w.longer) << '\n';
            out_ << "witness_frequency," << num(b.witness_frequency) << '\n';
            out_ << "witness_max_length," << b.witness_max_length << '\n';
        }
        out_ << "caveat," << (b.caveat ? "true" : "false") << '\n';
        out_ << "status," << b.status << '\n';
        if (b.exact_known)
            out_ << "exact," << num(*b.exact_known) << '\n';
    }

    void periodic() {
        auto census = periodic_census(sub_, cfg_.nmax, horizon(), false, window_budget(), cfg_.threads);
        out_ << "n,count\n";
        for (std::size_t n = 1; n <= cfg_.nmax; ++n)
            out_ << n << ',' << census.count(n) << '\n';
        out_ << "# counts certified to horizon " << census.horizon << '\n';
    }

    void zeta() {
        auto census = periodic_census(sub_, cfg_.nmax, horizon(), false, window_budget(), cfg_.threads);
        auto z = zeta_series(census, cfg_.nmax);
        out_ << "degree,coefficient\n";
        for (std::size_t d = 0; d <= cfg_.nmax; ++d)
            out_ << d << ',' << num(z.coefficients[d]) << '\n';
        out_ << "# from periodic counts certified to horizon " << census.horizon << '\n';
    }

    void mixing() {
        Word u = alpha().parse_word(cfg_.u);
        Word v = alpha().parse_word(cfg_.v);
        auto gaps = mixing_gaps(sub_, u, v, cfg_.nmax, window_budget());
        std::set<std::size_t> achievable(gaps.begin(), gaps.end());
        out_ << "n,achievable\n";
        for (std::size_t n = 0; n <= cfg_.nmax; ++n)
            out_ << n << ',' << (achievable.count(n) ? "true" : "false") << '\n';
    }

    void sample() {
        Letter start = cfg_.letter.empty() ? Letter{0} : alpha().index(cfg_.letter);
        auto report = frequency_report(sub_, cfg_.ell, cfg_.depth, cfg_.seed, start, window_budget());
        out_ << to_csv(report, alpha());
    }

    const RunConfig& cfg_;
    std::ostream& out_;
    std::ostream& err_;
    RandomSubstitution sub_;
};

} // namespace

std::optional<std::string> validate(const RunConfig& c) {
    if (c.spec_path.has_value() == c.example.has_value())
        return "exactly one of --spec and --example is required";
    if (!kSubcommands.count(c.subcommand))
        return "unknown subcommand '" + c.subcommand + "'";
    if (c.ell == 0)
        return "--ell must be positive";
    if (c.lmax == 0)
        return "--lmax must be positive";
    if (c.kmax == 0)
        return "--kmax must be positive";
    if (c.nmax == 0)
        return "--nmax must be positive";
    if (c.horizon && *c.horizon == 0)
        return "--horizon must be positive";
    if (c.budget && *c.budget == 0)
        return "--budget must be positive";
    if (c.tol && !(*c.tol > 0.0))
        return "--tol must be positive";
    if (c.threads == 0)
        return "--threads must be positive";
    if (c.subcommand == "ergodicity" && !c.grid_path)
        return "ergodicity needs --grid";
    if (c.subcommand == "mixing" && (c.u.empty() || c.v.empty()))
        return "mixing needs --u and --v";
    return std::nullopt;
}

int exit_status(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Syntax:
    case ErrorKind::UnknownLetter:
    case ErrorKind::BadProbability:
    case ErrorKind::EmptyImage:
    case ErrorKind::InvalidArgument:
        return kUsageError;
    case ErrorKind::BudgetExceeded:
        return kBudgetExceeded;
    default:
        return kDomainError;
    }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (auto problem = validate(config)) {
        err << "error: " << *problem << '\n';
        return kUsageError;
    }
    std::ostringstream buffer;
    int status = kOk;
    try {
        Runner(config, buffer, err).dispatch();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        status = exit_status(e.kind());
    }
    if (config.out_path) {
        std::ofstream file(*config.out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot write '" << *config.out_path << "'\n";
            return kUsageError;
        }
        file << buffer.str();
    } else {
        out << buffer.str();
    }
    return status;
}

} // namespace randsub::cli
