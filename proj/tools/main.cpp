// randsub: command-line front end for random substitution subshifts.

#include "randsub/cli.hpp"
#include "randsub/examples.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using randsub::cli::RunConfig;

    CLI::App app{"Language, matrices, frequencies, entropy and periodic points of random substitutions"};
    app.fallthrough();
    app.require_subcommand(1, 1);

    RunConfig cfg;
    std::string spec, example;
    std::size_t budget = 0;
    double tol = 0.0;
    std::string out_path;
    std::size_t horizon = 0;
    std::string grid, probs;

    auto* spec_opt = app.add_option("--spec", spec, "Substitution spec file");
    std::string names;
    for (const auto& ex : randsub::bundled_examples())
        names += (names.empty() ? "" : ", ") + ex.name;
    auto* example_opt = app.add_option("--example", example, "Bundled example: " + names);
    spec_opt->excludes(example_opt);
    auto* out_opt = app.add_option("--out", out_path, "Write the report to FILE instead of stdout");
    auto* budget_opt = app.add_option("--budget", budget, "Enumeration budget (windows or realisations)");
    auto* tol_opt = app.add_option("--tol", tol, "Numerical tolerance");
    app.add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);

    app.add_subcommand("info", "Summary of the substitution");

    auto* language = app.add_subcommand("language", "Complexity C(l) of the legal language");
    language->add_option("--lmax", cfg.lmax, "Maximum word length");
    language->add_flag("--dump-words", cfg.dump_words, "Also list every legal word");

    app.add_subcommand("matrix", "Substitution matrix and Perron-Frobenius data");

    auto* induced = app.add_subcommand("induced", "Induced substitution on legal l-words and its matrix");
    induced->add_option("--ell", cfg.ell, "Window length")->required();

    auto* freq = app.add_subcommand("freq", "Word frequencies R_l");
    freq->add_option("--ell", cfg.ell, "Window length")->required();
    auto* probs_opt = freq->add_option("--probs", probs, "Probabilities, e.g. \"0.3 0.7 ; 1\"");

    auto* ergodicity = app.add_subcommand("ergodicity", "Scan word frequencies over a probability grid");
    ergodicity->add_option("--grid", grid, "Grid file, one probability assignment per line")->required();
    ergodicity->add_option("--lmax", cfg.lmax, "Maximum window length");

    auto* entropy = app.add_subcommand("entropy", "Topological entropy bracket");
    entropy->add_option("--lmax", cfg.lmax, "Maximum word length for the upper profile");
    entropy->add_option("--kmax", cfg.kmax, "Maximum power for splitting pairs");

    auto* periodic = app.add_subcommand("periodic", "Periodic point census |Fix(S^n)|");
    periodic->add_option("--nmax", cfg.nmax, "Maximum period");
    auto* horizon_p = periodic->add_option("--horizon", horizon, "Legality horizon (default 2*nmax)");

    auto* zeta = app.add_subcommand("zeta", "Artin-Mazur zeta series from the census");
    zeta->add_option("--nmax", cfg.nmax, "Truncation degree");
    auto* horizon_z = zeta->add_option("--horizon", horizon, "Legality horizon (default 2*nmax)");

    auto* mixing = app.add_subcommand("mixing", "Achievable gaps n with uwv legal, |w| = n");
    mixing->add_option("--u", cfg.u, "Left word")->required();
    mixing->add_option("--v", cfg.v, "Right word")->required();
    mixing->add_option("--nmax", cfg.nmax, "Maximum gap");

    auto* sample = app.add_subcommand("sample", "Monte-Carlo realisation vs predicted frequencies");
    sample->add_option("--letter", cfg.letter, "Start letter (default: first letter)");
    sample->add_option("--depth", cfg.depth, "Substitution depth k");
    sample->add_option("--seed", cfg.seed, "64-bit seed");
    sample->add_option("--ell", cfg.ell, "Window length");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : randsub::cli::kUsageError;
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    if (*spec_opt)
        cfg.spec_path = spec;
    if (*example_opt)
        cfg.example = example;
    if (*out_opt)
        cfg.out_path = out_path;
    if (*budget_opt)
        cfg.budget = budget;
    if (*tol_opt)
        cfg.tol = tol;
    if (*horizon_p || *horizon_z)
        cfg.horizon = horizon;
    if (!grid.empty())
        cfg.grid_path = grid;
    if (*probs_opt)
        cfg.probs = probs;

    return randsub::cli::run(cfg, std::cout, std::cerr);
}
