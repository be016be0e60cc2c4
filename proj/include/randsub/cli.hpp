#pragma once

#include "randsub/error.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace randsub::cli {

enum ExitStatus : int {
    kOk = 0,
    kDomainError = 1,
    kUsageError = 2,
    kBudgetExceeded = 3,
};

struct RunConfig {
    // Exactly one input source.
    std::optional<std::string> spec_path;
    std::optional<std::string> example;

    std::string subcommand;

    std::size_t ell = 1;
    std::size_t lmax = 8;
    std::size_t kmax = 3;
    std::size_t nmax = 8;
    std::optional<std::size_t> horizon;  // default 2·nmax
    std::uint64_t seed = 1;
    std::string letter;                  // default: first letter
    std::size_t depth = 10;
    std::optional<std::string> grid_path;
    std::optional<std::string> probs;
    std::string u;
    std::string v;
    bool dump_words = false;

    std::optional<std::string> out_path;
    std::optional<std::size_t> budget;
    std::optional<double> tol;
    std::size_t threads = 1;
};

/// Checks the invariants of a config; returns a message naming the first
/// violated one, or nothing.
std::optional<std::string> validate(const RunConfig& config);

int exit_status(ErrorKind kind);

/// Runs one subcommand, writing the report to `out` (or to config.out_path)
/// and diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace randsub::cli
