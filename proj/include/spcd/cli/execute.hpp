#pragma once

#include <string>

#include <json.hpp>

#include "spcd/cli/config.hpp"

namespace spcd::cli {

enum class Command { Classify, Solve, Simulate, Check };

[[nodiscard]] std::string to_string(Command command);

/// Process exit codes.
enum ExitCode : int { kSuccess = 0, kError = 1, kNoSolution = 2, kUnknown = 3 };

struct Report {
    int exit_code = kSuccess;
    /// Machine-readable result; echoes the resolved configuration. Contains no
    /// timestamps, so identical configurations give identical bytes.
    nlohmann::ordered_json document;
    /// Short human-readable summary.
    std::string summary;
};

/// Runs one command on a validated configuration.
///
/// classify: 0. solve: 0 for a solution, 2 when no solution or no minimum
/// exists, 3 when undecided. simulate: 0 when the initial measure meets all
/// demands, 2 when it provably does not, 3 when undecided. check: 0 when every
/// truncation matches within check_tolerance, 1 otherwise. Errors in the
/// configuration (for example a missing schedule) throw ValidationError.
[[nodiscard]] Report execute(const RunConfig& config, Command command);

}  // namespace spcd::cli
