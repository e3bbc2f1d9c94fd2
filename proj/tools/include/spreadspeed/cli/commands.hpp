#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "spreadspeed/cli/run_config.hpp"
#include "spreadspeed/error.hpp"

namespace spreadspeed::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitSolver = 3,
  kExitSimulation = 4,
  kExitVerification = 5,
};

int exit_code_for(ErrorKind kind);

/// <output_dir>/<command>-<config hash>
std::filesystem::path run_directory(const RunConfig& config);

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// The invariant suite behind `verify`. Each check catches its own solver
/// errors and reports them as failures.
std::vector<VerifyCheck> verify_checks(const RunConfig& config);

/// Runs config.command. Nothing is written unless the computation
/// succeeds; the run directory is replaced as a whole.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command-line entry point: flag and config-file parsing, validation,
/// execution.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spreadspeed::cli
