#pragma once

#include <filesystem>
#include <string>

#include "config.hpp"
#include "wigner/solve/field.hpp"

namespace wigner::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitInvalid = 2,
  kExitNumerical = 3,
  kExitNotConverged = 4,
};

struct RunOptions {
  int threads = 1;
  /// Empty: output.directory from the config, else $WIGNER_OUT, else ./runs.
  std::filesystem::path out_root;
  bool verbose = false;
};

struct RunOutcome {
  int exit_code = kExitOk;
  std::filesystem::path directory;
  std::string message;
};

/// First of root/name, root/name-1, root/name-2, ... that does not exist, created.
std::filesystem::path make_run_directory(const std::filesystem::path& root, const std::string& name);

/// The initial Wigner function described by [initial].
CoefficientField initial_state(const RunConfig& cfg, const PhaseSpaceBasis& ps);

/// Executes one run and writes its artifacts. Library errors are mapped to
/// exit codes and recorded in the manifest; nothing is thrown for them.
RunOutcome run(const RunConfig& cfg, const RunOptions& opts);

}  // namespace wigner::cli
