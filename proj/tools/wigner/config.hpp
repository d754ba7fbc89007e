#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wigner/diagnostics/diagnostics.hpp"
#include "wigner/error.hpp"
#include "wigner/model/potential.hpp"
#include "wigner/solve/evolve.hpp"

namespace wigner::cli {

enum class Mode { evolve, stationary, moyal, lindblad, ensemble, refine };

std::string to_string(Mode m);

struct InitialConfig {
  std::string type = "gaussian";  // gaussian | harmonic
  double q0 = 0.0;
  double p0 = 0.0;
  double sigma_q = 0.0;  // 0: sqrt(hbar / 2)
  double sigma_p = 0.0;
  int n = 0;             // harmonic level
};

struct SolverConfig {
  double dt = 0.01;
  double t_end = 1.0;
  Scheme scheme = Scheme::implicit_midpoint;
  bool renormalize = false;
  int states = 4;
  int pairs = 6;
  std::string assembly = "pair";  // pair | cnumber
  double sector_penalty = 10.0;
  double tolerance = 1e-10;
  double epsilon = 1e-4;
  int n_max = 6;
  int state_index = 0;
};

struct EnsembleConfig {
  bool present = false;
  int n_max = 0;
  std::string weights_text = "1";
  std::vector<double> weights{1.0};
  double u0 = 0.0;
  std::string g_text = "0";
  PolynomialPotential g;
};

struct OutputConfig {
  std::string directory;  // empty: $WIGNER_OUT, else ./runs
  std::string name = "run";
  int grid_q = 128;
  int grid_p = 128;
  int checkpoint_every = 10;
  bool checkpoints = true;
  bool marginals = true;
  int scale_cut_q = -1;  // -1: no scale dumps
  int scale_cut_p = -1;
};

struct RunConfig {
  Mode mode = Mode::evolve;
  std::string potential_text = "0";
  PolynomialPotential potential;
  ModelParams model;
  int order = 6;
  int j_coarse = 2;
  int j_fine = 6;
  InitialConfig initial;
  SolverConfig solver;
  EnsembleConfig ensemble;
  OutputConfig output;
  ClassifierThresholds thresholds;

  /// Every effective setting as (section.key, text), defaults included.
  std::vector<std::pair<std::string, std::string>> entries() const;
};

struct ConfigIssue {
  int line = 0;    // 1-based; 0 when not tied to a line
  int column = 0;  // 1-based
  std::string message;
};

/// All problems found in one configuration, in file order.
class ConfigValidationError : public ConfigError {
 public:
  ConfigValidationError(std::string origin, std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

/// Parses and validates; throws ConfigValidationError listing every issue.
RunConfig parse_config_text(std::string_view text, const std::string& origin = "<config>");
RunConfig parse_config(const std::filesystem::path& path);

/// The accepted keys of a section (empty for an unknown section).
std::vector<std::string> known_keys(std::string_view section);

}  // namespace wigner::cli
