#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wigner/ensemble/ensemble.hpp"
#include "wigner/solve/evolve.hpp"

namespace wigner {

/// (W, W) with Lebesgue measure on the box: the squared coefficient L2 norm.
double fock_norm(const CoefficientField& w);
/// sum_n |w_n|^2 (W_n, W_n).
double fock_norm(const FockEnsemble& ens);

struct PhaseMoments {
  double integral = 0.0;
  double mean_q = 0.0;
  double mean_p = 0.0;
  double var_q = 0.0;
  double var_p = 0.0;
  double cov_qp = 0.0;
  double purity = 0.0;  // 2 pi hbar sum c^2
};

/// Exact from coefficients and scaling-function moments. Means and
/// covariances are normalised by the integral; all zero if the integral is 0.
PhaseMoments standard_moments(const CoefficientField& w);

/// One reduced density, as coefficients in the axis basis.
struct Marginal {
  WaveletBasis basis;
  Eigen::VectorXd coeffs;
  double integral = 0.0;
  double mean = 0.0;
  double variance = 0.0;
  /// Smallest sampled value and the sampled mass below zero (never clipped).
  double min_value = 0.0;
  double negative_mass = 0.0;

  double value(double x) const { return basis.evaluate_single(coeffs, x); }
};

struct Marginals {
  Marginal q;
  Marginal p;
};

/// Exact partial integration over the other axis.
Marginals marginals(const CoefficientField& w);

struct ScaleEntropy {
  double entropy = 0.0;
  double participation_ratio = 0.0;
  long bins = 0;
};

/// Shannon entropy and participation ratio of the normalised squared 2D
/// multiscale coefficients. DegenerateInputError for a zero field.
ScaleEntropy scale_entropy(const CoefficientField& w);

/// ∫|W| - |∫W| by the midpoint rule on cells 2^oversample times finer than
/// the basis (the same rule for both integrals, so the result is >= 0).
double negativity_volume(const CoefficientField& w, int oversample = 2);

/// sqrt(var_q + var_p) about the centroid.
double localization_radius(const CoefficientField& w);

/// Energy fraction carried by the k largest squared multiscale coefficients.
double top_fraction(const CoefficientField& w, long k);

enum class Regime { localized_mode, chaotic_pattern, waveleton, unclassified };

std::string to_string(Regime r);

struct ClassifierThresholds {
  double localized = 0.05;  // participation_ratio / dim below
  double chaotic = 0.25;    // participation_ratio / dim above
  double stable = 1e-3;     // relative L2 change between the last checkpoints below
  double fraction = 0.9;    // energy in the top-k coefficients above

  /// ConfigError naming every bad threshold.
  void validate() const;
};

struct Classification {
  Regime regime = Regime::unclassified;
  double participation_fraction = 0.0;
  double relative_change = 0.0;
  double top_fraction = 0.0;
  long top_k = 0;
  bool localized = false;
  bool chaotic = false;
  bool stable = false;
  int checkpoints_used = 0;
};

/// Needs >= 3 checkpoints in the final third of the time span (ContractError).
/// top_k = max(1, floor(localized * dim)). Precedence: waveleton, then
/// localized_mode, then chaotic_pattern, else unclassified.
Classification classify(const std::vector<CoefficientField>& checkpoints,
                        const ClassifierThresholds& thresholds = {});
Classification classify(const Trajectory& trajectory, const ClassifierThresholds& thresholds = {});

struct DiagnosticsReport {
  double time = 0.0;
  double total_integral = 0.0;
  double l2_norm = 0.0;
  double fock_norm = 0.0;
  double purity = 0.0;
  double negativity_volume = 0.0;
  double scale_entropy = 0.0;
  double participation_ratio = 0.0;
  double localization_radius = 0.0;
  double mean_q = 0.0;
  double mean_p = 0.0;
  double marginal_q_min = 0.0;
  double marginal_p_min = 0.0;
  std::optional<Classification> classification;

  Regime regime() const { return classification ? classification->regime : Regime::unclassified; }
  /// Numeric entries in a fixed order.
  std::vector<std::pair<std::string, double>> entries() const;
  /// One `key = value` line per entry plus `regime = <label>`.
  std::string to_text() const;
};

DiagnosticsReport diagnose(const CoefficientField& w);
/// Diagnostics of the final state plus the trajectory classification.
DiagnosticsReport diagnose(const std::vector<CoefficientField>& checkpoints,
                           const ClassifierThresholds& thresholds = {});

}  // namespace wigner
