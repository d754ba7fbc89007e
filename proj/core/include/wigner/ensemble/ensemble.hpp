#pragma once

#include <vector>

#include "wigner/model/potential.hpp"
#include "wigner/solve/evolve.hpp"

namespace wigner {

/// Fock-level decomposition W = sum_n |w_n|^2 W_n with U_n = U0 * n * g.
struct FockEnsemble {
  std::vector<double> weights;  // |w_n|^2, n = 0..n_max
  double u0 = 0.0;
  PolynomialPotential g;
  std::vector<CoefficientField> fields;

  int n_max() const { return static_cast<int>(weights.size()) - 1; }
  /// Weights non-negative, summing to 1 within 1e-10, one field per weight,
  /// all fields on one basis. ContractError otherwise.
  void validate() const;
};

/// Poissonian |w_n|^2 = e^{-a^2} a^{2n} / n!, n = 0..n_max, renormalised after truncation.
std::vector<double> coherent_weights(double alpha, int n_max);

/// Scales non-negative weights to unit sum; ContractError for negative or all-zero input.
std::vector<double> normalize_weights(std::vector<double> weights);

inline constexpr double kWeightFloor = 1e-12;

struct EnsembleOptions {
  int threads = 1;
  double weight_floor = kWeightFloor;
};

/// One trajectory per level. Level n is assigned to worker n mod threads, so
/// results do not depend on the thread count. Levels below the weight floor
/// are carried unchanged (their trajectory repeats the initial field at the
/// checkpoint times of the evolved levels). Errors are rethrown with the level.
std::vector<Trajectory> evolve_fock_trajectories(const FockEnsemble& ens, const ModelParams& params,
                                                 const EvolutionConfig& cfg,
                                                 const EnsembleOptions& opts = {});

/// Final states of evolve_fock_trajectories.
FockEnsemble evolve_fock_hierarchy(const FockEnsemble& ens, const ModelParams& params,
                                   const EvolutionConfig& cfg, const EnsembleOptions& opts = {});

/// sum_n |w_n|^2 W_n, reduced pairwise in a fixed order.
CoefficientField incoherent_superpose(const FockEnsemble& ens);
CoefficientField incoherent_superpose(const std::vector<double>& weights,
                                      const std::vector<CoefficientField>& fields);

struct LindbladRun {
  Trajectory trajectory;
  /// ||L W|| (coefficient L2) at every recorded state.
  std::vector<double> rate;
};

/// Evolution under transport + quantum correction + dissipator.
LindbladRun lindblad_evolve(const CoefficientField& w0, const PolynomialPotential& u,
                            const ModelParams& params, const EvolutionConfig& cfg);

}  // namespace wigner
