#pragma once

#include <functional>
#include <vector>

#include "wigner/solve/field.hpp"

namespace wigner {

/// Produces the solution on a given phase-space basis.
using LevelSolver = std::function<CoefficientField(const PhaseSpaceBasis&)>;

struct RefinementStep {
  int level = 0;            // finest level N of the coarser field
  double difference = 0.0;  // ||W^{N+1} - W^N|| in the coefficient L2 norm
};

struct RefinementReport {
  std::vector<RefinementStep> steps;
  /// Level of the returned field (N + 1 for the first step meeting epsilon).
  int accepted_level = 0;
  double epsilon = 0.0;
  bool converged = false;
  /// False if some difference exceeded its predecessor.
  bool monotone = true;
};

/// Solves at ps, ps.refined(), ... up to finest level n_max. W^N is embedded
/// into level N + 1 with zero wavelet coefficients before differencing. Stops
/// at the first level pair with difference <= epsilon; otherwise returns the
/// n_max field with converged = false.
std::pair<CoefficientField, RefinementReport> refine_until(const PhaseSpaceBasis& start,
                                                           const LevelSolver& solve,
                                                           double epsilon, int n_max);

struct ScaleDecomposition {
  CoefficientField slow;
  std::vector<CoefficientField> fast;
  std::vector<int> fast_levels;  // wavelet level carried by each fast part
};

/// Splits W by scale: the slow part keeps the multiscale coefficients whose q
/// level is below cut_q and p level below cut_p; fast part d gathers those with
/// max(level_q - cut_q, level_p - cut_p) = d. Parts sum to W exactly.
/// Cuts must lie in [j_coarse, j_fine + 1].
ScaleDecomposition reconstruct_by_scale(const CoefficientField& w, int cut_q, int cut_p);

}  // namespace wigner
