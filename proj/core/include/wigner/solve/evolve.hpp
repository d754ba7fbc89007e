#pragma once

#include <vector>

#include "wigner/assembly/operator.hpp"
#include "wigner/error.hpp"
#include "wigner/solve/field.hpp"

namespace wigner {

enum class Scheme { explicit_rk4, implicit_midpoint };

struct EvolutionConfig {
  double dt = 0.01;
  double t_end = 1.0;
  Scheme scheme = Scheme::implicit_midpoint;
  bool renormalize = false;
  /// Keep every n-th state in the trajectory (the final state is always kept).
  int record_every = 1;
  /// Abort when ||W|| exceeds this multiple of ||W0||.
  double growth_limit = 1e6;
  /// Largest dt * ||L|| accepted by the explicit scheme.
  double rk4_stability_limit = 2.8;

  void validate() const;
};

struct Trajectory {
  std::vector<CoefficientField> states;
  double dt = 0.0;  // step actually used: t_end / steps
  int steps = 0;
  /// Largest relative integral correction applied by renormalisation.
  double max_renormalization = 0.0;

  const CoefficientField& final_state() const { return states.back(); }
};

/// Blow-up during evolution; carries the last state that passed the checks.
class EvolutionAborted : public NumericalError {
 public:
  EvolutionAborted(const std::string& what, std::vector<double> history, CoefficientField last)
      : NumericalError(what, std::move(history)), last_(std::move(last)) {}
  const CoefficientField& last_stable() const { return last_; }

 private:
  CoefficientField last_;
};

/// Upper estimate of ||L||_2 by power iteration on L^T L.
double estimate_operator_norm(const AssembledOperator& op, int iterations = 60);

/// dW/dt = L W from W0 to t_end in ceil(t_end / dt) equal steps.
Trajectory evolve(const CoefficientField& w0, const AssembledOperator& op, const EvolutionConfig& cfg);

}  // namespace wigner
