#pragma once

#include <functional>
#include <vector>

#include "wigner/assembly/operator.hpp"
#include "wigner/solve/field.hpp"

namespace wigner {

struct VariationalResult {
  CoefficientField field;
  /// max_k |<test_k, L W - f>| over every retained test function.
  double max_residual = 0.0;
  int newton_iterations = 0;
  std::vector<double> residual_history;
};

/// Galerkin solution of L W = f on the basis of `ps` (rhs given as the
/// projections <test_k, f>). Direct sparse LU with iterative refinement;
/// NumericalError reporting the numerical rank if the reduced system is singular.
VariationalResult variational_solve(const PhaseSpaceBasis& ps, const AssembledOperator& op,
                                    const Eigen::VectorXd& rhs, double hbar = 1.0);

struct NewtonOptions {
  double tolerance = 1e-10;
  int max_iterations = 50;
  double min_step = 1e-8;
};

/// Residual F(c) (Galerkin residuals against every test function) and its Jacobian.
struct NonlinearSystem {
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> residual;
  std::function<RealSparseMatrix(const Eigen::VectorXd&)> jacobian;
};

/// Damped Newton: each accepted step strictly lowers ||F||; NumericalError with
/// the residual trace on stagnation.
VariationalResult variational_solve(const PhaseSpaceBasis& ps, const NonlinearSystem& system,
                                    const Eigen::VectorXd& start, const NewtonOptions& opts = {},
                                    double hbar = 1.0);

}  // namespace wigner
