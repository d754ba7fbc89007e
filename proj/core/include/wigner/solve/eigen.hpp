#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "wigner/assembly/operator.hpp"
#include "wigner/solve/field.hpp"

namespace wigner {

enum class SpectrumEnd { smallest_real, smallest_magnitude };

struct EigenOptions {
  SpectrumEnd which = SpectrumEnd::smallest_real;
  /// Target for ||A v - lambda v|| with ||v|| = 1.
  double tolerance = 1e-10;
  int max_iterations = 400;
  /// Problems up to this dimension are diagonalised densely.
  long dense_limit = 1024;
  /// Extra subspace vectors beyond the requested count.
  int guard_vectors = 8;
};

template <class Scalar>
struct HermitianEigenResult {
  std::vector<double> values;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;  // unit columns
  std::vector<double> residuals;
  std::vector<double> history;  // largest wanted residual per iteration
};

/// Lowest (or smallest-magnitude) eigenpairs of a Hermitian sparse matrix.
/// Dense diagonalisation up to dense_limit, otherwise block shift-invert
/// subspace iteration with Rayleigh-Ritz; the shift is placed below the
/// spectrum using LDL^T inertia. NumericalError with the residual history if
/// the tolerance is not reached.
HermitianEigenResult<double> hermitian_eigs(const RealSparseMatrix& a, int count,
                                            const EigenOptions& opts = {});
HermitianEigenResult<std::complex<double>> hermitian_eigs(const ComplexSparseMatrix& a, int count,
                                                          const EigenOptions& opts = {});

struct StationaryOptions {
  EigenOptions eigen;
  /// Antisymmetric operator whose kernel selects time-independent fields
  /// (A_anti of the stationary pair). When set, mu * sector^T sector is added
  /// so that only stationary Wigner functions remain at the bottom of the
  /// spectrum; without it the c-number operator is degenerate in E'.
  const AssembledOperator* sector = nullptr;
  double sector_penalty = 10.0;
  double hbar = 1.0;
};

struct StationaryState {
  double energy = 0.0;
  /// Real part of the normalised eigenvector as a field.
  CoefficientField field;
  /// Normalised eigenvector (unit integral when the integral is nonzero, else unit L2).
  Eigen::VectorXcd coeffs;
  /// ||B v - energy v|| / ||v|| for the operator actually diagonalised.
  double residual = 0.0;
  /// ||sector v|| / ||v|| (0 without a sector operator).
  double sector_residual = 0.0;
};

std::vector<StationaryState> stationary_eigen(const PhaseSpaceBasis& ps, const ComplexOperator& a,
                                              int n_states, const StationaryOptions& opts = {});
std::vector<StationaryState> stationary_eigen(const PhaseSpaceBasis& ps, const AssembledOperator& a,
                                              int n_states, const StationaryOptions& opts = {});

struct MoyalOptions {
  EigenOptions eigen;
  double hbar = 1.0;
  /// Relative gap below which A_sym eigenvalues form one degenerate cluster.
  double cluster_tolerance = 1e-3;
  /// Largest accepted ||[A_sym, A_anti] v|| / ||A_anti|| on the resolved subspace
  /// before switching to joint approximate diagonalisation.
  double commutator_tolerance = 1e-2;
};

struct MoyalPair {
  double e_prime = 0.0;
  double e_double_prime = 0.0;
  double mean = 0.0;   // eigenvalue of A_sym, (E' + E'')/2
  double kappa = 0.0;  // A_anti v = i kappa v, kappa = (E'' - E')/hbar
  Eigen::VectorXcd coeffs;
  double residual_sym = 0.0;
  double residual_anti = 0.0;

  bool diagonal(double tol = 1e-6) const { return std::abs(kappa) <= tol; }
};

struct MoyalResult {
  std::vector<MoyalPair> pairs;
  double commutator = 0.0;  // relative commutator measure on the resolved subspace
  bool joint_fallback = false;
};

/// Simultaneous eigenfields of the pair, ordered by (E' + E'')/2 then kappa.
MoyalResult moyal_eigen(const PhaseSpaceBasis& ps, const AssembledOperator& a_sym,
                        const AssembledOperator& a_anti, int pairs, const MoyalOptions& opts = {});

}  // namespace wigner
