#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "wigner/basis/tables.hpp"

namespace wigner {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Half-open interval [lo, hi) of one phase-space axis.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double length() const { return hi - lo; }
};

/// One entry of the multiscale index set: scaling functions live at level
/// j_coarse with `scaling == true`; wavelets at levels j_coarse..j_fine-1.
struct BasisIndex {
  int level = 0;
  int translation = 0;
  bool scaling = false;
};

/// Periodised orthonormal Daubechies multiresolution basis on one axis.
///
/// Two coefficient layouts are used. The single-scale layout holds the 2^J
/// coefficients against phi_{J,k}; operators act there and are circulant.
/// The multiscale layout is
///   [ s_{jc} (2^jc) | d_{jc} (2^jc) | d_{jc+1} | ... | d_{J-1} ]
/// and is reached by the orthogonal periodic fast wavelet transform.
class WaveletBasis {
 public:
  WaveletBasis(int order, int j_coarse, int j_fine, Interval domain,
               int max_power = kDefaultMaxPower);

  int order() const { return tables_->filter.order; }
  int j_coarse() const { return j_coarse_; }
  int j_fine() const { return j_fine_; }
  const Interval& domain() const { return domain_; }
  bool periodized() const { return true; }

  /// 2^{j_fine}: dimension of either layout.
  int size() const { return 1 << j_fine_; }
  /// Physical width of one finest cell, (hi - lo) / 2^J.
  double cell() const { return domain_.length() / size(); }

  const FilterCoefficients& filter() const { return tables_->filter; }
  const BasisTables& tables() const { return *tables_; }

  /// Same filter and domain at another finest level (coarse level clamped).
  WaveletBasis with_fine_level(int j_fine) const;

  std::vector<BasisIndex> index_set() const;
  /// Level of multiscale position `i`; scaling entries report j_coarse - 1.
  int level_of(int i) const;

  /// Single-scale -> multiscale (analysis) and back (synthesis).
  Eigen::VectorXd forward(const Eigen::VectorXd& single) const;
  Eigen::VectorXd inverse(const Eigen::VectorXd& multi) const;

  /// Injection V_J -> V_{J+1}: the level J+1 coefficients of the same function.
  Eigen::VectorXd refine_once(const Eigen::VectorXd& single) const;

  /// phi_{J,k}(x), periodised over the domain.
  double scaling_function(int k, double x) const;
  /// Rows: points, columns: single-scale basis functions.
  Eigen::MatrixXd evaluation_matrix(std::span<const double> xs) const;
  /// Value of a single-scale expansion at x.
  double evaluate_single(const Eigen::VectorXd& single, double x) const;

  /// Orthogonal projection of f (evaluated periodically) onto V_J, using the
  /// moment-exact scaling quadrature at level J + oversample followed by
  /// low-pass analysis down to J.
  Eigen::VectorXd project(const std::function<double(double)>& f, int oversample = 2) const;
  /// Points at which project() samples f, in the column order of projection_matrix().
  std::vector<double> sample_points(int oversample = 2) const;
  /// Linear map from samples at sample_points() to single-scale coefficients.
  SparseMatrix projection_matrix(int oversample = 2) const;

  /// ∫ phi_{J,k} over the domain (all equal to sqrt(cell)).
  Eigen::VectorXd integration_weights() const;
  /// ∫ x^m phi_{J,k}(x) dx for every k (unwrapped at the seam).
  Eigen::VectorXd coordinate_moments(int m) const;

  /// Galerkin matrix of d^d/dx^d: entries <phi_j, phi_k^{(d)}>.
  SparseMatrix derivative_matrix(int d) const;
  /// Galerkin matrix of multiplication by x^m: entries <phi_j, x^m phi_k>.
  SparseMatrix moment_matrix(int m) const;
  /// Galerkin matrix of multiplication by sum_m c_m x^m.
  SparseMatrix multiplication_matrix(std::span<const double> coeffs) const;

 private:
  WaveletBasis(std::shared_ptr<const BasisTables> tables, int j_coarse, int j_fine,
               Interval domain);

  Eigen::VectorXd analysis_step(const Eigen::VectorXd& a, Eigen::VectorXd* detail) const;
  Eigen::VectorXd synthesis_step(const Eigen::VectorXd& a, const Eigen::VectorXd* detail) const;

  std::shared_ptr<const BasisTables> tables_;
  int j_coarse_;
  int j_fine_;
  Interval domain_;
};

/// Value at x of a multiscale expansion (coefficients in index_set() order).
/// Periodic: f(x) = f(x + (hi - lo)). ContractError on length mismatch.
double evaluate_expansion(const WaveletBasis& basis, std::span<const double> coeffs, double x);

/// M^m table of `basis`'s filter on the unit lattice; ConfigError if m exceeds
/// the configured maximum power.
MomentTable moment_coefficients(const WaveletBasis& basis, int m);

}  // namespace wigner
