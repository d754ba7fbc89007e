#pragma once

#include <functional>

#include <Eigen/Dense>

#include "wigner/basis/wavelet_basis.hpp"

namespace wigner {

/// Row-major view of a flat phase-space vector as an (nq x np) matrix.
using CoefficientGrid = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Tensor-product basis V_q (x) V_p.
///
/// Flat index of the pair (iq, ip) is iq * np + ip. Field vectors are stored in
/// the single-scale layout of both axes unless a function says otherwise.
class PhaseSpaceBasis {
 public:
  PhaseSpaceBasis(WaveletBasis q, WaveletBasis p);

  const WaveletBasis& q() const { return q_; }
  const WaveletBasis& p() const { return p_; }

  int nq() const { return q_.size(); }
  int np() const { return p_.size(); }
  long dim() const { return static_cast<long>(nq()) * np(); }
  long flat(int iq, int ip) const { return static_cast<long>(iq) * np() + ip; }
  std::pair<int, int> pair(long flat_index) const;

  /// Same filters and boxes with both finest levels shifted by `delta`.
  PhaseSpaceBasis refined(int delta = 1) const;
  bool same_as(const PhaseSpaceBasis& other) const;

  /// Orthogonal projection of f(q, p) onto the tensor space.
  Eigen::VectorXd project(const std::function<double(double, double)>& f, int oversample = 2) const;
  /// Projection of the separable function fq(q) fp(p).
  Eigen::VectorXd project_separable(const std::function<double(double)>& fq,
                                    const std::function<double(double)>& fp,
                                    int oversample = 2) const;

  /// W(q, p) at one point.
  double evaluate(const Eigen::VectorXd& coeffs, double q, double p) const;
  /// W on a grid: rows follow ps, columns follow qs.
  Eigen::MatrixXd evaluate_grid(const Eigen::VectorXd& coeffs, std::span<const double> qs,
                                std::span<const double> ps) const;

  /// Separable 2D fast wavelet transform and its inverse.
  Eigen::VectorXd to_multiscale(const Eigen::VectorXd& single) const;
  Eigen::VectorXd to_single(const Eigen::VectorXd& multi) const;

  /// Coefficients of the same function in refined() (zero details).
  Eigen::VectorXd refine_once(const Eigen::VectorXd& single) const;

  /// ∫∫ W dq dp as a linear functional on coefficients (constant sqrt(hq hp)).
  double integration_weight() const;
  double integral(const Eigen::VectorXd& coeffs) const;

  static Eigen::Map<const CoefficientGrid> grid(const Eigen::VectorXd& v, int nq, int np) {
    return {v.data(), nq, np};
  }
  static Eigen::Map<CoefficientGrid> grid(Eigen::VectorXd& v, int nq, int np) {
    return {v.data(), nq, np};
  }

 private:
  WaveletBasis q_;
  WaveletBasis p_;
};

/// The phase-space basis of one filter order on a (q, p) box with equal levels.
PhaseSpaceBasis make_phase_space(int order, int j_coarse, int j_fine, Interval box_q,
                                 Interval box_p);

}  // namespace wigner
