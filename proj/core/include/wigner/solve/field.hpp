#pragma once

#include <Eigen/Dense>

#include "wigner/assembly/phase_space.hpp"

namespace wigner {

/// W as single-scale coefficients on a phase-space basis, with the time and
/// the hbar it belongs to.
class CoefficientField {
 public:
  CoefficientField(PhaseSpaceBasis ps, Eigen::VectorXd coeffs, double time = 0.0, double hbar = 1.0);

  const PhaseSpaceBasis& basis() const { return ps_; }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  Eigen::VectorXd& coeffs() { return coeffs_; }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }
  double hbar() const { return hbar_; }

  long size() const { return coeffs_.size(); }
  double integral() const { return ps_.integral(coeffs_); }
  bool finite() const { return coeffs_.allFinite(); }
  double value(double q, double p) const { return ps_.evaluate(coeffs_, q, p); }

  /// Copy with the given coefficients (same basis, time, hbar).
  CoefficientField with_coeffs(Eigen::VectorXd c) const;

 private:
  PhaseSpaceBasis ps_;
  Eigen::VectorXd coeffs_;
  double time_;
  double hbar_;
};

}  // namespace wigner
