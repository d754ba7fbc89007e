#include "wigner/solve/field.hpp"

#include <string>

#include "wigner/error.hpp"

namespace wigner {

CoefficientField::CoefficientField(PhaseSpaceBasis ps, Eigen::VectorXd coeffs, double time, double hbar)
    : ps_(std::move(ps)), coeffs_(std::move(coeffs)), time_(time), hbar_(hbar) {
  if (coeffs_.size() != ps_.dim()) {
    throw ContractError("CoefficientField: " + std::to_string(coeffs_.size()) +
                        " coefficients for a basis of dimension " + std::to_string(ps_.dim()));
  }
}

CoefficientField CoefficientField::with_coeffs(Eigen::VectorXd c) const {
  return CoefficientField(ps_, std::move(c), time_, hbar_);
}

}  // namespace wigner
