#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wigner/basis/wavelet_basis.hpp"

namespace wigner {

/// U(q) + V(p) with exact coefficient tables.
///
/// coeffs_q[k] multiplies q^k; coeffs_p[k] multiplies p^k (k >= 1, the constant
/// lives in coeffs_q). Mixed q-p monomials are not represented. Both tables are
/// kept canonical: no trailing zeros, so an empty table is the zero polynomial.
class PolynomialPotential {
 public:
  PolynomialPotential() = default;
  explicit PolynomialPotential(std::vector<double> coeffs_q, std::vector<double> coeffs_p = {});

  const std::vector<double>& coeffs_q() const { return q_; }
  const std::vector<double>& coeffs_p() const { return p_; }

  /// Highest exponent over both parts; -1 for the zero polynomial.
  int degree() const;
  int degree_q() const { return static_cast<int>(q_.size()) - 1; }
  int degree_p() const { return static_cast<int>(p_.size()) - 1; }
  bool is_zero() const { return q_.empty() && p_.empty(); }
  bool has_p_part() const { return !p_.empty(); }

  double operator()(double q, double p = 0.0) const { return eval_q(q) + eval_p(p); }
  double eval_q(double q) const;
  double eval_p(double p) const;

  PolynomialPotential q_part() const { return PolynomialPotential(q_); }
  /// The pure-p part as a polynomial in its own variable (stored in coeffs_q).
  PolynomialPotential p_part_as_q() const;

  friend PolynomialPotential operator+(const PolynomialPotential& a, const PolynomialPotential& b);
  friend PolynomialPotential operator*(double s, const PolynomialPotential& u);
  friend bool operator==(const PolynomialPotential& a, const PolynomialPotential& b) = default;

  /// "c0 + c1*q + c2*q^2 + d2*p^2" style text; round-trips through parse_potential.
  std::string to_string() const;

 private:
  std::vector<double> q_;
  std::vector<double> p_;
};

/// Exact derivative of each part in its own variable (d^n/dq^n U + d^n/dp^n V).
PolynomialPotential derivative(const PolynomialPotential& u, int order);

/// Largest l whose (2l+1)-th derivative of either part is nonzero; -1 if none.
int moyal_truncation(const PolynomialPotential& u);

/// U_n(x) = U0 * n * g(x). ContractError for n < 0.
PolynomialPotential fock_potential(double u0, const PolynomialPotential& g, int n);

/// Parses "c0 + c1*q + c2*q^2 - 3e-2*p^4". Variables: q (alias x) and p.
/// Factors may be written as `c*q^k`, `c q^k`, `q^k`, or a bare number.
/// Throws ConfigError with the character position on malformed input.
PolynomialPotential parse_potential(std::string_view text);

/// Physical and dissipation parameters of the phase-space model.
struct ModelParams {
  double mass = 1.0;
  double hbar = 1.0;
  Interval box_q{-8.0, 8.0};
  Interval box_p{-8.0, 8.0};
  double gamma = 0.0;
  double diffusion = 0.0;

  /// Every violated constraint, one message each; empty if valid.
  std::vector<std::string> problems() const;
  /// Throws ConfigError joining problems() if any.
  void validate() const;
};

}  // namespace wigner
