#pragma once

#include <memory>
#include <span>
#include <vector>

#include "wigner/basis/filter.hpp"

namespace wigner {

/// phi and psi sampled at the dyadic points i / 2^r of [0, order - 1].
class ScalingTable {
 public:
  ScalingTable() = default;
  ScalingTable(int order, int resolution, std::vector<double> phi, std::vector<double> psi);

  int order() const { return order_; }
  int resolution() const { return resolution_; }
  double step() const { return step_; }

  std::span<const double> phi() const { return phi_; }
  std::span<const double> psi() const { return psi_; }

  /// phi(x); exact at dyadic points of the table, linear in between, 0 off support.
  double phi_at(double x) const { return lookup(phi_, x); }
  double psi_at(double x) const { return lookup(psi_, x); }

 private:
  double lookup(const std::vector<double>& v, double x) const;

  int order_ = 0;
  int resolution_ = 0;
  double step_ = 1.0;
  std::vector<double> phi_;
  std::vector<double> psi_;
};

/// Cascade evaluation of the scaling function and wavelet.
///
/// Integer samples are the unit eigenvector of the refinement matrix
/// sqrt(2) h_{2k-l}, normalised by sum_k phi(k) = 1; dyadic refinement then
/// fills resolution r. Throws NumericalError if the eigenvector is not unique.
ScalingTable scaling_values(const FilterCoefficients& filter, int resolution);

/// Lambda^{d1,d2}_k = int phi^{(d1)}(x) phi^{(d2)}(x - k) dx.
///
/// Sign convention (used everywhere in the library): the offset k shifts the
/// second factor to the right, and the normalisation is
///   sum_k k^d Lambda^{0,d}_k = d!        (d = d1 + d2),
/// which makes Lambda^{0,1} a consistent first-derivative stencil acting on
/// coefficient sequences. Consequences:
///   Lambda^{d1,d2}_k = (-1)^{d1} Lambda^{0,d}_k,
///   Lambda^{d1,d2}_k = Lambda^{d2,d1}_{-k},
///   Lambda^{0,d}_{-k} = (-1)^d Lambda^{0,d}_k.
struct ConnectionTable {
  int d1 = 0;
  int d2 = 0;
  int max_offset = 0;          // nonzero only for |k| <= max_offset
  std::vector<double> values;  // values[k + max_offset]

  double operator()(int k) const {
    if (k < -max_offset || k > max_offset) return 0.0;
    return values[static_cast<std::size_t>(k + max_offset)];
  }
};

/// Solves the refinement-derived homogeneous system plus the polynomial-moment
/// normalisation. Requires d1 + d2 <= order / 2; otherwise ConfigError.
ConnectionTable connection_coefficients(const FilterCoefficients& filter, int d1, int d2);

/// Overlap moments ∫ x^m phi(x - j) phi(x - k) dx on the integer lattice.
///
/// Stored as the translation-invariant base values
///   T^i_delta = ∫ z^i phi(z) phi(z - delta) dz,  i <= m,
/// from which any (j, k) entry follows by the binomial shift z = x - j.
class MomentTable {
 public:
  MomentTable() = default;
  MomentTable(int power, int max_offset, std::vector<std::vector<double>> base);

  int power() const { return power_; }
  int max_offset() const { return max_offset_; }

  /// T^i_delta for i <= power().
  double base(int i, int delta) const;

  /// M^m_{jk} = ∫ x^m phi(x - j) phi(x - k) dx (no periodisation).
  double operator()(long j, long k) const;

 private:
  int power_ = 0;
  int max_offset_ = 0;
  std::vector<std::vector<double>> base_;  // base_[i][delta + max_offset]
};

/// Overlap moments up to `power` by recursion on the two-scale relation.
MomentTable overlap_moments(const FilterCoefficients& filter, int power);

/// Scalar moments ∫ x^n phi(x) dx for n = 0..count-1 (exact recursion).
std::vector<long double> scaling_moments(const FilterCoefficients& filter, int count);

/// Quadrature rule ∫ f(y) phi(y) dy ≈ sum_i w_i f(y_i) exact for polynomials of
/// degree < nodes.size().
struct ScalingQuadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

ScalingQuadrature scaling_quadrature(const FilterCoefficients& filter, int node_count);

/// Everything a basis needs from its filter, computed once and shared.
struct BasisTables {
  FilterCoefficients filter;
  ScalingTable values;
  std::vector<ConnectionTable> derivatives;  // Lambda^{0,d}, d = 0..max_derivative
  MomentTable moments;
  ScalingQuadrature quadrature;

  int max_derivative() const { return static_cast<int>(derivatives.size()) - 1; }
  int max_power() const { return moments.power(); }
};

inline constexpr int kDefaultTableResolution = 12;
inline constexpr int kDefaultMaxPower = 8;

/// Shared, lazily built tables for a filter order. Thread safe.
std::shared_ptr<const BasisTables> basis_tables(int order, int max_power = kDefaultMaxPower);

}  // namespace wigner
