#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "wigner/assembly/phase_space.hpp"

namespace wigner {

using ComplexSparseMatrix = Eigen::SparseMatrix<std::complex<double>, Eigen::ColMajor>;
using RealSparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor>;

/// weight * (q_factor (x) p_factor), labelled with the term it came from.
struct KroneckerTerm {
  double weight = 0.0;
  SparseMatrix q_factor;
  SparseMatrix p_factor;
  std::string tag;
};

/// Sparse linear operator on a phase-space basis, kept as a sum of Kronecker
/// products so it can be applied matrix-free (A C B^T on the coefficient grid).
class AssembledOperator {
 public:
  AssembledOperator() = default;
  AssembledOperator(int nq, int np) : nq_(nq), np_(np) {}

  int nq() const { return nq_; }
  int np() const { return np_; }
  long rows() const { return static_cast<long>(nq_) * np_; }
  long cols() const { return rows(); }

  /// Appends a term; ContractError on a factor shape mismatch.
  void add(KroneckerTerm term);
  const std::vector<KroneckerTerm>& terms() const { return terms_; }
  /// Distinct tags in insertion order.
  std::vector<std::string> tags() const;
  bool has_tag(const std::string& tag) const;
  /// True when every term vanishes identically.
  bool is_zero() const;

  AssembledOperator& operator+=(const AssembledOperator& other);
  friend AssembledOperator operator+(AssembledOperator a, const AssembledOperator& b) {
    return a += b;
  }
  friend AssembledOperator operator*(double s, AssembledOperator a);

  /// y = A x (matrix free).
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;
  /// y = A^T x.
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& x) const;

  /// Explicit compressed matrix, terms summed in insertion order.
  RealSparseMatrix to_sparse() const;
  /// Largest number of stored entries in one row of to_sparse().
  long max_row_nonzeros() const;

 private:
  int nq_ = 0;
  int np_ = 0;
  std::vector<KroneckerTerm> terms_;
};

/// real + i imag.
struct ComplexOperator {
  AssembledOperator real;
  AssembledOperator imag;

  long rows() const { return real.rows(); }
  ComplexSparseMatrix to_sparse() const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;
};

/// Identity on the phase-space basis.
AssembledOperator identity_operator(const PhaseSpaceBasis& ps);

}  // namespace wigner
