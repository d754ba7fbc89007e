#include "wigner/assembly/operator.hpp"

#include <algorithm>

#include "wigner/error.hpp"

namespace wigner {

namespace {

template <class Scalar>
void append_kron(std::vector<Eigen::Triplet<Scalar>>& trips, const KroneckerTerm& t, Scalar scale,
                 int np) {
  for (int i = 0; i < t.q_factor.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator a(t.q_factor, i); a; ++a) {
      for (int k = 0; k < t.p_factor.outerSize(); ++k) {
        for (SparseMatrix::InnerIterator b(t.p_factor, k); b; ++b) {
          trips.emplace_back(static_cast<int>(a.row()) * np + static_cast<int>(b.row()),
                             static_cast<int>(a.col()) * np + static_cast<int>(b.col()),
                             scale * (t.weight * a.value() * b.value()));
        }
      }
    }
  }
}

}  // namespace

void AssembledOperator::add(KroneckerTerm term) {
  if (term.q_factor.rows() != nq_ || term.q_factor.cols() != nq_ || term.p_factor.rows() != np_ ||
      term.p_factor.cols() != np_) {
    throw ContractError("AssembledOperator::add: factor shape does not match the basis");
  }
  terms_.push_back(std::move(term));
}

std::vector<std::string> AssembledOperator::tags() const {
  std::vector<std::string> out;
  for (const auto& t : terms_) {
    if (t.weight == 0.0) continue;
    if (std::find(out.begin(), out.end(), t.tag) == out.end()) out.push_back(t.tag);
  }
  return out;
}

bool AssembledOperator::has_tag(const std::string& tag) const {
  const auto list = tags();
  return std::find(list.begin(), list.end(), tag) != list.end();
}

bool AssembledOperator::is_zero() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const KroneckerTerm& t) {
    return t.weight == 0.0 || t.q_factor.nonZeros() == 0 || t.p_factor.nonZeros() == 0;
  });
}

AssembledOperator& AssembledOperator::operator+=(const AssembledOperator& other) {
  if (nq_ == 0 && np_ == 0 && terms_.empty()) {
    nq_ = other.nq_;
    np_ = other.np_;
  }
  if (other.nq_ != nq_ || other.np_ != np_) {
    throw ContractError("AssembledOperator: adding operators of different bases");
  }
  for (const auto& t : other.terms_) terms_.push_back(t);
  return *this;
}

AssembledOperator operator*(double s, AssembledOperator a) {
  for (auto& t : a.terms_) t.weight *= s;
  return a;
}

Eigen::VectorXd AssembledOperator::apply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y;
  apply(x, y);
  return y;
}

void AssembledOperator::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
  if (x.size() != rows()) throw ContractError("AssembledOperator::apply: vector length mismatch");
  y.setZero(rows());
  const auto xg = PhaseSpaceBasis::grid(x, nq_, np_);
  auto yg = PhaseSpaceBasis::grid(y, nq_, np_);
  CoefficientGrid tmp(nq_, np_);
  for (const auto& t : terms_) {
    if (t.weight == 0.0) continue;
    tmp.noalias() = t.q_factor * xg;
    yg.noalias() += t.weight * (tmp * t.p_factor.transpose());
  }
}

Eigen::VectorXd AssembledOperator::apply_transpose(const Eigen::VectorXd& x) const {
  if (x.size() != rows()) throw ContractError("AssembledOperator::apply_transpose: length mismatch");
  Eigen::VectorXd y = Eigen::VectorXd::Zero(rows());
  const auto xg = PhaseSpaceBasis::grid(x, nq_, np_);
  auto yg = PhaseSpaceBasis::grid(y, nq_, np_);
  CoefficientGrid tmp(nq_, np_);
  for (const auto& t : terms_) {
    if (t.weight == 0.0) continue;
    tmp.noalias() = t.q_factor.transpose() * xg;
    yg.noalias() += t.weight * (tmp * t.p_factor);
  }
  return y;
}

RealSparseMatrix AssembledOperator::to_sparse() const {
  std::vector<Eigen::Triplet<double>> trips;
  for (const auto& t : terms_) {
    if (t.weight != 0.0) append_kron(trips, t, 1.0, np_);
  }
  RealSparseMatrix m(rows(), cols());
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

long AssembledOperator::max_row_nonzeros() const {
  const Eigen::SparseMatrix<double, Eigen::RowMajor> m = to_sparse();
  long best = 0;
  for (long i = 0; i < m.outerSize(); ++i) {
    long count = 0;
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(m, i); it; ++it) {
      if (it.value() != 0.0) ++count;
    }
    best = std::max(best, count);
  }
  return best;
}

ComplexSparseMatrix ComplexOperator::to_sparse() const {
  using C = std::complex<double>;
  std::vector<Eigen::Triplet<C>> trips;
  for (const auto& t : real.terms()) {
    if (t.weight != 0.0) append_kron(trips, t, C(1.0, 0.0), real.np());
  }
  for (const auto& t : imag.terms()) {
    if (t.weight != 0.0) append_kron(trips, t, C(0.0, 1.0), imag.np());
  }
  ComplexSparseMatrix m(rows(), rows());
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

Eigen::VectorXcd ComplexOperator::apply(const Eigen::VectorXcd& x) const {
  const Eigen::VectorXd xr = x.real();
  const Eigen::VectorXd xi = x.imag();
  const Eigen::VectorXd rr = real.apply(xr);
  const Eigen::VectorXd ri = real.apply(xi);
  const Eigen::VectorXd ir = imag.apply(xr);
  const Eigen::VectorXd ii = imag.apply(xi);
  Eigen::VectorXcd y(x.size());
  y.real() = rr - ii;
  y.imag() = ri + ir;
  return y;
}

AssembledOperator identity_operator(const PhaseSpaceBasis& ps) {
  AssembledOperator op(ps.nq(), ps.np());
  SparseMatrix iq(ps.nq(), ps.nq());
  iq.setIdentity();
  SparseMatrix ip(ps.np(), ps.np());
  ip.setIdentity();
  op.add({1.0, iq, ip, "identity"});
  return op;
}

}  // namespace wigner
