#include "wigner/assembly/phase_space.hpp"

#include <cmath>

#include "wigner/error.hpp"

namespace wigner {

namespace {

// Applies `op` (length-n vector -> length-m vector) to every row and then every
// column of an (nq x np) grid.
template <class RowOp, class ColOp>
CoefficientGrid separable(const CoefficientGrid& in, RowOp row_op, ColOp col_op) {
  CoefficientGrid rows_done;
  for (long i = 0; i < in.rows(); ++i) {
    const Eigen::VectorXd r = row_op(Eigen::VectorXd(in.row(i).transpose()));
    if (i == 0) rows_done.resize(in.rows(), r.size());
    rows_done.row(i) = r.transpose();
  }
  CoefficientGrid out;
  for (long j = 0; j < rows_done.cols(); ++j) {
    const Eigen::VectorXd c = col_op(Eigen::VectorXd(rows_done.col(j)));
    if (j == 0) out.resize(c.size(), rows_done.cols());
    out.col(j) = c;
  }
  return out;
}

Eigen::VectorXd flatten(const CoefficientGrid& g) {
  return Eigen::Map<const Eigen::VectorXd>(g.data(), g.size());
}

}  // namespace

PhaseSpaceBasis::PhaseSpaceBasis(WaveletBasis q, WaveletBasis p) : q_(std::move(q)), p_(std::move(p)) {}

std::pair<int, int> PhaseSpaceBasis::pair(long flat_index) const {
  if (flat_index < 0 || flat_index >= dim()) throw ContractError("pair: flat index out of range");
  return {static_cast<int>(flat_index / np()), static_cast<int>(flat_index % np())};
}

PhaseSpaceBasis PhaseSpaceBasis::refined(int delta) const {
  return PhaseSpaceBasis(q_.with_fine_level(q_.j_fine() + delta),
                         p_.with_fine_level(p_.j_fine() + delta));
}

bool PhaseSpaceBasis::same_as(const PhaseSpaceBasis& o) const {
  auto same = [](const WaveletBasis& a, const WaveletBasis& b) {
    return a.order() == b.order() && a.j_fine() == b.j_fine() && a.j_coarse() == b.j_coarse() &&
           a.domain().lo == b.domain().lo && a.domain().hi == b.domain().hi;
  };
  return same(q_, o.q_) && same(p_, o.p_);
}

Eigen::VectorXd PhaseSpaceBasis::project(const std::function<double(double, double)>& f,
                                         int oversample) const {
  const auto xq = q_.sample_points(oversample);
  const auto xp = p_.sample_points(oversample);
  const SparseMatrix pq = q_.projection_matrix(oversample);
  const SparseMatrix pp = p_.projection_matrix(oversample);

  Eigen::MatrixXd partial(static_cast<long>(xq.size()), np());
  Eigen::VectorXd row(static_cast<long>(xp.size()));
  for (std::size_t s = 0; s < xq.size(); ++s) {
    for (std::size_t t = 0; t < xp.size(); ++t) row(static_cast<long>(t)) = f(xq[s], xp[t]);
    partial.row(static_cast<long>(s)) = (pp * row).transpose();
  }
  const CoefficientGrid c = pq * partial;
  return flatten(c);
}

Eigen::VectorXd PhaseSpaceBasis::project_separable(const std::function<double(double)>& fq,
                                                   const std::function<double(double)>& fp,
                                                   int oversample) const {
  const Eigen::VectorXd a = q_.project(fq, oversample);
  const Eigen::VectorXd b = p_.project(fp, oversample);
  const CoefficientGrid c = a * b.transpose();
  return flatten(c);
}

double PhaseSpaceBasis::evaluate(const Eigen::VectorXd& coeffs, double q, double p) const {
  const double qs[1] = {q};
  const double ps[1] = {p};
  return evaluate_grid(coeffs, qs, ps)(0, 0);
}

Eigen::MatrixXd PhaseSpaceBasis::evaluate_grid(const Eigen::VectorXd& coeffs,
                                               std::span<const double> qs,
                                               std::span<const double> ps) const {
  if (coeffs.size() != dim()) throw ContractError("evaluate_grid: coefficient length mismatch");
  const Eigen::MatrixXd eq = q_.evaluation_matrix(qs);
  const Eigen::MatrixXd ep = p_.evaluation_matrix(ps);
  const auto c = grid(coeffs, nq(), np());
  return ep * (eq * c).transpose();
}

Eigen::VectorXd PhaseSpaceBasis::to_multiscale(const Eigen::VectorXd& single) const {
  if (single.size() != dim()) throw ContractError("to_multiscale: coefficient length mismatch");
  const CoefficientGrid g = grid(single, nq(), np());
  return flatten(separable(
      g, [&](const Eigen::VectorXd& v) { return p_.forward(v); },
      [&](const Eigen::VectorXd& v) { return q_.forward(v); }));
}

Eigen::VectorXd PhaseSpaceBasis::to_single(const Eigen::VectorXd& multi) const {
  if (multi.size() != dim()) throw ContractError("to_single: coefficient length mismatch");
  const CoefficientGrid g = grid(multi, nq(), np());
  return flatten(separable(
      g, [&](const Eigen::VectorXd& v) { return p_.inverse(v); },
      [&](const Eigen::VectorXd& v) { return q_.inverse(v); }));
}

Eigen::VectorXd PhaseSpaceBasis::refine_once(const Eigen::VectorXd& single) const {
  if (single.size() != dim()) throw ContractError("refine_once: coefficient length mismatch");
  const CoefficientGrid g = grid(single, nq(), np());
  return flatten(separable(
      g, [&](const Eigen::VectorXd& v) { return p_.refine_once(v); },
      [&](const Eigen::VectorXd& v) { return q_.refine_once(v); }));
}

double PhaseSpaceBasis::integration_weight() const { return std::sqrt(q_.cell() * p_.cell()); }

double PhaseSpaceBasis::integral(const Eigen::VectorXd& coeffs) const {
  if (coeffs.size() != dim()) throw ContractError("integral: coefficient length mismatch");
  return integration_weight() * coeffs.sum();
}

PhaseSpaceBasis make_phase_space(int order, int j_coarse, int j_fine, Interval box_q,
                                 Interval box_p) {
  return PhaseSpaceBasis(WaveletBasis(order, j_coarse, j_fine, box_q),
                         WaveletBasis(order, j_coarse, j_fine, box_p));
}

}  // namespace wigner
