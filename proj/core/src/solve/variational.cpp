#include "wigner/solve/variational.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/SparseLU>
#include <Eigen/SparseQR>

#include "wigner/error.hpp"
#include "wigner/log.hpp"

namespace wigner {

namespace {

constexpr double kMaxGrowth = 1e12;

[[noreturn]] void report_singular(const RealSparseMatrix& m, const std::string& context) {
  RealSparseMatrix c = m;
  c.makeCompressed();
  Eigen::SparseQR<RealSparseMatrix, Eigen::COLAMDOrdering<int>> qr(c);
  std::ostringstream msg;
  msg << context << ": reduced Galerkin system is singular (numerical rank " << qr.rank() << " of "
      << m.cols() << ")";
  throw NumericalError(msg.str());
}

Eigen::VectorXd solve_refined(const RealSparseMatrix& m, const Eigen::VectorXd& rhs,
                              const std::string& context) {
  RealSparseMatrix c = m;
  c.makeCompressed();
  Eigen::SparseLU<RealSparseMatrix> lu;
  lu.compute(c);
  if (lu.info() != Eigen::Success) report_singular(m, context);
  Eigen::VectorXd x = lu.solve(rhs);
  if (!x.allFinite()) report_singular(m, context);
  for (int pass = 0; pass < 3; ++pass) {
    const Eigen::VectorXd r = rhs - m * x;
    if (r.cwiseAbs().maxCoeff() == 0.0) break;
    x += lu.solve(r);
  }
  // Exactly singular systems usually factor with roundoff-sized pivots; the
  // solution then grows like 1/eps.
  const double rhs_norm = rhs.norm();
  if (rhs_norm > 0.0 && c.norm() * x.norm() > kMaxGrowth * rhs_norm) report_singular(m, context);
  return x;
}

}  // namespace

VariationalResult variational_solve(const PhaseSpaceBasis& ps, const AssembledOperator& op,
                                    const Eigen::VectorXd& rhs, double hbar) {
  if (op.rows() != ps.dim()) throw ContractError("variational_solve: operator does not match the basis");
  if (rhs.size() != ps.dim()) throw ContractError("variational_solve: right-hand side length mismatch");
  const RealSparseMatrix m = op.to_sparse();
  Eigen::VectorXd x = solve_refined(m, rhs, "variational_solve");
  const double residual = (op.apply(x) - rhs).cwiseAbs().maxCoeff();
  return VariationalResult{CoefficientField(ps, std::move(x), 0.0, hbar), residual, 0, {residual}};
}

VariationalResult variational_solve(const PhaseSpaceBasis& ps, const NonlinearSystem& system,
                                    const Eigen::VectorXd& start, const NewtonOptions& opts,
                                    double hbar) {
  if (start.size() != ps.dim()) throw ContractError("variational_solve: start vector length mismatch");
  Eigen::VectorXd x = start;
  Eigen::VectorXd f = system.residual(x);
  std::vector<double> history{f.norm()};
  int it = 0;
  while (f.cwiseAbs().maxCoeff() > opts.tolerance) {
    if (it >= opts.max_iterations) {
      throw NumericalError("variational_solve: Newton did not converge in " +
                               std::to_string(opts.max_iterations) + " iterations",
                           history);
    }
    const Eigen::VectorXd step = solve_refined(system.jacobian(x), -f, "variational_solve (Newton)");
    double lambda = 1.0;
    bool accepted = false;
    while (lambda >= opts.min_step) {
      const Eigen::VectorXd trial = x + lambda * step;
      const Eigen::VectorXd ft = system.residual(trial);
      if (ft.allFinite() && ft.norm() < f.norm()) {
        x = trial;
        f = ft;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      throw NumericalError("variational_solve: Newton stagnated (no damped step lowers the residual)",
                           history);
    }
    history.push_back(f.norm());
    ++it;
    log_debug("variational_solve: Newton iteration " + std::to_string(it) + " residual " +
              format_number(history.back()));
  }
  const double residual = f.cwiseAbs().maxCoeff();
  return VariationalResult{CoefficientField(ps, std::move(x), 0.0, hbar), residual, it, std::move(history)};
}

}  // namespace wigner
