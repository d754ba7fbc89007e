#include "wigner/solve/evolve.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/SparseLU>

#include "wigner/log.hpp"

namespace wigner {

void EvolutionConfig::validate() const {
  std::vector<std::string> problems;
  if (!std::isfinite(dt) || dt <= 0.0) problems.push_back("dt must be positive");
  if (!std::isfinite(t_end) || t_end < 0.0) problems.push_back("t_end must be >= 0");
  if (record_every < 1) problems.push_back("record_every must be >= 1");
  if (!(growth_limit > 1.0)) problems.push_back("growth_limit must exceed 1");
  if (problems.empty()) return;
  std::string msg = "invalid evolution settings:";
  for (const auto& p : problems) msg += "\n  " + p;
  throw ConfigError(msg);
}

double estimate_operator_norm(const AssembledOperator& op, int iterations) {
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd x(op.rows());
  for (long i = 0; i < x.size(); ++i) x(i) = normal(rng);
  x.normalize();
  double sigma2 = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Eigen::VectorXd y = op.apply_transpose(op.apply(x));
    sigma2 = x.dot(y);
    const double n = y.norm();
    if (n == 0.0) return 0.0;
    x = y / n;
  }
  // Power iteration approaches from below; pad by 5%.
  return 1.05 * std::sqrt(std::max(sigma2, 0.0));
}

Trajectory evolve(const CoefficientField& w0, const AssembledOperator& op, const EvolutionConfig& cfg) {
  cfg.validate();
  if (op.rows() != w0.size()) {
    throw ContractError("evolve: operator dimension " + std::to_string(op.rows()) +
                        " does not match field dimension " + std::to_string(w0.size()));
  }
  if (!w0.finite()) throw ContractError("evolve: initial field has non-finite entries");

  Trajectory traj;
  traj.states.push_back(w0);
  if (cfg.t_end == 0.0) return traj;

  const int steps = static_cast<int>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
  const double dt = cfg.t_end / steps;
  traj.steps = steps;
  traj.dt = dt;

  const long n = w0.size();
  Eigen::SparseLU<RealSparseMatrix> lu;
  if (cfg.scheme == Scheme::implicit_midpoint) {
    RealSparseMatrix m = -0.5 * dt * op.to_sparse();
    RealSparseMatrix id(n, n);
    id.setIdentity();
    m += id;
    m.makeCompressed();
    lu.compute(m);
    if (lu.info() != Eigen::Success) {
      throw NumericalError("evolve: implicit midpoint system (I - dt/2 L) is singular: " +
                           lu.lastErrorMessage());
    }
  } else {
    const double norm = estimate_operator_norm(op);
    if (dt * norm > cfg.rk4_stability_limit) {
      std::ostringstream msg;
      msg << "evolve: dt = " << dt << " exceeds the explicit RK4 stability bound (dt * ||L|| = "
          << dt * norm << " > " << cfg.rk4_stability_limit << "); use dt <= "
          << cfg.rk4_stability_limit / norm << " or the implicit_midpoint scheme";
      throw ConfigError(msg.str());
    }
  }

  const double norm0 = w0.coeffs().norm();
  const double integral0 = w0.integral();
  const double weight = w0.basis().integration_weight();
  std::vector<double> norms{norm0};

  Eigen::VectorXd c = w0.coeffs();
  Eigen::VectorXd k1, k2, k3, k4, tmp;
  for (int s = 1; s <= steps; ++s) {
    const Eigen::VectorXd previous = c;
    if (cfg.scheme == Scheme::implicit_midpoint) {
      op.apply(c, tmp);
      tmp = c + 0.5 * dt * tmp;
      c = lu.solve(tmp);
    } else {
      op.apply(c, k1);
      op.apply(c + 0.5 * dt * k1, k2);
      op.apply(c + 0.5 * dt * k2, k3);
      op.apply(c + dt * k3, k4);
      c += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }

    const double nrm = c.norm();
    norms.push_back(nrm);
    if (!c.allFinite() || (norm0 > 0.0 && nrm > cfg.growth_limit * norm0)) {
      std::ostringstream msg;
      msg << "evolve: instability at step " << s << " (t = " << s * dt << "), ||W|| = " << nrm
          << " vs ||W0|| = " << norm0;
      throw EvolutionAborted(msg.str(), norms,
                             CoefficientField(w0.basis(), previous, (s - 1) * dt + w0.time(), w0.hbar()));
    }

    if (cfg.renormalize && integral0 != 0.0) {
      const double integral = weight * c.sum();
      const double drift = std::abs(integral / integral0 - 1.0);
      traj.max_renormalization = std::max(traj.max_renormalization, drift);
      if (drift > 1e-3) {
        log_warn("evolve: renormalisation corrected an integral drift of " + format_number(drift) +
                 " at step " + std::to_string(s));
      }
      if (integral != 0.0) c *= integral0 / integral;
    }

    if (s % cfg.record_every == 0 || s == steps) {
      const double t = s == steps ? cfg.t_end : s * dt;
      traj.states.emplace_back(w0.basis(), c, w0.time() + t, w0.hbar());
    }
  }
  if (cfg.renormalize) {
    log_info("evolve: largest renormalisation correction " + format_number(traj.max_renormalization));
  }
  return traj;
}

}  // namespace wigner
