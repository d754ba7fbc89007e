#include "wigner/solve/refine.hpp"

#include <algorithm>
#include <sstream>

#include "wigner/error.hpp"
#include "wigner/log.hpp"

namespace wigner {

std::pair<CoefficientField, RefinementReport> refine_until(const PhaseSpaceBasis& start,
                                                           const LevelSolver& solve,
                                                           double epsilon, int n_max) {
  if (!(epsilon > 0.0)) throw ContractError("refine_until: epsilon must be positive");
  const int n0 = std::max(start.q().j_fine(), start.p().j_fine());
  if (n_max < n0 + 1) {
    throw ContractError("refine_until: n_max must be at least one level above the starting level " +
                        std::to_string(n0));
  }

  RefinementReport report;
  report.epsilon = epsilon;
  PhaseSpaceBasis ps = start;
  CoefficientField coarse = solve(ps);
  for (int level = n0; level < n_max; ++level) {
    const PhaseSpaceBasis fine_ps = ps.refined();
    CoefficientField fine = solve(fine_ps);
    if (!fine.basis().same_as(fine_ps)) throw ContractError("refine_until: solver returned a field on another basis");
    const Eigen::VectorXd embedded = ps.refine_once(coarse.coeffs());
    const double diff = (fine.coeffs() - embedded).norm();
    if (!report.steps.empty() && diff > report.steps.back().difference) {
      report.monotone = false;
      std::ostringstream msg;
      msg << "refine_until: difference grew from " << report.steps.back().difference << " to " << diff
          << " at level " << level;
      log_warn(msg.str());
    }
    report.steps.push_back({level, diff});
    log_info("refine_until: level " + std::to_string(level) + " -> " + std::to_string(level + 1) +
             " difference " + format_number(diff));
    ps = fine_ps;
    coarse = std::move(fine);
    report.accepted_level = level + 1;
    if (diff <= epsilon) {
      report.converged = true;
      return {std::move(coarse), report};
    }
  }
  log_warn("refine_until: bound " + format_number(epsilon) + " not met by level " + std::to_string(n_max));
  return {std::move(coarse), report};
}

ScaleDecomposition reconstruct_by_scale(const CoefficientField& w, int cut_q, int cut_p) {
  const auto& ps = w.basis();
  auto check = [](const WaveletBasis& b, int cut, const char* axis) {
    if (cut < b.j_coarse() || cut > b.j_fine() + 1) {
      std::ostringstream msg;
      msg << "reconstruct_by_scale: " << axis << " cut " << cut << " outside [" << b.j_coarse() << ", "
          << b.j_fine() + 1 << "]";
      throw ContractError(msg.str());
    }
  };
  check(ps.q(), cut_q, "q");
  check(ps.p(), cut_p, "p");

  const Eigen::VectorXd multi = ps.to_multiscale(w.coeffs());
  const int top = std::max(ps.q().j_fine() - 1 - cut_q, ps.p().j_fine() - 1 - cut_p);
  const int parts = std::max(top + 1, 0);
  Eigen::VectorXd slow = Eigen::VectorXd::Zero(multi.size());
  std::vector<Eigen::VectorXd> fast(static_cast<std::size_t>(parts), Eigen::VectorXd::Zero(multi.size()));

  std::vector<int> level_q(static_cast<std::size_t>(ps.nq()));
  std::vector<int> level_p(static_cast<std::size_t>(ps.np()));
  for (int i = 0; i < ps.nq(); ++i) level_q[static_cast<std::size_t>(i)] = ps.q().level_of(i);
  for (int i = 0; i < ps.np(); ++i) level_p[static_cast<std::size_t>(i)] = ps.p().level_of(i);

  for (int iq = 0; iq < ps.nq(); ++iq) {
    for (int ip = 0; ip < ps.np(); ++ip) {
      const long k = ps.flat(iq, ip);
      const int depth = std::max(level_q[static_cast<std::size_t>(iq)] - cut_q,
                                 level_p[static_cast<std::size_t>(ip)] - cut_p);
      if (depth < 0) slow(k) = multi(k);
      else fast[static_cast<std::size_t>(depth)](k) = multi(k);
    }
  }

  ScaleDecomposition out{w.with_coeffs(ps.to_single(slow)), {}, {}};
  for (int d = 0; d < parts; ++d) {
    out.fast.push_back(w.with_coeffs(ps.to_single(fast[static_cast<std::size_t>(d)])));
    out.fast_levels.push_back(std::min(cut_q, cut_p) + d);
  }
  return out;
}

}  // namespace wigner
