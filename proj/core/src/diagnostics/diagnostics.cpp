#include "wigner/diagnostics/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>

#include "wigner/error.hpp"

namespace wigner {

namespace {

std::vector<double> cell_centres(const WaveletBasis& b, int oversample) {
  const long n = static_cast<long>(b.size()) << oversample;
  const double h = b.domain().length() / static_cast<double>(n);
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = b.domain().lo + (static_cast<double>(i) + 0.5) * h;
  return xs;
}

Marginal reduce(const WaveletBasis& axis, Eigen::VectorXd coeffs) {
  Marginal m{axis, std::move(coeffs)};
  m.integral = axis.integration_weights().dot(m.coeffs);
  if (m.integral != 0.0) {
    m.mean = axis.coordinate_moments(1).dot(m.coeffs) / m.integral;
    m.variance = axis.coordinate_moments(2).dot(m.coeffs) / m.integral - m.mean * m.mean;
  }
  const auto xs = cell_centres(axis, 2);
  const Eigen::VectorXd v = axis.evaluation_matrix(xs) * m.coeffs;
  const double dx = axis.domain().length() / static_cast<double>(xs.size());
  m.min_value = v.minCoeff();
  m.negative_mass = (-v).cwiseMax(0.0).sum() * dx;
  return m;
}

double sorted_top(const Eigen::VectorXd& multi, long k) {
  std::vector<double> e(static_cast<std::size_t>(multi.size()));
  for (long i = 0; i < multi.size(); ++i) e[static_cast<std::size_t>(i)] = multi(i) * multi(i);
  const double total = std::accumulate(e.begin(), e.end(), 0.0);
  if (!(total > 0.0)) throw DegenerateInputError("energy fraction of a zero field is undefined");
  k = std::clamp<long>(k, 0, static_cast<long>(e.size()));
  std::partial_sort(e.begin(), e.begin() + k, e.end(), std::greater<>());
  return std::accumulate(e.begin(), e.begin() + k, 0.0) / total;
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double fock_norm(const CoefficientField& w) { return w.coeffs().squaredNorm(); }

double fock_norm(const FockEnsemble& ens) {
  double s = 0.0;
  for (std::size_t n = 0; n < ens.weights.size() && n < ens.fields.size(); ++n) {
    s += ens.weights[n] * fock_norm(ens.fields[n]);
  }
  return s;
}

PhaseMoments standard_moments(const CoefficientField& w) {
  const auto& ps = w.basis();
  const auto c = PhaseSpaceBasis::grid(w.coeffs(), ps.nq(), ps.np());
  const Eigen::VectorXd q0 = ps.q().integration_weights();
  const Eigen::VectorXd p0 = ps.p().integration_weights();
  const Eigen::VectorXd q1 = ps.q().coordinate_moments(1);
  const Eigen::VectorXd p1 = ps.p().coordinate_moments(1);
  const Eigen::VectorXd q2 = ps.q().coordinate_moments(2);
  const Eigen::VectorXd p2 = ps.p().coordinate_moments(2);
  const Eigen::VectorXd cp0 = c * p0;
  const Eigen::VectorXd cp1 = c * p1;

  PhaseMoments m;
  m.integral = q0.dot(cp0);
  m.purity = 2.0 * std::numbers::pi * w.hbar() * w.coeffs().squaredNorm();
  if (m.integral != 0.0) {
    m.mean_q = q1.dot(cp0) / m.integral;
    m.mean_p = q0.dot(cp1) / m.integral;
    m.var_q = q2.dot(cp0) / m.integral - m.mean_q * m.mean_q;
    m.var_p = q0.dot(c * p2) / m.integral - m.mean_p * m.mean_p;
    m.cov_qp = q1.dot(cp1) / m.integral - m.mean_q * m.mean_p;
  }
  return m;
}

Marginals marginals(const CoefficientField& w) {
  const auto& ps = w.basis();
  const auto c = PhaseSpaceBasis::grid(w.coeffs(), ps.nq(), ps.np());
  Eigen::VectorXd rho_q = c * ps.p().integration_weights();
  Eigen::VectorXd rho_p = c.transpose() * ps.q().integration_weights();
  return {reduce(ps.q(), std::move(rho_q)), reduce(ps.p(), std::move(rho_p))};
}

ScaleEntropy scale_entropy(const CoefficientField& w) {
  const Eigen::VectorXd multi = w.basis().to_multiscale(w.coeffs());
  const double total = multi.squaredNorm();
  if (!(total > 0.0)) throw DegenerateInputError("scale entropy of a zero field is undefined");
  ScaleEntropy out;
  out.bins = multi.size();
  double sum_p2 = 0.0;
  for (long i = 0; i < multi.size(); ++i) {
    const double p = multi(i) * multi(i) / total;
    if (p > 0.0) out.entropy -= p * std::log(p);
    sum_p2 += p * p;
  }
  out.entropy = std::max(out.entropy, 0.0);
  out.participation_ratio = 1.0 / sum_p2;
  return out;
}

double negativity_volume(const CoefficientField& w, int oversample) {
  if (oversample < 0) throw ContractError("negativity_volume: oversample must be >= 0");
  const auto& ps = w.basis();
  const auto qs = cell_centres(ps.q(), oversample);
  const auto pp = cell_centres(ps.p(), oversample);
  const Eigen::MatrixXd v = ps.evaluate_grid(w.coeffs(), qs, pp);
  const double cell = ps.q().domain().length() / static_cast<double>(qs.size()) *
                      ps.p().domain().length() / static_cast<double>(pp.size());
  return (v.cwiseAbs().sum() - std::abs(v.sum())) * cell;
}

double localization_radius(const CoefficientField& w) {
  const PhaseMoments m = standard_moments(w);
  return std::sqrt(std::max(m.var_q + m.var_p, 0.0));
}

double top_fraction(const CoefficientField& w, long k) {
  return sorted_top(w.basis().to_multiscale(w.coeffs()), k);
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::localized_mode: return "localized_mode";
    case Regime::chaotic_pattern: return "chaotic_pattern";
    case Regime::waveleton: return "waveleton";
    case Regime::unclassified: break;
  }
  return "unclassified";
}

void ClassifierThresholds::validate() const {
  std::vector<std::string> bad;
  if (!(localized > 0.0 && localized <= 1.0)) bad.push_back("localized threshold must lie in (0, 1]");
  if (!(chaotic > 0.0 && chaotic <= 1.0)) bad.push_back("chaotic threshold must lie in (0, 1]");
  if (!(localized < chaotic)) bad.push_back("localized threshold must be below the chaotic threshold");
  if (!(stable > 0.0)) bad.push_back("stability threshold must be positive");
  if (!(fraction > 0.0 && fraction <= 1.0)) bad.push_back("energy fraction threshold must lie in (0, 1]");
  if (bad.empty()) return;
  std::string msg = "invalid classifier thresholds:";
  for (const auto& b : bad) msg += "\n  " + b;
  throw ConfigError(msg);
}

Classification classify(const std::vector<CoefficientField>& checkpoints,
                        const ClassifierThresholds& thresholds) {
  thresholds.validate();
  if (checkpoints.empty()) throw ContractError("classify: empty trajectory");
  const double t0 = checkpoints.front().time();
  const double t1 = checkpoints.back().time();
  const double start = t1 - (t1 - t0) / 3.0;
  const double slack = 1e-12 * std::max(1.0, std::abs(t1));
  int in_final = 0;
  for (const auto& c : checkpoints) {
    if (c.time() >= start - slack) ++in_final;
  }
  if (in_final < 3) {
    throw ContractError("classify: need at least 3 checkpoints in the final third of the run, got " +
                        std::to_string(in_final));
  }

  const CoefficientField& last = checkpoints.back();
  const CoefficientField& prev = checkpoints[checkpoints.size() - 2];
  const double dim = static_cast<double>(last.size());
  const ScaleEntropy se = scale_entropy(last);

  Classification out;
  out.checkpoints_used = in_final;
  out.participation_fraction = se.participation_ratio / dim;
  out.relative_change = (last.coeffs() - prev.coeffs()).norm() / last.coeffs().norm();
  out.top_k = std::max<long>(1, static_cast<long>(std::floor(thresholds.localized * dim)));
  out.top_fraction = top_fraction(last, out.top_k);
  out.localized = out.participation_fraction < thresholds.localized;
  out.chaotic = out.participation_fraction > thresholds.chaotic;
  out.stable = out.relative_change < thresholds.stable;

  if (out.localized && out.stable && out.top_fraction > thresholds.fraction) {
    out.regime = Regime::waveleton;
  } else if (out.localized) {
    out.regime = Regime::localized_mode;
  } else if (out.chaotic) {
    out.regime = Regime::chaotic_pattern;
  }
  return out;
}

Classification classify(const Trajectory& trajectory, const ClassifierThresholds& thresholds) {
  return classify(trajectory.states, thresholds);
}

std::vector<std::pair<std::string, double>> DiagnosticsReport::entries() const {
  std::vector<std::pair<std::string, double>> e{
      {"time", time},
      {"total_integral", total_integral},
      {"l2_norm", l2_norm},
      {"fock_norm", fock_norm},
      {"purity", purity},
      {"negativity_volume", negativity_volume},
      {"scale_entropy", scale_entropy},
      {"participation_ratio", participation_ratio},
      {"localization_radius", localization_radius},
      {"mean_q", mean_q},
      {"mean_p", mean_p},
      {"marginal_q_min", marginal_q_min},
      {"marginal_p_min", marginal_p_min},
  };
  if (classification) {
    e.emplace_back("participation_fraction", classification->participation_fraction);
    e.emplace_back("relative_change", classification->relative_change);
    e.emplace_back("top_fraction", classification->top_fraction);
    e.emplace_back("top_k", static_cast<double>(classification->top_k));
  }
  return e;
}

std::string DiagnosticsReport::to_text() const {
  std::ostringstream out;
  for (const auto& [k, v] : entries()) out << k << " = " << format_value(v) << '\n';
  out << "regime = " << to_string(regime()) << '\n';
  return out.str();
}

DiagnosticsReport diagnose(const CoefficientField& w) {
  DiagnosticsReport r;
  const PhaseMoments m = standard_moments(w);
  r.time = w.time();
  r.total_integral = m.integral;
  r.l2_norm = w.coeffs().norm();
  r.fock_norm = fock_norm(w);
  r.purity = m.purity;
  r.negativity_volume = negativity_volume(w);
  if (r.l2_norm > 0.0) {
    const ScaleEntropy se = scale_entropy(w);
    r.scale_entropy = se.entropy;
    r.participation_ratio = se.participation_ratio;
  }
  r.localization_radius = std::sqrt(std::max(m.var_q + m.var_p, 0.0));
  r.mean_q = m.mean_q;
  r.mean_p = m.mean_p;
  const Marginals mg = marginals(w);
  r.marginal_q_min = mg.q.min_value;
  r.marginal_p_min = mg.p.min_value;
  return r;
}

DiagnosticsReport diagnose(const std::vector<CoefficientField>& checkpoints,
                           const ClassifierThresholds& thresholds) {
  if (checkpoints.empty()) throw ContractError("diagnose: empty trajectory");
  DiagnosticsReport r = diagnose(checkpoints.back());
  r.classification = classify(checkpoints, thresholds);
  return r;
}

}  // namespace wigner
