#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "wigner/diagnostics/diagnostics.hpp"

using namespace wigner;

namespace {

CoefficientField harmonic(int n, int order = 10, int j = 6) {
  const auto ps = make_phase_space(order, 2, j, {-6.0, 6.0}, {-6.0, 6.0});
  return CoefficientField(ps, ps.project([n](double q, double p) { return oracle::harmonic_wigner(n, q, p); }));
}

std::vector<CoefficientField> constant_trajectory(const CoefficientField& w, int count) {
  std::vector<CoefficientField> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(w);
    out.back().set_time(i);
  }
  return out;
}

}  // namespace

TEST_CASE("moments and purity of the oscillator ground state") {
  const auto w = harmonic(0);
  const PhaseMoments m = standard_moments(w);
  CHECK(m.integral == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(m.mean_q) < 1e-10);
  CHECK(m.var_q == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(m.var_p == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(m.purity == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("marginals integrate to the total and match the Gaussian density") {
  const auto ps = make_phase_space(8, 2, 6, {-6.0, 6.0}, {-6.0, 6.0});
  const CoefficientField w(ps, ps.project([](double q, double p) { return oracle::gaussian(q, p, 0.5, -1.0, 0.6, 0.9); }));
  const Marginals m = marginals(w);
  CHECK(std::abs(m.q.integral - w.integral()) < 1e-10);
  CHECK(std::abs(m.p.integral - w.integral()) < 1e-10);
  CHECK(m.q.mean == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(m.p.variance == doctest::Approx(0.81).epsilon(1e-6));
  const double peak = 1.0 / (0.6 * std::sqrt(2.0 * std::numbers::pi));
  CHECK(m.q.value(0.5) == doctest::Approx(peak).epsilon(1e-3));
}

TEST_CASE("negativity volume of the first excited state") {
  const auto w = harmonic(1);
  CHECK(negativity_volume(w) == doctest::Approx(oracle::first_excited_negativity()).epsilon(2e-3));
  CHECK(negativity_volume(harmonic(0)) < 1e-4);
  CHECK_THROWS_AS(negativity_volume(w, -1), ContractError);
}

TEST_CASE("scale entropy bounds and degenerate input") {
  const auto w = harmonic(0, 8, 5);
  const ScaleEntropy s = scale_entropy(w);
  CHECK(s.participation_ratio >= 1.0);
  CHECK(s.participation_ratio <= static_cast<double>(s.bins));
  CHECK(s.entropy >= 0.0);
  CHECK(s.entropy <= std::log(static_cast<double>(s.bins)));
  CHECK_THROWS_AS(scale_entropy(w.with_coeffs(Eigen::VectorXd::Zero(w.size()))), DegenerateInputError);
}

TEST_CASE("classifier precedence on synthetic trajectories") {
  const auto ps = make_phase_space(6, 2, 5, {-6.0, 6.0}, {-6.0, 6.0});
  Eigen::VectorXd multi = Eigen::VectorXd::Zero(ps.dim());
  multi[37] = 1.0;
  const CoefficientField spike(ps, ps.to_single(multi));

  const Classification still = classify(constant_trajectory(spike, 7));
  CHECK(still.regime == Regime::waveleton);
  CHECK(still.participation_fraction == doctest::Approx(1.0 / ps.dim()));
  CHECK(still.localized);
  CHECK(still.stable);

  auto moving = constant_trajectory(spike, 7);
  multi[37] = 0.0;
  multi[38] = 1.0;
  moving.back() = CoefficientField(ps, ps.to_single(multi), 6.0);
  const Classification c = classify(moving);
  CHECK(c.regime == Regime::localized_mode);
  CHECK_FALSE(c.stable);

  const Eigen::VectorXd flat = ps.to_single(Eigen::VectorXd::Ones(ps.dim()));
  const Classification spread = classify(constant_trajectory(CoefficientField(ps, flat), 7));
  CHECK(spread.regime == Regime::chaotic_pattern);
  CHECK(spread.participation_fraction == doctest::Approx(1.0));
}

TEST_CASE("classifier needs enough checkpoints and valid thresholds") {
  const auto w = harmonic(0, 6, 4);
  CHECK_THROWS_AS(classify(constant_trajectory(w, 2)), ContractError);
  ClassifierThresholds t;
  t.localized = 0.5;
  t.chaotic = 0.1;
  CHECK_THROWS_AS(t.validate(), ConfigError);
}

TEST_CASE("diagnostics report serialises as key = value lines") {
  const auto w = harmonic(0, 6, 4);
  const DiagnosticsReport r = diagnose(constant_trajectory(w, 7));
  const std::string text = r.to_text();
  CHECK(text.find("total_integral = ") != std::string::npos);
  CHECK(text.find("regime = waveleton") != std::string::npos);
  CHECK(text.back() == '\n');
  CHECK(r.regime() == Regime::waveleton);
}
