#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "wigner/assembly/assemble.hpp"
#include "wigner/solve/eigen.hpp"
#include "wigner/solve/evolve.hpp"
#include "wigner/solve/refine.hpp"
#include "wigner/solve/variational.hpp"

using namespace wigner;

namespace {

CoefficientField gaussian_field(const PhaseSpaceBasis& ps, double q0, double p0, double s) {
  return CoefficientField(ps, ps.project([=](double q, double p) { return oracle::gaussian(q, p, q0, p0, s, s); }));
}

}  // namespace

TEST_CASE("zero-length evolution returns the initial state only") {
  const auto ps = make_phase_space(6, 2, 4, {-6.0, 6.0}, {-6.0, 6.0});
  const auto w0 = gaussian_field(ps, 0.0, 0.0, 0.7);
  EvolutionConfig cfg;
  cfg.t_end = 0.0;
  const Trajectory t = evolve(w0, assemble_transport(ps, ModelParams{}), cfg);
  REQUIRE(t.states.size() == 1);
  CHECK(t.steps == 0);
  CHECK(t.final_state().coeffs() == w0.coeffs());
}

TEST_CASE("implicit midpoint conserves norm and integral for closed systems") {
  const auto ps = make_phase_space(8, 2, 5, {-6.0, 6.0}, {-6.0, 6.0});
  const auto w0 = gaussian_field(ps, 1.0, 0.0, std::sqrt(0.5));
  EvolutionConfig cfg;
  cfg.dt = 0.05;
  cfg.t_end = 2.0;
  cfg.record_every = 10;
  const Trajectory t = evolve(w0, assemble_liouvillian(ps, parse_potential("0.5*q^2"), ModelParams{}), cfg);
  CHECK(t.steps == 40);
  CHECK(t.states.size() == 5);
  CHECK(t.final_state().time() == doctest::Approx(2.0));
  CHECK(std::abs(t.final_state().coeffs().norm() - w0.coeffs().norm()) < 1e-12);
  CHECK(std::abs(t.final_state().integral() - w0.integral()) < 1e-12);
  // the centre rotates classically: q(t) = cos t
  const Eigen::VectorXd ref = ps.project([](double q, double p) {
    return oracle::gaussian(q, p, std::cos(2.0), -std::sin(2.0), std::sqrt(0.5), std::sqrt(0.5));
  });
  CHECK((t.final_state().coeffs() - ref).norm() < 1e-2 * ref.norm());
}

TEST_CASE("explicit RK4 refuses steps beyond its stability limit") {
  const auto ps = make_phase_space(6, 2, 5, {-6.0, 6.0}, {-6.0, 6.0});
  const auto w0 = gaussian_field(ps, 0.0, 0.0, 0.7);
  EvolutionConfig cfg;
  cfg.scheme = Scheme::explicit_rk4;
  cfg.dt = 10.0;
  cfg.t_end = 10.0;
  CHECK_THROWS_AS(evolve(w0, assemble_transport(ps, ModelParams{}), cfg), Error);
  cfg.dt = 0.01;
  cfg.t_end = 0.1;
  CHECK_NOTHROW(evolve(w0, assemble_transport(ps, ModelParams{}), cfg));
}

TEST_CASE("invalid evolution settings are rejected") {
  EvolutionConfig cfg;
  cfg.dt = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("lowest oscillator states on a small basis") {
  const auto ps = make_phase_space(10, 2, 5, {-6.0, 6.0}, {-6.0, 6.0});
  ModelParams mp;
  const auto u = parse_potential("0.5*q^2");
  const auto [sym, anti] = assemble_stationary_pair(ps, u, mp);
  StationaryOptions so;
  so.sector = &anti;
  const auto states = stationary_eigen(ps, sym, 2, so);
  REQUIRE(states.size() == 2);
  CHECK(states[0].energy == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(states[1].energy == doctest::Approx(1.5).epsilon(1e-2));
  CHECK(states[0].field.integral() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(states[0].residual < 1e-9);
  const Eigen::VectorXd ref = ps.project([](double q, double p) { return oracle::harmonic_wigner(0, q, p); });
  CHECK((states[0].field.coeffs() - ref).norm() < 1e-2 * ref.norm());
}

TEST_CASE("dense Hermitian eigensolver returns the smallest eigenvalues") {
  RealSparseMatrix a(6, 6);
  for (int i = 0; i < 6; ++i) a.insert(i, i) = 6.0 - i;
  const auto r = hermitian_eigs(a, 3);
  CHECK(r.values[0] == doctest::Approx(1.0));
  CHECK(r.values[1] == doctest::Approx(2.0));
  CHECK(r.values[2] == doctest::Approx(3.0));
}

TEST_CASE("linear variational solve leaves residuals at roundoff") {
  const auto ps = make_phase_space(8, 2, 5, {-6.0, 6.0}, {-6.0, 6.0});
  const AssembledOperator l = assemble_liouvillian(ps, parse_potential("0.5*q^2 + 0.1*q^4"), ModelParams{});
  AssembledOperator a = identity_operator(ps) + (-0.1) * l;
  const Eigen::VectorXd rhs = gaussian_field(ps, 0.5, 0.0, 0.8).coeffs();
  const VariationalResult r = variational_solve(ps, a, rhs);
  const double independent = (a.apply(r.field.coeffs()) - rhs).cwiseAbs().maxCoeff();
  CHECK(independent < 1e-10);
  CHECK(r.max_residual < 1e-10);
}

TEST_CASE("singular variational systems report a numerical error") {
  const auto ps = make_phase_space(6, 2, 4, {-6.0, 6.0}, {-6.0, 6.0});
  const AssembledOperator t = assemble_transport(ps, ModelParams{});
  CHECK_THROWS_AS(variational_solve(ps, t, Eigen::VectorXd::Ones(ps.dim())), NumericalError);
}

TEST_CASE("damped Newton solves a cubic Galerkin system") {
  const auto ps = make_phase_space(6, 2, 3, {-4.0, 4.0}, {-4.0, 4.0});
  const Eigen::VectorXd f = Eigen::VectorXd::LinSpaced(ps.dim(), -2.0, 3.0);
  NonlinearSystem sys;
  sys.residual = [&](const Eigen::VectorXd& c) -> Eigen::VectorXd { return c + c.cwiseProduct(c).cwiseProduct(c) - f; };
  sys.jacobian = [&](const Eigen::VectorXd& c) {
    RealSparseMatrix j(c.size(), c.size());
    for (long i = 0; i < c.size(); ++i) j.insert(i, i) = 1.0 + 3.0 * c[i] * c[i];
    return j;
  };
  const VariationalResult r = variational_solve(ps, sys, Eigen::VectorXd::Zero(ps.dim()));
  CHECK(r.max_residual < 1e-10);
  CHECK(r.newton_iterations > 0);
  for (std::size_t i = 1; i < r.residual_history.size(); ++i) CHECK(r.residual_history[i] < r.residual_history[i - 1]);
}

TEST_CASE("refinement with a loose bound stops after one step") {
  const auto ps = make_phase_space(8, 2, 3, {-6.0, 6.0}, {-6.0, 6.0});
  int calls = 0;
  const LevelSolver solve = [&](const PhaseSpaceBasis& b) {
    ++calls;
    return gaussian_field(b, 0.0, 0.0, 1.0);
  };
  const auto [w, report] = refine_until(ps, solve, 1e6, 6);
  CHECK(report.converged);
  CHECK(report.steps.size() == 1);
  CHECK(report.accepted_level == 4);
  CHECK(calls == 2);
  CHECK(w.basis().q().j_fine() == 4);
  CHECK_THROWS_AS(refine_until(ps, solve, 1e-4, 3), ContractError);
}

TEST_CASE("scale decomposition parts sum to the field") {
  const auto ps = make_phase_space(6, 2, 5, {-6.0, 6.0}, {-6.0, 6.0});
  const auto w = gaussian_field(ps, 0.5, -0.5, 0.4);
  const ScaleDecomposition parts = reconstruct_by_scale(w, 3, 3);
  Eigen::VectorXd sum = parts.slow.coeffs();
  for (const auto& f : parts.fast) sum += f.coeffs();
  CHECK((sum - w.coeffs()).norm() < 1e-13 * w.coeffs().norm());
  CHECK(parts.fast.size() == 2);
  const ScaleDecomposition all_slow = reconstruct_by_scale(w, 6, 6);
  CHECK(all_slow.fast.empty());
  CHECK((all_slow.slow.coeffs() - w.coeffs()).norm() < 1e-13);
  CHECK_THROWS_AS(reconstruct_by_scale(w, 1, 3), ContractError);
  CHECK_THROWS_AS(reconstruct_by_scale(w, 3, 7), ContractError);
}
