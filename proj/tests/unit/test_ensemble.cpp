#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "wigner/diagnostics/diagnostics.hpp"
#include "wigner/ensemble/ensemble.hpp"

using namespace wigner;

namespace {

FockEnsemble three_levels(const PhaseSpaceBasis& ps) {
  FockEnsemble e;
  e.weights = coherent_weights(0.8, 2);
  e.u0 = 0.05;
  e.g = parse_potential("q^2");
  const CoefficientField w0(ps, ps.project([](double q, double p) { return oracle::gaussian(q, p, 1.0, 0.0, 0.7, 0.7); }));
  e.fields.assign(3, w0);
  return e;
}

}  // namespace

TEST_CASE("coherent weights are the truncated Poisson distribution") {
  const auto w = coherent_weights(1.3, 6);
  REQUIRE(w.size() == 7);
  double sum = 0.0;
  for (double x : w) sum += x;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
  for (int n = 1; n <= 6; ++n) CHECK(w[n] / w[n - 1] == doctest::Approx(1.3 * 1.3 / n).epsilon(1e-13));
}

TEST_CASE("weights are normalised and validated") {
  const auto w = normalize_weights({1.0, 3.0});
  CHECK(w[0] == doctest::Approx(0.25));
  CHECK(w[1] == doctest::Approx(0.75));
  CHECK_THROWS_AS(normalize_weights({1.0, -1.0}), ContractError);
  CHECK_THROWS_AS(normalize_weights({0.0, 0.0}), ContractError);
}

TEST_CASE("superposition is the weighted sum of level fields") {
  const auto ps = make_phase_space(6, 2, 4, {-6.0, 6.0}, {-6.0, 6.0});
  FockEnsemble e = three_levels(ps);
  e.fields[1].coeffs() *= 2.0;
  const CoefficientField s = incoherent_superpose(e);
  const Eigen::VectorXd ref = e.weights[0] * e.fields[0].coeffs() + e.weights[1] * e.fields[1].coeffs() +
                              e.weights[2] * e.fields[2].coeffs();
  CHECK((s.coeffs() - ref).cwiseAbs().maxCoeff() < 1e-15);
  e.fields.pop_back();
  CHECK_THROWS_AS(e.validate(), ContractError);
}

TEST_CASE("ensemble evolution does not depend on the thread count") {
  const auto ps = make_phase_space(6, 2, 4, {-6.0, 6.0}, {-6.0, 6.0});
  const FockEnsemble e = three_levels(ps);
  EvolutionConfig cfg;
  cfg.dt = 0.05;
  cfg.t_end = 0.5;
  cfg.record_every = 5;
  EnsembleOptions one;
  EnsembleOptions two;
  two.threads = 2;
  const auto a = evolve_fock_trajectories(e, ModelParams{}, cfg, one);
  const auto b = evolve_fock_trajectories(e, ModelParams{}, cfg, two);
  REQUIRE(a.size() == b.size());
  for (std::size_t n = 0; n < a.size(); ++n) {
    REQUIRE(a[n].states.size() == b[n].states.size());
    for (std::size_t i = 0; i < a[n].states.size(); ++i) CHECK(a[n].states[i].coeffs() == b[n].states[i].coeffs());
  }
  // level 0 sees no interaction; higher levels do
  CHECK((a[0].final_state().coeffs() - a[1].final_state().coeffs()).norm() > 1e-6);
}

TEST_CASE("levels below the weight floor are carried unchanged") {
  const auto ps = make_phase_space(6, 2, 4, {-6.0, 6.0}, {-6.0, 6.0});
  FockEnsemble e = three_levels(ps);
  e.weights = {0.5, 0.5, 0.0};
  EvolutionConfig cfg;
  cfg.dt = 0.1;
  cfg.t_end = 0.3;
  const auto t = evolve_fock_trajectories(e, ModelParams{}, cfg);
  CHECK(t[2].states.size() == t[0].states.size());
  CHECK(t[2].final_state().coeffs() == e.fields[2].coeffs());
  CHECK(t[2].final_state().time() == doctest::Approx(0.3));
}

TEST_CASE("Fock norm of an ensemble is the weighted sum of level norms") {
  const auto ps = make_phase_space(6, 2, 4, {-6.0, 6.0}, {-6.0, 6.0});
  const FockEnsemble e = three_levels(ps);
  double ref = 0.0;
  for (std::size_t n = 0; n < 3; ++n) ref += e.weights[n] * e.fields[n].coeffs().squaredNorm();
  CHECK(fock_norm(e) == doctest::Approx(ref).epsilon(1e-14));
}
