#include <cmath>
#include <complex>

#include "doctest.h"
#include "oracles.hpp"
#include "wigner/assembly/assemble.hpp"
#include "wigner/error.hpp"

using namespace wigner;

namespace {

PhaseSpaceBasis small_space(int order = 8, int j = 4, double half = 6.0) {
  return make_phase_space(order, 2, j, {-half, half}, {-half, half});
}

double asymmetry(const RealSparseMatrix& a, double sign) {
  return RealSparseMatrix(a - sign * RealSparseMatrix(a.transpose())).norm();
}

}  // namespace

TEST_CASE("transport is antisymmetric and acts as -p d/dq") {
  const auto ps = small_space(10, 5);
  ModelParams mp;
  mp.mass = 2.0;
  const AssembledOperator t = assemble_transport(ps, mp);
  CHECK(t.has_tag("transport"));
  CHECK(asymmetry(t.to_sparse(), -1.0) < 1e-12);
  auto w = [](double q, double p) { return oracle::gaussian(q, p, 0.3, -0.2, 0.8, 0.9); };
  auto lw = [&](double q, double p) {
    const double dq = -(q - 0.3) / (0.8 * 0.8) * w(q, p);
    return -p / 2.0 * dq;
  };
  const Eigen::VectorXd c = ps.project(w);
  const Eigen::VectorXd ref = ps.project(lw);
  CHECK((t.apply(c) - ref).norm() < 1e-3 * ref.norm());
}

TEST_CASE("quadratic potentials carry no correction beyond the force term") {
  const auto ps = small_space();
  ModelParams mp;
  const AssembledOperator q = assemble_quantum_correction(ps, parse_potential("0.5*q^2 + 0.1*q"), mp);
  CHECK(q.has_tag("force"));
  for (const auto& term : q.terms()) CHECK(term.tag == "force");
  const AssembledOperator quartic = assemble_quantum_correction(ps, parse_potential("q^4"), mp);
  CHECK(quartic.has_tag("quantum_1"));
  CHECK_FALSE(quartic.has_tag("quantum_2"));
}

TEST_CASE("derivatives beyond the filter limit are a configuration error") {
  const auto ps = make_phase_space(4, 1, 4, {-5.0, 5.0}, {-5.0, 5.0});
  ModelParams mp;
  CHECK_THROWS_AS(assemble_quantum_correction(ps, parse_potential("q^4"), mp), ConfigError);
}

TEST_CASE("the closed generator conserves the integral") {
  const auto ps = small_space(8, 5);
  ModelParams mp;
  const AssembledOperator l = assemble_liouvillian(ps, parse_potential("0.5*q^2 + 0.05*q^4"), mp);
  const Eigen::VectorXd c = ps.project([](double q, double p) { return oracle::gaussian(q, p, 0.5, 0.0, 0.7, 0.7); });
  CHECK(std::abs(ps.integral(l.apply(c))) < 1e-12);
}

TEST_CASE("dissipator conserves the integral and has the stationary Gaussian in its kernel") {
  const auto ps = make_phase_space(14, 2, 6, {-6.0, 6.0}, {-6.0, 6.0});
  ModelParams mp;
  mp.gamma = 0.5;
  mp.diffusion = 0.6;
  const AssembledOperator d = assemble_dissipator(ps, mp);
  CHECK(d.has_tag("dissipator_friction"));
  CHECK(d.has_tag("dissipator_diffusion"));
  const double s2 = mp.diffusion / (2.0 * mp.gamma);
  const Eigen::VectorXd c = ps.project([&](double q, double p) { return oracle::gaussian(q, p, 0.0, 0.0, 1.0, std::sqrt(s2)); });
  CHECK(std::abs(ps.integral(d.apply(Eigen::VectorXd::Random(ps.dim())))) < 1e-12);
  CHECK(d.apply(c).norm() < 1e-5 * c.norm());
}

TEST_CASE("stationary pair has the required symmetry and matches the c-number operator") {
  const auto ps = small_space(8, 4);
  ModelParams mp;
  const auto u = parse_potential("0.5*q^2 + 0.1*q^4");
  const auto [sym, anti] = assemble_stationary_pair(ps, u, mp);
  CHECK(asymmetry(sym.to_sparse(), 1.0) < 1e-10);
  CHECK(asymmetry(anti.to_sparse(), -1.0) < 1e-10);
  const ComplexOperator c = assemble_stationary_cnumber(ps, u, mp);
  const ComplexSparseMatrix expect =
      sym.to_sparse().cast<std::complex<double>>() -
      std::complex<double>(0.0, 0.5 * mp.hbar) * anti.to_sparse().cast<std::complex<double>>();
  CHECK(ComplexSparseMatrix(c.to_sparse() - expect).norm() < 1e-10 * expect.norm());
}

TEST_CASE("operators apply matrix-free exactly as their sparse form") {
  const auto ps = small_space(6, 4);
  ModelParams mp;
  mp.gamma = 0.2;
  mp.diffusion = 0.3;
  const AssembledOperator l = assemble_open_generator(ps, parse_potential("q^2 + 0.1*q^4"), mp);
  const Eigen::VectorXd x = Eigen::VectorXd::Random(ps.dim());
  const Eigen::VectorXd ref = l.to_sparse() * x;
  CHECK((l.apply(x) - ref).norm() < 1e-12 * ref.norm());
  const Eigen::VectorXd reft = l.to_sparse().transpose() * x;
  CHECK((l.apply_transpose(x) - reft).norm() < 1e-12 * reft.norm());
  CHECK((identity_operator(ps).apply(x) - x).norm() == 0.0);
}
