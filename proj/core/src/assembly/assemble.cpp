#include "wigner/assembly/assemble.hpp"

#include <cmath>
#include <string>

#include "wigner/error.hpp"

namespace wigner {

namespace {

SparseMatrix identity(int n) {
  SparseMatrix m(n, n);
  m.setIdentity();
  return m;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// K(p) = p^2 / 2m + V(p) as a coefficient table in p.
std::vector<double> kinetic_coeffs(const PolynomialPotential& u, const ModelParams& params) {
  std::vector<double> k = u.coeffs_p();
  if (k.size() < 3) k.resize(3, 0.0);
  k[2] += 0.5 / params.mass;
  return k;
}

std::vector<double> derivative_coeffs(const std::vector<double>& c, int order) {
  return derivative(PolynomialPotential(c), order).coeffs_q();
}

// (-1)^l (hbar/2)^{2l} / (2l + extra)!
double series_weight(const ModelParams& params, int l, int extra) {
  const double sign = (l % 2 == 0) ? 1.0 : -1.0;
  return sign * std::pow(0.5 * params.hbar, 2 * l) / factorial(2 * l + extra);
}

std::string level_tag(const std::string& base, int l) {
  return l == 0 ? base : base + "_" + std::to_string(l);
}

AssembledOperator retagged(AssembledOperator op, const std::string& tag) {
  AssembledOperator out(op.nq(), op.np());
  for (auto t : op.terms()) {
    t.tag = tag;
    out.add(std::move(t));
  }
  return out;
}

}  // namespace

AssembledOperator assemble_transport(const PhaseSpaceBasis& ps, const ModelParams& params) {
  if (!(params.mass > 0.0)) throw ConfigError("assemble_transport: mass must be positive");
  AssembledOperator op(ps.nq(), ps.np());
  op.add({-1.0 / params.mass, ps.q().derivative_matrix(1), ps.p().moment_matrix(1), "transport"});
  return op;
}

AssembledOperator assemble_quantum_correction(const PhaseSpaceBasis& ps,
                                              const PolynomialPotential& u,
                                              const ModelParams& params) {
  AssembledOperator op(ps.nq(), ps.np());
  const auto& uq = u.coeffs_q();
  const auto& vp = u.coeffs_p();
  const int top = moyal_truncation(u);
  for (int l = 0; l <= top; ++l) {
    const double w = series_weight(params, l, 1);
    if (w == 0.0) continue;
    const int d = 2 * l + 1;
    const auto du = derivative_coeffs(uq, d);
    if (!du.empty()) {
      op.add({w, ps.q().multiplication_matrix(du), ps.p().derivative_matrix(d),
              level_tag(l == 0 ? "force" : "quantum", l)});
    }
    const auto dv = derivative_coeffs(vp, d);
    if (!dv.empty()) {
      op.add({-w, ps.q().derivative_matrix(d), ps.p().multiplication_matrix(dv),
              level_tag(l == 0 ? "momentum_force" : "momentum_quantum", l)});
    }
  }
  return op;
}

AssembledOperator assemble_dissipator(const PhaseSpaceBasis& ps, const ModelParams& params) {
  AssembledOperator op(ps.nq(), ps.np());
  if (params.gamma != 0.0) {
    const SparseMatrix friction = ps.p().derivative_matrix(1) * ps.p().moment_matrix(1);
    op.add({2.0 * params.gamma, identity(ps.nq()), friction, "dissipator_friction"});
  }
  if (params.diffusion != 0.0) {
    op.add({params.diffusion, identity(ps.nq()), ps.p().derivative_matrix(2), "dissipator_diffusion"});
  }
  return op;
}

AssembledOperator assemble_liouvillian(const PhaseSpaceBasis& ps, const PolynomialPotential& u,
                                       const ModelParams& params) {
  return assemble_transport(ps, params) + assemble_quantum_correction(ps, u, params);
}

AssembledOperator assemble_open_generator(const PhaseSpaceBasis& ps, const PolynomialPotential& u,
                                          const ModelParams& params) {
  return assemble_liouvillian(ps, u, params) + assemble_dissipator(ps, params);
}

std::pair<AssembledOperator, AssembledOperator> assemble_stationary_pair(
    const PhaseSpaceBasis& ps, const PolynomialPotential& u, const ModelParams& params) {
  const auto& uq = u.coeffs_q();
  const auto kp = kinetic_coeffs(u, params);

  AssembledOperator sym(ps.nq(), ps.np());
  if (!uq.empty()) sym.add({1.0, ps.q().multiplication_matrix(uq), identity(ps.np()), "stationary_sym"});
  sym.add({1.0, identity(ps.nq()), ps.p().multiplication_matrix(kp), "stationary_sym"});
  const int top = static_cast<int>(std::max(uq.size(), kp.size()));
  for (int l = 1; 2 * l < top; ++l) {
    const double w = series_weight(params, l, 0);
    if (w == 0.0) continue;
    const auto du = derivative_coeffs(uq, 2 * l);
    if (!du.empty()) {
      sym.add({w, ps.q().multiplication_matrix(du), ps.p().derivative_matrix(2 * l), "stationary_sym"});
    }
    const auto dk = derivative_coeffs(kp, 2 * l);
    if (!dk.empty()) {
      sym.add({w, ps.q().derivative_matrix(2 * l), ps.p().multiplication_matrix(dk), "stationary_sym"});
    }
  }

  AssembledOperator anti = retagged(-1.0 * assemble_liouvillian(ps, u, params), "stationary_antisym");
  return {std::move(sym), std::move(anti)};
}

ComplexOperator assemble_stationary_cnumber(const PhaseSpaceBasis& ps,
                                            const PolynomialPotential& u,
                                            const ModelParams& params) {
  ComplexOperator op{AssembledOperator(ps.nq(), ps.np()), AssembledOperator(ps.nq(), ps.np())};
  const double half = 0.5 * params.hbar;

  // (+-i)^j split into a real or imaginary unit weight.
  auto add = [&](int j, bool plus_i, double scale, SparseMatrix q, SparseMatrix p) {
    // plus_i: (i)^j, else (-i)^j.
    const int phase = plus_i ? (j % 4) : ((4 - j % 4) % 4);
    const double mag = std::pow(half, j) * scale;
    static const double re[4] = {1.0, 0.0, -1.0, 0.0};
    static const double im[4] = {0.0, 1.0, 0.0, -1.0};
    if (re[phase] != 0.0) op.real.add({re[phase] * mag, std::move(q), std::move(p), "cnumber"});
    else op.imag.add({im[phase] * mag, std::move(q), std::move(p), "cnumber"});
  };

  // K(p + a d_q), a = -i hbar/2: sum_k kappa_k sum_j C(k,j) a^j p^{k-j} d_q^j.
  const auto kp = kinetic_coeffs(u, params);
  for (int j = 0; j < static_cast<int>(kp.size()); ++j) {
    std::vector<double> poly(kp.size() - static_cast<std::size_t>(j), 0.0);
    for (std::size_t k = static_cast<std::size_t>(j); k < kp.size(); ++k) {
      poly[k - static_cast<std::size_t>(j)] = kp[k] * binomial(static_cast<int>(k), j);
    }
    if (PolynomialPotential(poly).is_zero()) continue;
    SparseMatrix dq = j == 0 ? identity(ps.nq()) : ps.q().derivative_matrix(j);
    add(j, false, 1.0, std::move(dq), ps.p().multiplication_matrix(poly));
  }

  // U(q - a d_p), -a = i hbar/2: sum_k u_k sum_j C(k,j) (-a)^j q^{k-j} d_p^j.
  const auto& uq = u.coeffs_q();
  for (int j = 0; j < static_cast<int>(uq.size()); ++j) {
    std::vector<double> poly(uq.size() - static_cast<std::size_t>(j), 0.0);
    for (std::size_t k = static_cast<std::size_t>(j); k < uq.size(); ++k) {
      poly[k - static_cast<std::size_t>(j)] = uq[k] * binomial(static_cast<int>(k), j);
    }
    if (PolynomialPotential(poly).is_zero()) continue;
    SparseMatrix dp = j == 0 ? identity(ps.np()) : ps.p().derivative_matrix(j);
    add(j, true, 1.0, ps.q().multiplication_matrix(poly), std::move(dp));
  }
  return op;
}

}  // namespace wigner
