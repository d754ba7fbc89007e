#include "artifacts.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "wigner/error.hpp"

namespace wigner::cli {

std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

GridDump sample_grid(const CoefficientField& w, int nq, int np) {
  if (nq < 2 || np < 2) throw ContractError("dump_grid: resolution must be at least 2 per axis");
  const auto& ps = w.basis();
  GridDump g;
  g.nq = nq;
  g.np = np;
  g.q_min = ps.q().domain().lo;
  g.q_max = ps.q().domain().hi;
  g.p_min = ps.p().domain().lo;
  g.p_max = ps.p().domain().hi;
  g.time = w.time();
  std::vector<double> qs(static_cast<std::size_t>(nq));
  std::vector<double> pv(static_cast<std::size_t>(np));
  for (int i = 0; i < nq; ++i) qs[static_cast<std::size_t>(i)] = g.q_centre(i);
  for (int i = 0; i < np; ++i) pv[static_cast<std::size_t>(i)] = g.p_centre(i);
  const Eigen::MatrixXd vals = ps.evaluate_grid(w.coeffs(), qs, pv);
  g.values.resize(static_cast<std::size_t>(nq) * np);
  for (int ip = 0; ip < np; ++ip) {
    for (int iq = 0; iq < nq; ++iq) g.values[static_cast<std::size_t>(ip) * nq + iq] = vals(ip, iq);
  }
  return g;
}

void write_grid(std::ostream& out, const GridDump& g) {
  out << "WGRID 1\n";
  out << g.nq << ' ' << g.np << ' ' << exact(g.q_min) << ' ' << exact(g.q_max) << ' ' << exact(g.p_min)
      << ' ' << exact(g.p_max) << ' ' << exact(g.time) << '\n';
  for (int ip = 0; ip < g.np; ++ip) {
    for (int iq = 0; iq < g.nq; ++iq) {
      if (iq) out << ' ';
      out << exact(g.at(iq, ip));
    }
    out << '\n';
  }
}

void dump_grid(std::ostream& out, const CoefficientField& w, int nq, int np) {
  write_grid(out, sample_grid(w, nq, np));
}

namespace {

void expect_header(std::istream& in, const std::string& magic) {
  std::string word;
  int version = 0;
  if (!(in >> word >> version) || word != magic || version != 1) {
    throw ConfigError("expected a '" + magic + " 1' header");
  }
}

template <class T>
T read_value(std::istream& in, const char* what) {
  T v{};
  if (!(in >> v)) throw ConfigError(std::string("truncated file while reading ") + what);
  return v;
}

}  // namespace

GridDump read_grid(std::istream& in) {
  expect_header(in, "WGRID");
  GridDump g;
  g.nq = read_value<int>(in, "nq");
  g.np = read_value<int>(in, "np");
  if (g.nq < 1 || g.np < 1) throw ConfigError("grid dimensions must be positive");
  g.q_min = read_value<double>(in, "qmin");
  g.q_max = read_value<double>(in, "qmax");
  g.p_min = read_value<double>(in, "pmin");
  g.p_max = read_value<double>(in, "pmax");
  g.time = read_value<double>(in, "time");
  g.values.resize(static_cast<std::size_t>(g.nq) * g.np);
  for (auto& v : g.values) v = read_value<double>(in, "grid values");
  return g;
}

void write_checkpoint(std::ostream& out, const CoefficientField& w) {
  const auto& ps = w.basis();
  out << "WCOEF 1\n";
  out << ps.q().order() << ' ' << ps.q().j_coarse() << ' ' << ps.q().j_fine() << ' '
      << exact(ps.q().domain().lo) << ' ' << exact(ps.q().domain().hi) << ' ' << exact(ps.p().domain().lo)
      << ' ' << exact(ps.p().domain().hi) << ' ' << exact(w.time()) << ' ' << exact(w.hbar()) << '\n';
  for (int iq = 0; iq < ps.nq(); ++iq) {
    for (int ip = 0; ip < ps.np(); ++ip) {
      if (ip) out << ' ';
      out << exact(w.coeffs()[ps.flat(iq, ip)]);
    }
    out << '\n';
  }
}

CoefficientField read_checkpoint(std::istream& in) {
  expect_header(in, "WCOEF");
  const int order = read_value<int>(in, "order");
  const int jc = read_value<int>(in, "j_coarse");
  const int jf = read_value<int>(in, "j_fine");
  Interval bq{read_value<double>(in, "qmin"), 0.0};
  bq.hi = read_value<double>(in, "qmax");
  Interval bp{read_value<double>(in, "pmin"), 0.0};
  bp.hi = read_value<double>(in, "pmax");
  const double time = read_value<double>(in, "time");
  const double hbar = read_value<double>(in, "hbar");
  PhaseSpaceBasis ps = make_phase_space(order, jc, jf, bq, bp);
  Eigen::VectorXd c(ps.dim());
  for (long i = 0; i < ps.dim(); ++i) c[i] = read_value<double>(in, "coefficients");
  return CoefficientField(std::move(ps), std::move(c), time, hbar);
}

void write_marginal(std::ostream& out, const Marginal& m, char axis, int n, double time) {
  const Interval& d = m.basis.domain();
  out << "WMARG 1\n";
  out << axis << ' ' << n << ' ' << exact(d.lo) << ' ' << exact(d.hi) << ' ' << exact(time) << ' '
      << exact(m.integral) << '\n';
  for (int i = 0; i < n; ++i) {
    const double x = d.lo + (i + 0.5) * d.length() / n;
    out << exact(x) << ' ' << exact(m.value(x)) << '\n';
  }
}

}  // namespace wigner::cli
