#include "wigner/basis/wavelet_basis.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "wigner/error.hpp"

namespace wigner {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

long wrap(long i, long n) {
  const long r = i % n;
  return r < 0 ? r + n : r;
}

// Representative of lattice position `k` (mod n) whose pair-support centre
// `k + shift` lies in [0, n). Fixes the coordinate seam of the torus.
long unwrap_position(long k, double shift, long n) {
  const double centre = static_cast<double>(k) + shift;
  const long turns = static_cast<long>(std::floor(centre / static_cast<double>(n)));
  return k - turns * n;
}

}  // namespace

WaveletBasis::WaveletBasis(int order, int j_coarse, int j_fine, Interval domain, int max_power)
    : WaveletBasis(basis_tables(order, max_power), j_coarse, j_fine, domain) {}

WaveletBasis::WaveletBasis(std::shared_ptr<const BasisTables> tables, int j_coarse, int j_fine,
                           Interval domain)
    : tables_(std::move(tables)), j_coarse_(j_coarse), j_fine_(j_fine), domain_(domain) {
  if (j_coarse_ < 0 || j_coarse_ > j_fine_) {
    throw ConfigError("wavelet basis needs 0 <= j_coarse <= j_fine (got j_coarse=" +
                      std::to_string(j_coarse_) + ", j_fine=" + std::to_string(j_fine_) + ")");
  }
  if (j_fine_ > 20) throw ConfigError("wavelet basis: j_fine above 20 is not supported");
  if (!(domain_.hi > domain_.lo)) throw ConfigError("wavelet basis: empty domain interval");
}

WaveletBasis WaveletBasis::with_fine_level(int j_fine) const {
  return WaveletBasis(tables_, std::min(j_coarse_, j_fine), j_fine, domain_);
}

std::vector<BasisIndex> WaveletBasis::index_set() const {
  std::vector<BasisIndex> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (int k = 0; k < (1 << j_coarse_); ++k) out.push_back({j_coarse_, k, true});
  for (int j = j_coarse_; j < j_fine_; ++j) {
    for (int k = 0; k < (1 << j); ++k) out.push_back({j, k, false});
  }
  return out;
}

int WaveletBasis::level_of(int i) const {
  if (i < (1 << j_coarse_)) return j_coarse_ - 1;
  return std::bit_width(static_cast<unsigned>(i)) - 1;
}

Eigen::VectorXd WaveletBasis::analysis_step(const Eigen::VectorXd& a,
                                            Eigen::VectorXd* detail) const {
  const auto& f = tables_->filter;
  const long n = a.size();
  const long half = n / 2;
  Eigen::VectorXd low = Eigen::VectorXd::Zero(half);
  if (detail) *detail = Eigen::VectorXd::Zero(half);
  for (long k = 0; k < half; ++k) {
    double lo = 0.0;
    double hi = 0.0;
    for (int m = 0; m < f.order; ++m) {
      const double v = a(wrap(2 * k + m, n));
      lo += f.taps[m] * v;
      hi += f.highpass(m) * v;
    }
    low(k) = lo;
    if (detail) (*detail)(k) = hi;
  }
  return low;
}

Eigen::VectorXd WaveletBasis::synthesis_step(const Eigen::VectorXd& a,
                                             const Eigen::VectorXd* detail) const {
  const auto& f = tables_->filter;
  const long half = a.size();
  const long n = 2 * half;
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (long k = 0; k < half; ++k) {
    for (int m = 0; m < f.order; ++m) {
      double v = f.taps[m] * a(k);
      if (detail) v += f.highpass(m) * (*detail)(k);
      out(wrap(2 * k + m, n)) += v;
    }
  }
  return out;
}

Eigen::VectorXd WaveletBasis::forward(const Eigen::VectorXd& single) const {
  if (single.size() != size()) throw ContractError("forward: coefficient length mismatch");
  Eigen::VectorXd out(size());
  Eigen::VectorXd a = single;
  for (int j = j_fine_ - 1; j >= j_coarse_; --j) {
    Eigen::VectorXd d;
    a = analysis_step(a, &d);
    out.segment(1 << j, 1 << j) = d;
  }
  out.head(1 << j_coarse_) = a;
  return out;
}

Eigen::VectorXd WaveletBasis::inverse(const Eigen::VectorXd& multi) const {
  if (multi.size() != size()) throw ContractError("inverse: coefficient length mismatch");
  Eigen::VectorXd a = multi.head(1 << j_coarse_);
  for (int j = j_coarse_; j < j_fine_; ++j) {
    const Eigen::VectorXd d = multi.segment(1 << j, 1 << j);
    a = synthesis_step(a, &d);
  }
  return a;
}

Eigen::VectorXd WaveletBasis::refine_once(const Eigen::VectorXd& single) const {
  if (single.size() != size()) throw ContractError("refine_once: coefficient length mismatch");
  return synthesis_step(single, nullptr);
}

double WaveletBasis::scaling_function(int k, double x) const {
  const long n = size();
  const double h = cell();
  double y = std::fmod((x - domain_.lo) / h, static_cast<double>(n));
  if (y < 0.0) y += static_cast<double>(n);
  double t = std::fmod(y - k, static_cast<double>(n));
  if (t < 0.0) t += static_cast<double>(n);
  const double support = tables_->filter.support_length();
  double acc = 0.0;
  for (; t <= support; t += static_cast<double>(n)) acc += tables_->values.phi_at(t);
  return acc / std::sqrt(h);
}

Eigen::MatrixXd WaveletBasis::evaluation_matrix(std::span<const double> xs) const {
  const long n = size();
  const double h = cell();
  const double inv_sqrt_h = 1.0 / std::sqrt(h);
  const int support = tables_->filter.support_length();
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(static_cast<long>(xs.size()), n);
  for (std::size_t r = 0; r < xs.size(); ++r) {
    double y = std::fmod((xs[r] - domain_.lo) / h, static_cast<double>(n));
    if (y < 0.0) y += static_cast<double>(n);
    const double base = std::floor(y);
    const double frac = y - base;
    for (int s = 0; s < support; ++s) {
      const long k = wrap(static_cast<long>(base) - s, n);
      e(static_cast<long>(r), k) += inv_sqrt_h * tables_->values.phi_at(frac + s);
    }
  }
  return e;
}

double WaveletBasis::evaluate_single(const Eigen::VectorXd& single, double x) const {
  if (single.size() != size()) throw ContractError("evaluate_single: coefficient length mismatch");
  const double xs[1] = {x};
  return (evaluation_matrix(xs) * single)(0);
}

std::vector<double> WaveletBasis::sample_points(int oversample) const {
  if (oversample < 0) throw ContractError("sample_points: oversample must be >= 0");
  const long n = static_cast<long>(size()) << oversample;
  const double h = domain_.length() / static_cast<double>(n);
  const double len = domain_.length();
  const auto& nodes = tables_->quadrature.nodes;
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(n) * nodes.size());
  for (long k = 0; k < n; ++k) {
    for (const double y : nodes) {
      double x = domain_.lo + h * (static_cast<double>(k) + y);
      if (x >= domain_.hi) x -= len * std::floor((x - domain_.lo) / len);
      xs.push_back(x);
    }
  }
  return xs;
}

SparseMatrix WaveletBasis::projection_matrix(int oversample) const {
  if (oversample < 0) throw ContractError("projection_matrix: oversample must be >= 0");
  const long n = static_cast<long>(size()) << oversample;
  const double h = domain_.length() / static_cast<double>(n);
  const auto& weights = tables_->quadrature.weights;
  const long nodes = static_cast<long>(weights.size());

  std::vector<Eigen::Triplet<double>> trips;
  for (long k = 0; k < n; ++k) {
    for (long i = 0; i < nodes; ++i) {
      trips.emplace_back(k, k * nodes + i, std::sqrt(h) * weights[static_cast<std::size_t>(i)]);
    }
  }
  SparseMatrix p(n, n * nodes);
  p.setFromTriplets(trips.begin(), trips.end());

  const auto& f = tables_->filter;
  for (long m = n; m > size(); m /= 2) {
    std::vector<Eigen::Triplet<double>> low;
    for (long k = 0; k < m / 2; ++k) {
      for (int t = 0; t < f.order; ++t) low.emplace_back(k, wrap(2 * k + t, m), f.taps[t]);
    }
    SparseMatrix a(m / 2, m);
    a.setFromTriplets(low.begin(), low.end());
    p = (a * p).pruned();
  }
  return p;
}

Eigen::VectorXd WaveletBasis::project(const std::function<double(double)>& f,
                                      int oversample) const {
  const auto xs = sample_points(oversample);
  Eigen::VectorXd values(static_cast<long>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) values(static_cast<long>(i)) = f(xs[i]);
  return projection_matrix(oversample) * values;
}

Eigen::VectorXd WaveletBasis::integration_weights() const {
  return Eigen::VectorXd::Constant(size(), std::sqrt(cell()));
}

Eigen::VectorXd WaveletBasis::coordinate_moments(int m) const {
  if (m < 0) throw ContractError("coordinate_moments: negative power");
  const long n = size();
  const double h = cell();
  const auto raw = scaling_moments(tables_->filter, m + 1);
  const double shift = 0.5 * tables_->filter.support_length();
  Eigen::VectorXd out(n);
  for (long k = 0; k < n; ++k) {
    const double x0 = domain_.lo + h * static_cast<double>(unwrap_position(k, shift, n));
    double acc = 0.0;
    for (int i = 0; i <= m; ++i) {
      acc += binomial(m, i) * std::pow(x0, m - i) * std::pow(h, i) *
             static_cast<double>(raw[static_cast<std::size_t>(i)]);
    }
    out(k) = std::sqrt(h) * acc;
  }
  return out;
}

SparseMatrix WaveletBasis::derivative_matrix(int d) const {
  if (d < 0) throw ContractError("derivative_matrix: negative order");
  if (d > tables_->max_derivative()) {
    throw ConfigError("derivative of order " + std::to_string(d) + " needs a filter of order >= " +
                      std::to_string(2 * d) + " (basis uses order " +
                      std::to_string(tables_->filter.order) + "); use a higher filter order");
  }
  const long n = size();
  const auto& table = tables_->derivatives[static_cast<std::size_t>(d)];
  const double scale = std::pow(cell(), -d);
  std::vector<Eigen::Triplet<double>> trips;
  for (long j = 0; j < n; ++j) {
    for (int delta = -table.max_offset; delta <= table.max_offset; ++delta) {
      const double v = table(delta);
      if (v == 0.0) continue;
      trips.emplace_back(j, wrap(j + delta, n), scale * v);
    }
  }
  SparseMatrix out(n, n);
  out.setFromTriplets(trips.begin(), trips.end());
  out.prune(0.0);
  return out;
}

SparseMatrix WaveletBasis::moment_matrix(int m) const {
  std::vector<double> coeffs(static_cast<std::size_t>(m + 1), 0.0);
  coeffs.back() = 1.0;
  return multiplication_matrix(coeffs);
}

SparseMatrix WaveletBasis::multiplication_matrix(std::span<const double> coeffs) const {
  const int degree = static_cast<int>(coeffs.size()) - 1;
  const auto& moments = tables_->moments;
  if (degree > moments.power()) {
    throw ConfigError("polynomial multiplication of degree " + std::to_string(degree) +
                      " exceeds the configured maximum moment power " +
                      std::to_string(moments.power()));
  }
  const long n = size();
  const double h = cell();
  const int reach = moments.max_offset();
  const double support = tables_->filter.support_length();

  std::vector<Eigen::Triplet<double>> trips;
  for (long j = 0; j < n; ++j) {
    for (int delta = -reach; delta <= reach; ++delta) {
      // Pair phi(y - x) phi(y - x - delta), placed so its centre is inside [0, n).
      const long x = unwrap_position(j, 0.5 * (delta + support), n);
      const double origin = domain_.lo + h * static_cast<double>(x);
      double value = 0.0;
      for (int m = 0; m <= degree; ++m) {
        const double c = coeffs[static_cast<std::size_t>(m)];
        if (c == 0.0) continue;
        double acc = 0.0;
        for (int i = 0; i <= m; ++i) {
          const double t = moments.base(i, delta);
          if (t == 0.0) continue;
          acc += binomial(m, i) * std::pow(origin, m - i) * std::pow(h, i) * t;
        }
        value += c * acc;
      }
      if (value != 0.0) trips.emplace_back(j, wrap(j + delta, n), value);
    }
  }
  SparseMatrix out(n, n);
  out.setFromTriplets(trips.begin(), trips.end());
  out.prune(0.0);
  return out;
}

double evaluate_expansion(const WaveletBasis& basis, std::span<const double> coeffs, double x) {
  if (static_cast<long>(coeffs.size()) != basis.size()) {
    throw ContractError("evaluate_expansion: " + std::to_string(coeffs.size()) +
                        " coefficients for a basis of size " + std::to_string(basis.size()));
  }
  const Eigen::Map<const Eigen::VectorXd> multi(coeffs.data(), basis.size());
  return basis.evaluate_single(basis.inverse(multi), x);
}

MomentTable moment_coefficients(const WaveletBasis& basis, int m) {
  if (m < 0) throw ContractError("moment_coefficients: power must be >= 0");
  const int limit = basis.tables().max_power();
  if (m > limit) {
    throw ConfigError("moment power " + std::to_string(m) + " exceeds the configured maximum " +
                      std::to_string(limit));
  }
  return overlap_moments(basis.filter(), m);
}

}  // namespace wigner
