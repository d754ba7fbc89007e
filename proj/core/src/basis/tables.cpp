#include "wigner/basis/tables.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "wigner/error.hpp"

namespace wigner {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// S_{k,l} = sum_{a,b : 2k + b - a = l} h_a h_b on offsets |k|, |l| <= m.
Eigen::MatrixXd autocorrelation_transfer(const FilterCoefficients& f, int m) {
  const int n = 2 * m + 1;
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (int k = -m; k <= m; ++k) {
    for (int a = 0; a < f.order; ++a) {
      for (int b = 0; b < f.order; ++b) {
        const int l = 2 * k + b - a;
        if (l < -m || l > m) continue;
        s(k + m, l + m) += f.taps[a] * f.taps[b];
      }
    }
  }
  return s;
}

}  // namespace

ScalingTable::ScalingTable(int order, int resolution, std::vector<double> phi,
                           std::vector<double> psi)
    : order_(order),
      resolution_(resolution),
      step_(std::ldexp(1.0, -resolution)),
      phi_(std::move(phi)),
      psi_(std::move(psi)) {}

double ScalingTable::lookup(const std::vector<double>& v, double x) const {
  if (v.empty()) return 0.0;
  const double t = std::ldexp(x, resolution_);
  const double last = static_cast<double>(v.size() - 1);
  if (t < 0.0 || t > last) return 0.0;
  const double base = std::floor(t);
  const auto i = static_cast<std::size_t>(base);
  const double frac = t - base;
  if (frac == 0.0 || i + 1 >= v.size()) return v[i];
  return (1.0 - frac) * v[i] + frac * v[i + 1];
}

ScalingTable scaling_values(const FilterCoefficients& filter, int resolution) {
  if (resolution < 0) throw ContractError("scaling_values: resolution must be >= 0");
  const int len = filter.order;
  const int interior = len - 1;  // integer points 0..len-2; phi(len-1) = 0

  // (A - I) v = 0 together with sum v = 1, A_{k,l} = sqrt2 h_{2k-l}.
  Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(interior + 1, interior);
  for (int k = 0; k < interior; ++k) {
    for (int l = 0; l < interior; ++l) {
      const int idx = 2 * k - l;
      if (idx >= 0 && idx < len) sys(k, l) = std::numbers::sqrt2 * filter.taps[idx];
    }
    sys(k, k) -= 1.0;
  }
  sys.row(interior).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(interior + 1);
  rhs(interior) = 1.0;

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(sys);
  qr.setThreshold(1e-12);
  if (qr.rank() < interior) {
    throw NumericalError("scaling_values: refinement matrix eigenvalue 1 is not simple (rank " +
                         std::to_string(qr.rank()) + " of " + std::to_string(interior) + ")");
  }
  const Eigen::VectorXd ints = qr.solve(rhs);
  const double residual = (sys * ints - rhs).norm();
  if (residual > 1e-10) {
    throw NumericalError("scaling_values: integer-point eigenvector residual " +
                         std::to_string(residual), {residual});
  }

  const long scale = 1L << resolution;
  const long count = static_cast<long>(len - 1) * scale + 1;
  std::vector<double> phi(static_cast<std::size_t>(count), 0.0);
  for (int k = 0; k < interior; ++k) phi[static_cast<std::size_t>(k * scale)] = ints(k);

  auto at = [&](long idx) { return (idx < 0 || idx >= count) ? 0.0 : phi[static_cast<std::size_t>(idx)]; };
  for (int level = 1; level <= resolution; ++level) {
    const long stride = 1L << (resolution - level);
    for (long i = stride; i < count; i += 2 * stride) {
      double acc = 0.0;
      for (int m = 0; m < len; ++m) acc += filter.taps[m] * at(2 * i - m * scale);
      phi[static_cast<std::size_t>(i)] = std::numbers::sqrt2 * acc;
    }
  }

  std::vector<double> psi(static_cast<std::size_t>(count), 0.0);
  for (long i = 0; i < count; ++i) {
    double acc = 0.0;
    for (int m = 0; m < len; ++m) acc += filter.highpass(m) * at(2 * i - m * scale);
    psi[static_cast<std::size_t>(i)] = std::numbers::sqrt2 * acc;
  }
  return ScalingTable(len, resolution, std::move(phi), std::move(psi));
}

ConnectionTable connection_coefficients(const FilterCoefficients& filter, int d1, int d2) {
  if (d1 < 0 || d2 < 0) throw ContractError("connection_coefficients: negative derivative order");
  const int d = d1 + d2;
  if (d > filter.order / 2) {
    throw ConfigError("connection coefficients of total derivative order " + std::to_string(d) +
                      " need a filter of order >= " + std::to_string(2 * d) + " (got " +
                      std::to_string(filter.order) + "); use a higher filter order");
  }
  const int m = filter.order - 1;
  const int n = 2 * m + 1;
  const Eigen::MatrixXd s = autocorrelation_transfer(filter, m);

  // Rows: eigen-relation (n), parity (n), normalisation (1).
  Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(2 * n + 1, n);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * n + 1);
  sys.topRows(n) = std::ldexp(1.0, d) * s - Eigen::MatrixXd::Identity(n, n);
  const double parity = (d % 2 == 0) ? 1.0 : -1.0;
  for (int k = -m; k <= m; ++k) {
    sys(n + k + m, k + m) += 1.0;
    sys(n + k + m, -k + m) -= parity;
  }
  for (int k = -m; k <= m; ++k) sys(2 * n, k + m) = std::pow(static_cast<double>(k), d);
  rhs(2 * n) = factorial(d);
  const double norm_scale = std::pow(static_cast<double>(m), d);
  sys.row(2 * n) /= norm_scale;
  rhs(2 * n) /= norm_scale;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys);
  svd.setThreshold(1e-14);
  if (svd.rank() < n) {
    throw ConfigError("connection coefficients of total derivative order " + std::to_string(d) +
                      " are not determined for filter order " + std::to_string(filter.order) +
                      " (refinement system rank " + std::to_string(svd.rank()) + " of " +
                      std::to_string(n) + "); use a higher filter order");
  }
  Eigen::VectorXd base = sys.colPivHouseholderQr().solve(rhs);
  const double residual = (sys * base - rhs).norm();
  if (residual > 1e-9) {
    throw NumericalError("connection_coefficients: inconsistent refinement system, residual " +
                         std::to_string(residual), {residual});
  }

  ConnectionTable table{d1, d2, m, std::vector<double>(static_cast<std::size_t>(n))};
  const double sign = (d1 % 2 == 0) ? 1.0 : -1.0;
  for (int k = 0; k < n; ++k) table.values[static_cast<std::size_t>(k)] = sign * base(k);
  return table;
}

MomentTable::MomentTable(int power, int max_offset, std::vector<std::vector<double>> base)
    : power_(power), max_offset_(max_offset), base_(std::move(base)) {}

double MomentTable::base(int i, int delta) const {
  if (delta < -max_offset_ || delta > max_offset_) return 0.0;
  return base_[static_cast<std::size_t>(i)][static_cast<std::size_t>(delta + max_offset_)];
}

double MomentTable::operator()(long j, long k) const {
  const long delta = k - j;
  if (delta < -max_offset_ || delta > max_offset_) return 0.0;
  // ∫ (z + j)^m phi(z) phi(z - delta) dz
  double acc = 0.0;
  const auto jd = static_cast<double>(j);
  for (int i = 0; i <= power_; ++i) {
    acc += binomial(power_, i) * std::pow(jd, power_ - i) * base(i, static_cast<int>(delta));
  }
  return acc;
}

MomentTable overlap_moments(const FilterCoefficients& filter, int power) {
  if (power < 0) throw ContractError("overlap_moments: power must be >= 0");
  const int m = filter.order - 1;
  const int n = 2 * m + 1;
  const Eigen::MatrixXd s = autocorrelation_transfer(filter, m);

  std::vector<std::vector<double>> base(static_cast<std::size_t>(power + 1),
                                        std::vector<double>(static_cast<std::size_t>(n), 0.0));
  base[0][static_cast<std::size_t>(m)] = 1.0;

  for (int i = 1; i <= power; ++i) {
    // T^i = 2^{-i} S T^i + 2^{-i} sum_{r<i} C(i,r) sum_{a,b} h_a h_b a^{i-r} T^r_{2delta+b-a}
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (int delta = -m; delta <= m; ++delta) {
      double acc = 0.0;
      for (int a = 0; a < filter.order; ++a) {
        for (int b = 0; b < filter.order; ++b) {
          const int l = 2 * delta + b - a;
          if (l < -m || l > m) continue;
          const double hh = filter.taps[a] * filter.taps[b];
          for (int r = 0; r < i; ++r) {
            acc += hh * binomial(i, r) * std::pow(static_cast<double>(a), i - r) *
                   base[r][static_cast<std::size_t>(l + m)];
          }
        }
      }
      rhs(delta + m) = std::ldexp(acc, -i);
    }
    const Eigen::MatrixXd sys = Eigen::MatrixXd::Identity(n, n) - std::ldexp(1.0, -i) * s;
    const Eigen::VectorXd sol = sys.partialPivLu().solve(rhs);
    for (int k = 0; k < n; ++k) base[i][static_cast<std::size_t>(k)] = sol(k);
  }
  return MomentTable(power, m, std::move(base));
}

std::vector<long double> scaling_moments(const FilterCoefficients& filter, int count) {
  std::vector<long double> moments(static_cast<std::size_t>(std::max(count, 1)), 0.0L);
  moments[0] = 1.0L;
  std::vector<long double> s(static_cast<std::size_t>(count + 1), 0.0L);
  for (int j = 0; j <= count; ++j) {
    for (int k = 0; k < filter.order; ++k) {
      s[static_cast<std::size_t>(j)] += static_cast<long double>(filter.taps[k]) *
                                        std::pow(static_cast<long double>(k), j);
    }
  }
  const long double sqrt2 = std::sqrt(2.0L);
  for (int n = 1; n < count; ++n) {
    long double acc = 0.0L;
    for (int i = 0; i < n; ++i) {
      acc += static_cast<long double>(binomial(n, i)) * s[static_cast<std::size_t>(n - i)] *
             moments[static_cast<std::size_t>(i)];
    }
    const long double scale = std::ldexp(1.0L, -n);
    moments[static_cast<std::size_t>(n)] = sqrt2 * scale / 2.0L * acc / (1.0L - scale);
  }
  return moments;
}

ScalingQuadrature scaling_quadrature(const FilterCoefficients& filter, int node_count) {
  if (node_count < 1) throw ContractError("scaling_quadrature: need at least one node");
  const long double half = (filter.order - 1) / 2.0L;
  const auto raw = scaling_moments(filter, node_count);

  // Centred, scaled monomial moments mu_n = ∫ ((y - c)/c)^n phi(y) dy.
  std::vector<long double> mu(static_cast<std::size_t>(node_count), 0.0L);
  for (int n = 0; n < node_count; ++n) {
    long double acc = 0.0L;
    for (int i = 0; i <= n; ++i) {
      acc += static_cast<long double>(binomial(n, i)) * std::pow(-half, n - i) *
             raw[static_cast<std::size_t>(i)];
    }
    mu[static_cast<std::size_t>(n)] = acc / std::pow(half, n);
  }

  // Chebyshev moments via the three-term recurrence on monomial coefficients.
  std::vector<std::vector<long double>> cheb(static_cast<std::size_t>(node_count));
  cheb[0] = {1.0L};
  if (node_count > 1) cheb[1] = {0.0L, 1.0L};
  for (int n = 2; n < node_count; ++n) {
    auto& t = cheb[static_cast<std::size_t>(n)];
    t.assign(static_cast<std::size_t>(n + 1), 0.0L);
    const auto& t1 = cheb[static_cast<std::size_t>(n - 1)];
    const auto& t2 = cheb[static_cast<std::size_t>(n - 2)];
    for (std::size_t i = 0; i < t1.size(); ++i) t[i + 1] += 2.0L * t1[i];
    for (std::size_t i = 0; i < t2.size(); ++i) t[i] -= t2[i];
  }

  Eigen::VectorXd rhs(node_count);
  for (int n = 0; n < node_count; ++n) {
    long double acc = 0.0L;
    const auto& t = cheb[static_cast<std::size_t>(n)];
    for (std::size_t i = 0; i < t.size(); ++i) acc += t[i] * mu[i];
    rhs(n) = static_cast<double>(acc);
  }

  ScalingQuadrature rule;
  Eigen::VectorXd unit(node_count);
  for (int i = 0; i < node_count; ++i) {
    unit(i) = node_count == 1
                  ? 0.0
                  : -std::cos(std::numbers::pi * (i + 0.5) / node_count);
  }
  Eigen::MatrixXd vander(node_count, node_count);
  for (int n = 0; n < node_count; ++n) {
    for (int i = 0; i < node_count; ++i) vander(n, i) = std::cos(n * std::acos(unit(i)));
  }
  const Eigen::VectorXd w = vander.colPivHouseholderQr().solve(rhs);
  for (int i = 0; i < node_count; ++i) {
    rule.nodes.push_back(static_cast<double>(half) * (1.0 + unit(i)));
    rule.weights.push_back(w(i));
  }
  return rule;
}

std::shared_ptr<const BasisTables> basis_tables(int order, int max_power) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const BasisTables>> cache;

  const std::lock_guard lock(mutex);
  const auto key = std::make_pair(order, max_power);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  auto tables = std::make_shared<BasisTables>();
  tables->filter = daubechies_filter(order);
  tables->values = scaling_values(tables->filter, kDefaultTableResolution);
  for (int d = 0; d <= order / 2; ++d) {
    try {
      tables->derivatives.push_back(connection_coefficients(tables->filter, 0, d));
    } catch (const ConfigError&) {
      break;
    }
  }
  tables->moments = overlap_moments(tables->filter, max_power);
  tables->quadrature = scaling_quadrature(tables->filter, order + 6);
  cache.emplace(key, tables);
  return tables;
}

}  // namespace wigner
