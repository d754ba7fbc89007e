#pragma once

// Reference values computed without the library: closed forms, textbook
// recursions and brute-force quadrature. Tests compare library output to these.

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

inline std::vector<double> haar_taps() { return {1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2}; }

inline std::vector<double> d4_taps() {
  const double s3 = std::sqrt(3.0);
  const double n = 4.0 * std::numbers::sqrt2;
  return {(1.0 + s3) / n, (3.0 + s3) / n, (3.0 - s3) / n, (1.0 - s3) / n};
}

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// int x^n phi(x) dx from the two-scale relation:
//   (1 - 2^-n) mu_n = 2^-n / sqrt2 * sum_{i<n} C(n,i) mu_i sum_k h_k k^(n-i)
inline std::vector<double> scaling_moments(const std::vector<double>& h, int count) {
  std::vector<double> mu(static_cast<std::size_t>(count), 0.0);
  mu[0] = 1.0;
  for (int n = 1; n < count; ++n) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      double hk = 0.0;
      for (std::size_t k = 0; k < h.size(); ++k) hk += h[k] * std::pow(static_cast<double>(k), n - i);
      acc += binomial(n, i) * mu[static_cast<std::size_t>(i)] * hk;
    }
    mu[static_cast<std::size_t>(n)] = std::pow(2.0, -n) / std::numbers::sqrt2 * acc / (1.0 - std::pow(2.0, -n));
  }
  return mu;
}

// a(t) = int phi(x) phi(x - t) dx at dyadic t = m / 2^s, from a(k) = delta_k and
// a(t) = sum_k c_k a(2t - k) with c_k = sum_n h_n h_{n+k}.
class Autocorrelation {
 public:
  explicit Autocorrelation(const std::vector<double>& h) : support_(static_cast<int>(h.size()) - 1) {
    const int n = static_cast<int>(h.size());
    c_.assign(static_cast<std::size_t>(2 * n - 1), 0.0);
    for (int k = -(n - 1); k <= n - 1; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        const int j = i + k;
        if (j >= 0 && j < n) s += h[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(j)];
      }
      c_[static_cast<std::size_t>(k + n - 1)] = s;
    }
  }

  double at(std::int64_t m, int s) {
    while (s > 0 && m % 2 == 0) {
      m /= 2;
      --s;
    }
    if (s == 0) return m == 0 ? 1.0 : 0.0;
    if (std::abs(static_cast<double>(m)) >= static_cast<double>(support_) * std::ldexp(1.0, s)) return 0.0;
    const auto key = std::make_pair(m, s);
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
    double v = 0.0;
    for (int k = -support_; k <= support_; ++k) {
      v += c_[static_cast<std::size_t>(k + support_)] * at(m - static_cast<std::int64_t>(k) * (std::int64_t{1} << (s - 1)), s - 1);
    }
    memo_[key] = v;
    return v;
  }

 private:
  int support_;
  std::vector<double> c_;
  std::map<std::pair<std::int64_t, int>, double> memo_;
};

// Finite-difference weights for the d-th derivative at 0 on the given offsets.
inline std::vector<double> fd_weights(const std::vector<double>& x, int d) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> c(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(d + 1), 0.0));
  double c1 = 1.0;
  double c4 = x[0];
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, d);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[static_cast<std::size_t>(i)];
    for (int j = 0; j < i; ++j) {
      const double c3 = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)];
  return w;
}

// int phi(x) phi^(d)(x - k) dx = (-1)^d a^(d)(k), by central differences of the
// autocorrelation with step 2^-s. Meaningful where a is d times differentiable.
inline double connection(Autocorrelation& a, int d, int k, int s = 12) {
  const int half = (d + 1) / 2 + 4;
  std::vector<double> x;
  for (int i = -half; i <= half; ++i) x.push_back(i);
  const auto w = fd_weights(x, d);
  double v = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    v += w[i] * a.at(static_cast<std::int64_t>(k) * (std::int64_t{1} << s) + static_cast<std::int64_t>(x[i]), s);
  }
  v *= std::ldexp(1.0, s * d);
  return d % 2 ? -v : v;
}

inline double laguerre(int n, double x) {
  if (n == 0) return 1.0;
  double l0 = 1.0;
  double l1 = 1.0 - x;
  for (int k = 1; k < n; ++k) {
    const double l2 = ((2.0 * k + 1.0 - x) * l1 - k * l0) / (k + 1.0);
    l0 = l1;
    l1 = l2;
  }
  return l1;
}

inline double gaussian(double q, double p, double q0, double p0, double sq, double sp) {
  const double zq = (q - q0) / sq;
  const double zp = (p - p0) / sp;
  return std::exp(-0.5 * (zq * zq + zp * zp)) / (2.0 * std::numbers::pi * sq * sp);
}

// Wigner function of the n-th oscillator eigenstate, m = hbar = omega = 1.
inline double harmonic_wigner(int n, double q, double p) {
  const double r2 = q * q + p * p;
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  return sign / std::numbers::pi * std::exp(-r2) * laguerre(n, 2.0 * r2);
}

// int |W_1| - int W_1 for the first excited oscillator state.
inline double first_excited_negativity() { return 4.0 * std::exp(-0.5) - 2.0; }

}  // namespace oracle
