#include "wigner/model/potential.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "wigner/error.hpp"

namespace wigner {

namespace {

void trim_trailing_zeros(std::vector<double>& c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
}

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> differentiate(const std::vector<double>& c, int order) {
  if (order == 0) return c;
  if (static_cast<int>(c.size()) <= order) return {};
  std::vector<double> out(c.size() - static_cast<std::size_t>(order));
  for (std::size_t k = 0; k < out.size(); ++k) {
    double factor = 1.0;
    for (int i = 1; i <= order; ++i) factor *= static_cast<double>(k) + i;
    out[k] = c[k + static_cast<std::size_t>(order)] * factor;
  }
  return out;
}

std::vector<double> add(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class PotentialParser {
 public:
  explicit PotentialParser(std::string_view text) : text_(text) {}

  PolynomialPotential parse() {
    std::vector<double> q;
    std::vector<double> p;
    skip_space();
    if (pos_ == text_.size()) fail("empty polynomial");
    bool first = true;
    while (true) {
      skip_space();
      if (pos_ == text_.size()) break;
      double sign = 1.0;
      if (text_[pos_] == '+' || text_[pos_] == '-') {
        sign = text_[pos_] == '-' ? -1.0 : 1.0;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-' between terms");
      }
      first = false;
      skip_space();
      const auto [coef, var, power] = term();
      auto& table = var == 'p' ? p : q;
      if (table.size() <= static_cast<std::size_t>(power)) table.resize(power + 1, 0.0);
      table[static_cast<std::size_t>(power)] += sign * coef;
    }
    if (!p.empty()) {
      q = add(q, {p[0]});
      p[0] = 0.0;
    }
    return PolynomialPotential(std::move(q), std::move(p));
  }

 private:
  struct Term {
    double coef;
    char var;
    int power;
  };

  Term term() {
    Term t{1.0, 'q', 0};
    bool have_number = false;
    if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                                text_[pos_] == '.')) {
      t.coef = number();
      have_number = true;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        skip_space();
        if (pos_ == text_.size() || !is_variable(text_[pos_])) fail("expected variable after '*'");
      }
    }
    if (pos_ < text_.size() && is_variable(text_[pos_])) {
      t.var = text_[pos_] == 'p' ? 'p' : 'q';
      ++pos_;
      t.power = 1;
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '^') {
        ++pos_;
        skip_space();
        t.power = integer();
      }
      skip_space();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        skip_space();
        if (have_number) fail("only one numeric factor per term is supported");
        t.coef = number();
      }
    } else if (!have_number) {
      fail("expected a number or a variable (q, x, p)");
    }
    return t;
  }

  static bool is_variable(char c) { return c == 'q' || c == 'x' || c == 'p'; }

  double number() {
    double v = 0.0;
    const char* begin = text_.data() + pos_;
    const auto res = std::from_chars(begin, text_.data() + text_.size(), v);
    if (res.ec != std::errc()) fail("malformed number");
    pos_ += static_cast<std::size_t>(res.ptr - begin);
    if (!std::isfinite(v)) fail("non-finite coefficient");
    return v;
  }

  int integer() {
    int v = 0;
    const char* begin = text_.data() + pos_;
    const auto res = std::from_chars(begin, text_.data() + text_.size(), v);
    if (res.ec != std::errc() || v < 0) fail("exponent must be a non-negative integer");
    pos_ += static_cast<std::size_t>(res.ptr - begin);
    if (v > 64) fail("exponent above 64 is not supported");
    return v;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("polynomial \"" + std::string(text_) + "\": " + what + " at position " +
                      std::to_string(pos_ + 1));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

PolynomialPotential::PolynomialPotential(std::vector<double> coeffs_q, std::vector<double> coeffs_p)
    : q_(std::move(coeffs_q)), p_(std::move(coeffs_p)) {
  if (!p_.empty() && p_[0] != 0.0) {
    if (q_.empty()) q_.push_back(0.0);
    q_[0] += p_[0];
    p_[0] = 0.0;
  }
  trim_trailing_zeros(q_);
  trim_trailing_zeros(p_);
}

int PolynomialPotential::degree() const { return std::max(degree_q(), degree_p()); }

double PolynomialPotential::eval_q(double q) const { return horner(q_, q); }
double PolynomialPotential::eval_p(double p) const { return horner(p_, p); }

PolynomialPotential PolynomialPotential::p_part_as_q() const { return PolynomialPotential(p_); }

PolynomialPotential operator+(const PolynomialPotential& a, const PolynomialPotential& b) {
  return PolynomialPotential(add(a.q_, b.q_), add(a.p_, b.p_));
}

PolynomialPotential operator*(double s, const PolynomialPotential& u) {
  auto q = u.q_;
  auto p = u.p_;
  for (auto& c : q) c *= s;
  for (auto& c : p) c *= s;
  return PolynomialPotential(std::move(q), std::move(p));
}

std::string PolynomialPotential::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  auto emit = [&](double c, char var, std::size_t k) {
    if (c == 0.0) return;
    if (!first) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    first = false;
    out << format_number(std::abs(c));
    if (k >= 1) out << "*" << var;
    if (k >= 2) out << "^" << k;
  };
  for (std::size_t k = 0; k < q_.size(); ++k) emit(q_[k], 'q', k);
  for (std::size_t k = 1; k < p_.size(); ++k) emit(p_[k], 'p', k);
  return out.str();
}

PolynomialPotential derivative(const PolynomialPotential& u, int order) {
  if (order < 0) throw ContractError("derivative: order must be >= 0");
  return PolynomialPotential(differentiate(u.coeffs_q(), order), differentiate(u.coeffs_p(), order));
}

int moyal_truncation(const PolynomialPotential& u) {
  const int d = u.degree();
  if (d < 1) return -1;
  return (d - 1) / 2;
}

PolynomialPotential fock_potential(double u0, const PolynomialPotential& g, int n) {
  if (n < 0) throw ContractError("fock_potential: Fock level must be >= 0, got " + std::to_string(n));
  return (u0 * static_cast<double>(n)) * g;
}

PolynomialPotential parse_potential(std::string_view text) { return PotentialParser(text).parse(); }

std::vector<std::string> ModelParams::problems() const {
  std::vector<std::string> out;
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(mass) || mass <= 0.0) out.push_back("mass must be positive (got " + format_number(mass) + ")");
  if (!finite(hbar) || hbar <= 0.0) out.push_back("hbar must be positive (got " + format_number(hbar) + ")");
  if (!finite(gamma) || gamma < 0.0) out.push_back("gamma must be >= 0 (got " + format_number(gamma) + ")");
  if (!finite(diffusion) || diffusion < 0.0) {
    out.push_back("diffusion must be >= 0 (got " + format_number(diffusion) + ")");
  }
  if (!(box_q.hi > box_q.lo)) out.push_back("q box must satisfy qmin < qmax");
  if (!(box_p.hi > box_p.lo)) out.push_back("p box must satisfy pmin < pmax");
  return out;
}

void ModelParams::validate() const {
  const auto list = problems();
  if (list.empty()) return;
  std::string msg = "invalid model parameters:";
  for (const auto& p : list) msg += "\n  " + p;
  throw ConfigError(msg);
}

}  // namespace wigner
