#include "wigner/solve/eigen.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/SparseCholesky>
#ifdef WIGNER_HAVE_CHOLMOD
#include <Eigen/CholmodSupport>
#endif
#include <Eigen/SparseLU>

#include "wigner/error.hpp"
#include "wigner/log.hpp"

namespace wigner {

namespace {

template <class S>
using SpMat = Eigen::SparseMatrix<S, Eigen::ColMajor>;
template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
S random_entry(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  if constexpr (std::is_same_v<S, double>) {
    return normal(rng);
  } else {
    const double re = normal(rng);
    return S(re, normal(rng));
  }
}

template <class S>
SpMat<S> identity(long n) {
  SpMat<S> id(n, n);
  id.setIdentity();
  return id;
}

// Scales v so its largest-magnitude entry is real and positive.
template <class S>
void fix_phase(Eigen::Ref<Vec<S>> v) {
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  const S lead = v(k);
  if (std::abs(lead) == 0.0) return;
  v *= std::abs(lead) / lead;
}

template <class S>
std::vector<Eigen::Index> select(const Eigen::VectorXd& values, int count, SpectrumEnd which) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(values.size()));
  std::iota(idx.begin(), idx.end(), 0);
  if (which == SpectrumEnd::smallest_magnitude) {
    std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
      return std::abs(values(a)) < std::abs(values(b));
    });
  }
  idx.resize(static_cast<std::size_t>(std::min<long>(count, values.size())));
  return idx;
}

template <class S>
HermitianEigenResult<S> finish(const SpMat<S>& a, const Eigen::VectorXd& theta, const Mat<S>& x,
                               const std::vector<Eigen::Index>& idx, std::vector<double> history) {
  HermitianEigenResult<S> out;
  out.vectors.resize(a.rows(), static_cast<long>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    Vec<S> v = x.col(idx[i]);
    v.normalize();
    fix_phase<S>(v);
    out.values.push_back(theta(idx[i]));
    out.residuals.push_back((a * v - theta(idx[i]) * v).norm());
    out.vectors.col(static_cast<long>(i)) = v;
  }
  out.history = std::move(history);
  return out;
}

template <class S>
HermitianEigenResult<S> dense_eigs(const SpMat<S>& a, int count, const EigenOptions& opts) {
  const Mat<S> d(a);
  Eigen::SelfAdjointEigenSolver<Mat<S>> es(d);
  if (es.info() != Eigen::Success) throw NumericalError("hermitian_eigs: dense eigensolver failed");
  const Eigen::VectorXd theta = es.eigenvalues();
  const auto idx = select<S>(theta, count, opts.which);
  auto out = finish<S>(a, theta, es.eigenvectors(), idx, {});
  const double worst = *std::max_element(out.residuals.begin(), out.residuals.end());
  out.history.push_back(worst);
  return out;
}

// Factorisation of a - sigma I that doubles as a positive-definiteness test.
#ifdef WIGNER_HAVE_CHOLMOD
template <class S>
using Ldlt = Eigen::CholmodSupernodalLLT<SpMat<S>, Eigen::Lower>;

template <class S>
bool factor_positive(const SpMat<S>& a, double sigma, Ldlt<S>& ldlt) {
  ldlt.cholmod().print = 0;
  ldlt.compute(a - S(sigma) * identity<S>(a.rows()));
  return ldlt.info() == Eigen::Success;
}
#else
template <class S>
using Ldlt = Eigen::SimplicialLDLT<SpMat<S>, Eigen::Lower, Eigen::AMDOrdering<int>>;

template <class S>
bool factor_positive(const SpMat<S>& a, double sigma, Ldlt<S>& ldlt) {
  ldlt.compute(a - S(sigma) * identity<S>(a.rows()));
  if (ldlt.info() != Eigen::Success) return false;
  for (long i = 0; i < ldlt.vectorD().size(); ++i) {
    if (std::real(ldlt.vectorD()(i)) <= 0.0) return false;
  }
  return true;
}
#endif

// Smallest Ritz value of a short Lanczos run (an upper bound on lambda_min).
template <class S>
double lanczos_lowest(const SpMat<S>& a, int steps) {
  const long n = a.rows();
  steps = static_cast<int>(std::min<long>(steps, n));
  std::mt19937_64 rng(0x1a2c);
  Mat<S> q(n, steps);
  Vec<S> v(n);
  for (long i = 0; i < n; ++i) v(i) = random_entry<S>(rng);
  v.normalize();
  Eigen::VectorXd alpha(steps);
  Eigen::VectorXd beta(steps);
  int used = 0;
  for (int k = 0; k < steps; ++k) {
    q.col(k) = v;
    Vec<S> w = a * v;
    alpha(k) = std::real(v.dot(w));
    for (int r = 0; r < 2; ++r) w -= q.leftCols(k + 1) * (q.leftCols(k + 1).adjoint() * w);
    used = k + 1;
    beta(k) = w.norm();
    if (beta(k) < 1e-12) break;
    v = w / beta(k);
  }
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(used, used);
  for (int k = 0; k < used; ++k) {
    t(k, k) = alpha(k);
    if (k + 1 < used) t(k, k + 1) = t(k + 1, k) = beta(k);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Places a shift below the spectrum and leaves the factorisation of a - sigma I
// in `ldlt`. A short Lanczos run bounds lambda_min from above; the shift starts
// at min(0, that bound) and moves down until the inertia has no negative pivot.
template <class S>
double shift_below_spectrum(const SpMat<S>& a, Ldlt<S>& ldlt) {
  const double theta = lanczos_lowest(a, 40);
  double margin = 0.02 * (1.0 + std::abs(theta));
  double sigma = theta > margin ? 0.0 : theta - margin;
  for (int attempt = 0; !factor_positive(a, sigma, ldlt); ++attempt) {
    if (attempt > 40) throw NumericalError("hermitian_eigs: could not place a shift below the spectrum");
    margin *= 4.0;
    sigma = std::min(sigma, theta) - margin;
  }
  return sigma;
}

template <class S>
HermitianEigenResult<S> iterative_eigs(const SpMat<S>& a, int count, const EigenOptions& opts) {
  const long n = a.rows();
  const long p = std::min<long>(n, count + std::max(opts.guard_vectors, count));

  Ldlt<S> ldlt;
  Eigen::SparseLU<SpMat<S>> lu;
  const bool lowest = opts.which == SpectrumEnd::smallest_real;
  const auto started = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return format_number(std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count());
  };
  if (lowest) {
    const double sigma = shift_below_spectrum(a, ldlt);
    log_debug("hermitian_eigs: shift " + format_number(sigma) + " factorised after " + elapsed() + " s");
  } else {
    SpMat<S> c = a;
    c.makeCompressed();
    lu.compute(c);
    if (lu.info() != Eigen::Success) {
      throw NumericalError("hermitian_eigs: operator is singular, smallest-magnitude eigenvalue is 0");
    }
  }
  auto solve = [&](const Mat<S>& rhs) -> Mat<S> {
    if (lowest) return ldlt.solve(rhs);
    return lu.solve(rhs);
  };

  std::mt19937_64 rng(0xe16e);
  Mat<S> x(n, p);
  for (long j = 0; j < p; ++j) {
    for (long i = 0; i < n; ++i) x(i, j) = random_entry<S>(rng);
  }

  std::vector<double> history;
  Eigen::VectorXd theta;
  for (int it = 0; it < opts.max_iterations; ++it) {
    const Mat<S> y = solve(x);
    Eigen::HouseholderQR<Mat<S>> qr(y);
    const Mat<S> q = qr.householderQ() * Mat<S>::Identity(n, p);
    const Mat<S> aq = a * q;
    Mat<S> h = q.adjoint() * aq;
    h = (0.5 * (h + h.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<Mat<S>> es(h);
    theta = es.eigenvalues();
    x = q * es.eigenvectors();
    const Mat<S> ax = aq * es.eigenvectors();

    const auto idx = select<S>(theta, count, opts.which);
    double worst = 0.0;
    for (const auto i : idx) worst = std::max(worst, (ax.col(i) - theta(i) * x.col(i)).norm());
    history.push_back(worst);
    if (worst <= opts.tolerance) {
      log_debug("hermitian_eigs: " + std::to_string(it + 1) + " subspace iterations, " + elapsed() + " s");
      return finish<S>(a, theta, x, idx, std::move(history));
    }
  }
  std::ostringstream msg;
  msg << "hermitian_eigs: no convergence after " << opts.max_iterations
      << " iterations (residual " << history.back() << ", target " << opts.tolerance << ")";
  throw NumericalError(msg.str(), history);
}

template <class S>
HermitianEigenResult<S> eigs_impl(const SpMat<S>& a, int count, const EigenOptions& opts) {
  if (a.rows() != a.cols()) throw ContractError("hermitian_eigs: matrix is not square");
  if (count < 1) throw ContractError("hermitian_eigs: need at least one eigenpair");
  if (count > a.rows()) throw ContractError("hermitian_eigs: more eigenpairs requested than the dimension");
  const SpMat<S> adj = a.adjoint();
  const double skew = (a - adj).norm();
  const double scale = std::max(a.norm(), 1e-300);
  if (skew > 1e-8 * scale) {
    std::ostringstream msg;
    msg << "hermitian_eigs: matrix is not Hermitian (relative skew part " << skew / scale << ")";
    throw ContractError(msg.str());
  }
  const SpMat<S> h = (0.5 * (a + adj)).pruned();
  if (h.rows() <= opts.dense_limit) return dense_eigs<S>(h, count, opts);
  return iterative_eigs<S>(h, count, opts);
}

bool integral_is_nonzero(const Eigen::VectorXcd& v) {
  return std::abs(v.sum()) > 1e-6 * v.norm();
}

// Unit integral when meaningful, else unit L2 with a canonical phase.
Eigen::VectorXcd normalise_field(Eigen::VectorXcd v, double weight) {
  if (integral_is_nonzero(v)) {
    v /= weight * v.sum();
  } else {
    v.normalize();
    fix_phase<std::complex<double>>(v);
  }
  return v;
}

template <class S>
std::vector<StationaryState> stationary_impl(const PhaseSpaceBasis& ps, const SpMat<S>& base,
                                             int n_states, const StationaryOptions& opts) {
  if (base.rows() != ps.dim()) throw ContractError("stationary_eigen: operator does not match the basis");
  SpMat<S> b = base;
  RealSparseMatrix sector;
  if (opts.sector != nullptr) {
    if (opts.sector->rows() != ps.dim()) throw ContractError("stationary_eigen: sector operator size mismatch");
    sector = opts.sector->to_sparse();
    const RealSparseMatrix penalty = RealSparseMatrix(sector.transpose()) * sector;
    b += (opts.sector_penalty * penalty).template cast<S>();
  }
  const auto res = eigs_impl<S>(b, n_states, opts.eigen);

  std::vector<StationaryState> out;
  for (std::size_t i = 0; i < res.values.size(); ++i) {
    const Eigen::VectorXcd raw = res.vectors.col(static_cast<long>(i)).template cast<std::complex<double>>();
    const Eigen::VectorXcd v = normalise_field(raw, ps.integration_weight());
    StationaryState st{res.values[i],
                       CoefficientField(ps, v.real(), 0.0, opts.hbar),
                       v,
                       res.residuals[i],
                       0.0};
    if (opts.sector != nullptr) {
      const Eigen::VectorXcd u = raw.normalized();
      const Eigen::VectorXd re = u.real();
      const Eigen::VectorXd im = u.imag();
      st.sector_residual = std::hypot((sector * re).norm(), (sector * im).norm());
    }
    out.push_back(std::move(st));
  }
  return out;
}

}  // namespace

HermitianEigenResult<double> hermitian_eigs(const RealSparseMatrix& a, int count, const EigenOptions& opts) {
  return eigs_impl<double>(a, count, opts);
}

HermitianEigenResult<std::complex<double>> hermitian_eigs(const ComplexSparseMatrix& a, int count,
                                                          const EigenOptions& opts) {
  return eigs_impl<std::complex<double>>(a, count, opts);
}

std::vector<StationaryState> stationary_eigen(const PhaseSpaceBasis& ps, const ComplexOperator& a,
                                              int n_states, const StationaryOptions& opts) {
  return stationary_impl<std::complex<double>>(ps, a.to_sparse(), n_states, opts);
}

std::vector<StationaryState> stationary_eigen(const PhaseSpaceBasis& ps, const AssembledOperator& a,
                                              int n_states, const StationaryOptions& opts) {
  return stationary_impl<double>(ps, a.to_sparse(), n_states, opts);
}

MoyalResult moyal_eigen(const PhaseSpaceBasis& ps, const AssembledOperator& a_sym,
                        const AssembledOperator& a_anti, int pairs, const MoyalOptions& opts) {
  if (pairs < 1) throw ContractError("moyal_eigen: need at least one pair");
  if (a_sym.rows() != ps.dim() || a_anti.rows() != ps.dim()) {
    throw ContractError("moyal_eigen: operators do not match the basis");
  }
  const RealSparseMatrix s = a_sym.to_sparse();
  const RealSparseMatrix anti = a_anti.to_sparse();
  {
    const double skew = RealSparseMatrix(anti + RealSparseMatrix(anti.transpose())).norm();
    if (skew > 1e-8 * std::max(anti.norm(), 1e-300)) {
      throw ContractError("moyal_eigen: second operator is not antisymmetric");
    }
  }

  // Enough A_sym eigenpairs that the clusters covering `pairs` are complete.
  auto cluster_bounds = [&](const std::vector<double>& vals) {
    std::vector<std::pair<int, int>> out;
    int start = 0;
    for (int i = 1; i <= static_cast<int>(vals.size()); ++i) {
      const bool split = i == static_cast<int>(vals.size()) ||
                         vals[static_cast<std::size_t>(i)] - vals[static_cast<std::size_t>(i - 1)] >
                             opts.cluster_tolerance * std::max(1.0, std::abs(vals[static_cast<std::size_t>(i - 1)]));
      if (split) {
        out.emplace_back(start, i);
        start = i;
      }
    }
    return out;
  };

  int want = std::min<long>(ps.dim(), pairs + 4);
  HermitianEigenResult<double> res;
  std::vector<std::pair<int, int>> clusters;
  while (true) {
    res = hermitian_eigs(s, want, opts.eigen);
    clusters = cluster_bounds(res.values);
    int complete = 0;
    for (std::size_t c = 0; c + 1 < clusters.size(); ++c) complete = clusters[c].second;
    if (complete >= pairs || want >= ps.dim()) {
      if (complete >= pairs) clusters.pop_back();
      break;
    }
    want = static_cast<int>(std::min<long>(ps.dim(), want + 8));
  }

  const Eigen::MatrixXd& v = res.vectors;
  const Eigen::MatrixXd av = anti * v;

  // Coupling of each cluster out of itself under A_anti.
  double commutator = 0.0;
  for (const auto& [lo, hi] : clusters) {
    const Eigen::MatrixXd vc = v.middleCols(lo, hi - lo);
    const Eigen::MatrixXd avc = av.middleCols(lo, hi - lo);
    const Eigen::MatrixXd leak = avc - vc * (vc.transpose() * avc);
    commutator = std::max(commutator, leak.norm() / std::max(1.0, avc.norm()));
  }

  MoyalResult result;
  result.commutator = commutator;
  log_info("moyal_eigen: cluster coupling under A_anti " + format_number(commutator));

  std::vector<Eigen::VectorXcd> fields;
  auto absorb = [&](const Eigen::MatrixXd& basis, const Eigen::MatrixXcd& y) {
    for (long k = 0; k < y.cols(); ++k) fields.push_back(basis.cast<std::complex<double>>() * y.col(k));
  };

  if (commutator <= opts.commutator_tolerance) {
    for (const auto& [lo, hi] : clusters) {
      const Eigen::MatrixXd vc = v.middleCols(lo, hi - lo);
      const Eigen::MatrixXd g = vc.transpose() * av.middleCols(lo, hi - lo);
      const Eigen::MatrixXcd ig = std::complex<double>(0.0, 1.0) * g.cast<std::complex<double>>();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (ig + ig.adjoint()));
      absorb(vc, es.eigenvectors());
    }
  } else {
    result.joint_fallback = true;
    log_warn("moyal_eigen: A_sym and A_anti do not commute on the resolved subspace (coupling " +
             format_number(commutator) + "); using joint approximate diagonalisation");
    int total = 0;
    for (const auto& c : clusters) total = c.second;
    const Eigen::MatrixXd vc = v.leftCols(total);
    const Eigen::MatrixXd g = vc.transpose() * av.leftCols(total);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(total, total);
    for (int i = 0; i < total; ++i) m(i, i) = res.values[static_cast<std::size_t>(i)];
    const double tau = 0.1 / std::max(1.0, g.norm());
    m += std::complex<double>(0.0, tau) * g.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()));
    absorb(vc, es.eigenvectors());
  }

  const double w = ps.integration_weight();
  for (auto& f : fields) {
    f.normalize();
    const Eigen::VectorXd re = f.real();
    const Eigen::VectorXd im = f.imag();
    const Eigen::VectorXcd sf = (s * re).cast<std::complex<double>>() +
                                std::complex<double>(0.0, 1.0) * (s * im).cast<std::complex<double>>();
    const Eigen::VectorXcd af = (anti * re).cast<std::complex<double>>() +
                                std::complex<double>(0.0, 1.0) * (anti * im).cast<std::complex<double>>();
    MoyalPair pair;
    pair.mean = std::real(f.dot(sf));
    pair.kappa = std::imag(f.dot(af));
    pair.e_double_prime = pair.mean + 0.5 * opts.hbar * pair.kappa;
    pair.e_prime = pair.mean - 0.5 * opts.hbar * pair.kappa;
    pair.residual_sym = (sf - pair.mean * f).norm();
    pair.residual_anti = (af - std::complex<double>(0.0, pair.kappa) * f).norm();
    pair.coeffs = normalise_field(f, w);
    result.pairs.push_back(std::move(pair));
  }
  std::stable_sort(result.pairs.begin(), result.pairs.end(), [&](const MoyalPair& a, const MoyalPair& b) {
    const double tol = opts.cluster_tolerance * std::max(1.0, std::abs(a.mean));
    if (std::abs(a.mean - b.mean) > tol) return a.mean < b.mean;
    return a.kappa < b.kappa;
  });
  if (static_cast<int>(result.pairs.size()) > pairs) result.pairs.resize(static_cast<std::size_t>(pairs));
  return result;
}

}  // namespace wigner
