#include "wigner/ensemble/ensemble.hpp"

#include <cmath>
#include <exception>
#include <thread>

#include "wigner/assembly/assemble.hpp"
#include "wigner/log.hpp"

namespace wigner {

namespace {

std::string level_tag(int n) { return "Fock level " + std::to_string(n) + ": "; }

[[noreturn]] void rethrow_tagged(std::exception_ptr err, int n) {
  try {
    std::rethrow_exception(err);
  } catch (const EvolutionAborted& e) {
    throw EvolutionAborted(level_tag(n) + e.what(), e.history(), e.last_stable());
  } catch (const NumericalError& e) {
    throw NumericalError(level_tag(n) + e.what(), e.history());
  } catch (const ConfigError& e) {
    throw ConfigError(level_tag(n) + e.what());
  } catch (const ContractError& e) {
    throw ContractError(level_tag(n) + e.what());
  } catch (const DegenerateInputError& e) {
    throw DegenerateInputError(level_tag(n) + e.what());
  } catch (const Error& e) {
    throw Error(level_tag(n) + e.what());
  }
}

Trajectory carried(const CoefficientField& w0, const Trajectory& pattern) {
  Trajectory t;
  t.dt = pattern.dt;
  t.steps = pattern.steps;
  for (const auto& s : pattern.states) {
    CoefficientField c = w0;
    c.set_time(s.time());
    t.states.push_back(std::move(c));
  }
  return t;
}

Eigen::VectorXd pairwise(const std::vector<double>& w, const std::vector<CoefficientField>& f,
                         std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return w[lo] * f[lo].coeffs();
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise(w, f, lo, mid) + pairwise(w, f, mid, hi);
}

}  // namespace

void FockEnsemble::validate() const {
  if (weights.empty()) throw ContractError("Fock ensemble has no levels");
  if (fields.size() != weights.size()) {
    throw ContractError("Fock ensemble has " + std::to_string(weights.size()) + " weights but " +
                        std::to_string(fields.size()) + " fields");
  }
  double sum = 0.0;
  for (std::size_t n = 0; n < weights.size(); ++n) {
    if (!(weights[n] >= 0.0)) throw ContractError("Fock weight " + std::to_string(n) + " is negative");
    sum += weights[n];
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw ContractError("Fock weights sum to " + std::to_string(sum) + ", expected 1");
  }
  for (const auto& f : fields) {
    if (!f.basis().same_as(fields.front().basis())) throw ContractError("Fock level fields live on different bases");
  }
}

std::vector<double> coherent_weights(double alpha, int n_max) {
  if (n_max < 0) throw ContractError("coherent_weights: n_max must be >= 0");
  const double a2 = alpha * alpha;
  std::vector<double> w(static_cast<std::size_t>(n_max) + 1);
  double log_term = -a2;  // log(e^{-a^2} a^{2n} / n!)
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) log_term += std::log(a2) - std::log(static_cast<double>(n));
    w[static_cast<std::size_t>(n)] = (a2 == 0.0) ? (n == 0 ? 1.0 : 0.0) : std::exp(log_term);
  }
  return normalize_weights(std::move(w));
}

std::vector<double> normalize_weights(std::vector<double> weights) {
  double sum = 0.0;
  for (double v : weights) {
    if (!(v >= 0.0)) throw ContractError("Fock weights must be non-negative");
    sum += v;
  }
  if (!(sum > 0.0)) throw ContractError("Fock weights are all zero");
  for (double& v : weights) v /= sum;
  return weights;
}

std::vector<Trajectory> evolve_fock_trajectories(const FockEnsemble& ens, const ModelParams& params,
                                                 const EvolutionConfig& cfg, const EnsembleOptions& opts) {
  ens.validate();
  params.validate();
  cfg.validate();
  if (opts.threads < 1) throw ContractError("ensemble thread count must be >= 1");
  const int levels = ens.n_max() + 1;
  std::vector<Trajectory> out(static_cast<std::size_t>(levels));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(levels));
  std::vector<char> active(static_cast<std::size_t>(levels), 0);
  for (int n = 0; n < levels; ++n) {
    active[static_cast<std::size_t>(n)] = ens.weights[static_cast<std::size_t>(n)] >= opts.weight_floor;
    if (!active[static_cast<std::size_t>(n)]) {
      log_info(level_tag(n) + "weight below floor, carried unchanged");
    }
  }

  auto run_level = [&](int n) {
    try {
      const auto& w0 = ens.fields[static_cast<std::size_t>(n)];
      const PolynomialPotential un = fock_potential(ens.u0, ens.g, n);
      const AssembledOperator op = assemble_liouvillian(w0.basis(), un, params);
      out[static_cast<std::size_t>(n)] = evolve(w0, op, cfg);
    } catch (...) {
      errors[static_cast<std::size_t>(n)] = std::current_exception();
    }
  };
  auto worker = [&](int t, int stride) {
    for (int n = t; n < levels; n += stride) {
      if (active[static_cast<std::size_t>(n)]) run_level(n);
    }
  };

  const int threads = std::min(opts.threads, levels);
  if (threads == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t, threads);
    for (auto& th : pool) th.join();
  }
  for (int n = 0; n < levels; ++n) {
    if (errors[static_cast<std::size_t>(n)]) rethrow_tagged(errors[static_cast<std::size_t>(n)], n);
  }

  const Trajectory* pattern = nullptr;
  for (int n = 0; n < levels && !pattern; ++n) {
    if (active[static_cast<std::size_t>(n)]) pattern = &out[static_cast<std::size_t>(n)];
  }
  for (int n = 0; n < levels; ++n) {
    if (active[static_cast<std::size_t>(n)]) continue;
    const auto& w0 = ens.fields[static_cast<std::size_t>(n)];
    if (pattern) {
      out[static_cast<std::size_t>(n)] = carried(w0, *pattern);
    } else {
      Trajectory t;
      t.states.push_back(w0);
      out[static_cast<std::size_t>(n)] = std::move(t);
    }
  }
  return out;
}

FockEnsemble evolve_fock_hierarchy(const FockEnsemble& ens, const ModelParams& params,
                                   const EvolutionConfig& cfg, const EnsembleOptions& opts) {
  const auto trajectories = evolve_fock_trajectories(ens, params, cfg, opts);
  FockEnsemble result = ens;
  for (std::size_t n = 0; n < trajectories.size(); ++n) {
    CoefficientField f = trajectories[n].final_state();
    f.set_time(cfg.t_end);
    result.fields[n] = std::move(f);
  }
  return result;
}

CoefficientField incoherent_superpose(const std::vector<double>& weights,
                                      const std::vector<CoefficientField>& fields) {
  if (fields.empty() || fields.size() != weights.size()) {
    throw ContractError("incoherent_superpose: need one weight per field");
  }
  for (const auto& f : fields) {
    if (!f.basis().same_as(fields.front().basis())) {
      throw ContractError("incoherent_superpose: fields live on different bases");
    }
  }
  return fields.front().with_coeffs(pairwise(weights, fields, 0, fields.size()));
}

CoefficientField incoherent_superpose(const FockEnsemble& ens) {
  return incoherent_superpose(ens.weights, ens.fields);
}

LindbladRun lindblad_evolve(const CoefficientField& w0, const PolynomialPotential& u,
                            const ModelParams& params, const EvolutionConfig& cfg) {
  params.validate();
  const AssembledOperator op = assemble_open_generator(w0.basis(), u, params);
  LindbladRun run{evolve(w0, op, cfg), {}};
  for (const auto& s : run.trajectory.states) {
    const double rate = op.apply(s.coeffs()).norm();
    run.rate.push_back(rate);
    log_debug("lindblad t=" + format_number(s.time()) + " |dW/dt|=" + format_number(rate));
  }
  if (!run.rate.empty()) {
    log_info("lindblad final |dW/dt| = " + format_number(run.rate.back()));
  }
  return run;
}

}  // namespace wigner
