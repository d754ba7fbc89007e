#include "run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>

#include <Eigen/Core>
#include <mutex>

#include "json.hpp"

#include "artifacts.hpp"
#include "wigner/assembly/assemble.hpp"
#include "wigner/ensemble/ensemble.hpp"
#include "wigner/log.hpp"
#include "wigner/solve/eigen.hpp"
#include "wigner/solve/refine.hpp"

#ifndef WIGNER_VERSION
#define WIGNER_VERSION "unknown"
#endif

namespace wigner::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

fs::path make_run_directory(const fs::path& root, const std::string& name) {
  fs::create_directories(root);
  for (int i = 0;; ++i) {
    const fs::path dir = root / (i == 0 ? name : name + "-" + std::to_string(i));
    if (fs::create_directory(dir)) return dir;
  }
}

CoefficientField initial_state(const RunConfig& cfg, const PhaseSpaceBasis& ps) {
  const double hbar = cfg.model.hbar;
  const InitialConfig& in = cfg.initial;
  if (in.type == "harmonic") {
    const auto& cq = cfg.potential.coeffs_q();
    const double k = cq.size() > 2 ? 2.0 * cq[2] : 0.0;
    if (!(k > 0.0)) throw ConfigError("initial.type = harmonic needs a positive q^2 coefficient in the potential");
    const double omega = std::sqrt(k / cfg.model.mass);
    const double sq2 = hbar / (2.0 * cfg.model.mass * omega);
    const double sp2 = cfg.model.mass * omega * hbar / 2.0;
    const unsigned n = static_cast<unsigned>(in.n);
    const double sign = in.n % 2 == 0 ? 1.0 : -1.0;
    auto w = [&](double q, double p) {
      const double dq = q - in.q0;
      const double dp = p - in.p0;
      const double s = dq * dq / (2.0 * sq2) + dp * dp / (2.0 * sp2);
      return sign / (std::numbers::pi * hbar) * std::exp(-s) * std::laguerre(n, 2.0 * s);
    };
    return CoefficientField(ps, ps.project(w), 0.0, hbar);
  }
  const double sq = in.sigma_q > 0.0 ? in.sigma_q : std::sqrt(hbar / 2.0);
  const double sp = in.sigma_p > 0.0 ? in.sigma_p : std::sqrt(hbar / 2.0);
  auto gauss = [](double x0, double s) {
    return [x0, s](double x) {
      const double z = (x - x0) / s;
      return std::exp(-0.5 * z * z) / (s * std::sqrt(2.0 * std::numbers::pi));
    };
  };
  return CoefficientField(ps, ps.project_separable(gauss(in.q0, sq), gauss(in.p0, sp)), 0.0, hbar);
}

namespace {

class Writer {
 public:
  Writer(fs::path dir, const RunConfig& cfg) : dir_(std::move(dir)), cfg_(cfg) {}

  void file(const std::string& name, const std::function<void(std::ostream&)>& body) {
    std::ofstream out(dir_ / name, std::ios::binary);
    body(out);
    if (!out) throw Error("cannot write " + (dir_ / name).string());
    artifacts_.push_back(name);
  }

  void state(const CoefficientField& w, const std::string& tag) {
    const auto& o = cfg_.output;
    if (o.checkpoints) file(tag + ".wcoef", [&](std::ostream& s) { write_checkpoint(s, w); });
    file(tag + ".wgrid", [&](std::ostream& s) { dump_grid(s, w, o.grid_q, o.grid_p); });
    if (o.marginals) {
      const Marginals m = marginals(w);
      file(tag + "_q.wmarg", [&](std::ostream& s) { write_marginal(s, m.q, 'q', o.grid_q, w.time()); });
      file(tag + "_p.wmarg", [&](std::ostream& s) { write_marginal(s, m.p, 'p', o.grid_p, w.time()); });
    }
    if (o.scale_cut_q >= 0) {
      const ScaleDecomposition parts = reconstruct_by_scale(w, o.scale_cut_q, o.scale_cut_p);
      file(tag + "_slow.wgrid", [&](std::ostream& s) { dump_grid(s, parts.slow, o.grid_q, o.grid_p); });
      for (std::size_t d = 0; d < parts.fast.size(); ++d) {
        file(tag + "_fast" + std::to_string(d) + ".wgrid",
             [&](std::ostream& s) { dump_grid(s, parts.fast[d], o.grid_q, o.grid_p); });
      }
    }
  }

  const json& artifacts() const { return artifacts_; }

 private:
  fs::path dir_;
  const RunConfig& cfg_;
  json artifacts_ = json::array();
};

std::string tag(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s_%04zu", prefix, i);
  return buf;
}

json report_json(const DiagnosticsReport& r) {
  json j = json::object();
  for (const auto& [k, v] : r.entries()) j[k] = v;
  j["regime"] = to_string(r.regime());
  if (r.classification) {
    const Classification& c = *r.classification;
    j["classification"] = {{"participation_fraction", c.participation_fraction},
                           {"relative_change", c.relative_change},
                           {"top_fraction", c.top_fraction},
                           {"top_k", c.top_k},
                           {"localized", c.localized},
                           {"chaotic", c.chaotic},
                           {"stable", c.stable},
                           {"checkpoints_used", c.checkpoints_used}};
  }
  return j;
}

/// Diagnostics of the last state plus the classification when the trajectory allows one.
json trajectory_diagnostics(const std::vector<CoefficientField>& states, const RunConfig& cfg,
                            std::string& report_text) {
  DiagnosticsReport r;
  try {
    r = diagnose(states, cfg.thresholds);
  } catch (const ContractError& e) {
    log_warn(std::string("diagnostics: no classification: ") + e.what());
    r = diagnose(states.back());
  }
  report_text = r.to_text();
  return report_json(r);
}

json times_of(const std::vector<CoefficientField>& states) {
  json t = json::array();
  for (const auto& s : states) t.push_back(s.time());
  return t;
}

EvolutionConfig evolution_config(const RunConfig& cfg) {
  EvolutionConfig e;
  e.dt = cfg.solver.dt;
  e.t_end = cfg.solver.t_end;
  e.scheme = cfg.solver.scheme;
  e.renormalize = cfg.solver.renormalize;
  e.record_every = cfg.output.checkpoint_every;
  return e;
}

StationaryOptions stationary_options(const RunConfig& cfg, const AssembledOperator* sector) {
  StationaryOptions o;
  o.eigen.tolerance = cfg.solver.tolerance;
  o.sector = sector;
  o.sector_penalty = cfg.solver.sector_penalty;
  o.hbar = cfg.model.hbar;
  return o;
}

std::vector<StationaryState> stationary_states(const RunConfig& cfg, const PhaseSpaceBasis& ps, int count) {
  const auto [sym, anti] = assemble_stationary_pair(ps, cfg.potential, cfg.model);
  const StationaryOptions o = stationary_options(cfg, &anti);
  if (cfg.solver.assembly == "cnumber") {
    return stationary_eigen(ps, assemble_stationary_cnumber(ps, cfg.potential, cfg.model), count, o);
  }
  return stationary_eigen(ps, sym, count, o);
}

struct ModeResult {
  json results = json::object();
  json diagnostics = json::object();
  std::string report;
  bool converged = true;
};

ModeResult run_evolve(const RunConfig& cfg, const PhaseSpaceBasis& ps, Writer& out, std::string& stage) {
  ModeResult r;
  stage = "initial";
  const CoefficientField w0 = initial_state(cfg, ps);
  stage = "assembly";
  const AssembledOperator op = assemble_liouvillian(ps, cfg.potential, cfg.model);
  stage = "evolve";
  Trajectory traj;
  try {
    traj = evolve(w0, op, evolution_config(cfg));
  } catch (const EvolutionAborted& e) {
    out.state(e.last_stable(), "aborted_last_stable");
    throw;
  }
  stage = "output";
  for (std::size_t i = 0; i < traj.states.size(); ++i) out.state(traj.states[i], tag("state", i));
  r.results = {{"steps", traj.steps},
               {"dt", traj.dt},
               {"max_renormalization", traj.max_renormalization},
               {"times", times_of(traj.states)},
               {"integral_initial", traj.states.front().integral()},
               {"integral_final", traj.final_state().integral()}};
  stage = "diagnostics";
  r.diagnostics = trajectory_diagnostics(traj.states, cfg, r.report);
  return r;
}

ModeResult run_lindblad(const RunConfig& cfg, const PhaseSpaceBasis& ps, Writer& out, std::string& stage) {
  ModeResult r;
  stage = "initial";
  const CoefficientField w0 = initial_state(cfg, ps);
  stage = "lindblad";
  LindbladRun run;
  try {
    run = lindblad_evolve(w0, cfg.potential, cfg.model, evolution_config(cfg));
  } catch (const EvolutionAborted& e) {
    out.state(e.last_stable(), "aborted_last_stable");
    throw;
  }
  stage = "output";
  const auto& states = run.trajectory.states;
  for (std::size_t i = 0; i < states.size(); ++i) out.state(states[i], tag("state", i));
  json purity = json::array();
  for (const auto& s : states) purity.push_back(standard_moments(s).purity);
  r.results = {{"steps", run.trajectory.steps},
               {"dt", run.trajectory.dt},
               {"times", times_of(states)},
               {"rate", run.rate},
               {"purity", purity},
               {"integral_final", run.trajectory.final_state().integral()}};
  stage = "diagnostics";
  r.diagnostics = trajectory_diagnostics(states, cfg, r.report);
  return r;
}

ModeResult run_stationary(const RunConfig& cfg, const PhaseSpaceBasis& ps, Writer& out, std::string& stage) {
  ModeResult r;
  stage = "stationary";
  const auto states = stationary_states(cfg, ps, cfg.solver.states);
  stage = "output";
  json list = json::array();
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& s = states[i];
    list.push_back({{"index", i},
                    {"energy", s.energy},
                    {"residual", s.residual},
                    {"sector_residual", s.sector_residual},
                    {"integral", s.field.integral()}});
    out.state(s.field, tag("eigen", i));
  }
  r.results = {{"assembly", cfg.solver.assembly}, {"states", list}};
  stage = "diagnostics";
  const DiagnosticsReport d = diagnose(states.front().field);
  r.report = d.to_text();
  r.diagnostics = report_json(d);
  return r;
}

ModeResult run_moyal(const RunConfig& cfg, const PhaseSpaceBasis& ps, Writer& out, std::string& stage) {
  ModeResult r;
  stage = "assembly";
  const auto [sym, anti] = assemble_stationary_pair(ps, cfg.potential, cfg.model);
  stage = "moyal";
  MoyalOptions mo;
  mo.eigen.tolerance = cfg.solver.tolerance;
  mo.hbar = cfg.model.hbar;
  const MoyalResult m = moyal_eigen(ps, sym, anti, cfg.solver.pairs, mo);
  stage = "output";
  json list = json::array();
  for (std::size_t i = 0; i < m.pairs.size(); ++i) {
    const auto& p = m.pairs[i];
    list.push_back({{"index", i},
                    {"e_prime", p.e_prime},
                    {"e_double_prime", p.e_double_prime},
                    {"mean", p.mean},
                    {"kappa", p.kappa},
                    {"residual_sym", p.residual_sym},
                    {"residual_anti", p.residual_anti}});
    out.state(CoefficientField(ps, p.coeffs.real(), 0.0, cfg.model.hbar), tag("pair", i) + "_re");
    out.state(CoefficientField(ps, p.coeffs.imag(), 0.0, cfg.model.hbar), tag("pair", i) + "_im");
  }
  r.results = {{"pairs", list}, {"commutator", m.commutator}, {"joint_fallback", m.joint_fallback}};
  stage = "diagnostics";
  if (!m.pairs.empty()) {
    const DiagnosticsReport d = diagnose(CoefficientField(ps, m.pairs.front().coeffs.real(), 0.0, cfg.model.hbar));
    r.report = d.to_text();
    r.diagnostics = report_json(d);
  }
  return r;
}

ModeResult run_ensemble(const RunConfig& cfg, const PhaseSpaceBasis& ps, Writer& out, std::string& stage,
                        int threads) {
  ModeResult r;
  stage = "initial";
  FockEnsemble ens;
  ens.weights = cfg.ensemble.weights;
  ens.u0 = cfg.ensemble.u0;
  ens.g = cfg.ensemble.g;
  const CoefficientField w0 = initial_state(cfg, ps);
  ens.fields.assign(ens.weights.size(), w0);
  stage = "ensemble";
  EnsembleOptions eo;
  eo.threads = threads;
  const auto trajectories = evolve_fock_trajectories(ens, cfg.model, evolution_config(cfg), eo);
  stage = "output";
  std::vector<CoefficientField> mixed;
  const std::size_t count = trajectories.front().states.size();
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<CoefficientField> level;
    for (const auto& t : trajectories) level.push_back(t.states[i]);
    mixed.push_back(incoherent_superpose(ens.weights, level));
    out.state(mixed.back(), tag("state", i));
  }
  FockEnsemble final_ens = ens;
  json levels = json::array();
  for (std::size_t n = 0; n < trajectories.size(); ++n) {
    const CoefficientField& f = trajectories[n].final_state();
    final_ens.fields[n] = f;
    if (cfg.output.checkpoints) {
      out.file(tag("level", n) + "_final.wcoef", [&](std::ostream& s) { write_checkpoint(s, f); });
    }
    levels.push_back({{"n", n}, {"weight", ens.weights[n]}, {"integral_final", f.integral()}});
  }
  r.results = {{"times", times_of(mixed)},
               {"levels", levels},
               {"fock_norm_initial", fock_norm(ens)},
               {"fock_norm_final", fock_norm(final_ens)},
               {"integral_final", mixed.back().integral()}};
  stage = "diagnostics";
  r.diagnostics = trajectory_diagnostics(mixed, cfg, r.report);
  return r;
}

ModeResult run_refine(const RunConfig& cfg, const PhaseSpaceBasis& ps, Writer& out, std::string& stage) {
  ModeResult r;
  stage = "refine";
  const int index = cfg.solver.state_index;
  const LevelSolver solve = [&](const PhaseSpaceBasis& level) {
    return stationary_states(cfg, level, index + 1).at(static_cast<std::size_t>(index)).field;
  };
  const auto [field, report] = refine_until(ps, solve, cfg.solver.epsilon, cfg.solver.n_max);
  stage = "output";
  out.state(field, "refined");
  json steps = json::array();
  for (const auto& s : report.steps) steps.push_back({{"level", s.level}, {"difference", s.difference}});
  r.results = {{"state_index", index},     {"epsilon", report.epsilon},   {"steps", steps},
               {"accepted_level", report.accepted_level}, {"converged", report.converged},
               {"monotone", report.monotone}};
  r.converged = report.converged;
  stage = "diagnostics";
  const DiagnosticsReport d = diagnose(field);
  r.report = d.to_text();
  r.diagnostics = report_json(d);
  return r;
}

fs::path output_root(const RunConfig& cfg, const RunOptions& opts) {
  if (!opts.out_root.empty()) return opts.out_root;
  if (!cfg.output.directory.empty()) return cfg.output.directory;
  if (const char* env = std::getenv("WIGNER_OUT"); env && *env) return env;
  return "runs";
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

RunOutcome run(const RunConfig& cfg, const RunOptions& opts) {
  RunOutcome outcome;
  const auto started = std::chrono::steady_clock::now();
  const std::string started_utc = utc_now();
  outcome.directory = make_run_directory(output_root(cfg, opts), cfg.output.name);
  Writer out(outcome.directory, cfg);

  json warnings = json::array();
  std::mutex log_mutex;
  const bool verbose = opts.verbose;
  set_log_sink([&warnings, &log_mutex, verbose](LogLevel level, const std::string& msg) {
    const std::lock_guard lock(log_mutex);
    if (level == LogLevel::warn) warnings.push_back(msg);
    if (verbose || level == LogLevel::warn) {
      const char* label = level == LogLevel::warn ? "warning" : level == LogLevel::info ? "info" : "debug";
      std::cerr << "[" << label << "] " << msg << '\n';
    }
  });

  json manifest;
  manifest["format"] = "wigner-run 1";
  manifest["version"] = {{"wigner", WIGNER_VERSION},
                         {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                       "." + std::to_string(EIGEN_MINOR_VERSION)}};
  manifest["mode"] = to_string(cfg.mode);
  json config = json::object();
  for (const auto& [k, v] : cfg.entries()) config[k] = v;
  manifest["config"] = config;

  std::string stage = "setup";
  ModeResult result;
  try {
    stage = "basis";
    const PhaseSpaceBasis ps = make_phase_space(cfg.order, cfg.j_coarse, cfg.j_fine, cfg.model.box_q, cfg.model.box_p);
    switch (cfg.mode) {
      case Mode::evolve: result = run_evolve(cfg, ps, out, stage); break;
      case Mode::lindblad: result = run_lindblad(cfg, ps, out, stage); break;
      case Mode::stationary: result = run_stationary(cfg, ps, out, stage); break;
      case Mode::moyal: result = run_moyal(cfg, ps, out, stage); break;
      case Mode::ensemble: result = run_ensemble(cfg, ps, out, stage, opts.threads); break;
      case Mode::refine: result = run_refine(cfg, ps, out, stage); break;
    }
    outcome.exit_code = result.converged ? kExitOk : kExitNotConverged;
    manifest["status"] = result.converged ? "ok" : "not_converged";
  } catch (const ConfigError& e) {
    outcome.exit_code = kExitInvalid;
    outcome.message = stage + ": " + e.what();
    manifest["status"] = "invalid";
  } catch (const NumericalError& e) {
    outcome.exit_code = kExitNumerical;
    outcome.message = stage + ": " + e.what();
    manifest["status"] = "numerical_failure";
    if (!e.history().empty()) manifest["error_history"] = e.history();
  } catch (const std::exception& e) {
    outcome.exit_code = kExitFailure;
    outcome.message = stage + ": " + e.what();
    manifest["status"] = "failure";
  }
  if (!outcome.message.empty()) manifest["error"] = outcome.message;
  manifest["results"] = result.results;
  manifest["diagnostics"] = result.diagnostics;
  manifest["warnings"] = warnings;

  if (!result.report.empty()) out.file("report.txt", [&](std::ostream& s) { s << result.report; });
  json artifacts = out.artifacts();
  artifacts.push_back("manifest.json");
  manifest["artifacts"] = artifacts;
  {
    std::ofstream f(outcome.directory / "manifest.json", std::ios::binary);
    f << manifest.dump(2) << '\n';
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  {
    std::ofstream f(outcome.directory / "timing.json", std::ios::binary);
    f << json{{"started_utc", started_utc}, {"wall_seconds", wall}, {"threads", opts.threads}}.dump(2) << '\n';
  }
  set_log_sink({});
  return outcome;
}

}  // namespace wigner::cli
