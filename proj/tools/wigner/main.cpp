#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "config.hpp"
#include "run.hpp"
#include "wigner/basis/table_io.hpp"

namespace {

using namespace wigner;
using namespace wigner::cli;

int cmd_validate(const std::string& path) {
  try {
    const RunConfig cfg = parse_config(path);
    std::cout << path << ": ok (mode " << to_string(cfg.mode) << ")\n";
    for (const auto& [k, v] : cfg.entries()) std::cout << k << " = " << v << '\n';
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kExitInvalid;
  }
}

int cmd_run(const std::string& path, const RunOptions& opts) {
  RunConfig cfg;
  try {
    cfg = parse_config(path);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return kExitInvalid;
  }
  try {
    const RunOutcome r = run(cfg, opts);
    std::cout << r.directory.string() << '\n';
    if (!r.message.empty()) std::cerr << "error: " << r.message << '\n';
    if (r.exit_code == kExitNotConverged) std::cerr << "warning: refinement did not converge\n";
    return r.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_tables(int order, int max_deriv, const std::string& dump) {
  try {
    const WaveletBasis basis(order, 0, 1, Interval{0.0, 1.0});
    const BasisTables& t = basis.tables();
    if (max_deriv > t.max_derivative()) {
      throw ConfigError("filter order " + std::to_string(order) + " supports derivative tables up to " +
                        std::to_string(t.max_derivative()));
    }
    std::printf("order %d  taps %zu  vanishing moments %d  max derivative %d  max power %d\n", order,
                t.filter.taps.size(), t.filter.vanishing_moments(), t.max_derivative(), t.max_power());
    std::printf("h:");
    for (double h : t.filter.taps) std::printf(" %.17g", h);
    std::printf("\n");
    for (int d = 0; d <= max_deriv; ++d) {
      const ConnectionTable& c = t.derivatives[static_cast<std::size_t>(d)];
      std::printf("Lambda^{0,%d}:", d);
      for (int k = -c.max_offset; k <= c.max_offset; ++k) std::printf(" %.17g", c(k));
      std::printf("\n");
    }
    if (!dump.empty()) {
      std::ofstream out(dump, std::ios::binary);
      write_tables(out, basis, max_deriv);
      if (!out) throw Error("cannot write " + dump);
      std::printf("tables written to %s\n", dump.c_str());
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wavelet-Galerkin solver for phase-space quantum dynamics"};
  app.require_subcommand(1);

  std::string config_path;
  RunOptions opts;
  std::string out_dir;
  auto* run_cmd = app.add_subcommand("run", "Execute a run described by a configuration file");
  run_cmd->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--threads", opts.threads, "Worker threads for ensemble runs")->check(CLI::PositiveNumber);
  run_cmd->add_option("--out", out_dir, "Output root (default: $WIGNER_OUT, else ./runs)");
  run_cmd->add_flag("--verbose", opts.verbose, "Log progress to stderr");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a configuration file and print the effective settings");
  validate_cmd->add_option("config", validate_path, "Configuration file")->required();

  int order = 6;
  int max_deriv = 1;
  std::string dump;
  auto* tables_cmd = app.add_subcommand("tables", "Compute and print the basis tables of a filter order");
  tables_cmd->add_option("--order", order, "Filter order (even, 2 to 20)")->required();
  tables_cmd->add_option("--max-deriv", max_deriv, "Highest derivative table")->required()->check(CLI::NonNegativeNumber);
  tables_cmd->add_option("--dump", dump, "Write the binary table file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  if (*run_cmd) {
    opts.out_root = out_dir;
    return cmd_run(config_path, opts);
  }
  if (*validate_cmd) return cmd_validate(validate_path);
  return cmd_tables(order, max_deriv, dump);
}
