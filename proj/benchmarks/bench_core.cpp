#include <cmath>
#include <numbers>

#include <benchmark/benchmark.h>

#include "wigner/assembly/assemble.hpp"
#include "wigner/basis/tables.hpp"
#include "wigner/solve/evolve.hpp"

using namespace wigner;

namespace {

PhaseSpaceBasis space(int order, int j_fine) { return make_phase_space(order, 2, j_fine, {-6.0, 6.0}, {-6.0, 6.0}); }

ModelParams params() {
  ModelParams mp;
  mp.box_q = {-6.0, 6.0};
  mp.box_p = {-6.0, 6.0};
  return mp;
}

Eigen::VectorXd ground(const PhaseSpaceBasis& ps) {
  return ps.project([](double q, double p) { return std::exp(-q * q - p * p) / std::numbers::pi; });
}

const PolynomialPotential kQuartic({0.0, 0.0, 0.5, 0.0, 0.1});

void connection_tables(benchmark::State& state) {
  const auto f = daubechies_filter(static_cast<int>(state.range(0)));
  const int d = static_cast<int>(state.range(0)) / 2;
  for (auto _ : state) benchmark::DoNotOptimize(connection_coefficients(f, 0, d));
}
BENCHMARK(connection_tables)->Arg(6)->Arg(10)->Arg(16)->Unit(benchmark::kMicrosecond);

void forward_transform(benchmark::State& state) {
  const auto ps = space(8, static_cast<int>(state.range(0)));
  const Eigen::VectorXd c = ground(ps);
  for (auto _ : state) benchmark::DoNotOptimize(ps.to_multiscale(c));
  state.SetItemsProcessed(state.iterations() * ps.dim());
}
BENCHMARK(forward_transform)->DenseRange(5, 7)->Unit(benchmark::kMicrosecond);

void inverse_transform(benchmark::State& state) {
  const auto ps = space(8, static_cast<int>(state.range(0)));
  const Eigen::VectorXd m = ps.to_multiscale(ground(ps));
  for (auto _ : state) benchmark::DoNotOptimize(ps.to_single(m));
  state.SetItemsProcessed(state.iterations() * ps.dim());
}
BENCHMARK(inverse_transform)->DenseRange(5, 7)->Unit(benchmark::kMicrosecond);

void assemble_generator(benchmark::State& state) {
  const auto ps = space(static_cast<int>(state.range(0)), 6);
  const ModelParams mp = params();
  for (auto _ : state) benchmark::DoNotOptimize(assemble_liouvillian(ps, kQuartic, mp));
}
BENCHMARK(assemble_generator)->Arg(8)->Arg(14)->Unit(benchmark::kMillisecond);

void apply_matrix_free(benchmark::State& state) {
  const auto ps = space(10, static_cast<int>(state.range(0)));
  const AssembledOperator op = assemble_liouvillian(ps, kQuartic, params());
  const Eigen::VectorXd x = ground(ps);
  Eigen::VectorXd y(x.size());
  for (auto _ : state) {
    op.apply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * ps.dim());
}
BENCHMARK(apply_matrix_free)->DenseRange(5, 7)->Unit(benchmark::kMicrosecond);

void apply_explicit(benchmark::State& state) {
  const auto ps = space(10, static_cast<int>(state.range(0)));
  const RealSparseMatrix m = assemble_liouvillian(ps, kQuartic, params()).to_sparse();
  const Eigen::VectorXd x = ground(ps);
  Eigen::VectorXd y(x.size());
  for (auto _ : state) {
    y.noalias() = m * x;
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * ps.dim());
}
BENCHMARK(apply_explicit)->DenseRange(5, 7)->Unit(benchmark::kMicrosecond);

void midpoint_steps(benchmark::State& state) {
  const auto ps = space(10, static_cast<int>(state.range(0)));
  const AssembledOperator op = assemble_liouvillian(ps, kQuartic, params());
  const CoefficientField w0(ps, ground(ps));
  EvolutionConfig cfg;
  cfg.dt = 0.05;
  cfg.t_end = 0.5;
  cfg.record_every = 10;
  for (auto _ : state) benchmark::DoNotOptimize(evolve(w0, op, cfg));
}
BENCHMARK(midpoint_steps)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
