#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "qca/configuration.hpp"
#include "qca/evolver.hpp"
#include "qca/gates.hpp"
#include "qca/layout.hpp"
#include "qca/transport.hpp"

namespace tr = qca::transport;

namespace {

void bm_propagator_row(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto row = tr::propagator_abs2_row(1.75, m);
    benchmark::DoNotOptimize(row.data());
  }
  state.SetComplexityN(m);
}
BENCHMARK(bm_propagator_row)->Arg(100)->Arg(1000)->Arg(4000)->Complexity();

void bm_p1(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tr::p1(n, 100 * n, 5000.0 * n));
  }
}
BENCHMARK(bm_p1)->Arg(10)->Arg(20)->Arg(40);

void bm_split_estimate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto est = tr::split_estimate(n, 100 * n, 5000.0 * n, 0.001);
    benchmark::DoNotOptimize(est.total);
  }
}
BENCHMARK(bm_split_estimate)->Arg(10)->Arg(20);

void bm_slater_distribution(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto dist = tr::slater_distribution({1, 2, 3}, 1.25, m);
    benchmark::DoNotOptimize(dist.data());
  }
}
BENCHMARK(bm_slater_distribution)->Arg(8)->Arg(16)->Arg(24);

qca::ChainLayout walk_layout(int n_sites, int n_commands) {
  qca::ChainLayout layout;
  layout.n_sites = n_sites;
  layout.qc_lo = 0;
  layout.qc_hi = 1;
  layout.pointer_site = 0;
  layout.program = qca::CommandProgram{std::string(static_cast<std::size_t>(n_commands), 'L'), 0};
  layout.qubits = "0";
  layout.validate();
  return layout;
}

void bm_subspace_build(benchmark::State& state) {
  const int n_sites = static_cast<int>(state.range(0));
  const auto layout = walk_layout(n_sites, 4);
  const auto gates = qca::GateSet::with_default_gate();
  for (auto _ : state) {
    qca::SubspaceEvolver ev(layout, qca::Boundary::Open, gates);
    benchmark::DoNotOptimize(ev.basis().size());
  }
}
BENCHMARK(bm_subspace_build)->Arg(12)->Arg(16)->Arg(20);

void bm_subspace_evolve_step(benchmark::State& state) {
  const int n_sites = static_cast<int>(state.range(0));
  const auto layout = walk_layout(n_sites, 4);
  const auto gates = qca::GateSet::with_default_gate();
  qca::SubspaceEvolver ev(layout, qca::Boundary::Open, gates);
  for (auto _ : state) {
    ev.evolve(0.25);
    benchmark::DoNotOptimize(ev.norm());
  }
}
BENCHMARK(bm_subspace_evolve_step)->Arg(12)->Arg(16)->Arg(20);

void bm_replay_canonical(benchmark::State& state) {
  qca::ChainLayout layout;
  layout.n_sites = 10;
  layout.qc_lo = 2;
  layout.qc_hi = 4;
  layout.pointer_site = 2;
  layout.program = qca::CommandProgram{"SGRGSL", 0};
  layout.qubits = "10";
  layout.validate();
  const auto gates = qca::GateSet::with_default_gate();
  // Farthest-travelled configuration: all commands packed to the left.
  qca::CommandConfiguration target;
  const auto initial = qca::initial_configuration(layout);
  for (std::size_t i = 0; i < initial.entries.size(); ++i)
    target.entries.emplace_back(static_cast<int>(i), initial.entries[i].second);
  for (auto _ : state) {
    auto rep = qca::replay(layout, target, gates);
    benchmark::DoNotOptimize(rep.registers.amplitudes.size());
  }
}
BENCHMARK(bm_replay_canonical);

}  // namespace

BENCHMARK_MAIN();
