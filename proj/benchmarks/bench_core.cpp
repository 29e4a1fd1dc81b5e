// Copyright (c) the hytrot contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <hytrot/evolve.hpp>
#include <hytrot/hamiltonian.hpp>
#include <hytrot/sampling.hpp>
#include <hytrot/scheme.hpp>

using namespace hytrot;

namespace {

StateVector seeded_state(int n_qubits) {
  SplitMix64 rng(0xBEEF);
  const std::size_t dim = 1ULL << n_qubits;
  Eigen::VectorXcd amps(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    amps(i) = Complex(rng.next_symmetric(), rng.next_symmetric());
  }
  amps /= amps.norm();
  return StateVector::from_amplitudes(n_qubits, std::move(amps));
}

void BM_PauliMultiply(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  SplitMix64 rng(11);
  const PartitionedHamiltonian h = heisenberg_chain(n, 5);
  const auto terms = h.terms();
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& a = terms[i % terms.size()].pauli;
    const auto& b = terms[(i * 7 + 3) % terms.size()].pauli;
    benchmark::DoNotOptimize(multiply(a, b));
    ++i;
  }
}
BENCHMARK(BM_PauliMultiply)->Arg(8)->Arg(12);

void BM_RotationKernel(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  StateVector psi = seeded_state(n);
  const HamiltonianTerm term{
      0.7, PauliString::parse(n, "X0 Y" + std::to_string(n / 2))};
  for (auto _ : state) {
    apply_pauli_rotation(psi, term, 0.01);
  }
  state.SetItemsProcessed(state.iterations() * (1LL << n));
}
BENCHMARK(BM_RotationKernel)->Arg(8)->Arg(10)->Arg(12);

void BM_TrotterStep(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const PartitionedHamiltonian h = heisenberg_chain(n, 5);
  StateVector psi = seeded_state(n);
  GateCounter gates;
  for (auto _ : state) {
    trotter_step_first_order(psi, h.terms(), 0.001, gates);
  }
}
BENCHMARK(BM_TrotterStep)->Arg(6)->Arg(8);

void BM_ExactPropagatorApply(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const PartitionedHamiltonian h = heisenberg_chain(n, 5);
  const ExactPropagator prop(h.h0_sum(h.term_count() / 2));
  StateVector psi = seeded_state(n);
  for (auto _ : state) {
    prop.apply(psi, 0.01);
  }
}
BENCHMARK(BM_ExactPropagatorApply)->Arg(6)->Arg(8)->Arg(10);

void BM_SampleBatch(benchmark::State& state) {
  const auto k = static_cast<int>(state.range(0));
  SplitMix64 rng(99);
  const SamplerSpec spec = SamplerSpec::uniform(k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_batch(spec, 145, rng));
  }
}
BENCHMARK(BM_SampleBatch)->Arg(1)->Arg(10);

void BM_HybridTrajectory(benchmark::State& state) {
  const PartitionedHamiltonian h = heisenberg_chain(8, 5);
  SchemeConfig cfg;
  cfg.scheme = SchemeKind::HybridFirst;
  cfg.n_d = 20;
  cfg.sampler = SamplerSpec::importance(h.h1_terms(20));
  cfg.t_final = 1.0;
  cfg.step.gate_budget = 2048;
  const SchemeRunner runner(h, cfg);
  const StateVector psi0 = seeded_state(8);
  std::uint64_t stream = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(runner.run(psi0, {}, stream++));
  }
}
BENCHMARK(BM_HybridTrajectory);

}  // namespace

BENCHMARK_MAIN();
