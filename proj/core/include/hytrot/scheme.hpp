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

#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <hytrot/evolve.hpp>
#include <hytrot/hamiltonian.hpp>
#include <hytrot/sampling.hpp>

namespace hytrot {

enum class SchemeKind {
  /// First-order Trotter product over every term, no randomness.
  DeterministicFirst,
  /// Symmetric (Strang) product over every term.
  DeterministicSymmetric,
  /// Random batch first, then U0 (the partially random algorithm).
  HybridFirst,
  /// Half-weight random sweep, U0, mirrored half-weight sweep.
  HybridSymmetric,
};

enum class U0Mode { Exact, SplitFirst, SplitSymmetric };

const char* to_string(SchemeKind k);
const char* to_string(U0Mode m);
SchemeKind scheme_kind_from_string(const std::string& name);
U0Mode u0_mode_from_string(const std::string& name);

/// Either a step size or a total gate budget; with a budget the step size
/// follows dt = units_per_step * T / N_gate.
struct StepControl {
  std::optional<double> dt;
  std::optional<std::uint64_t> gate_budget;
};

/// A full description of one evolution experiment.
struct SchemeConfig {
  SchemeKind scheme = SchemeKind::HybridFirst;
  int n_d = 0;
  SamplerSpec sampler;
  U0Mode u0_mode = U0Mode::Exact;
  double t_final = 1.0;
  StepControl step;
  std::uint64_t base_seed = 0;

  void validate(int term_count) const;
};

/// Resolved stepping plan: the step size, the number of whole steps within
/// the horizon, and the gate units consumed per step. When dt does not
/// divide t_final within 1e-9 relative the run truncates at the last full
/// step and `truncated` is set; the reached horizon is reported.
struct StepPlan {
  double dt = 0.0;
  std::uint64_t n_steps = 0;
  std::uint64_t units_per_step = 0;
  double horizon = 0.0;
  bool truncated = false;
};

/// Gate units per step for a configuration: n_d + K for first-order hybrid
/// steps with exact or split-first U0, 2 n_d - 1 + K with split-symmetric
/// U0, n_d + 2K for the symmetric hybrid, and L (resp. 2L - 1) for the
/// deterministic schemes.
std::uint64_t units_per_step(const SchemeConfig& cfg, int term_count);

StepPlan resolve_steps(const SchemeConfig& cfg, int term_count);

struct TrajectoryRecord {
  double time = 0.0;
  std::uint64_t gate_count = 0;
  StateVector state;
};

struct Trajectory {
  std::vector<TrajectoryRecord> records;
  StateVector final_state;
  double final_time = 0.0;
  std::uint64_t total_gates = 0;
};

/// Applies exp(-i dt H0) in the configured mode and charges the gate ledger
/// (n_d units for exact or split-first, 2 n_d - 1 for split-symmetric).
class U0Applier {
 public:
  U0Applier(std::span<const HamiltonianTerm> h0_terms, U0Mode mode,
            int n_qubits, int dense_cap = kDefaultDenseCap);

  void apply(StateVector& state, double dt, GateCounter& gates) const;
  std::uint64_t units() const;

 private:
  std::span<const HamiltonianTerm> h0_terms_;
  U0Mode mode_;
  std::shared_ptr<const ExactPropagator> propagator_;
};

/// One step of the partially random first-order scheme: draw a batch, apply
/// the selected factors exp(-i dt w_l h_l) -- ordered by ascending index as
/// an operator product, i.e. applied to the state highest index first, like
/// the Trotter list convention -- then U0.
void step_hybrid_first(StateVector& state, const U0Applier& u0,
                       std::span<const HamiltonianTerm> h1,
                       const SamplerSpec& sampler, double dt, SplitMix64& rng,
                       GateCounter& gates);

/// Symmetric variant: one draw reused for both half-sweeps at half weight,
/// with U0 in the middle.
void step_hybrid_symmetric(StateVector& state, const U0Applier& u0,
                           std::span<const HamiltonianTerm> h1,
                           const SamplerSpec& sampler, double dt,
                           SplitMix64& rng, GateCounter& gates);

/// A configuration bound to a Hamiltonian, with the exact-U0 factorization
/// built once up front. Immutable, so any number of trajectory workers may
/// share one runner; each trajectory owns its state and rng stream. The
/// Hamiltonian must outlive the runner.
class SchemeRunner {
 public:
  SchemeRunner(const PartitionedHamiltonian& h, const SchemeConfig& cfg,
               int dense_cap = kDefaultDenseCap);

  const StepPlan& plan() const { return plan_; }

  /// Snapshots are taken at the requested times snapped to the nearest
  /// whole step. Trajectory `stream` of a fixed base seed is bit-identical
  /// across runs and independent of any other stream.
  Trajectory run(const StateVector& psi0,
                 std::span<const double> record_times,
                 std::uint64_t stream = 0) const;

  /// The requested times snapped to whole steps, deduplicated and sorted.
  std::vector<double> snap_times(std::span<const double> record_times) const;

 private:
  const PartitionedHamiltonian& hamiltonian_;
  SchemeConfig cfg_;
  StepPlan plan_;
  std::span<const HamiltonianTerm> h0_terms_;
  std::span<const HamiltonianTerm> h1_terms_;
  U0Applier u0_;
};

/// One-shot convenience wrapper around SchemeRunner.
Trajectory run_trajectory(const PartitionedHamiltonian& h,
                          const SchemeConfig& cfg, const StateVector& psi0,
                          std::span<const double> record_times,
                          std::uint64_t stream = 0,
                          int dense_cap = kDefaultDenseCap);

/// Exact reference evolution exp(-i t H) psi0 evaluated directly at the
/// requested times (no step-size error, no gate cost).
Trajectory run_reference(const PartitionedHamiltonian& h,
                         const StateVector& psi0,
                         std::span<const double> record_times,
                         int dense_cap = kDefaultDenseCap);

}  // namespace hytrot
