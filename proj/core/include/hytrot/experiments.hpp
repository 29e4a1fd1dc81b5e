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

#include <iosfwd>
#include <optional>
#include <string>

#include <hytrot/analysis.hpp>
#include <hytrot/reporting.hpp>

namespace hytrot {

/// A fully serializable experiment description. Every run writes its plan
/// into the output directory's metadata record; replaying the record
/// reproduces the CSV output byte for byte.
struct ExperimentPlan {
  std::string subcommand;  // gen-chain | inspect | run | sweep-dt | sweep-nd | bounds

  // Hamiltonian source: a file, or the chain generator when chain_n > 0.
  std::string hamiltonian_path;
  int chain_n = 0;
  std::uint64_t chain_field_seed = 1;
  double coeff_floor = 1e-4;

  // Scheme.
  SchemeKind scheme = SchemeKind::HybridFirst;
  U0Mode u0_mode = U0Mode::Exact;
  SamplerMode sampler_mode = SamplerMode::Importance;
  int batch_size = 1;
  int n_d = 0;
  double t_final = 1.0;
  std::optional<double> dt;
  std::optional<std::uint64_t> gate_budget;
  int ensembles = 80;
  std::uint64_t base_seed = 0;

  // Initial state: "modes" (seeded combination of the lowest
  // min(init_mode_count, 2^n) eigenmodes), "ground", or "zero".
  std::string init_state = "modes";
  int init_mode_count = 100;

  // Output sampling and sweep grids.
  int record_count = 64;
  int dt_points = 4;
  std::optional<double> fit_time;
  int nd_stride = 10;

  // Tail probabilities for the gate-count bounds.
  double eps = 0.1;
  double delta = 0.1;

  int dense_cap = kDefaultDenseCap;

  // Execution context, not part of the record.
  std::string out_dir;
  int threads = 0;
};

Metadata plan_to_metadata(const ExperimentPlan& plan);
ExperimentPlan plan_from_metadata(const Metadata& meta);

/// Builds the Hamiltonian named by the plan (file or chain generator).
PartitionedHamiltonian load_plan_hamiltonian(const ExperimentPlan& plan);

/// The plan's initial state. Eigenmode combinations draw their coefficients
/// from stream 2^62 of the base seed (trajectories use streams 0..M-1).
StateVector initial_state(const ExperimentPlan& plan,
                          const PartitionedHamiltonian& h);

SchemeConfig make_scheme_config(const ExperimentPlan& plan,
                                const PartitionedHamiltonian& h);

/// Writes the Heisenberg chain in the Hamiltonian file format; byte-stable
/// for a fixed seed.
void cmd_gen_chain(int n, std::uint64_t field_seed,
                   const std::filesystem::path& out_path);

/// Term magnitudes in descending order plus the partition constants
/// (Lambda, Gamma, ||[H0,H1]||, C) on the n_d grid. Prints a table; also
/// writes terms.csv / partition_constants.csv when the plan names an output
/// directory.
void cmd_inspect(const ExperimentPlan& plan, std::ostream& out);

/// One ensemble run; writes stats.csv and the metadata record.
EnsembleStats cmd_run(const ExperimentPlan& plan);

/// Halving dt sweep at a fixed scheme; writes one ensemble CSV per step
/// size, the mse_vs_dt.csv summary with the fitted log-log slope, and the
/// metadata record. Returns the fitted slope.
double cmd_sweep_dt(const ExperimentPlan& plan);

/// Fixed-gate-budget n_d sweep; writes one ensemble CSV per grid point and
/// the mse_vs_nd.csv summary with the empirical and estimator argmins.
/// Returns (empirical argmin, estimator argmin).
std::pair<int, int> cmd_sweep_nd(const ExperimentPlan& plan);

/// Evaluates every closed-form bound for the plan's configuration.
BoundReport cmd_bounds(const ExperimentPlan& plan, std::ostream& out);

/// Dispatches on plan.subcommand.
void run_plan(const ExperimentPlan& plan, std::ostream& out);

/// Reruns the experiment recorded at metadata_path into out_dir.
void replay(const std::filesystem::path& metadata_path,
            const std::filesystem::path& out_dir, std::ostream& out);

}  // namespace hytrot
