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

#include <iostream>

#include <CLI11.hpp>

#include <hytrot/experiments.hpp>

namespace {

struct CliOptions {
  hytrot::ExperimentPlan plan;
  std::string scheme = "hyb1";
  std::string u0 = "exact";
  std::string sampler = "importance";
  double dt = 0.0;
  std::uint64_t gates = 0;
  double fit_time = 0.0;
};

void add_hamiltonian_flags(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--hamiltonian", opt.plan.hamiltonian_path,
                  "Pauli-sum Hamiltonian file");
  cmd->add_option("--chain", opt.plan.chain_n,
                  "generate a Heisenberg chain of this length instead");
  cmd->add_option("--chain-seed", opt.plan.chain_field_seed,
                  "field seed for --chain");
  cmd->add_option("--coeff-floor", opt.plan.coeff_floor,
                  "drop terms with |coeff| below this on load");
}

void add_scheme_flags(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--scheme", opt.scheme, "det1 | det2 | hyb1 | hyb2");
  cmd->add_option("--u0", opt.u0, "exact | split1 | split2");
  cmd->add_option("--sampler", opt.sampler,
                  "uniform | importance | adaptive");
  cmd->add_option("--k", opt.plan.batch_size, "batch size (uniform only)");
  cmd->add_option("--nd", opt.plan.n_d, "deterministic block size");
  cmd->add_option("--t-final", opt.plan.t_final, "time horizon");
  cmd->add_option("--dt", opt.dt, "step size");
  cmd->add_option("--gates", opt.gates, "total gate budget (fixes dt)");
  cmd->add_option("--ensembles", opt.plan.ensembles,
                  "Monte-Carlo ensemble size");
  cmd->add_option("--seed", opt.plan.base_seed, "base seed");
  cmd->add_option("--init", opt.plan.init_state,
                  "initial state: modes | ground | zero");
  cmd->add_option("--init-modes", opt.plan.init_mode_count,
                  "eigenmode count for --init modes");
  cmd->add_option("--records", opt.plan.record_count,
                  "number of recorded times");
  cmd->add_option("--dense-cap", opt.plan.dense_cap,
                  "dense-oracle qubit cap");
  cmd->add_option("--threads", opt.plan.threads,
                  "worker threads (0 = hardware)");
}

void finalize(CliOptions& opt) {
  opt.plan.scheme = hytrot::scheme_kind_from_string(opt.scheme);
  opt.plan.u0_mode = hytrot::u0_mode_from_string(opt.u0);
  opt.plan.sampler_mode = hytrot::sampler_mode_from_string(opt.sampler);
  if (opt.dt > 0.0) opt.plan.dt = opt.dt;
  if (opt.gates > 0) opt.plan.gate_budget = opt.gates;
  if (opt.fit_time > 0.0) opt.plan.fit_time = opt.fit_time;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "hybrid deterministic/random Trotter simulation and analysis"};
  app.require_subcommand(1);

  CliOptions opt;

  auto* gen = app.add_subcommand(
      "gen-chain", "write a Heisenberg chain in the Hamiltonian format");
  int gen_n = 0;
  std::uint64_t gen_seed = 1;
  std::string gen_out = "chain.txt";
  gen->add_option("-n,--n", gen_n, "chain length")->required();
  gen->add_option("--field-seed", gen_seed, "Z-field seed");
  gen->add_option("--out", gen_out, "output file");

  auto* inspect = app.add_subcommand(
      "inspect", "term magnitudes and per-partition constants");
  add_hamiltonian_flags(inspect, opt);
  add_scheme_flags(inspect, opt);
  inspect->add_option("--stride", opt.plan.nd_stride, "n_d grid stride");
  inspect->add_option("--out", opt.plan.out_dir, "output directory");

  auto* run = app.add_subcommand("run", "one ensemble experiment");
  add_hamiltonian_flags(run, opt);
  add_scheme_flags(run, opt);
  run->add_option("--out", opt.plan.out_dir, "output directory")->required();

  auto* sweep_dt = app.add_subcommand(
      "sweep-dt", "halve the step size and track the MSE");
  add_hamiltonian_flags(sweep_dt, opt);
  add_scheme_flags(sweep_dt, opt);
  sweep_dt->add_option("--dt-points", opt.plan.dt_points,
                       "number of halvings (grid points)");
  sweep_dt->add_option("--fit-time", opt.fit_time,
                       "comparison time for the slope fit");
  sweep_dt->add_option("--out", opt.plan.out_dir, "output directory")
      ->required();

  auto* sweep_nd = app.add_subcommand(
      "sweep-nd", "scan the partition size at a fixed gate budget");
  add_hamiltonian_flags(sweep_nd, opt);
  add_scheme_flags(sweep_nd, opt);
  sweep_nd->add_option("--stride", opt.plan.nd_stride, "n_d grid stride");
  sweep_nd->add_option("--out", opt.plan.out_dir, "output directory")
      ->required();

  auto* bounds = app.add_subcommand(
      "bounds", "closed-form error bounds and gate counts");
  add_hamiltonian_flags(bounds, opt);
  add_scheme_flags(bounds, opt);
  bounds->add_option("--eps", opt.plan.eps, "target accuracy");
  bounds->add_option("--delta", opt.plan.delta, "failure probability");
  bounds->add_option("--out", opt.plan.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) {
      hytrot::cmd_gen_chain(gen_n, gen_seed, gen_out);
      std::cout << "wrote " << gen_out << "\n";
      return 0;
    }
    finalize(opt);
    opt.plan.subcommand = app.get_subcommands().front()->get_name();
    hytrot::run_plan(opt.plan, std::cout);
    return 0;
  } catch (const hytrot::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const hytrot::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 3;
  }
}
