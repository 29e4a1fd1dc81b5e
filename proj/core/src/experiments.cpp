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

#include <hytrot/experiments.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace hytrot {

namespace {

// Stream index reserved for drawing initial-state coefficients; trajectory
// streams are the small integers.
constexpr std::uint64_t kInitStateStream = 1ULL << 62;

std::filesystem::path out_file(const ExperimentPlan& plan,
                               const std::string& name) {
  if (plan.out_dir.empty()) {
    throw ValidationError("this subcommand needs --out");
  }
  return std::filesystem::path(plan.out_dir) / name;
}

std::vector<double> default_record_times(const ExperimentPlan& plan) {
  const int n = std::max(1, plan.record_count);
  std::vector<double> times;
  times.reserve(n);
  for (int k = 1; k <= n; ++k) {
    times.push_back(plan.t_final * static_cast<double>(k) /
                    static_cast<double>(n));
  }
  return times;
}

struct PartitionConstants {
  double lambda = 0.0;
  double gamma = 0.0;
  bool gamma_is_bound = false;
  double comm_norm = 0.0;
  double c_const = 0.0;
};

SamplerSpec make_sampler(SamplerMode mode, int batch_size,
                         std::span<const HamiltonianTerm> h1) {
  switch (mode) {
    case SamplerMode::UniformBatch: {
      SamplerSpec spec = SamplerSpec::uniform(batch_size);
      return spec;
    }
    case SamplerMode::Importance:
      return SamplerSpec::importance(h1);
    default:
      return SamplerSpec::state_adaptive(h1);
  }
}

PartitionConstants compute_constants(const PartitionedHamiltonian& h,
                                     int n_d, SamplerMode mode,
                                     int batch_size, int dense_cap) {
  PartitionConstants out;
  const auto h1 = h.h1_terms(n_d);
  if (!h1.empty()) {
    const SamplerSpec spec = make_sampler(mode, batch_size, h1);
    const SamplingMoments moments = delta_h_constants(h1, spec, dense_cap);
    out.lambda = moments.lambda;
    out.gamma = moments.gamma;
    out.gamma_is_bound = moments.gamma_is_bound;
  }
  TermSum h1_sum(h.n_qubits());
  for (const auto& term : h1) h1_sum.add(term);
  out.comm_norm = commutator_norm(h.h0_sum(n_d), h1_sum, dense_cap);
  out.c_const = bch_constant(h, n_d, dense_cap);
  return out;
}

void append_plan_info(Metadata& meta, const PartitionedHamiltonian& h,
                      const SchemeConfig& cfg) {
  const StepPlan plan = resolve_steps(cfg, h.term_count());
  meta.set_int("n_qubits", h.n_qubits());
  meta.set_int("term_count", h.term_count());
  meta.set_double("identity_offset", h.identity_offset());
  meta.set_double("dt_resolved", plan.dt);
  meta.set_u64("n_steps", plan.n_steps);
  meta.set_u64("units_per_step", plan.units_per_step);
  meta.set_double("horizon", plan.horizon);
  meta.set(
      "horizon_truncated", plan.truncated ? "true" : "false");
  meta.set("gate_accounting", "exact-u0-counts-nd-units");
}

void append_constants(Metadata& meta, const PartitionConstants& constants) {
  meta.set_double("lambda", constants.lambda);
  meta.set_double("gamma", constants.gamma);
  meta.set("gamma_is_bound", constants.gamma_is_bound ? "true" : "false");
  meta.set_double("comm_norm", constants.comm_norm);
  meta.set_double("c_const", constants.c_const);
}

std::vector<int> nd_grid(int term_count, int stride) {
  if (stride < 1) throw ValidationError("stride must be at least 1");
  std::vector<int> grid;
  for (int nd = 0; nd < term_count; nd += stride) grid.push_back(nd);
  grid.push_back(term_count);
  return grid;
}

}  // namespace

Metadata plan_to_metadata(const ExperimentPlan& plan) {
  Metadata meta;
  meta.set("format", "hytrot-experiment-v1");
  meta.set("subcommand", plan.subcommand);
  if (plan.chain_n > 0) {
    meta.set_int("chain_n", plan.chain_n);
    meta.set_u64("chain_field_seed", plan.chain_field_seed);
  } else {
    meta.set("hamiltonian_path", plan.hamiltonian_path);
  }
  meta.set_double("coeff_floor", plan.coeff_floor);
  meta.set("scheme", to_string(plan.scheme));
  meta.set("u0", to_string(plan.u0_mode));
  meta.set("sampler", to_string(plan.sampler_mode));
  meta.set_int("k", plan.batch_size);
  meta.set_int("nd", plan.n_d);
  meta.set_double("t_final", plan.t_final);
  if (plan.dt.has_value()) meta.set_double("dt", *plan.dt);
  if (plan.gate_budget.has_value()) meta.set_u64("gates", *plan.gate_budget);
  meta.set_int("ensembles", plan.ensembles);
  meta.set_u64("seed", plan.base_seed);
  meta.set("init_state", plan.init_state);
  meta.set_int("init_modes", plan.init_mode_count);
  meta.set_int("records", plan.record_count);
  meta.set_int("dt_points", plan.dt_points);
  if (plan.fit_time.has_value()) meta.set_double("fit_time", *plan.fit_time);
  meta.set_int("nd_stride", plan.nd_stride);
  meta.set_double("eps", plan.eps);
  meta.set_double("delta", plan.delta);
  meta.set_int("dense_cap", plan.dense_cap);
  return meta;
}

ExperimentPlan plan_from_metadata(const Metadata& meta) {
  if (meta.get_or("format", "") != "hytrot-experiment-v1") {
    throw ValidationError("unrecognized experiment record format");
  }
  ExperimentPlan plan;
  plan.subcommand = meta.get("subcommand");
  if (meta.contains("chain_n")) {
    plan.chain_n = meta.get_int("chain_n");
    plan.chain_field_seed = meta.get_u64("chain_field_seed");
  } else {
    plan.hamiltonian_path = meta.get("hamiltonian_path");
  }
  plan.coeff_floor = meta.get_double("coeff_floor");
  plan.scheme = scheme_kind_from_string(meta.get("scheme"));
  plan.u0_mode = u0_mode_from_string(meta.get("u0"));
  plan.sampler_mode = sampler_mode_from_string(meta.get("sampler"));
  plan.batch_size = meta.get_int("k");
  plan.n_d = meta.get_int("nd");
  plan.t_final = meta.get_double("t_final");
  if (meta.contains("dt")) plan.dt = meta.get_double("dt");
  if (meta.contains("gates")) plan.gate_budget = meta.get_u64("gates");
  plan.ensembles = meta.get_int("ensembles");
  plan.base_seed = meta.get_u64("seed");
  plan.init_state = meta.get("init_state");
  plan.init_mode_count = meta.get_int("init_modes");
  plan.record_count = meta.get_int("records");
  plan.dt_points = meta.get_int("dt_points");
  if (meta.contains("fit_time")) plan.fit_time = meta.get_double("fit_time");
  plan.nd_stride = meta.get_int("nd_stride");
  plan.eps = meta.get_double("eps");
  plan.delta = meta.get_double("delta");
  plan.dense_cap = meta.get_int("dense_cap");
  return plan;
}

PartitionedHamiltonian load_plan_hamiltonian(const ExperimentPlan& plan) {
  if (plan.chain_n > 0) {
    return heisenberg_chain(plan.chain_n, plan.chain_field_seed);
  }
  if (plan.hamiltonian_path.empty()) {
    throw ValidationError("no Hamiltonian source: give a file or a chain");
  }
  return load_hamiltonian(plan.hamiltonian_path, plan.coeff_floor);
}

StateVector initial_state(const ExperimentPlan& plan,
                          const PartitionedHamiltonian& h) {
  if (plan.init_state == "zero") {
    return StateVector::zero_state(h.n_qubits());
  }
  const ExactPropagator spectrum(h.full_sum(), plan.dense_cap);
  const Eigen::MatrixXcd& modes = spectrum.eigenvectors();
  if (plan.init_state == "ground") {
    // Eigenvalues come out ascending; column 0 is the ground state.
    Eigen::VectorXcd amps = modes.col(0);
    amps /= amps.norm();
    return StateVector::from_amplitudes(h.n_qubits(), std::move(amps));
  }
  if (plan.init_state != "modes") {
    throw ValidationError("unknown initial state '" + plan.init_state + "'");
  }
  const int count = std::min<int>(plan.init_mode_count,
                                  static_cast<int>(modes.cols()));
  if (count < 1) {
    throw ValidationError("initial state needs at least one eigenmode");
  }
  SplitMix64 rng = SplitMix64::for_stream(plan.base_seed, kInitStateStream);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(modes.rows());
  for (int j = 0; j < count; ++j) {
    amps += Complex(rng.next_symmetric(), rng.next_symmetric()) *
            modes.col(j);
  }
  const double norm = amps.norm();
  if (norm < 1e-12) {
    throw NumericalError("degenerate initial-state draw");
  }
  amps /= norm;
  return StateVector::from_amplitudes(h.n_qubits(), std::move(amps));
}

SchemeConfig make_scheme_config(const ExperimentPlan& plan,
                                const PartitionedHamiltonian& h) {
  SchemeConfig cfg;
  cfg.scheme = plan.scheme;
  cfg.n_d = plan.n_d;
  cfg.u0_mode = plan.u0_mode;
  cfg.t_final = plan.t_final;
  cfg.step.dt = plan.dt;
  cfg.step.gate_budget = plan.gate_budget;
  cfg.base_seed = plan.base_seed;
  const auto h1 = h.h1_terms(plan.n_d);
  const bool hybrid = plan.scheme == SchemeKind::HybridFirst ||
                      plan.scheme == SchemeKind::HybridSymmetric;
  if (hybrid && !h1.empty()) {
    cfg.sampler = make_sampler(plan.sampler_mode, plan.batch_size, h1);
  }
  cfg.validate(h.term_count());
  return cfg;
}

void cmd_gen_chain(int n, std::uint64_t field_seed,
                   const std::filesystem::path& out_path) {
  const PartitionedHamiltonian h = heisenberg_chain(n, field_seed);
  if (out_path.has_parent_path()) {
    std::filesystem::create_directories(out_path.parent_path());
  }
  save_hamiltonian(h, out_path);
}

void cmd_inspect(const ExperimentPlan& plan, std::ostream& out) {
  const PartitionedHamiltonian h = load_plan_hamiltonian(plan);
  out << "# terms (descending magnitude), L = " << h.term_count()
      << ", qubits = " << h.n_qubits() << "\n";
  out << "index magnitude coeff string\n";
  std::vector<std::vector<std::string>> term_rows;
  int index = 0;
  for (const auto& term : h.terms()) {
    out << index << ' ' << std::abs(term.coeff) << ' ' << term.coeff << " \""
        << term.pauli.to_string() << "\"\n";
    term_rows.push_back({std::to_string(index), fmt_g17(std::abs(term.coeff)),
                         fmt_g17(term.coeff), term.pauli.to_string()});
    ++index;
  }

  out << "\n# partition constants\n";
  out << "nd lambda gamma comm_norm c_const\n";
  std::vector<std::vector<std::string>> constant_rows;
  for (int nd : nd_grid(h.term_count(), plan.nd_stride)) {
    const PartitionConstants c = compute_constants(
        h, nd, plan.sampler_mode, plan.batch_size, plan.dense_cap);
    out << nd << ' ' << c.lambda << ' ' << c.gamma << ' ' << c.comm_norm
        << ' ' << c.c_const << "\n";
    constant_rows.push_back({std::to_string(nd), fmt_g17(c.lambda),
                             fmt_g17(c.gamma), fmt_g17(c.comm_norm),
                             fmt_g17(c.c_const)});
  }

  if (!plan.out_dir.empty()) {
    write_csv(out_file(plan, "terms.csv"),
              {"index", "magnitude", "coeff", "string"}, term_rows);
    write_csv(out_file(plan, "partition_constants.csv"),
              {"nd", "lambda", "gamma", "comm_norm", "c_const"},
              constant_rows);
    Metadata meta = plan_to_metadata(plan);
    meta.set_int("n_qubits", h.n_qubits());
    meta.set_int("term_count", h.term_count());
    meta.set_double("identity_offset", h.identity_offset());
    meta.save(out_file(plan, "metadata.txt"));
  }
}

EnsembleStats cmd_run(const ExperimentPlan& plan) {
  if (plan.out_dir.empty()) {
    throw ValidationError("run needs --out");
  }
  const PartitionedHamiltonian h = load_plan_hamiltonian(plan);
  const SchemeConfig cfg = make_scheme_config(plan, h);
  const StateVector psi0 = initial_state(plan, h);
  const std::vector<double> times = default_record_times(plan);
  const EnsembleStats stats =
      run_ensemble(h, cfg, psi0, plan.ensembles, times, plan.dense_cap,
                   plan.threads);

  write_ensemble_csv(out_file(plan, "stats.csv"), stats);
  Metadata meta = plan_to_metadata(plan);
  append_plan_info(meta, h, cfg);
  append_constants(meta, compute_constants(h, plan.n_d, plan.sampler_mode,
                                           plan.batch_size, plan.dense_cap));
  meta.set_u64("gates_per_trajectory", stats.gates_per_trajectory);
  meta.save(out_file(plan, "metadata.txt"));
  return stats;
}

double cmd_sweep_dt(const ExperimentPlan& plan) {
  if (plan.out_dir.empty()) {
    throw ValidationError("sweep-dt needs --out");
  }
  if (!plan.dt.has_value()) {
    throw ValidationError("sweep-dt needs a starting --dt");
  }
  if (plan.dt_points < 2) {
    throw ValidationError("sweep-dt needs at least two dt points");
  }
  const PartitionedHamiltonian h = load_plan_hamiltonian(plan);
  const StateVector psi0 = initial_state(plan, h);
  const double dt0 = *plan.dt;
  // Snap the comparison time to a multiple of the coarsest step so every
  // halved grid hits it exactly.
  const double requested_fit = plan.fit_time.value_or(plan.t_final / 2.0);
  const double fit_t =
      std::max(1.0, std::round(requested_fit / dt0)) * dt0;
  if (fit_t > plan.t_final + 1e-12) {
    throw ValidationError("the fit time lies beyond the horizon");
  }

  std::vector<double> dts, mse_at_fit;
  std::vector<std::vector<std::string>> rows;
  for (int j = 0; j < plan.dt_points; ++j) {
    const double dt_j = dt0 / static_cast<double>(1 << j);
    ExperimentPlan point = plan;
    point.dt = dt_j;
    point.gate_budget.reset();
    const SchemeConfig cfg = make_scheme_config(point, h);
    std::vector<double> times = default_record_times(plan);
    times.push_back(fit_t);
    const EnsembleStats stats =
        run_ensemble(h, cfg, psi0, plan.ensembles, times, plan.dense_cap,
                     plan.threads);
    write_ensemble_csv(out_file(plan, "ensemble_dt" + std::to_string(j) +
                                          ".csv"),
                       stats);
    // Locate the snapped fit time in this grid.
    double best_gap = std::numeric_limits<double>::infinity();
    double mse = 0.0, stderr_ = 0.0;
    for (std::size_t ti = 0; ti < stats.times.size(); ++ti) {
      const double gap = std::abs(stats.times[ti] - fit_t);
      if (gap < best_gap) {
        best_gap = gap;
        mse = stats.mse[ti];
        stderr_ = stats.mse_stderr[ti];
      }
    }
    dts.push_back(dt_j);
    mse_at_fit.push_back(mse);
    rows.push_back({fmt_g17(dt_j), fmt_g17(mse), fmt_g17(stderr_)});
  }

  // An error-free sweep (e.g. a deterministic scheme on a commuting
  // Hamiltonian) has no slope to fit.
  const bool flat =
      *std::min_element(mse_at_fit.begin(), mse_at_fit.end()) <= 0.0;
  const double slope = flat ? 0.0 : fit_loglog_slope(dts, mse_at_fit);
  write_csv(out_file(plan, "mse_vs_dt.csv"), {"dt", "mse", "mse_stderr"},
            rows);
  Metadata meta = plan_to_metadata(plan);
  meta.set_double("fit_time_snapped", fit_t);
  meta.set("slope_defined", flat ? "false" : "true");
  meta.set_double("fitted_slope", slope);
  append_constants(meta, compute_constants(h, plan.n_d, plan.sampler_mode,
                                           plan.batch_size, plan.dense_cap));
  meta.save(out_file(plan, "metadata.txt"));
  return slope;
}

std::pair<int, int> cmd_sweep_nd(const ExperimentPlan& plan) {
  if (plan.out_dir.empty()) {
    throw ValidationError("sweep-nd needs --out");
  }
  if (!plan.gate_budget.has_value()) {
    throw ValidationError("sweep-nd needs a --gates budget");
  }
  const PartitionedHamiltonian h = load_plan_hamiltonian(plan);
  const StateVector psi0 = initial_state(plan, h);

  std::vector<std::vector<std::string>> rows;
  int empirical_argmin = 0;
  double empirical_best = std::numeric_limits<double>::infinity();
  int estimator_argmin = 0;
  double estimator_best = std::numeric_limits<double>::infinity();

  for (int nd : nd_grid(h.term_count(), plan.nd_stride)) {
    ExperimentPlan point = plan;
    point.n_d = nd;
    const SchemeConfig cfg = make_scheme_config(point, h);
    const StepPlan step_plan = resolve_steps(cfg, h.term_count());
    const EnsembleStats stats =
        run_ensemble(h, cfg, psi0, plan.ensembles, default_record_times(plan),
                     plan.dense_cap, plan.threads);
    const PartitionConstants constants = compute_constants(
        h, nd, plan.sampler_mode, plan.batch_size, plan.dense_cap);
    const EstimatorValue estimate =
        error_estimator(constants.lambda, constants.c_const, nd,
                        plan.batch_size, plan.t_final, *plan.gate_budget);

    write_ensemble_csv(
        out_file(plan, "ensemble_nd" + std::to_string(nd) + ".csv"), stats);

    const double final_mse = stats.mse.back();
    const double final_stderr = stats.mse_stderr.back();
    rows.push_back({std::to_string(nd), fmt_g17(step_plan.dt),
                    fmt_g17(final_mse), fmt_g17(final_stderr),
                    fmt_g17(constants.lambda), fmt_g17(constants.c_const),
                    fmt_g17(estimate.variance_part),
                    fmt_g17(estimate.bias_part), fmt_g17(estimate.total)});
    if (final_mse < empirical_best) {
      empirical_best = final_mse;
      empirical_argmin = nd;
    }
    if (estimate.total < estimator_best) {
      estimator_best = estimate.total;
      estimator_argmin = nd;
    }
  }

  write_csv(out_file(plan, "mse_vs_nd.csv"),
            {"nd", "dt", "mse_final", "mse_stderr", "lambda", "c_const",
             "estimator_variance", "estimator_bias", "estimator_total"},
            rows);
  Metadata meta = plan_to_metadata(plan);
  meta.set_int("empirical_argmin", empirical_argmin);
  meta.set_int("estimator_argmin", estimator_argmin);
  meta.save(out_file(plan, "metadata.txt"));
  return {empirical_argmin, estimator_argmin};
}

BoundReport cmd_bounds(const ExperimentPlan& plan, std::ostream& out) {
  const PartitionedHamiltonian h = load_plan_hamiltonian(plan);
  const SchemeConfig cfg = make_scheme_config(plan, h);
  const StepPlan step_plan = resolve_steps(cfg, h.term_count());
  const PartitionConstants constants = compute_constants(
      h, plan.n_d, plan.sampler_mode, plan.batch_size, plan.dense_cap);
  const auto h1 = h.h1_terms(plan.n_d);

  BoundReport report;
  report.lambda = constants.lambda;
  report.gamma = constants.gamma;
  report.comm_norm = constants.comm_norm;
  report.c_const = constants.c_const;
  report.t = step_plan.horizon;
  report.dt = step_plan.dt;
  report.k = plan.batch_size;
  report.n_d = plan.n_d;
  report.n_r = h.term_count() - plan.n_d;
  report.eps = plan.eps;
  report.delta = plan.delta;
  report.t_final = plan.t_final;
  report.n_gate = plan.gate_budget.value_or(static_cast<std::uint64_t>(
      std::llround(static_cast<double>(step_plan.units_per_step) *
                   plan.t_final / step_plan.dt)));

  report.one_step_mse = one_step_mse_bound(report.lambda, report.comm_norm,
                                           report.dt, report.k);
  report.global_mse =
      report.n_r > 0
          ? global_mse_bound(report.lambda, report.gamma, report.comm_norm,
                             report.t, report.dt, report.k, report.n_r)
          : 0.0;
  double expectation = 0.0;
  if (!h1.empty()) {
    const SamplerSpec spec =
        make_sampler(plan.sampler_mode, plan.batch_size, h1);
    expectation = mean_fluctuation_norm(h1, spec, plan.dense_cap).value;
  }
  report.bias_bound = 0.5 * report.t * report.dt * report.comm_norm +
                      0.5 * report.t * report.dt * std::sqrt(expectation);
  report.estimator =
      error_estimator(report.lambda, report.c_const, report.n_d, report.k,
                      plan.t_final, report.n_gate);
  report.gates_markov =
      gate_count_markov(report.lambda, report.comm_norm, report.n_d,
                        report.t, plan.eps, plan.delta);
  report.gates_mcdiarmid =
      plan.sampler_mode == SamplerMode::UniformBatch
          ? gate_count_mcdiarmid(report.gamma, report.n_d, report.t, plan.eps,
                                 plan.delta, ConcentrationMode::Uniform)
          : gate_count_mcdiarmid(report.lambda, report.n_d, report.t,
                                 plan.eps, plan.delta,
                                 ConcentrationMode::Importance);

  Metadata lines;
  lines.set_double("lambda", report.lambda);
  lines.set_double("gamma", report.gamma);
  lines.set_double("comm_norm", report.comm_norm);
  lines.set_double("c_const", report.c_const);
  lines.set_double("t", report.t);
  lines.set_double("dt", report.dt);
  lines.set_int("k", report.k);
  lines.set_int("nd", report.n_d);
  lines.set_int("nr", report.n_r);
  lines.set_double("eps", report.eps);
  lines.set_double("delta", report.delta);
  lines.set_u64("n_gate", report.n_gate);
  lines.set_double("one_step_mse_bound", report.one_step_mse);
  lines.set_double("global_mse_bound", report.global_mse);
  lines.set_double("bias_bound", report.bias_bound);
  lines.set_double("estimator_total", report.estimator.total);
  lines.set_double("estimator_variance", report.estimator.variance_part);
  lines.set_double("estimator_bias", report.estimator.bias_part);
  lines.set_double("gates_markov", report.gates_markov);
  lines.set_double("gates_mcdiarmid", report.gates_mcdiarmid);
  for (const auto& [k, v] : lines.entries()) {
    out << k << " = " << v << "\n";
  }
  if (!plan.out_dir.empty()) {
    lines.save(out_file(plan, "bounds.txt"));
    Metadata meta = plan_to_metadata(plan);
    meta.save(out_file(plan, "metadata.txt"));
  }
  return report;
}

void run_plan(const ExperimentPlan& plan, std::ostream& out) {
  if (plan.subcommand == "gen-chain") {
    if (plan.chain_n < 2) {
      throw ValidationError("gen-chain needs a chain length of at least 2");
    }
    cmd_gen_chain(plan.chain_n, plan.chain_field_seed, plan.out_dir.empty()
                                                           ? "chain.txt"
                                                           : plan.out_dir);
    return;
  }
  if (plan.subcommand == "inspect") {
    cmd_inspect(plan, out);
    return;
  }
  if (plan.subcommand == "run") {
    const EnsembleStats stats = cmd_run(plan);
    out << "recorded " << stats.times.size() << " times; final mse "
        << stats.mse.back() << " (stderr " << stats.mse_stderr.back()
        << "), gates " << stats.gates_per_trajectory << "\n";
    return;
  }
  if (plan.subcommand == "sweep-dt") {
    const double slope = cmd_sweep_dt(plan);
    out << "fitted log-log slope " << slope << "\n";
    return;
  }
  if (plan.subcommand == "sweep-nd") {
    const auto [empirical, estimator] = cmd_sweep_nd(plan);
    out << "empirical argmin nd " << empirical << ", estimator argmin nd "
        << estimator << "\n";
    return;
  }
  if (plan.subcommand == "bounds") {
    cmd_bounds(plan, out);
    return;
  }
  throw ValidationError("unknown subcommand '" + plan.subcommand + "'");
}

void replay(const std::filesystem::path& metadata_path,
            const std::filesystem::path& out_dir, std::ostream& out) {
  ExperimentPlan plan = plan_from_metadata(Metadata::load(metadata_path));
  plan.out_dir = out_dir.string();
  run_plan(plan, out);
}

}  // namespace hytrot
