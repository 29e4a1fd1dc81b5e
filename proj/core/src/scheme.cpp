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

#include <hytrot/scheme.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace hytrot {

namespace {

bool is_hybrid(SchemeKind k) {
  return k == SchemeKind::HybridFirst || k == SchemeKind::HybridSymmetric;
}

std::uint64_t u0_units(U0Mode mode, int n_d) {
  if (n_d == 0) return 0;
  if (mode == U0Mode::SplitSymmetric) return 2 * static_cast<std::uint64_t>(n_d) - 1;
  return static_cast<std::uint64_t>(n_d);
}

U0Mode effective_u0_mode(const SchemeConfig& cfg) {
  switch (cfg.scheme) {
    case SchemeKind::DeterministicFirst: return U0Mode::SplitFirst;
    case SchemeKind::DeterministicSymmetric: return U0Mode::SplitSymmetric;
    default: return cfg.u0_mode;
  }
}

}  // namespace

const char* to_string(SchemeKind k) {
  switch (k) {
    case SchemeKind::DeterministicFirst: return "det1";
    case SchemeKind::DeterministicSymmetric: return "det2";
    case SchemeKind::HybridFirst: return "hyb1";
    default: return "hyb2";
  }
}

const char* to_string(U0Mode m) {
  switch (m) {
    case U0Mode::Exact: return "exact";
    case U0Mode::SplitFirst: return "split1";
    default: return "split2";
  }
}

SchemeKind scheme_kind_from_string(const std::string& name) {
  if (name == "det1") return SchemeKind::DeterministicFirst;
  if (name == "det2") return SchemeKind::DeterministicSymmetric;
  if (name == "hyb1") return SchemeKind::HybridFirst;
  if (name == "hyb2") return SchemeKind::HybridSymmetric;
  throw ValidationError("unknown scheme '" + name + "'");
}

U0Mode u0_mode_from_string(const std::string& name) {
  if (name == "exact") return U0Mode::Exact;
  if (name == "split1") return U0Mode::SplitFirst;
  if (name == "split2") return U0Mode::SplitSymmetric;
  throw ValidationError("unknown U0 mode '" + name + "'");
}

void SchemeConfig::validate(int term_count) const {
  if (n_d < 0 || n_d > term_count) {
    throw ValidationError("n_d must be in [0, " + std::to_string(term_count) +
                          "], got " + std::to_string(n_d));
  }
  if (!(t_final > 0.0)) {
    throw ValidationError("the time horizon must be positive");
  }
  const bool has_dt = step.dt.has_value();
  const bool has_budget = step.gate_budget.has_value();
  if (has_dt == has_budget) {
    throw ValidationError(
        "exactly one of dt and the gate budget must be given");
  }
  if (has_dt && !(*step.dt > 0.0)) {
    throw ValidationError("dt must be positive");
  }
  if (has_budget && *step.gate_budget == 0) {
    throw ValidationError("the gate budget must be positive");
  }
  if (is_hybrid(scheme)) {
    const int n_r = term_count - n_d;
    if (n_r > 0) sampler.validate(n_r);
  }
}

std::uint64_t units_per_step(const SchemeConfig& cfg, int term_count) {
  switch (cfg.scheme) {
    case SchemeKind::DeterministicFirst:
      return static_cast<std::uint64_t>(term_count);
    case SchemeKind::DeterministicSymmetric:
      return u0_units(U0Mode::SplitSymmetric, term_count);
    case SchemeKind::HybridFirst: {
      const int n_r = term_count - cfg.n_d;
      return u0_units(cfg.u0_mode, cfg.n_d) +
             (n_r > 0 ? static_cast<std::uint64_t>(cfg.sampler.batch_size)
                      : 0);
    }
    default: {
      const int n_r = term_count - cfg.n_d;
      return u0_units(cfg.u0_mode, cfg.n_d) +
             (n_r > 0 ? 2ULL * cfg.sampler.batch_size : 0);
    }
  }
}

StepPlan resolve_steps(const SchemeConfig& cfg, int term_count) {
  cfg.validate(term_count);
  StepPlan plan;
  plan.units_per_step = units_per_step(cfg, term_count);
  if (cfg.step.dt.has_value()) {
    plan.dt = *cfg.step.dt;
  } else {
    plan.dt = static_cast<double>(plan.units_per_step) * cfg.t_final /
              static_cast<double>(*cfg.step.gate_budget);
  }
  const double ratio = cfg.t_final / plan.dt;
  plan.n_steps = static_cast<std::uint64_t>(std::floor(ratio + 1e-9));
  plan.horizon = static_cast<double>(plan.n_steps) * plan.dt;
  plan.truncated = std::abs(plan.horizon - cfg.t_final) >
                   1e-9 * std::max(std::abs(cfg.t_final), 1.0);
  if (plan.n_steps == 0) {
    throw ValidationError("step size exceeds the whole time horizon");
  }
  return plan;
}

U0Applier::U0Applier(std::span<const HamiltonianTerm> h0_terms, U0Mode mode,
                     int n_qubits, int dense_cap)
    : h0_terms_(h0_terms), mode_(mode) {
  if (mode_ == U0Mode::Exact && !h0_terms_.empty()) {
    TermSum sum(n_qubits);
    for (const auto& term : h0_terms_) sum.add(term);
    propagator_ = std::make_shared<const ExactPropagator>(sum, dense_cap);
  }
}

std::uint64_t U0Applier::units() const {
  return u0_units(mode_, static_cast<int>(h0_terms_.size()));
}

void U0Applier::apply(StateVector& state, double dt,
                      GateCounter& gates) const {
  if (h0_terms_.empty()) return;
  switch (mode_) {
    case U0Mode::Exact:
      propagator_->apply(state, dt);
      // Counted as if split, so gate budgets stay comparable.
      gates.count += h0_terms_.size();
      break;
    case U0Mode::SplitFirst:
      trotter_step_first_order(state, h0_terms_, dt, gates);
      break;
    default:
      trotter_step_symmetric(state, h0_terms_, dt, gates);
      break;
  }
}

void step_hybrid_first(StateVector& state, const U0Applier& u0,
                       std::span<const HamiltonianTerm> h1,
                       const SamplerSpec& sampler, double dt, SplitMix64& rng,
                       GateCounter& gates) {
  if (!h1.empty()) {
    const BatchDraw draw =
        sample_batch(sampler, static_cast<int>(h1.size()), rng);
    // Batch factors form the operator product in ascending index order and
    // are applied right to left, matching the Trotter list convention (so
    // K = n_r reproduces the deterministic step exactly).
    for (std::size_t i = draw.indices.size(); i-- > 0;) {
      apply_pauli_rotation(state, h1[draw.indices[i]], dt * draw.weights[i]);
    }
    gates.count += draw.indices.size();
  }
  u0.apply(state, dt, gates);
}

void step_hybrid_symmetric(StateVector& state, const U0Applier& u0,
                           std::span<const HamiltonianTerm> h1,
                           const SamplerSpec& sampler, double dt,
                           SplitMix64& rng, GateCounter& gates) {
  if (h1.empty()) {
    u0.apply(state, dt, gates);
    return;
  }
  const BatchDraw draw =
      sample_batch(sampler, static_cast<int>(h1.size()), rng);
  // Mirror of the first-order sweep around U0: the overall product is
  // palindromic, which is what buys the extra order.
  for (std::size_t i = draw.indices.size(); i-- > 0;) {
    apply_pauli_rotation(state, h1[draw.indices[i]],
                         dt * draw.weights[i] / 2.0);
  }
  u0.apply(state, dt, gates);
  for (std::size_t i = 0; i < draw.indices.size(); ++i) {
    apply_pauli_rotation(state, h1[draw.indices[i]],
                         dt * draw.weights[i] / 2.0);
  }
  gates.count += 2 * draw.indices.size();
}

SchemeRunner::SchemeRunner(const PartitionedHamiltonian& h,
                           const SchemeConfig& cfg, int dense_cap)
    : hamiltonian_(h),
      cfg_(cfg),
      plan_(resolve_steps(cfg, h.term_count())),
      h0_terms_(is_hybrid(cfg.scheme) ? h.terms().first(cfg.n_d) : h.terms()),
      h1_terms_(is_hybrid(cfg.scheme)
                    ? h.h1_terms(cfg.n_d)
                    : std::span<const HamiltonianTerm>{}),
      u0_(h0_terms_, effective_u0_mode(cfg), h.n_qubits(), dense_cap) {}

std::vector<double> SchemeRunner::snap_times(
    std::span<const double> record_times) const {
  std::vector<std::uint64_t> steps;
  steps.reserve(record_times.size());
  for (double t : record_times) {
    steps.push_back(static_cast<std::uint64_t>(
        std::clamp(std::llround(t / plan_.dt), 0LL,
                   static_cast<long long>(plan_.n_steps))));
  }
  std::sort(steps.begin(), steps.end());
  steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
  std::vector<double> times;
  times.reserve(steps.size());
  for (auto s : steps) times.push_back(static_cast<double>(s) * plan_.dt);
  return times;
}

Trajectory SchemeRunner::run(const StateVector& psi0,
                             std::span<const double> record_times,
                             std::uint64_t stream) const {
  if (psi0.n_qubits() != hamiltonian_.n_qubits()) {
    throw ValidationError("initial state does not match the Hamiltonian");
  }
  std::map<std::uint64_t, double> record_at;
  for (double t : record_times) {
    const auto step = static_cast<std::uint64_t>(
        std::clamp(std::llround(t / plan_.dt), 0LL,
                   static_cast<long long>(plan_.n_steps)));
    record_at.emplace(step, static_cast<double>(step) * plan_.dt);
  }

  SplitMix64 rng = SplitMix64::for_stream(cfg_.base_seed, stream);
  SamplerSpec sampler = cfg_.sampler;
  GateCounter gates;
  Trajectory out{.records = {}, .final_state = psi0};

  if (record_at.contains(0)) {
    out.records.push_back({0.0, 0, out.final_state});
  }
  for (std::uint64_t n = 1; n <= plan_.n_steps; ++n) {
    if (!h1_terms_.empty() &&
        cfg_.sampler.mode == SamplerMode::StateAdaptive) {
      sampler.probs = state_adaptive_probs(h1_terms_, out.final_state);
    }
    switch (cfg_.scheme) {
      case SchemeKind::DeterministicFirst:
      case SchemeKind::DeterministicSymmetric:
        u0_.apply(out.final_state, plan_.dt, gates);
        break;
      case SchemeKind::HybridFirst:
        step_hybrid_first(out.final_state, u0_, h1_terms_, sampler, plan_.dt,
                          rng, gates);
        break;
      default:
        step_hybrid_symmetric(out.final_state, u0_, h1_terms_, sampler,
                              plan_.dt, rng, gates);
        break;
    }
    if (auto it = record_at.find(n); it != record_at.end()) {
      out.records.push_back({it->second, gates.count, out.final_state});
    }
  }
  out.final_time = plan_.horizon;
  out.total_gates = gates.count;
  return out;
}

Trajectory run_trajectory(const PartitionedHamiltonian& h,
                          const SchemeConfig& cfg, const StateVector& psi0,
                          std::span<const double> record_times,
                          std::uint64_t stream, int dense_cap) {
  return SchemeRunner(h, cfg, dense_cap).run(psi0, record_times, stream);
}

Trajectory run_reference(const PartitionedHamiltonian& h,
                         const StateVector& psi0,
                         std::span<const double> record_times,
                         int dense_cap) {
  if (psi0.n_qubits() != h.n_qubits()) {
    throw ValidationError("initial state does not match the Hamiltonian");
  }
  const ExactPropagator propagator(h.full_sum(), dense_cap);
  Trajectory out{.records = {}, .final_state = psi0};
  double last = 0.0;
  for (double t : record_times) {
    StateVector state = psi0;
    propagator.apply(state, t);
    out.records.push_back({t, 0, state});
    last = t;
  }
  if (!out.records.empty()) {
    out.final_state = out.records.back().state;
  }
  out.final_time = last;
  return out;
}

}  // namespace hytrot
