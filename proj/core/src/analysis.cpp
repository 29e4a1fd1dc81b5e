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

#include <hytrot/analysis.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

namespace hytrot {

namespace {

// Trajectories are processed in fixed chunks and chunk results are reduced
// in chunk order, so statistics are independent of the worker count.
constexpr int kChunkSize = 8;

struct ChunkAccumulator {
  // Indexed [time][trajectory-within-chunk], in stream order.
  std::vector<std::vector<double>> mse;
  std::vector<std::vector<double>> fidelity;
  std::vector<Eigen::VectorXcd> state_sum;  // per time
  std::vector<std::uint64_t> gate_counts;   // per time
  std::uint64_t gates = 0;
};

void run_chunk(const SchemeRunner& runner, const StateVector& psi0,
               std::span<const double> times,
               const std::vector<StateVector>& reference, int first_stream,
               int count, ChunkAccumulator& out) {
  const std::size_t dim = psi0.dim();
  const std::size_t n_times = times.size();
  out.mse.assign(n_times, {});
  out.fidelity.assign(n_times, {});
  out.state_sum.assign(n_times, Eigen::VectorXcd::Zero(dim));
  for (auto& v : out.mse) v.reserve(count);
  for (auto& v : out.fidelity) v.reserve(count);

  for (int m = 0; m < count; ++m) {
    const Trajectory traj = runner.run(psi0, times, first_stream + m);
    if (traj.records.size() != n_times) {
      throw NumericalError("trajectory produced an unexpected record count");
    }
    out.gates = traj.total_gates;
    if (m == 0) {
      out.gate_counts.clear();
      for (const auto& rec : traj.records) {
        out.gate_counts.push_back(rec.gate_count);
      }
    }
    for (std::size_t ti = 0; ti < n_times; ++ti) {
      const Eigen::VectorXcd& phi = traj.records[ti].state.amplitudes();
      const Eigen::VectorXcd& psi = reference[ti].amplitudes();
      out.mse[ti].push_back((psi - phi).squaredNorm());
      out.fidelity[ti].push_back(1.0 - psi.dot(phi).real());
      out.state_sum[ti] += phi;
    }
  }
}

void check_nonnegative(double value, const char* name) {
  if (!(value >= 0.0)) {
    throw ValidationError(std::string(name) + " must be nonnegative");
  }
}

std::uint64_t binomial_capped(int n, int k, std::uint64_t cap) {
  double value = 1.0;
  for (int i = 0; i < k; ++i) {
    value *= static_cast<double>(n - i) / static_cast<double>(i + 1);
    if (value > static_cast<double>(cap) * 2.0) {
      return cap + 1;
    }
  }
  return static_cast<std::uint64_t>(std::llround(value));
}

// ||(H1+dH) dH^2 (H1+dH)|| for one realisation A = (n_r/K) sum_{S} h_l.
double outcome_norm(const TermSum& a, const TermSum& h1_sum, int dense_cap) {
  TermSum delta = a;
  delta += h1_sum.scaled(-1.0);
  const TermSum m =
      multiply(multiply(a, delta), multiply(delta, a));
  if (m.empty()) return 0.0;
  return spectral_norm(m, dense_cap);
}

}  // namespace

FluctuationExpectation mean_fluctuation_norm(
    std::span<const HamiltonianTerm> h1, const SamplerSpec& spec,
    int dense_cap) {
  const int n_r = static_cast<int>(h1.size());
  const int n_qubits = h1[0].pauli.n_qubits();
  TermSum h1_sum(n_qubits);
  for (const auto& term : h1) h1_sum.add(term);

  FluctuationExpectation out;
  if (spec.mode != SamplerMode::UniformBatch || spec.batch_size == 1) {
    // K = 1: n_r atomic outcomes, enumerate exactly.
    for (int j = 0; j < n_r; ++j) {
      const double p = spec.mode == SamplerMode::UniformBatch
                           ? 1.0 / n_r
                           : spec.probs[j];
      const double w = spec.mode == SamplerMode::UniformBatch
                           ? static_cast<double>(n_r)
                           : 1.0 / p;
      TermSum a(n_qubits);
      a.add(h1[j].pauli, w * h1[j].coeff);
      out.value += p * outcome_norm(a, h1_sum, dense_cap);
    }
    return out;
  }

  const int k = spec.batch_size;
  const double weight = static_cast<double>(n_r) / k;
  constexpr std::uint64_t kEnumerationCap = 10000;
  if (binomial_capped(n_r, k, kEnumerationCap) <= kEnumerationCap) {
    // Enumerate all K-subsets, each with equal probability.
    std::vector<int> subset(k);
    std::iota(subset.begin(), subset.end(), 0);
    double total = 0.0;
    std::uint64_t outcomes = 0;
    for (;;) {
      TermSum a(n_qubits);
      for (int idx : subset) a.add(h1[idx].pauli, weight * h1[idx].coeff);
      total += outcome_norm(a, h1_sum, dense_cap);
      ++outcomes;
      int pos = k - 1;
      while (pos >= 0 && subset[pos] == n_r - k + pos) --pos;
      if (pos < 0) break;
      ++subset[pos];
      for (int q = pos + 1; q < k; ++q) subset[q] = subset[q - 1] + 1;
    }
    out.value = total / static_cast<double>(outcomes);
    return out;
  }

  // Monte-Carlo fallback with a fixed internal stream.
  constexpr int kDraws = 100000;
  SplitMix64 rng(0x8ba2e8ba2e8ba2e9ULL);
  double mean = 0.0;
  double m2 = 0.0;
  for (int d = 0; d < kDraws; ++d) {
    const BatchDraw draw = sample_batch(spec, n_r, rng);
    TermSum a(n_qubits);
    for (std::size_t i = 0; i < draw.indices.size(); ++i) {
      const auto& term = h1[draw.indices[i]];
      a.add(term.pauli, draw.weights[i] * term.coeff);
    }
    const double x = outcome_norm(a, h1_sum, dense_cap);
    const double delta = x - mean;
    mean += delta / (d + 1);
    m2 += delta * (x - mean);
  }
  out.value = mean;
  out.stderr_ = std::sqrt(m2 / (kDraws - 1.0) / kDraws);
  out.enumerated = false;
  return out;
}

EnsembleStats run_ensemble(const PartitionedHamiltonian& h,
                           const SchemeConfig& cfg, const StateVector& psi0,
                           int ensemble_size,
                           std::span<const double> record_times,
                           int dense_cap, int n_threads) {
  if (ensemble_size < 2) {
    throw ValidationError("ensembles need at least 2 members");
  }
  const SchemeRunner runner(h, cfg, dense_cap);
  const std::vector<double> times = runner.snap_times(record_times);
  if (times.empty()) {
    throw ValidationError("no record times requested");
  }

  const Trajectory ref = run_reference(h, psi0, times, dense_cap);
  std::vector<StateVector> reference;
  reference.reserve(times.size());
  for (const auto& rec : ref.records) reference.push_back(rec.state);

  const int n_chunks = (ensemble_size + kChunkSize - 1) / kChunkSize;
  std::vector<ChunkAccumulator> chunks(n_chunks);

  int workers = n_threads > 0
                    ? n_threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, n_chunks);

  std::atomic<int> next_chunk{0};
  std::atomic<bool> failed{false};
  auto worker = [&]() {
    for (;;) {
      const int c = next_chunk.fetch_add(1);
      if (c >= n_chunks || failed.load()) return;
      const int first = c * kChunkSize;
      const int count = std::min(kChunkSize, ensemble_size - first);
      try {
        run_chunk(runner, psi0, times, reference, first, count, chunks[c]);
      } catch (...) {
        failed.store(true);
        return;
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) {
    throw NumericalError("a trajectory worker failed");
  }

  const std::size_t n_times = times.size();
  EnsembleStats stats;
  stats.times = times;
  stats.ensemble_size = ensemble_size;
  stats.mse.assign(n_times, 0.0);
  stats.mse_stderr.assign(n_times, 0.0);
  stats.fidelity_err.assign(n_times, 0.0);
  stats.bias_sq.assign(n_times, 0.0);

  for (std::size_t ti = 0; ti < n_times; ++ti) {
    double sum = 0.0;
    double fsum = 0.0;
    Eigen::VectorXcd state_sum = Eigen::VectorXcd::Zero(psi0.dim());
    for (const auto& chunk : chunks) {
      for (double v : chunk.mse[ti]) sum += v;
      for (double v : chunk.fidelity[ti]) fsum += v;
      state_sum += chunk.state_sum[ti];
    }
    const double mean = sum / ensemble_size;
    double var = 0.0;
    for (const auto& chunk : chunks) {
      for (double v : chunk.mse[ti]) var += (v - mean) * (v - mean);
    }
    stats.mse[ti] = mean;
    stats.mse_stderr[ti] =
        std::sqrt(var / (ensemble_size - 1.0) / ensemble_size);
    stats.fidelity_err[ti] = fsum / ensemble_size;
    stats.bias_sq[ti] =
        (reference[ti].amplitudes() - state_sum / ensemble_size)
            .squaredNorm();
  }

  // Every stream consumes the same budget; report the first chunk's ledger.
  stats.gate_counts = chunks.front().gate_counts;
  stats.gates_per_trajectory = chunks.front().gates;
  return stats;
}

double one_step_mse_bound(double lambda, double comm_norm, double dt, int k) {
  check_nonnegative(lambda, "Lambda");
  check_nonnegative(comm_norm, "the commutator norm");
  check_nonnegative(dt, "dt");
  if (k < 1) throw ValidationError("K must be at least 1");
  return 2.0 * lambda * dt * dt / k +
         dt * dt * dt * dt * comm_norm * comm_norm;
}

double global_mse_bound(double lambda, double gamma, double comm_norm,
                        double t, double dt, int k, int n_r) {
  check_nonnegative(lambda, "Lambda");
  check_nonnegative(gamma, "Gamma");
  check_nonnegative(comm_norm, "the commutator norm");
  check_nonnegative(t, "t");
  check_nonnegative(dt, "dt");
  if (k < 1 || k > n_r) {
    throw ValidationError("K must be in [1, n_r]");
  }
  const double prefactor =
      2.0 * lambda * t * dt / k + comm_norm * t * dt * dt * dt;
  const double exponent =
      (static_cast<double>(n_r - k) / n_r) * gamma * t +
      0.5 * t * dt * comm_norm;
  return prefactor * std::exp(exponent);
}

BiasOfMean bias_of_mean(const PartitionedHamiltonian& h,
                        const SchemeConfig& cfg, const StateVector& psi0,
                        int ensemble_size,
                        std::span<const double> record_times, int dense_cap,
                        int n_threads) {
  const EnsembleStats stats = run_ensemble(h, cfg, psi0, ensemble_size,
                                           record_times, dense_cap, n_threads);
  const auto [h0_sum, h1] = partition(h, cfg.n_d);
  TermSum h1_sum(h.n_qubits());
  for (const auto& term : h1) h1_sum.add(term);

  const double comm = commutator_norm(h0_sum, h1_sum, dense_cap);
  FluctuationExpectation expectation;
  if (!h1.empty()) {
    SamplerSpec spec = cfg.sampler;
    if (spec.mode != SamplerMode::UniformBatch && spec.probs.empty()) {
      spec = SamplerSpec::importance(h1);
    }
    expectation = mean_fluctuation_norm(h1, spec, dense_cap);
  }

  BiasOfMean out;
  out.times = stats.times;
  out.mse = stats.mse;
  out.expectation_term = expectation.value;
  out.expectation_stderr = expectation.stderr_;
  out.enumerated = expectation.enumerated;
  const StepPlan plan = resolve_steps(cfg, h.term_count());
  for (std::size_t ti = 0; ti < stats.times.size(); ++ti) {
    out.bias_norm.push_back(std::sqrt(stats.bias_sq[ti]));
    const double t = stats.times[ti];
    out.bound.push_back(0.5 * t * plan.dt * comm +
                        0.5 * t * plan.dt *
                            std::sqrt(expectation.value));
  }
  return out;
}

EstimatorValue error_estimator(double lambda_nd, double c_nd, int n_d, int k,
                               double t_final, std::uint64_t n_gate) {
  check_nonnegative(lambda_nd, "Lambda");
  check_nonnegative(c_nd, "C");
  if (n_gate == 0) throw ValidationError("the gate budget must be positive");
  const double units = static_cast<double>(n_d) + k;
  const double gates = static_cast<double>(n_gate);
  EstimatorValue out;
  out.variance_part = lambda_nd * units * t_final * t_final / gates;
  out.bias_part = c_nd * units * units * units * t_final * t_final * t_final *
                  t_final / (gates * gates * gates);
  out.total = out.variance_part + out.bias_part;
  return out;
}

int optimal_partition(const PartitionedHamiltonian& h, SamplerMode mode,
                      int k, double t_final, std::uint64_t n_gate, int stride,
                      int dense_cap, std::vector<PartitionScanPoint>* scan) {
  if (stride < 1) throw ValidationError("stride must be at least 1");
  const int L = h.term_count();
  std::vector<int> grid;
  for (int nd = 0; nd < L; nd += stride) grid.push_back(nd);
  grid.push_back(L);

  int best_nd = 0;
  double best_value = 0.0;
  bool first = true;
  for (int nd : grid) {
    const auto h1 = h.h1_terms(nd);
    double lambda = 0.0;
    if (!h1.empty()) {
      SamplerSpec spec = mode == SamplerMode::UniformBatch
                             ? SamplerSpec::uniform(std::min<int>(
                                   k, static_cast<int>(h1.size())))
                             : SamplerSpec::importance(h1);
      if (mode == SamplerMode::StateAdaptive) {
        spec.mode = SamplerMode::StateAdaptive;
      }
      lambda = delta_h_constants(h1, spec, dense_cap).lambda;
    }
    const double c_nd = bch_constant(h, nd, dense_cap);
    const EstimatorValue value =
        error_estimator(lambda, c_nd, nd, k, t_final, n_gate);
    if (scan != nullptr) {
      scan->push_back({nd, lambda, c_nd, value});
    }
    if (first || value.total < best_value) {
      best_value = value.total;
      best_nd = nd;
      first = false;
    }
  }
  return best_nd;
}

double gate_count_markov(double lambda, double comm_norm, int n_d, double t,
                         double eps, double delta) {
  check_nonnegative(lambda, "Lambda");
  check_nonnegative(comm_norm, "the commutator norm");
  check_nonnegative(t, "t");
  if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta < 1.0)) {
    throw ValidationError("eps and delta must lie in (0, 1)");
  }
  const double shots = static_cast<double>(n_d) + 1.0;
  const double variance_branch = shots * lambda * t * t / (eps * eps * delta);
  const double bias_branch =
      shots * std::cbrt(2.0 * t * t * t * t * comm_norm / (eps * eps * delta));
  return std::max(variance_branch, bias_branch);
}

double gate_count_mcdiarmid(double constant, int n_d, double t, double eps,
                            double delta, ConcentrationMode mode) {
  check_nonnegative(constant, "the concentration constant");
  check_nonnegative(t, "t");
  if (!(eps > 0.0 && eps < 1.0) || !(delta > 0.0 && delta <= 1.0)) {
    throw ValidationError("eps must lie in (0, 1) and delta in (0, 1]");
  }
  const double shots = static_cast<double>(n_d) + 1.0;
  if (mode == ConcentrationMode::Uniform) {
    return -shots * std::log(delta) * t * t * constant * constant /
           (eps * eps);
  }
  return -shots * std::log(delta) * t * t * constant / (4.0 * eps * eps);
}

double fit_loglog_slope(std::span<const double> xs,
                        std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw ValidationError("slope fits need at least two points");
  }
  const std::size_t n = xs.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw ValidationError("log-log fits need positive data");
    }
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-30) {
    throw NumericalError("degenerate abscissae in slope fit");
  }
  return (n * sxy - sx * sy) / denom;
}

double fit_linear_prefactor(std::span<const double> xs,
                            std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.empty()) {
    throw ValidationError("prefactor fits need data");
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += xs[i] * ys[i];
    sxx += xs[i] * xs[i];
  }
  if (sxx <= 0.0) throw NumericalError("degenerate abscissae");
  return sxy / sxx;
}

}  // namespace hytrot
