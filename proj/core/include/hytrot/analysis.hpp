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

#include <span>
#include <vector>

#include <hytrot/scheme.hpp>

namespace hytrot {

/// Monte-Carlo error statistics of an ensemble of trajectories against the
/// exact reference evolution. At each recorded time:
///   mse          (1/M) sum_m ||psi_n - phi_n^(m)||^2
///   mse_stderr   sqrt(unbiased sample variance / M)
///   fidelity_err mean of f_n = 1 - Re<psi_n|phi_n>  (||e_n||^2 = 2 f_n)
///   bias_sq      ||psi_n - mean_m phi_n^(m)||^2     (<= mse by convexity)
struct EnsembleStats {
  std::vector<double> times;
  std::vector<double> mse;
  std::vector<double> mse_stderr;
  std::vector<double> fidelity_err;
  std::vector<double> bias_sq;
  /// Gate units consumed up to each recorded time (identical across
  /// trajectories).
  std::vector<std::uint64_t> gate_counts;
  int ensemble_size = 0;
  std::uint64_t gates_per_trajectory = 0;
};

/// Runs M independent trajectories (streams 0..M-1 of cfg.base_seed) against
/// run_reference. Requires M >= 2. n_threads = 0 picks the hardware count;
/// results do not depend on the thread count.
EnsembleStats run_ensemble(const PartitionedHamiltonian& h,
                           const SchemeConfig& cfg, const StateVector& psi0,
                           int ensemble_size,
                           std::span<const double> record_times,
                           int dense_cap = kDefaultDenseCap,
                           int n_threads = 0);

/// One-step MSE bound 2 Lambda dt^2 / K + dt^4 ||[H0,H1]||^2.
double one_step_mse_bound(double lambda, double comm_norm, double dt, int k);

/// Global MSE bound
///   (2 Lambda t dt / K + comm t dt^3)
///     * exp((n_r - K)/n_r Gamma t + (t dt / 2) comm).
double global_mse_bound(double lambda, double gamma, double comm_norm,
                        double t, double dt, int k, int n_r);

/// Bias-of-the-mean study: the measured series ||psi_n - mean(phi_n)|| next
/// to the closed-form bound
///   (t dt / 2) ||[H0,H1]||
///     + (t dt / 2) E[||(H1+dH) dH^2 (H1+dH)||]^(1/2).
/// The expectation is enumerated exactly when the sampler has at most 10^4
/// atomic outcomes, otherwise estimated from 10^5 draws with a reported
/// standard error.
struct BiasOfMean {
  std::vector<double> times;
  std::vector<double> bias_norm;
  std::vector<double> bound;
  std::vector<double> mse;
  double expectation_term = 0.0;
  double expectation_stderr = 0.0;
  bool enumerated = true;
};

/// E[||(H1+dH) dH^2 (H1+dH)||], the statistical factor of the bias bound.
/// Enumerated exactly for K = 1 (and for uniform batches with at most 10^4
/// subsets), otherwise estimated from 10^5 draws.
struct FluctuationExpectation {
  double value = 0.0;
  double stderr_ = 0.0;
  bool enumerated = true;
};

FluctuationExpectation mean_fluctuation_norm(
    std::span<const HamiltonianTerm> h1, const SamplerSpec& spec,
    int dense_cap = kDefaultDenseCap);

BiasOfMean bias_of_mean(const PartitionedHamiltonian& h,
                        const SchemeConfig& cfg, const StateVector& psi0,
                        int ensemble_size,
                        std::span<const double> record_times,
                        int dense_cap = kDefaultDenseCap, int n_threads = 0);

/// The two addends of the fixed-budget error estimator
///   Lambda(n_d) (n_d+K) T^2 / N_gate + C(n_d) (n_d+K)^3 T^4 / N_gate^3.
struct EstimatorValue {
  double total = 0.0;
  double variance_part = 0.0;
  double bias_part = 0.0;
};

EstimatorValue error_estimator(double lambda_nd, double c_nd, int n_d, int k,
                               double t_final, std::uint64_t n_gate);

/// One evaluated grid point of a partition scan.
struct PartitionScanPoint {
  int n_d = 0;
  double lambda = 0.0;
  double c_const = 0.0;
  EstimatorValue estimator;
};

/// Evaluates the estimator on the grid {0, stride, 2 stride, ..., L} with
/// Lambda(n_d) and C(n_d) recomputed per point, and returns the argmin (ties
/// go to the smaller n_d). The scan points are appended to *scan when given.
int optimal_partition(const PartitionedHamiltonian& h, SamplerMode mode,
                      int k, double t_final, std::uint64_t n_gate, int stride,
                      int dense_cap = kDefaultDenseCap,
                      std::vector<PartitionScanPoint>* scan = nullptr);

/// Markov gate count: the larger of
///   (n_d+1) Lambda t^2 / (eps^2 delta)  and
///   (n_d+1) cbrt(2 t^4 comm / (eps^2 delta)),
/// with unit implied constants (the source estimates are O(.)).
double gate_count_markov(double lambda, double comm_norm, int n_d, double t,
                         double eps, double delta);

enum class ConcentrationMode { Uniform, Importance };

/// McDiarmid gate count with unit implied constant:
///   uniform:    (n_d+1) (-ln delta) t^2 Gamma^2 / eps^2   (pass Gamma)
///   importance: (n_d+1) (-ln delta) t^2 Lambda / (4 eps^2) (pass Lambda)
double gate_count_mcdiarmid(double constant, int n_d, double t, double eps,
                            double delta, ConcentrationMode mode);

/// All closed-form bounds for one configuration, with the inputs they were
/// evaluated from.
struct BoundReport {
  // Inputs.
  double lambda = 0.0;
  double gamma = 0.0;
  double comm_norm = 0.0;
  double c_const = 0.0;
  double t = 0.0;
  double dt = 0.0;
  int k = 1;
  int n_d = 0;
  int n_r = 0;
  double eps = 0.1;
  double delta = 0.1;
  double t_final = 0.0;
  std::uint64_t n_gate = 0;
  // Outputs.
  double one_step_mse = 0.0;
  double global_mse = 0.0;
  double bias_bound = 0.0;
  EstimatorValue estimator;
  double gates_markov = 0.0;
  double gates_mcdiarmid = 0.0;
};

/// Least-squares slope of log(y) against log(x).
double fit_loglog_slope(std::span<const double> xs,
                        std::span<const double> ys);

/// Least-squares prefactor a for the model y = a x (fit through the origin).
double fit_linear_prefactor(std::span<const double> xs,
                            std::span<const double> ys);

}  // namespace hytrot
