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

#include <hytrot/dense.hpp>
#include <hytrot/pauli.hpp>
#include <hytrot/rng.hpp>
#include <hytrot/state.hpp>

namespace hytrot {

enum class SamplerMode {
  /// Exactly-K subset drawn uniformly without replacement, weights n_r / K.
  UniformBatch,
  /// One term with probability p_j = |c_j| / sum |c_k|, weight 1 / p_j.
  Importance,
  /// One term with probability proportional to ||h_j |psi>||, refreshed from
  /// the current state every step. Coincides with Importance for pure Pauli
  /// terms.
  StateAdaptive,
};

const char* to_string(SamplerMode mode);
SamplerMode sampler_mode_from_string(const std::string& name);

/// How the random pool is sampled each step. Importance-type modes fix
/// K = 1; configurations with K > 1 outside UniformBatch are rejected rather
/// than given invented semantics.
struct SamplerSpec {
  SamplerMode mode = SamplerMode::UniformBatch;
  int batch_size = 1;
  /// Per-term selection probabilities (importance modes only).
  std::vector<double> probs;
  /// sum_j |c_j| over the pool, reported alongside importance probabilities.
  double lambda = 0.0;

  static SamplerSpec uniform(int batch_size);
  static SamplerSpec importance(std::span<const HamiltonianTerm> h1);
  static SamplerSpec state_adaptive(std::span<const HamiltonianTerm> h1);

  /// Throws ValidationError unless the spec is usable for a pool of n_r
  /// terms.
  void validate(int n_r) const;
};

/// One step's selection: term indices (ascending) and their weight
/// multipliers. The weighted indicator estimator sum_l w_l [l selected] h_l
/// has expectation H1 exactly.
struct BatchDraw {
  std::vector<int> indices;
  std::vector<double> weights;
};

struct ImportanceWeights {
  std::vector<double> probs;
  /// lambda = sum_j |c_j|; lambda^2 upper-bounds the variance norm.
  double lambda = 0.0;
};

/// p_j = |c_j| / sum_k |c_k| with compensated summation. Throws when all
/// coefficients are zero.
ImportanceWeights importance_probs(std::span<const HamiltonianTerm> h1);

/// p_j proportional to ||h_j |psi>||, for general (possibly grouped)
/// operator-valued terms. For pure Pauli terms this equals
/// importance_probs.
std::vector<double> state_adaptive_probs(std::span<const TermSum> groups,
                                         const StateVector& state);
std::vector<double> state_adaptive_probs(std::span<const HamiltonianTerm> h1,
                                         const StateVector& state);

/// Draws one batch. Reproducible for a fixed rng stream.
BatchDraw sample_batch(const SamplerSpec& spec, int n_r, SplitMix64& rng);

/// The statistical constants of the sampling noise delta H:
///   sigma      the variance operator Sigma = E[delta H^2], symbolic;
///   lambda     Lambda = ||Sigma||;
///   gamma      the almost-sure norm bound of delta H.
/// For uniform batches Sigma = (1/K) (n_r-K)/(n_r-1) n_r Delta with
/// Delta = sum h_l^2 - H1^2 / n_r (zero variance when K = n_r, or when
/// n_r = 1). For importance sampling Sigma = sum h_j^2 / p_j - H1^2.
/// gamma_is_bound marks values certified only as upper bounds (uniform
/// K > 1 via the worst K-subset triangle inequality, and importance via
/// max_j |c_j|/p_j + ||H1||).
struct SamplingMoments {
  TermSum sigma;
  double lambda = 0.0;
  double gamma = 0.0;
  bool gamma_is_bound = false;
};

SamplingMoments delta_h_constants(std::span<const HamiltonianTerm> h1,
                                  const SamplerSpec& spec,
                                  int dense_cap = kDefaultDenseCap);

}  // namespace hytrot
