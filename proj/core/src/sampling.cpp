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

#include <hytrot/sampling.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace hytrot {

namespace {

/// Neumaier-compensated sum.
double compensated_sum(std::span<const double> values) {
  double sum = 0.0;
  double compensation = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      compensation += (sum - t) + v;
    } else {
      compensation += (v - t) + sum;
    }
    sum = t;
  }
  return sum + compensation;
}

std::vector<double> normalized(std::vector<double> magnitudes, double* total) {
  const double sum = compensated_sum(magnitudes);
  if (sum <= 0.0) {
    throw ValidationError("cannot normalize probabilities: zero total weight");
  }
  for (double& m : magnitudes) m /= sum;
  if (total != nullptr) *total = sum;
  return magnitudes;
}

int draw_from_cdf(std::span<const double> probs, SplitMix64& rng) {
  const double u = rng.next_double();
  double acc = 0.0;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    acc += probs[j];
    if (u < acc) return static_cast<int>(j);
  }
  return static_cast<int>(probs.size() - 1);
}

}  // namespace

const char* to_string(SamplerMode mode) {
  switch (mode) {
    case SamplerMode::UniformBatch: return "uniform";
    case SamplerMode::Importance: return "importance";
    default: return "adaptive";
  }
}

SamplerMode sampler_mode_from_string(const std::string& name) {
  if (name == "uniform") return SamplerMode::UniformBatch;
  if (name == "importance") return SamplerMode::Importance;
  if (name == "adaptive") return SamplerMode::StateAdaptive;
  throw ValidationError("unknown sampler mode '" + name + "'");
}

SamplerSpec SamplerSpec::uniform(int batch_size) {
  SamplerSpec spec;
  spec.mode = SamplerMode::UniformBatch;
  spec.batch_size = batch_size;
  return spec;
}

SamplerSpec SamplerSpec::importance(std::span<const HamiltonianTerm> h1) {
  SamplerSpec spec;
  spec.mode = SamplerMode::Importance;
  spec.batch_size = 1;
  ImportanceWeights w = importance_probs(h1);
  spec.probs = std::move(w.probs);
  spec.lambda = w.lambda;
  return spec;
}

SamplerSpec SamplerSpec::state_adaptive(std::span<const HamiltonianTerm> h1) {
  SamplerSpec spec = importance(h1);
  spec.mode = SamplerMode::StateAdaptive;
  return spec;
}

void SamplerSpec::validate(int n_r) const {
  if (n_r < 1) {
    throw ValidationError("sampler requires a nonempty random pool");
  }
  if (mode == SamplerMode::UniformBatch) {
    if (batch_size < 1 || batch_size > n_r) {
      throw ValidationError("uniform batch size must be in [1, n_r = " +
                            std::to_string(n_r) + "], got " +
                            std::to_string(batch_size));
    }
    return;
  }
  if (batch_size != 1) {
    throw ValidationError(
        "importance-type sampling is defined for batch size 1 only");
  }
  if (static_cast<int>(probs.size()) != n_r) {
    throw ValidationError("probability vector length " +
                          std::to_string(probs.size()) +
                          " does not match pool size " + std::to_string(n_r));
  }
  for (double p : probs) {
    if (!(p > 0.0)) {
      throw ValidationError(
          "importance probabilities must be strictly positive on every term");
    }
  }
}

ImportanceWeights importance_probs(std::span<const HamiltonianTerm> h1) {
  if (h1.empty()) {
    throw ValidationError("importance probabilities need at least one term");
  }
  std::vector<double> magnitudes(h1.size());
  for (std::size_t j = 0; j < h1.size(); ++j) {
    magnitudes[j] = std::abs(h1[j].coeff);
  }
  ImportanceWeights out;
  out.probs = normalized(std::move(magnitudes), &out.lambda);
  return out;
}

std::vector<double> state_adaptive_probs(std::span<const TermSum> groups,
                                         const StateVector& state) {
  if (groups.empty()) {
    throw ValidationError("state-adaptive probabilities need terms");
  }
  std::vector<double> magnitudes(groups.size());
  for (std::size_t j = 0; j < groups.size(); ++j) {
    magnitudes[j] = apply_operator(groups[j], state.amplitudes()).norm();
  }
  return normalized(std::move(magnitudes), nullptr);
}

std::vector<double> state_adaptive_probs(std::span<const HamiltonianTerm> h1,
                                         const StateVector& state) {
  std::vector<TermSum> groups;
  groups.reserve(h1.size());
  for (const auto& term : h1) {
    TermSum sum(term.pauli.n_qubits());
    sum.add(term);
    groups.push_back(std::move(sum));
  }
  return state_adaptive_probs(groups, state);
}

BatchDraw sample_batch(const SamplerSpec& spec, int n_r, SplitMix64& rng) {
  spec.validate(n_r);
  BatchDraw draw;
  if (spec.mode == SamplerMode::UniformBatch) {
    const int k = spec.batch_size;
    // Partial Fisher-Yates: the first k entries are a uniform k-subset.
    std::vector<int> pool(n_r);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < k; ++i) {
      const int j =
          i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(
                  n_r - i)));
      std::swap(pool[i], pool[j]);
    }
    draw.indices.assign(pool.begin(), pool.begin() + k);
    std::sort(draw.indices.begin(), draw.indices.end());
    draw.weights.assign(k, static_cast<double>(n_r) / k);
    return draw;
  }
  const int j = draw_from_cdf(spec.probs, rng);
  draw.indices.push_back(j);
  draw.weights.push_back(1.0 / spec.probs[j]);
  return draw;
}

SamplingMoments delta_h_constants(std::span<const HamiltonianTerm> h1,
                                  const SamplerSpec& spec, int dense_cap) {
  if (h1.empty()) {
    throw ValidationError("delta-H constants need a nonempty random pool");
  }
  spec.validate(static_cast<int>(h1.size()));
  const int n_r = static_cast<int>(h1.size());
  const int n_qubits = h1[0].pauli.n_qubits();

  TermSum h1_sum(n_qubits);
  std::vector<double> magnitudes(h1.size());
  for (std::size_t j = 0; j < h1.size(); ++j) {
    h1_sum.add(h1[j]);
    magnitudes[j] = std::abs(h1[j].coeff);
  }
  const TermSum h1_squared = multiply(h1_sum, h1_sum);
  const PauliString identity(n_qubits);

  SamplingMoments out{TermSum(n_qubits)};

  if (spec.mode == SamplerMode::UniformBatch) {
    const int k = spec.batch_size;
    if (k < n_r && n_r > 1) {
      // Sigma = (1/K) (n_r - K)/(n_r - 1) n_r Delta,
      // Delta = sum_l h_l^2 - H1^2 / n_r.
      TermSum delta(n_qubits);
      double square_sum = 0.0;
      for (double m : magnitudes) square_sum += m * m;
      delta.add(identity, square_sum);
      delta += h1_squared.scaled(-1.0 / n_r);
      const double factor = (static_cast<double>(n_r) / k) *
                            (static_cast<double>(n_r - k) / (n_r - 1));
      out.sigma = delta.scaled(factor);
    }
    // else: K = n_r (or a single-term pool) leaves no randomness.

    const double max_magnitude =
        *std::max_element(magnitudes.begin(), magnitudes.end());
    if (k == n_r) {
      out.gamma = 0.0;
    } else if (k == 1) {
      out.gamma = n_r * max_magnitude;
    } else {
      // Triangle inequality over the worst K-subset by magnitude; certified
      // upper bound only.
      std::vector<double> sorted = magnitudes;
      std::sort(sorted.begin(), sorted.end(), std::greater<>());
      const double top_k =
          std::accumulate(sorted.begin(), sorted.begin() + k, 0.0);
      out.gamma = (static_cast<double>(n_r) / k) * top_k +
                  spectral_norm(h1_sum, dense_cap);
      out.gamma_is_bound = true;
    }
  } else {
    // Sigma = sum_j h_j^2 / p_j - H1^2, with h_j^2 = c_j^2 I.
    double weighted_square_sum = 0.0;
    for (std::size_t j = 0; j < h1.size(); ++j) {
      weighted_square_sum += magnitudes[j] * magnitudes[j] / spec.probs[j];
    }
    out.sigma.add(identity, weighted_square_sum);
    out.sigma += h1_squared.scaled(-1.0);

    double worst = 0.0;
    for (std::size_t j = 0; j < h1.size(); ++j) {
      worst = std::max(worst, magnitudes[j] / spec.probs[j]);
    }
    out.gamma = worst + spectral_norm(h1_sum, dense_cap);
    out.gamma_is_bound = true;
  }

  out.lambda = out.sigma.empty() ? 0.0 : spectral_norm(out.sigma, dense_cap);
  return out;
}

}  // namespace hytrot
