#include "doctest.h"

#include <cmath>
#include <map>

#include <hytrot/sampling.hpp>

#include "oracle.hpp"

using namespace hytrot;
namespace oracle = hytrot::testing;

namespace {

PauliString P(int n, const std::string& text) {
  return PauliString::parse(n, text);
}

// The two-term toy pool used throughout: anticommuting strings, so cross
// terms vanish in squares.
std::vector<HamiltonianTerm> toy_pool() {
  return {{0.5, P(2, "Z1")}, {0.3, P(2, "X0 X1")}};
}

}  // namespace

TEST_CASE("importance probabilities and lambda") {
  const auto pool = toy_pool();
  const ImportanceWeights w = importance_probs(pool);
  REQUIRE(w.probs.size() == 2);
  CHECK(w.probs[0] == doctest::Approx(0.625).epsilon(1e-15));
  CHECK(w.probs[1] == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(w.lambda == doctest::Approx(0.8).epsilon(1e-15));

  const std::vector<HamiltonianTerm> equal = {{0.4, P(1, "X0")},
                                              {-0.4, P(1, "Z0")}};
  const ImportanceWeights u = importance_probs(equal);
  CHECK(u.probs[0] == doctest::Approx(0.5));
  CHECK(u.probs[1] == doctest::Approx(0.5));
}

TEST_CASE("probability vectors sum to one") {
  SplitMix64 rng(3001);
  for (int trial = 0; trial < 50; ++trial) {
    const int n_r = 2 + static_cast<int>(rng.next_below(30));
    std::vector<HamiltonianTerm> pool;
    for (int j = 0; j < n_r; ++j) pool.push_back(oracle::random_term(4, rng));
    const ImportanceWeights w = importance_probs(pool);
    double sum = 0.0;
    for (double p : w.probs) sum += p;
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }
}

TEST_CASE("state-adaptive probabilities reduce to importance on Pauli terms") {
  SplitMix64 rng(3002);
  const auto pool = toy_pool();
  const StateVector psi = oracle::random_state(2, rng);
  const auto adaptive = state_adaptive_probs(pool, psi);
  const auto importance = importance_probs(pool).probs;
  REQUIRE(adaptive.size() == importance.size());
  for (std::size_t j = 0; j < adaptive.size(); ++j) {
    CHECK(adaptive[j] == doctest::Approx(importance[j]).epsilon(1e-12));
  }

  const std::vector<HamiltonianTerm> single = {{0.7, P(2, "Y0")}};
  const auto lone = state_adaptive_probs(single, psi);
  REQUIRE(lone.size() == 1);
  CHECK(lone[0] == 1.0);
}

TEST_CASE("state-adaptive probabilities for grouped terms, dense-checked") {
  SplitMix64 rng(3003);
  const StateVector psi = oracle::random_state(3, rng);
  std::vector<TermSum> groups;
  for (int g = 0; g < 3; ++g) {
    groups.push_back(oracle::random_hermitian_sum(3, 2 + g, rng));
  }
  const auto probs = state_adaptive_probs(groups, psi);

  std::vector<double> norms;
  double total = 0.0;
  for (const auto& group : groups) {
    norms.push_back(
        (oracle::naive_dense(group) * psi.amplitudes()).norm());
    total += norms.back();
  }
  for (std::size_t j = 0; j < groups.size(); ++j) {
    CHECK(probs[j] == doctest::Approx(norms[j] / total).epsilon(1e-12));
  }
}

TEST_CASE("uniform batch draws") {
  SplitMix64 rng(3004);
  SUBCASE("K = n_r selects everything with unit weights") {
    const BatchDraw draw = sample_batch(SamplerSpec::uniform(4), 4, rng);
    REQUIRE(draw.indices.size() == 4);
    for (int j = 0; j < 4; ++j) {
      CHECK(draw.indices[j] == j);
      CHECK(draw.weights[j] == 1.0);
    }
  }
  SUBCASE("K = 1 over two terms is a fair coin") {
    const SamplerSpec spec = SamplerSpec::uniform(1);
    int count0 = 0;
    const int draws = 100000;
    for (int d = 0; d < draws; ++d) {
      const BatchDraw draw = sample_batch(spec, 2, rng);
      REQUIRE(draw.indices.size() == 1);
      CHECK(draw.weights[0] == 2.0);
      if (draw.indices[0] == 0) ++count0;
    }
    const double freq = static_cast<double>(count0) / draws;
    const double sigma = std::sqrt(0.25 / draws);
    CHECK(std::abs(freq - 0.5) < 3.0 * sigma);
  }
  SUBCASE("subsets are uniform over pairs") {
    const SamplerSpec spec = SamplerSpec::uniform(2);
    std::map<std::pair<int, int>, int> counts;
    const int draws = 60000;
    for (int d = 0; d < draws; ++d) {
      const BatchDraw draw = sample_batch(spec, 4, rng);
      REQUIRE(draw.indices.size() == 2);
      CHECK(draw.indices[0] < draw.indices[1]);
      counts[{draw.indices[0], draw.indices[1]}]++;
    }
    REQUIRE(counts.size() == 6);
    const double expected = draws / 6.0;
    const double sigma = std::sqrt(expected * (1.0 - 1.0 / 6.0));
    for (const auto& [pair, count] : counts) {
      CHECK(std::abs(count - expected) < 4.0 * sigma);
    }
  }
}

TEST_CASE("importance draws follow the stated distribution") {
  SplitMix64 rng(3005);
  const auto pool = toy_pool();
  const SamplerSpec spec = SamplerSpec::importance(pool);
  const int draws = 100000;
  int count0 = 0;
  for (int d = 0; d < draws; ++d) {
    const BatchDraw draw = sample_batch(spec, 2, rng);
    if (draw.indices[0] == 0) {
      ++count0;
      CHECK(draw.weights[0] == doctest::Approx(1.0 / 0.625));
    }
  }
  const double freq = static_cast<double>(count0) / draws;
  const double sigma = std::sqrt(0.625 * 0.375 / draws);
  CHECK(std::abs(freq - 0.625) < 3.0 * sigma);
}

TEST_CASE("weighted estimator is unbiased, per coefficient") {
  SplitMix64 rng(3006);
  const int n_r = 6;
  std::vector<HamiltonianTerm> pool;
  for (int j = 0; j < n_r; ++j) pool.push_back(oracle::random_term(3, rng));

  const int draws = 100000;
  std::vector<SamplerSpec> specs = {SamplerSpec::uniform(1),
                                    SamplerSpec::uniform(2),
                                    SamplerSpec::uniform(n_r - 1),
                                    SamplerSpec::uniform(n_r),
                                    SamplerSpec::importance(pool)};
  for (const auto& spec : specs) {
    // Per-term weight accumulator: E[w_l 1(l selected)] = 1.
    std::vector<double> mean(n_r, 0.0), m2(n_r, 0.0);
    for (int d = 0; d < draws; ++d) {
      std::vector<double> x(n_r, 0.0);
      const BatchDraw draw = sample_batch(spec, n_r, rng);
      for (std::size_t i = 0; i < draw.indices.size(); ++i) {
        x[draw.indices[i]] = draw.weights[i];
      }
      for (int j = 0; j < n_r; ++j) {
        const double delta = x[j] - mean[j];
        mean[j] += delta / (d + 1);
        m2[j] += delta * (x[j] - mean[j]);
      }
    }
    for (int j = 0; j < n_r; ++j) {
      const double stderr_ = std::sqrt(m2[j] / (draws - 1.0) / draws);
      CHECK(std::abs(mean[j] - 1.0) <= 4.0 * stderr_ + 1e-12);
    }
  }
}

TEST_CASE("variance constants of the toy pool") {
  const auto pool = toy_pool();

  SUBCASE("uniform K = 1") {
    const SamplingMoments m =
        delta_h_constants(pool, SamplerSpec::uniform(1));
    REQUIRE(m.sigma.size() == 1);
    const auto& [string, coeff] = *m.sigma.terms().begin();
    CHECK(string.is_identity());
    CHECK(coeff.real() == doctest::Approx(0.34).epsilon(1e-12));
    CHECK(m.lambda == doctest::Approx(0.34).epsilon(1e-12));
    CHECK(m.gamma == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(m.gamma_is_bound);
  }

  SUBCASE("importance") {
    const SamplingMoments m =
        delta_h_constants(pool, SamplerSpec::importance(pool));
    REQUIRE(m.sigma.size() == 1);
    CHECK(m.sigma.terms().begin()->second.real() ==
          doctest::Approx(0.30).epsilon(1e-12));
    CHECK(m.lambda == doctest::Approx(0.30).epsilon(1e-12));
    // Lambda <= lambda^2 (the closed-form upper bound).
    CHECK(m.lambda <= 0.8 * 0.8 + 1e-15);
    CHECK(m.gamma_is_bound);
  }

  SUBCASE("uniform K = n_r has no randomness") {
    const SamplingMoments m =
        delta_h_constants(pool, SamplerSpec::uniform(2));
    CHECK(m.sigma.empty());
    CHECK(m.lambda == 0.0);
    CHECK(m.gamma == 0.0);
  }
}

TEST_CASE("empirical variance matches the closed form") {
  SplitMix64 rng(3007);
  const int n = 3;
  const int n_r = 5;
  std::vector<HamiltonianTerm> pool;
  for (int j = 0; j < n_r; ++j) pool.push_back(oracle::random_term(n, rng));

  TermSum h1_sum(n);
  for (const auto& term : pool) h1_sum.add(term);
  const Eigen::MatrixXcd h1_dense = oracle::naive_dense(h1_sum);
  const std::size_t dim = 1ULL << n;

  for (int k : {1, 2}) {
    const SamplerSpec spec = SamplerSpec::uniform(k);
    const SamplingMoments m = delta_h_constants(pool, spec);
    const Eigen::MatrixXcd sigma_dense = oracle::naive_dense(m.sigma);

    const int draws = 40000;
    Eigen::MatrixXcd mean = Eigen::MatrixXcd::Zero(dim, dim);
    for (int d = 0; d < draws; ++d) {
      Eigen::MatrixXcd delta = -h1_dense;
      const BatchDraw draw = sample_batch(spec, n_r, rng);
      for (std::size_t i = 0; i < draw.indices.size(); ++i) {
        const auto& term = pool[draw.indices[i]];
        delta += draw.weights[i] * term.coeff *
                 oracle::naive_dense(term.pauli);
      }
      mean += delta * delta;
    }
    mean /= static_cast<double>(draws);
    // Loose 5-sigma-scale band; the per-entry acceptance test is stricter.
    const double scale = sigma_dense.cwiseAbs().maxCoeff() + 1.0;
    CHECK(oracle::max_abs_diff(mean, sigma_dense) <
          0.05 * scale * std::sqrt(40000.0 / draws));
  }
}

TEST_CASE("invalid sampler configurations are rejected") {
  const auto pool = toy_pool();
  SamplerSpec imp = SamplerSpec::importance(pool);
  imp.batch_size = 2;
  CHECK_THROWS_AS(imp.validate(2), ValidationError);

  CHECK_THROWS_AS(SamplerSpec::uniform(3).validate(2), ValidationError);
  CHECK_THROWS_AS(SamplerSpec::uniform(0).validate(2), ValidationError);

  SplitMix64 rng(1);
  CHECK_THROWS_AS(sample_batch(SamplerSpec::uniform(3), 2, rng),
                  ValidationError);
  CHECK_THROWS_AS(importance_probs({}), ValidationError);
}
