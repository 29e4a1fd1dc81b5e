#include "doctest.h"

#include <cmath>

#include <hytrot/scheme.hpp>

#include "oracle.hpp"

using namespace hytrot;
namespace oracle = hytrot::testing;

namespace {

PauliString P(int n, const std::string& text) {
  return PauliString::parse(n, text);
}

PartitionedHamiltonian toy_hamiltonian() {
  std::vector<HamiltonianTerm> terms = {{0.5, P(2, "Z1")},
                                        {0.3, P(2, "X0 X1")}};
  return PartitionedHamiltonian(2, std::move(terms));
}

double state_diff(const StateVector& a, const StateVector& b) {
  return (a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff();
}

SchemeConfig hybrid_config(int n_d, SamplerSpec sampler, double t, double dt,
                           std::uint64_t seed = 17) {
  SchemeConfig cfg;
  cfg.scheme = SchemeKind::HybridFirst;
  cfg.n_d = n_d;
  cfg.sampler = std::move(sampler);
  cfg.u0_mode = U0Mode::Exact;
  cfg.t_final = t;
  cfg.step.dt = dt;
  cfg.base_seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("step size from a gate budget") {
  const PartitionedHamiltonian h = heisenberg_chain(4, 3);  // L = 22
  SchemeConfig cfg;
  cfg.scheme = SchemeKind::HybridFirst;
  cfg.n_d = 10;
  cfg.sampler = SamplerSpec::uniform(1);
  cfg.t_final = 40.0;
  cfg.step.gate_budget = 1024;
  const StepPlan plan = resolve_steps(cfg, h.term_count());
  CHECK(plan.units_per_step == 11);
  CHECK(plan.dt == 0.4296875);  // (10+1) * 40 / 1024, exact in binary
  CHECK(plan.n_steps == 93);    // truncated at the last whole step
  CHECK(plan.truncated);
  CHECK(plan.horizon == doctest::Approx(93 * 0.4296875));
}

TEST_CASE("units per step across schemes and U0 modes") {
  const int L = 22;
  SchemeConfig cfg;
  cfg.sampler = SamplerSpec::uniform(3);
  cfg.n_d = 10;
  cfg.t_final = 1.0;
  cfg.step.dt = 0.1;

  cfg.scheme = SchemeKind::DeterministicFirst;
  CHECK(units_per_step(cfg, L) == 22);
  cfg.scheme = SchemeKind::DeterministicSymmetric;
  CHECK(units_per_step(cfg, L) == 43);

  cfg.scheme = SchemeKind::HybridFirst;
  cfg.u0_mode = U0Mode::Exact;
  CHECK(units_per_step(cfg, L) == 13);
  cfg.u0_mode = U0Mode::SplitFirst;
  CHECK(units_per_step(cfg, L) == 13);
  cfg.u0_mode = U0Mode::SplitSymmetric;
  CHECK(units_per_step(cfg, L) == 22);  // 2*10-1 + 3

  cfg.scheme = SchemeKind::HybridSymmetric;
  cfg.u0_mode = U0Mode::Exact;
  CHECK(units_per_step(cfg, L) == 16);  // 10 + 2*3
}

TEST_CASE("gate ledger matches the closed forms") {
  const PartitionedHamiltonian h = heisenberg_chain(3, 3);  // L = 12
  const StateVector psi0 = StateVector::zero_state(3);
  const double t = 1.0;
  const double dt = 0.125;
  const std::uint64_t steps = 8;

  SUBCASE("hybrid first order") {
    SchemeConfig cfg = hybrid_config(5, SamplerSpec::uniform(2), t, dt);
    const Trajectory traj = run_trajectory(h, cfg, psi0, {});
    CHECK(traj.total_gates == steps * (5 + 2));
  }
  SUBCASE("hybrid symmetric") {
    SchemeConfig cfg = hybrid_config(5, SamplerSpec::uniform(2), t, dt);
    cfg.scheme = SchemeKind::HybridSymmetric;
    const Trajectory traj = run_trajectory(h, cfg, psi0, {});
    CHECK(traj.total_gates == steps * (5 + 2 * 2));
  }
  SUBCASE("split-symmetric U0") {
    SchemeConfig cfg = hybrid_config(5, SamplerSpec::uniform(2), t, dt);
    cfg.u0_mode = U0Mode::SplitSymmetric;
    const Trajectory traj = run_trajectory(h, cfg, psi0, {});
    CHECK(traj.total_gates == steps * (2 * 5 - 1 + 2));
  }
  SUBCASE("deterministic schemes") {
    SchemeConfig cfg = hybrid_config(0, SamplerSpec::uniform(1), t, dt);
    cfg.scheme = SchemeKind::DeterministicFirst;
    CHECK(run_trajectory(h, cfg, psi0, {}).total_gates == steps * 12);
    cfg.scheme = SchemeKind::DeterministicSymmetric;
    CHECK(run_trajectory(h, cfg, psi0, {}).total_gates == steps * 23);
  }
}

TEST_CASE("degenerate limits agree with the pure schemes") {
  const PartitionedHamiltonian h = toy_hamiltonian();
  SplitMix64 rng(4001);
  const StateVector psi0 = oracle::random_state(2, rng);
  const double t = 0.5;
  const double dt = 0.05;

  SUBCASE("K = n_r uniform equals the deterministic first-order step") {
    SchemeConfig hybrid = hybrid_config(0, SamplerSpec::uniform(2), t, dt);
    const Trajectory a = run_trajectory(h, hybrid, psi0, {});

    SchemeConfig det = hybrid;
    det.scheme = SchemeKind::DeterministicFirst;
    const Trajectory b = run_trajectory(h, det, psi0, {});
    CHECK(state_diff(a.final_state, b.final_state) < 1e-12);
  }

  SUBCASE("n_d = L is the pure U0 evolution") {
    SchemeConfig cfg = hybrid_config(2, SamplerSpec::uniform(1), t, dt);
    const Trajectory a = run_trajectory(h, cfg, psi0, {});

    StateVector expected = psi0;
    const ExactPropagator prop(h.full_sum());
    prop.apply(expected, t);
    CHECK(state_diff(a.final_state, expected) < 1e-12);
  }

  SUBCASE("singleton pool with K = 1 evolves exactly") {
    std::vector<HamiltonianTerm> one = {{0.4, P(2, "Y0")}};
    const PartitionedHamiltonian hs(2, std::move(one));
    SchemeConfig cfg = hybrid_config(
        0, SamplerSpec::importance(hs.h1_terms(0)), t, dt);
    const Trajectory a = run_trajectory(hs, cfg, psi0, {});

    StateVector expected = psi0;
    apply_pauli_rotation(expected, hs.terms()[0], t);
    CHECK(state_diff(a.final_state, expected) < 1e-12);
  }
}

TEST_CASE("hybrid symmetric: commuting singletons are exact at any dt") {
  std::vector<HamiltonianTerm> terms = {{0.8, P(2, "Z0")},
                                        {0.4, P(2, "Z0 Z1")}};
  const PartitionedHamiltonian h(2, std::move(terms));
  SplitMix64 rng(4002);
  const StateVector psi0 = oracle::random_state(2, rng);

  SchemeConfig cfg = hybrid_config(1, SamplerSpec::uniform(1), 0.9, 0.3);
  cfg.scheme = SchemeKind::HybridSymmetric;
  const Trajectory traj = run_trajectory(h, cfg, psi0, {});

  StateVector expected = psi0;
  const ExactPropagator prop(h.full_sum());
  prop.apply(expected, 0.9);
  CHECK(state_diff(traj.final_state, expected) < 1e-12);
}

TEST_CASE("hybrid symmetric one-step order is cubic when the noise is off") {
  // Three mutually non-commuting terms; K = n_r makes delta H vanish, so
  // only the symmetric splitting bias remains.
  std::vector<HamiltonianTerm> terms = {{1.0, P(1, "Z0")},
                                        {0.7, P(1, "X0")},
                                        {0.4, P(1, "Y0")}};
  const PartitionedHamiltonian h(1, std::move(terms));
  SplitMix64 rng(4003);
  const StateVector psi0 = oracle::random_state(1, rng);
  const Eigen::MatrixXcd full = oracle::naive_dense(h.full_sum());

  std::vector<double> dts = {0.1, 0.05, 0.025};
  std::vector<double> errs;
  for (double dt : dts) {
    SchemeConfig cfg = hybrid_config(1, SamplerSpec::uniform(2), dt, dt);
    cfg.scheme = SchemeKind::HybridSymmetric;
    const Trajectory traj = run_trajectory(h, cfg, psi0, {});
    const Eigen::VectorXcd exact =
        oracle::expm_apply(full, dt, psi0.amplitudes());
    errs.push_back((traj.final_state.amplitudes() - exact).norm());
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < dts.size(); ++i) {
    sx += std::log(dts[i]);
    sy += std::log(errs[i]);
    sxx += std::log(dts[i]) * std::log(dts[i]);
    sxy += std::log(dts[i]) * std::log(errs[i]);
  }
  const double n = static_cast<double>(dts.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope == doctest::Approx(3.0).epsilon(0.1));
}

TEST_CASE("trajectories are reproducible and streams are independent") {
  const PartitionedHamiltonian h = heisenberg_chain(3, 6);
  const StateVector psi0 = StateVector::zero_state(3);
  SchemeConfig cfg =
      hybrid_config(2, SamplerSpec::importance(h.h1_terms(2)), 1.0, 0.1, 99);

  const std::vector<double> times = {0.5, 1.0};
  const Trajectory a = run_trajectory(h, cfg, psi0, times, 4);
  const Trajectory b = run_trajectory(h, cfg, psi0, times, 4);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(state_diff(a.records[i].state, b.records[i].state) == 0.0);
    CHECK(a.records[i].gate_count == b.records[i].gate_count);
  }

  const Trajectory c = run_trajectory(h, cfg, psi0, times, 5);
  CHECK(state_diff(a.final_state, c.final_state) > 0.0);
}

TEST_CASE("record times snap to whole steps") {
  const PartitionedHamiltonian h = toy_hamiltonian();
  const StateVector psi0 = StateVector::zero_state(2);
  SchemeConfig cfg = hybrid_config(2, SamplerSpec::uniform(1), 1.0, 0.1);

  const std::vector<double> request = {0.0, 0.21, 0.24, 0.99};
  const Trajectory traj = run_trajectory(h, cfg, psi0, request);
  REQUIRE(traj.records.size() == 3);  // 0.21 and 0.24 both snap to step 2
  CHECK(traj.records[0].time == 0.0);
  CHECK(traj.records[1].time == doctest::Approx(0.2));
  CHECK(traj.records[2].time == doctest::Approx(1.0));

  SchemeRunner runner(h, cfg);
  const auto snapped = runner.snap_times(request);
  REQUIRE(snapped.size() == 3);
  CHECK(snapped[1] == doctest::Approx(0.2));
}

TEST_CASE("deterministic evolution of a commuting Hamiltonian is exact") {
  std::vector<HamiltonianTerm> terms = {{0.9, P(2, "Z0")},
                                        {0.5, P(2, "Z1")},
                                        {0.2, P(2, "Z0 Z1")}};
  const PartitionedHamiltonian h(2, std::move(terms));
  SplitMix64 rng(4004);
  const StateVector psi0 = oracle::random_state(2, rng);

  SchemeConfig cfg;
  cfg.scheme = SchemeKind::DeterministicFirst;
  cfg.t_final = 2.0;
  cfg.step.dt = 0.25;
  const Trajectory traj = run_trajectory(h, cfg, psi0, {});

  const Eigen::VectorXcd exact = oracle::expm_apply(
      oracle::naive_dense(h.full_sum()), 2.0, psi0.amplitudes());
  CHECK((traj.final_state.amplitudes() - exact).norm() < 1e-10);
}

TEST_CASE("reference evolution") {
  const PartitionedHamiltonian h = heisenberg_chain(3, 8);
  SUBCASE("t = 0 returns the input") {
    const StateVector psi0 = StateVector::zero_state(3);
    const std::vector<double> times = {0.0};
    const Trajectory ref = run_reference(h, psi0, times);
    CHECK(state_diff(ref.records[0].state, psi0) < 1e-14);
  }
  SUBCASE("matches a very fine symmetric Trotter evolution") {
    SplitMix64 rng(4005);
    const StateVector psi0 = oracle::random_state(3, rng);
    const std::vector<double> times = {1.0};
    const Trajectory ref = run_reference(h, psi0, times);

    SchemeConfig cfg;
    cfg.scheme = SchemeKind::DeterministicSymmetric;
    cfg.t_final = 1.0;
    cfg.step.dt = 1e-4;
    const Trajectory fine = run_trajectory(h, cfg, psi0, {});
    CHECK((ref.records[0].state.amplitudes() -
           fine.final_state.amplitudes())
              .norm() < 1e-6);
  }
}

TEST_CASE("every snapshot keeps unit norm") {
  const PartitionedHamiltonian h = heisenberg_chain(4, 10);
  const StateVector psi0 = StateVector::zero_state(4);
  SchemeConfig cfg =
      hybrid_config(5, SamplerSpec::importance(h.h1_terms(5)), 2.0, 0.02, 3);
  std::vector<double> times;
  for (int k = 1; k <= 20; ++k) times.push_back(0.1 * k);
  const Trajectory traj = run_trajectory(h, cfg, psi0, times);
  for (const auto& rec : traj.records) {
    CHECK(std::abs(rec.state.norm() - 1.0) < 1e-9);
  }
}

TEST_CASE("state-adaptive sampling runs and reproduces importance stats") {
  // For pure Pauli pools the adaptive probabilities equal the importance
  // ones at every step, so the trajectories coincide draw for draw.
  const PartitionedHamiltonian h = toy_hamiltonian();
  SplitMix64 rng(4006);
  const StateVector psi0 = oracle::random_state(2, rng);

  SchemeConfig adaptive = hybrid_config(
      0, SamplerSpec::state_adaptive(h.h1_terms(0)), 0.5, 0.05, 21);
  SchemeConfig importance = hybrid_config(
      0, SamplerSpec::importance(h.h1_terms(0)), 0.5, 0.05, 21);
  const Trajectory a = run_trajectory(h, adaptive, psi0, {});
  const Trajectory b = run_trajectory(h, importance, psi0, {});
  CHECK(state_diff(a.final_state, b.final_state) < 1e-12);
}

TEST_CASE("configuration validation") {
  const PartitionedHamiltonian h = toy_hamiltonian();
  SchemeConfig cfg = hybrid_config(0, SamplerSpec::uniform(1), 1.0, 0.1);
  cfg.step.gate_budget = 100;  // both dt and budget set
  CHECK_THROWS_AS(resolve_steps(cfg, h.term_count()), ValidationError);

  SchemeConfig bad_nd = hybrid_config(5, SamplerSpec::uniform(1), 1.0, 0.1);
  CHECK_THROWS_AS(resolve_steps(bad_nd, h.term_count()), ValidationError);

  SchemeConfig big_dt = hybrid_config(0, SamplerSpec::uniform(1), 1.0, 3.0);
  CHECK_THROWS_AS(resolve_steps(big_dt, h.term_count()), ValidationError);
}
