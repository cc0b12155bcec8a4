#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ffvqc/vqe.hpp"

namespace ffvqc {
namespace {

TEST(Normalize, Cases) {
  EXPECT_EQ(normalize(1.0, 1.0, 3.0), 0.0);
  EXPECT_EQ(normalize(3.0, 1.0, 3.0), 1.0);
  EXPECT_EQ(normalize(2.0, 1.0, 3.0), 0.5);
  EXPECT_THROW(normalize(2.0, 2.0, 2.0), DegenerateSpectrumError);
  EXPECT_THROW(normalize(2.0, 3.0, 1.0), DegenerateSpectrumError);
}

TEST(Metrics, Cases) {
  const auto spec = ConstraintSpec::product_chain(1);  // feasible: 00 and 11
  const std::vector<Basis> optimal{0b11};
  auto r = metrics({{0b00, 3}, {0b11, 1}}, spec, optimal);
  EXPECT_EQ(r.feasible_rate, 1.0);
  EXPECT_EQ(r.optimal_rate, 0.25);
  // Aux bits above the problem register are ignored.
  r = metrics({{0b100, 1}, {0b01, 1}}, spec, optimal);
  EXPECT_EQ(r.feasible_rate, 0.5);
  EXPECT_EQ(r.optimal_rate, 0.0);
  EXPECT_THROW(metrics({}, spec, optimal), ArgumentError);
}

AnsatzBundle single_ry() {
  Circuit c(1);
  c.ry(0, c.ref(c.add_parameter()));
  return {std::move(c), QubitLayout(1, 1, 0, 0), std::nullopt, "ry", false};
}

TEST(Optimize, SingleQubitReachesGroundState) {
  const auto b = single_ry();
  const DiagonalHamiltonian h(1, 1, {0.0, -1.0});
  for (auto opt : {OptimizerKind::cobyla_like, OptimizerKind::nelder_mead}) {
    VqeConfig cfg;
    cfg.shots = 0;
    cfg.max_iterations = 100;
    cfg.optimizer = opt;
    cfg.init_seed = 3;
    const auto r = optimize(b, h, cfg);
    EXPECT_LE(r.best_energy, -0.99) << to_string(opt);
    EXPECT_LE(static_cast<int>(r.energy_trace.size()), 100);
  }
}

TEST(Optimize, ShotsZeroIsExact) {
  const auto b = single_ry();
  const DiagonalHamiltonian h(1, 1, {0.0, -1.0});
  const std::vector<double> p{1.0};
  const double exact = -std::sin(0.5) * std::sin(0.5);
  EXPECT_NEAR(estimate_energy(b, p, h, 0, 1), exact, 1e-15);
  EXPECT_NEAR(estimate_energy(b, p, h, 1'000'000, 1), exact, 5 * std::sqrt(0.25 / 1e6));
  EXPECT_THROW(estimate_energy(b, p, h, -1, 1), ArgumentError);
}

FacilityInstance inst33() { return {3, 3, {2, 3, 1}, {{0, 2, 1}, {1, 0, 2}, {2, 1, 0}}}; }

TEST(Optimize, FacilityStaysFeasible) {
  const auto inst = inst33();
  const auto b = build_facility_ansatz(3, 3);
  const auto h = cost_hamiltonian(inst, b.circuit.num_qubits());
  const auto ex = brute_force_extrema(inst, PenaltyConfig(10));
  VqeConfig cfg;
  cfg.max_iterations = 60;
  cfg.init_seed = 12;
  const auto r = optimize(b, h, cfg, Scoring{inst.spec(), ex.optimal_set, ex.e_min, ex.e_max});
  EXPECT_EQ(r.feasible_rate, 1.0);
  EXPECT_EQ(r.normalized_trace.size(), r.energy_trace.size());
  for (double v : r.normalized_trace) {
    EXPECT_GE(v, -1e-12);
    EXPECT_LE(v, 1.0 + 1e-12);
  }
  std::int64_t total = 0;
  for (const auto& [k, n] : r.final_histogram) total += n;
  EXPECT_EQ(total, cfg.final_shots);
}

TEST(Optimize, Deterministic) {
  const auto inst = inst33();
  const auto b = build_facility_ansatz(3, 3);
  const auto h = cost_hamiltonian(inst, b.circuit.num_qubits());
  VqeConfig cfg;
  cfg.max_iterations = 30;
  cfg.init_seed = 5;
  const auto a = optimize(b, h, cfg), c = optimize(b, h, cfg);
  EXPECT_EQ(a.energy_trace, c.energy_trace);
  EXPECT_EQ(a.best_params, c.best_params);
  EXPECT_EQ(a.final_histogram, c.final_histogram);
  cfg.init_seed = 6;
  EXPECT_NE(optimize(b, h, cfg).energy_trace, a.energy_trace);
}

// On a fully feasible ansatz the penalty term is identically zero.
TEST(Optimize, PenaltyInvisibleToFeasibleAnsatz) {
  const auto inst = inst33();
  const auto b = build_facility_ansatz(3, 3);
  const int q = b.circuit.num_qubits();
  const auto h = cost_hamiltonian(inst, q);
  const auto hp = penalized_hamiltonian(inst, PenaltyConfig(15), q);
  Rng rng(9);
  for (int t = 0; t < 10; ++t) {
    const auto p = random_parameters(b.circuit.num_parameters(), rng);
    EXPECT_NEAR(estimate_energy(b, p, h, 0, 0), estimate_energy(b, p, hp, 0, 0), 1e-9);
  }
}

TEST(Optimize, RestartsSplitBudget) {
  const auto b = single_ry();
  const DiagonalHamiltonian h(1, 1, {0.0, -1.0});
  VqeConfig cfg;
  cfg.shots = 100;
  cfg.max_iterations = 31;
  cfg.restarts = 3;
  const auto r = optimize(b, h, cfg);
  EXPECT_LE(r.energy_trace.size(), 31u);
}

TEST(Optimize, ConfigErrors) {
  const auto b = single_ry();
  const DiagonalHamiltonian h(1, 1, {0.0, -1.0});
  VqeConfig cfg;
  cfg.max_iterations = 0;
  EXPECT_THROW(optimize(b, h, cfg), ArgumentError);
  cfg = {};
  cfg.shots = -1;
  EXPECT_THROW(optimize(b, h, cfg), ArgumentError);
  EXPECT_THROW(optimize(b, DiagonalHamiltonian::constant(2, 0.0), VqeConfig{}), DimensionError);
}

TEST(HistogramJson, RoundTrip) {
  const Histogram h{{0, 5}, {17, 3}, {1ull << 40, 1}};
  EXPECT_EQ(histogram_from_json(histogram_to_json(h)), h);
}

}  // namespace
}  // namespace ffvqc
