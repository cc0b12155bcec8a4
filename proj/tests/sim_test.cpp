#include <bit>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "ffvqc/sim.hpp"

namespace ffvqc {
namespace {

constexpr double kPi = std::numbers::pi;

// Random gate from the supported set on a register of `n` qubits.
GateInstance random_gate(Rng& rng, int n) {
  std::vector<GateKind> kinds{GateKind::x, GateKind::h, GateKind::ry};
  if (n >= 2) kinds.insert(kinds.end(), {GateKind::cnot, GateKind::cry});
  if (n >= 3) kinds.push_back(GateKind::cswap);
  const auto kind = kinds[rng.uniform_int(0, static_cast<std::int64_t>(kinds.size()) - 1)];
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  GateInstance g;
  g.kind = kind;
  for (int k = 0; k < arity(kind); ++k) {
    const auto pick = rng.uniform_int(k, n - 1);
    std::swap(pool[k], pool[pick]);
    g.qubits[k] = pool[k];
  }
  if (takes_angle(kind)) g.angle = rng.uniform(-2 * kPi, 2 * kPi);
  return g;
}

GateInstance inverse(GateInstance g) {
  if (takes_angle(g.kind)) g.angle = -std::get<double>(g.angle);
  return g;
}

Statevector random_state(Rng& rng, int n, int depth) {
  auto s = init_zero(n);
  for (int d = 0; d < depth; ++d) s.apply(random_gate(rng, n));
  return s;
}

TEST(InitZero, SingleQubit) {
  const auto s = init_zero(1);
  ASSERT_EQ(s.dimension(), 2u);
  EXPECT_EQ(s[0], Amplitude(1.0));
  EXPECT_EQ(s[1], Amplitude(0.0));
}

TEST(InitZero, TwoQubits) {
  const auto s = init_zero(2);
  ASSERT_EQ(s.dimension(), 4u);
  EXPECT_EQ(s[0], Amplitude(1.0));
  for (Basis b = 1; b < 4; ++b) EXPECT_EQ(s[b], Amplitude(0.0));
}

TEST(InitZero, CapacityBoundary) {
  EXPECT_THROW(init_zero(25), CapacityError);
  EXPECT_THROW(init_zero(0), CapacityError);
  EXPECT_THROW(init_zero(9, 8), CapacityError);
  EXPECT_NO_THROW(init_zero(8, 8));
}

TEST(ApplyGate, PauliX) {
  const auto s = apply_gate(init_zero(1), make_gate(GateKind::x, {0}));
  EXPECT_EQ(s[1], Amplitude(1.0));
  EXPECT_EQ(s[0], Amplitude(0.0));
}

TEST(ApplyGate, RyOnZero) {
  for (double th : {0.0, 0.3, kPi / 2, 2.5, -1.1}) {
    const auto s = apply_gate(init_zero(1), make_gate(GateKind::ry, {0}, th));
    EXPECT_NEAR(s[0].real(), std::cos(th / 2), 1e-15);
    EXPECT_NEAR(s[1].real(), std::sin(th / 2), 1e-15);
  }
}

TEST(ApplyGate, Hadamard) {
  const auto s = apply_gate(init_zero(1), make_gate(GateKind::h, {0}));
  EXPECT_NEAR(s[0].real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s[1].real(), 1 / std::sqrt(2.0), 1e-15);
}

TEST(ApplyGate, CnotActsOnlyWithControlSet) {
  auto s = apply_gate(init_zero(2), make_gate(GateKind::cnot, {0, 1}));
  EXPECT_EQ(s.probability(0), 1.0);
  s = apply_gate(apply_gate(init_zero(2), make_gate(GateKind::x, {0})), make_gate(GateKind::cnot, {0, 1}));
  EXPECT_EQ(s.probability(0b11), 1.0);
}

// Qubit 0 is the control; targets are qubits 1 and 2 prepared as |0>,|1>.
TEST(ApplyGate, CswapActiveControl) {
  auto s = init_zero(3);
  s.apply(make_gate(GateKind::x, {0}));
  s.apply(make_gate(GateKind::x, {2}));
  s.apply(make_gate(GateKind::cswap, {0, 1, 2}));
  EXPECT_EQ(s.probability(0b011), 1.0);
}

TEST(ApplyGate, CswapInactiveControl) {
  auto s = init_zero(3);
  s.apply(make_gate(GateKind::x, {2}));
  s.apply(make_gate(GateKind::cswap, {0, 1, 2}));
  EXPECT_EQ(s.probability(0b100), 1.0);
}

TEST(ApplyGate, ControlledRy) {
  const double th = 1.234;
  auto off = apply_gate(init_zero(2), make_gate(GateKind::cry, {0, 1}, th));
  EXPECT_EQ(off.probability(0), 1.0);
  auto on = apply_gate(init_zero(2), make_gate(GateKind::x, {0}));
  on.apply(make_gate(GateKind::cry, {0, 1}, th));
  EXPECT_NEAR(on[0b01].real(), std::cos(th / 2), 1e-15);
  EXPECT_NEAR(on[0b11].real(), std::sin(th / 2), 1e-15);
}

TEST(ApplyGate, Errors) {
  auto s = init_zero(3);
  EXPECT_THROW(s.apply(make_gate(GateKind::x, {3})), IndexError);
  EXPECT_THROW(s.apply(make_gate(GateKind::cnot, {1, 1})), ArityError);
  EXPECT_THROW(s.apply(make_gate(GateKind::cswap, {0, 2, 0})), ArityError);
  EXPECT_THROW(make_gate(GateKind::cnot, {0}), ArityError);
  GateInstance unbound = make_gate(GateKind::ry, {0}, ParameterRef{0, 1.0, 0.0});
  EXPECT_THROW(s.apply(unbound), ArgumentError);
}

TEST(Expectation, ZeroStatePopcount) {
  const auto h = DiagonalHamiltonian::from_function(3, 3, [](Basis b) { return double(std::popcount(b)); });
  EXPECT_EQ(expectation_diagonal(init_zero(3), h), 0.0);
}

TEST(Expectation, UniformSingleQubit) {
  const auto s = apply_gate(init_zero(1), make_gate(GateKind::h, {0}));
  const DiagonalHamiltonian h(1, 1, {0.0, 2.0});
  EXPECT_NEAR(expectation_diagonal(s, h), 1.0, 1e-15);
}

TEST(Expectation, ConstantObservable) {
  Rng rng(3);
  const auto s = random_state(rng, 5, 20);
  EXPECT_NEAR(expectation_diagonal(s, DiagonalHamiltonian::constant(5, 4.25)), 4.25, 1e-12);
}

TEST(Expectation, DimensionMismatch) {
  EXPECT_THROW(expectation_diagonal(init_zero(2), DiagonalHamiltonian::constant(3, 1.0)), DimensionError);
}

TEST(Sample, DeterministicState) {
  const auto s = apply_gate(init_zero(1), make_gate(GateKind::x, {0}));
  const auto hist = sample(s, 2000, 11);
  ASSERT_EQ(hist.size(), 1u);
  EXPECT_EQ(hist.at(1), 2000);
}

TEST(Sample, UniformWithinThreeSigma) {
  const auto s = apply_gate(init_zero(1), make_gate(GateKind::h, {0}));
  const std::int64_t shots = 1'000'000;
  const auto hist = sample(s, shots, 99);
  const double sigma = std::sqrt(shots * 0.25);
  EXPECT_EQ(hist.at(0) + hist.at(1), shots);
  EXPECT_LT(std::abs(hist.at(0) - shots / 2.0), 3 * sigma);
}

TEST(Sample, SeedDeterminism) {
  Rng rng(5);
  const auto s = random_state(rng, 6, 30);
  EXPECT_EQ(sample(s, 5000, 42), sample(s, 5000, 42));
  EXPECT_NE(sample(s, 5000, 42), sample(s, 5000, 43));
}

TEST(Sample, ZeroShotsRejected) { EXPECT_THROW(sample(init_zero(1), 0, 1), ArgumentError); }

TEST(SimProperty, NormPreservedOverRandomCircuits) {
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(1, 12));
    auto s = init_zero(n);
    const int depth = static_cast<int>(rng.uniform_int(1, 20));
    for (int d = 0; d < depth; ++d) {
      s.apply(random_gate(rng, n));
      ASSERT_LT(std::abs(s.norm_squared() - 1.0), 1e-10) << "trial " << trial;
    }
  }
}

TEST(SimProperty, GateThenInverseRestoresAmplitudes) {
  Rng rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(1, 8));
    const auto before = random_state(rng, n, 15);
    const auto g = random_gate(rng, n);
    auto after = before;
    after.apply(g);
    after.apply(inverse(g));
    for (Basis b = 0; b < before.dimension(); ++b) ASSERT_LT(std::abs(after[b] - before[b]), 1e-12);
  }
}

TEST(SimProperty, SampledMeanConvergesToExpectation) {
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4;
    const auto s = random_state(rng, n, 25);
    std::vector<double> table(16);
    for (auto& v : table) v = rng.uniform(-3, 5);
    const DiagonalHamiltonian h(n, n, table);
    const double exact = expectation_diagonal(s, h);
    double second = 0.0;
    for (Basis b = 0; b < 16; ++b) second += s.probability(b) * table[b] * table[b];
    const std::int64_t shots = 1'000'000;
    const double stderr_ = std::sqrt(std::max(second - exact * exact, 0.0) / shots);
    const double sampled = histogram_mean(sample(s, shots, 1000 + trial), h);
    EXPECT_LE(std::abs(sampled - exact), 5 * stderr_ + 1e-12) << "trial " << trial;
  }
}

}  // namespace
}  // namespace ffvqc
