#pragma once

// Dense statevector simulator.
//
// Qubit q is bit q of the basis index (qubit 0 is least significant), so a
// histogram key is the integer whose binary digits are the measured qubits.
// Ry(t) = [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]].

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gate.hpp"
#include "rng.hpp"

namespace ffvqc {

using Basis = std::uint64_t;
using Amplitude = std::complex<double>;
using Histogram = std::map<Basis, std::int64_t>;

inline constexpr int kDefaultMaxQubits = 24;

class Statevector {
 public:
  static Statevector zero(int num_qubits, int max_qubits = kDefaultMaxQubits) {
    if (num_qubits < 1 || num_qubits > max_qubits)
      throw CapacityError("statevector of " + std::to_string(num_qubits) + " qubits outside [1, " +
                          std::to_string(max_qubits) + "]");
    Statevector s;
    s.num_qubits_ = num_qubits;
    s.amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
    s.amps_[0] = 1.0;
    return s;
  }

  int num_qubits() const noexcept { return num_qubits_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  const Amplitude& operator[](Basis b) const { return amps_.at(b); }

  double probability(Basis b) const { return std::norm(amps_.at(b)); }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  // Basis states with |amplitude|^2 > threshold, ascending.
  std::vector<Basis> support(double threshold = 1e-12) const {
    std::vector<Basis> out;
    for (Basis b = 0; b < amps_.size(); ++b)
      if (std::norm(amps_[b]) > threshold) out.push_back(b);
    return out;
  }

  void apply(const GateInstance& gate) {
    validate_gate(gate, num_qubits_);
    const auto& q = gate.qubits;
    switch (gate.kind) {
      case GateKind::x: {
        const Basis t = Basis{1} << q[0];
        for (Basis b = 0; b < amps_.size(); ++b)
          if (!(b & t)) std::swap(amps_[b], amps_[b | t]);
        break;
      }
      case GateKind::h: {
        const double r = 1.0 / std::sqrt(2.0);
        rotate_pairs(Basis{1} << q[0], 0, r, r, r, -r);
        break;
      }
      case GateKind::ry: {
        const double th = gate.literal_angle();
        const double c = std::cos(th / 2), s = std::sin(th / 2);
        rotate_pairs(Basis{1} << q[0], 0, c, -s, s, c);
        break;
      }
      case GateKind::cnot: {
        const Basis c = Basis{1} << q[0], t = Basis{1} << q[1];
        for (Basis b = 0; b < amps_.size(); ++b)
          if ((b & c) && !(b & t)) std::swap(amps_[b], amps_[b | t]);
        break;
      }
      case GateKind::cry: {
        const double th = gate.literal_angle();
        const double c = std::cos(th / 2), s = std::sin(th / 2);
        rotate_pairs(Basis{1} << q[1], Basis{1} << q[0], c, -s, s, c);
        break;
      }
      case GateKind::cswap: {
        const Basis c = Basis{1} << q[0], a = Basis{1} << q[1], t = Basis{1} << q[2];
        for (Basis b = 0; b < amps_.size(); ++b)
          if ((b & c) && (b & a) && !(b & t)) std::swap(amps_[b], amps_[b ^ a ^ t]);
        break;
      }
    }
  }

 private:
  Statevector() = default;

  // Applies [[m00, m01], [m10, m11]] to every (b, b|target) pair whose control
  // bits are all set.
  void rotate_pairs(Basis target, Basis controls, double m00, double m01, double m10, double m11) {
    for (Basis b = 0; b < amps_.size(); ++b) {
      if ((b & target) || (b & controls) != controls) continue;
      const Amplitude a0 = amps_[b], a1 = amps_[b | target];
      amps_[b] = m00 * a0 + m01 * a1;
      amps_[b | target] = m10 * a0 + m11 * a1;
    }
  }

  int num_qubits_ = 0;
  std::vector<Amplitude> amps_;
};

inline Statevector init_zero(int num_qubits, int max_qubits = kDefaultMaxQubits) {
  return Statevector::zero(num_qubits, max_qubits);
}

inline Statevector apply_gate(Statevector state, const GateInstance& gate) {
  state.apply(gate);
  return state;
}

// Real observable diagonal in the computational basis. Only the low
// `register_bits` qubits are read; the value is tabulated over them.
class DiagonalHamiltonian {
 public:
  DiagonalHamiltonian(int num_qubits, int register_bits, std::vector<double> table)
      : num_qubits_(num_qubits), register_bits_(register_bits), table_(std::move(table)) {
    if (register_bits_ < 0 || register_bits_ > num_qubits_)
      throw DimensionError("hamiltonian register wider than its qubit count");
    if (table_.size() != (std::size_t{1} << register_bits_))
      throw DimensionError("hamiltonian table size does not match 2^register_bits");
  }

  static DiagonalHamiltonian from_function(int num_qubits, int register_bits,
                                           const std::function<double(Basis)>& f) {
    std::vector<double> table(std::size_t{1} << register_bits);
    for (Basis b = 0; b < table.size(); ++b) table[b] = f(b);
    return {num_qubits, register_bits, std::move(table)};
  }

  static DiagonalHamiltonian constant(int num_qubits, double c) { return {num_qubits, 0, {c}}; }

  int num_qubits() const noexcept { return num_qubits_; }
  int register_bits() const noexcept { return register_bits_; }
  Basis register_mask() const noexcept { return (Basis{1} << register_bits_) - 1; }
  double operator()(Basis b) const { return table_[b & register_mask()]; }
  std::span<const double> table() const noexcept { return table_; }

 private:
  int num_qubits_;
  int register_bits_;
  std::vector<double> table_;
};

inline double expectation_diagonal(const Statevector& state, const DiagonalHamiltonian& h) {
  if (h.num_qubits() != state.num_qubits())
    throw DimensionError("hamiltonian on " + std::to_string(h.num_qubits()) + " qubits, state on " +
                         std::to_string(state.num_qubits()));
  const auto amps = state.amplitudes();
  double e = 0.0;
  for (Basis b = 0; b < amps.size(); ++b) e += std::norm(amps[b]) * h(b);
  return e;
}

inline Histogram sample(const Statevector& state, std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) throw ArgumentError("shots must be >= 1");
  const auto amps = state.amplitudes();
  std::vector<double> cdf(amps.size());
  double acc = 0.0;
  for (std::size_t b = 0; b < amps.size(); ++b) cdf[b] = acc += std::norm(amps[b]);
  Rng rng(seed);
  Histogram hist;
  for (std::int64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform01() * acc;
    // First b with cdf[b] > u; u < acc so it always exists and has p(b) > 0.
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    ++hist[static_cast<Basis>(it - cdf.begin())];
  }
  return hist;
}

inline double histogram_mean(const Histogram& hist, const DiagonalHamiltonian& h) {
  double sum = 0.0;
  std::int64_t total = 0;
  for (const auto& [b, n] : hist) {
    sum += static_cast<double>(n) * h(b);
    total += n;
  }
  if (total == 0) throw ArgumentError("empty histogram");
  return sum / static_cast<double>(total);
}

}  // namespace ffvqc
