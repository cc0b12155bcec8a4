#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <variant>

#include "errors.hpp"

namespace ffvqc {

enum class GateKind : std::uint8_t { x, h, ry, cnot, cswap, cry };

inline constexpr std::array<GateKind, 6> kAllGateKinds = {GateKind::x,    GateKind::h,     GateKind::ry,
                                                          GateKind::cnot, GateKind::cswap, GateKind::cry};

constexpr int arity(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::x:
    case GateKind::h:
    case GateKind::ry: return 1;
    case GateKind::cnot:
    case GateKind::cry: return 2;
    case GateKind::cswap: return 3;
  }
  return 0;
}

constexpr bool takes_angle(GateKind kind) noexcept { return kind == GateKind::ry || kind == GateKind::cry; }

constexpr std::string_view to_string(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::x: return "x";
    case GateKind::h: return "h";
    case GateKind::ry: return "ry";
    case GateKind::cnot: return "cnot";
    case GateKind::cswap: return "cswap";
    case GateKind::cry: return "cry";
  }
  return "?";
}

inline GateKind gate_kind_from_string(std::string_view name) {
  for (auto kind : kAllGateKinds)
    if (to_string(kind) == name) return kind;
  throw ParseError("unknown gate kind '" + std::string(name) + "'");
}

// Angle = multiplier * params[index] + offset.
struct ParameterRef {
  std::size_t index = 0;
  double multiplier = 1.0;
  double offset = 0.0;

  friend bool operator==(const ParameterRef&, const ParameterRef&) = default;
};

using Angle = std::variant<double, ParameterRef>;

// Qubits are listed controls first: CNOT/CRy (control, target), CSWAP
// (control, target_a, target_b).
struct GateInstance {
  GateKind kind = GateKind::x;
  std::array<int, 3> qubits{-1, -1, -1};
  Angle angle = 0.0;

  int arity() const noexcept { return ffvqc::arity(kind); }
  bool is_bound() const noexcept { return std::holds_alternative<double>(angle); }
  double literal_angle() const {
    if (!is_bound()) throw ArgumentError("gate angle is an unbound parameter reference");
    return std::get<double>(angle);
  }

  friend bool operator==(const GateInstance&, const GateInstance&) = default;
};

inline GateInstance make_gate(GateKind kind, std::initializer_list<int> qubits, Angle angle = 0.0) {
  GateInstance g;
  g.kind = kind;
  if (static_cast<int>(qubits.size()) != arity(kind))
    throw ArityError(std::string(to_string(kind)) + " expects " + std::to_string(arity(kind)) + " qubits, got " +
                     std::to_string(qubits.size()));
  std::size_t i = 0;
  for (int q : qubits) g.qubits[i++] = q;
  if (!takes_angle(kind) && !(std::holds_alternative<double>(angle) && std::get<double>(angle) == 0.0))
    throw ArgumentError(std::string(to_string(kind)) + " does not take an angle");
  g.angle = angle;
  return g;
}

// Throws IndexError / ArityError when the gate cannot act on num_qubits.
inline void validate_gate(const GateInstance& gate, int num_qubits) {
  const int k = gate.arity();
  for (int i = 0; i < k; ++i) {
    const int q = gate.qubits[i];
    if (q < 0 || q >= num_qubits)
      throw IndexError("qubit " + std::to_string(q) + " out of range for " + std::to_string(num_qubits) +
                       "-qubit register");
    for (int j = 0; j < i; ++j)
      if (gate.qubits[j] == q) throw ArityError("qubit " + std::to_string(q) + " used twice in one gate");
  }
}

}  // namespace ffvqc
