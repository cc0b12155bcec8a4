#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "gate.hpp"
#include "sim.hpp"

namespace ffvqc {

// Append-only gate list over a fixed register with a table of independent
// variational parameters. Gates may reference a parameter with a multiplier
// and offset, so one parameter can drive several rotations.
class Circuit {
 public:
  explicit Circuit(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1) throw ArgumentError("circuit needs at least one qubit");
  }

  int num_qubits() const noexcept { return num_qubits_; }
  std::size_t num_parameters() const noexcept { return num_parameters_; }
  std::span<const GateInstance> gates() const noexcept { return gates_; }
  std::size_t size() const noexcept { return gates_.size(); }

  std::size_t add_parameter() { return num_parameters_++; }

  ParameterRef ref(std::size_t index, double multiplier = 1.0, double offset = 0.0) const {
    if (index >= num_parameters_) throw IndexError("parameter " + std::to_string(index) + " not allocated");
    return {index, multiplier, offset};
  }

  Circuit& append(const GateInstance& gate) {
    validate_gate(gate, num_qubits_);
    if (const auto* r = std::get_if<ParameterRef>(&gate.angle); r && r->index >= num_parameters_)
      throw IndexError("gate references parameter " + std::to_string(r->index) + " of " +
                       std::to_string(num_parameters_));
    gates_.push_back(gate);
    return *this;
  }

  Circuit& x(int q) { return append(make_gate(GateKind::x, {q})); }
  Circuit& h(int q) { return append(make_gate(GateKind::h, {q})); }
  Circuit& ry(int q, Angle a) { return append(make_gate(GateKind::ry, {q}, a)); }
  Circuit& cnot(int c, int t) { return append(make_gate(GateKind::cnot, {c, t})); }
  Circuit& cry(int c, int t, Angle a) { return append(make_gate(GateKind::cry, {c, t}, a)); }
  Circuit& cswap(int c, int a, int b) { return append(make_gate(GateKind::cswap, {c, a, b})); }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  int num_qubits_;
  std::size_t num_parameters_ = 0;
  std::vector<GateInstance> gates_;
};

inline double resolve_angle(const Angle& angle, std::span<const double> params) {
  if (const auto* lit = std::get_if<double>(&angle)) return *lit;
  const auto& r = std::get<ParameterRef>(angle);
  return r.multiplier * params[r.index] + r.offset;
}

inline void check_parameter_count(const Circuit& circuit, std::span<const double> params) {
  if (params.size() != circuit.num_parameters())
    throw DimensionError("circuit takes " + std::to_string(circuit.num_parameters()) + " parameters, got " +
                         std::to_string(params.size()));
}

// Returns a parameterless circuit with every angle replaced by its value.
inline Circuit bind_parameters(const Circuit& circuit, std::span<const double> params) {
  check_parameter_count(circuit, params);
  Circuit out(circuit.num_qubits());
  for (auto g : circuit.gates()) {
    g.angle = resolve_angle(g.angle, params);
    out.append(g);
  }
  return out;
}

inline Statevector simulate(const Circuit& circuit, std::span<const double> params,
                            int max_qubits = kDefaultMaxQubits) {
  check_parameter_count(circuit, params);
  auto state = Statevector::zero(circuit.num_qubits(), max_qubits);
  for (auto g : circuit.gates()) {
    if (takes_angle(g.kind)) g.angle = resolve_angle(g.angle, params);
    state.apply(g);
  }
  return state;
}

// CNOTs after decomposition: CSWAP 7, CRy 2, CNOT 1, single-qubit 0.
constexpr long long cnot_cost(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::cnot: return 1;
    case GateKind::cry: return 2;
    case GateKind::cswap: return 7;
    default: return 0;
  }
}

// Single-qubit gates after the same decomposition (CSWAP: 9 SU(2) gates).
constexpr long long single_qubit_cost(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::x:
    case GateKind::h:
    case GateKind::ry: return 1;
    case GateKind::cry: return 2;
    case GateKind::cswap: return 9;
    default: return 0;
  }
}

inline long long cnot_cost(const Circuit& circuit) {
  long long total = 0;
  for (const auto& g : circuit.gates()) total += cnot_cost(g.kind);
  return total;
}

struct CostReport {
  int num_qubits = 0;
  std::size_t num_parameters = 0;
  long long cnot_count = 0;
  long long single_qubit_count = 0;
  std::map<GateKind, long long> raw_gate_counts;
};

inline CostReport measure_cost(const Circuit& circuit) {
  CostReport r;
  r.num_qubits = circuit.num_qubits();
  r.num_parameters = circuit.num_parameters();
  for (const auto& g : circuit.gates()) {
    ++r.raw_gate_counts[g.kind];
    r.cnot_count += cnot_cost(g.kind);
    r.single_qubit_count += single_qubit_cost(g.kind);
  }
  return r;
}

// JSON form:
//   {"num_qubits": q, "num_parameters": p,
//    "gates": [{"kind": "ry", "qubits": [3], "angle": 0.5}, ...]}
// A parameterised angle is {"param": i, "multiplier": m, "offset": o}.
inline nlohmann::json to_json(const Circuit& circuit) {
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& g : circuit.gates()) {
    nlohmann::json jg;
    jg["kind"] = std::string(to_string(g.kind));
    jg["qubits"] = std::vector<int>(g.qubits.begin(), g.qubits.begin() + g.arity());
    if (takes_angle(g.kind)) {
      if (const auto* lit = std::get_if<double>(&g.angle)) {
        jg["angle"] = *lit;
      } else {
        const auto& r = std::get<ParameterRef>(g.angle);
        jg["angle"] = {{"param", r.index}, {"multiplier", r.multiplier}, {"offset", r.offset}};
      }
    }
    gates.push_back(std::move(jg));
  }
  return {{"num_qubits", circuit.num_qubits()}, {"num_parameters", circuit.num_parameters()}, {"gates", gates}};
}

inline Circuit circuit_from_json(const nlohmann::json& j) {
  try {
    Circuit c(j.at("num_qubits").get<int>());
    const auto p = j.at("num_parameters").get<std::size_t>();
    for (std::size_t i = 0; i < p; ++i) c.add_parameter();
    for (const auto& jg : j.at("gates")) {
      GateInstance g;
      g.kind = gate_kind_from_string(jg.at("kind").get<std::string>());
      const auto qs = jg.at("qubits").get<std::vector<int>>();
      if (static_cast<int>(qs.size()) != arity(g.kind)) throw ArityError("gate qubit list has wrong arity");
      for (std::size_t i = 0; i < qs.size(); ++i) g.qubits[i] = qs[i];
      if (takes_angle(g.kind)) {
        const auto& ja = jg.at("angle");
        if (ja.is_number()) {
          g.angle = ja.get<double>();
        } else {
          g.angle = ParameterRef{ja.at("param").get<std::size_t>(), ja.value("multiplier", 1.0),
                                 ja.value("offset", 0.0)};
        }
      }
      c.append(g);
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("circuit json: ") + e.what());
  }
}

}  // namespace ffvqc
