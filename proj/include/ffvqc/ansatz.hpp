#pragma once

// Inductive fully feasible ansatz builders.
//
// Each builder starts from an ansatz for the smallest subproblem and appends
// one forwarding block per step. A forwarding block prepares a parameterised
// one-hot (W) state on the new column, then uses CSWAPs controlled by that
// column to move previously placed entries out of the row the new one-hot bit
// landed in. Every basis state with nonzero amplitude satisfies the target
// constraints, and every feasible assignment is reachable.

#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "errors.hpp"
#include "layout.hpp"
#include "problems.hpp"

namespace ffvqc {

struct AnsatzBundle {
  Circuit circuit;
  QubitLayout layout;
  // Constraint the circuit targets. For fully feasible builders every output
  // state satisfies it; the layered baseline only shares its register.
  std::optional<ConstraintSpec> target;
  std::string name;
  bool fully_feasible = false;
};

// Appends a parameterised W state on `qubits` (d of them, d-1 new
// parameters). From |0..0> it produces
//   cos t1 |e1> - sin t1 cos t2 |e2> + sin t1 sin t2 cos t3 |e3> - ...
// i.e. |a_j| = (prod_{i<j} sin t_i) cos t_j with the last term's cosine
// dropped, and sign (-1)^(j-1) on position j (1-based).
//
// Per step j: Ry(t+pi/2) on q_j, CNOT(q_{j-1}, q_j), Ry(-t-pi/2) on q_j,
// CNOT(q_j, q_{j-1}). With q_j = 0 the rotations cancel; with q_{j-1} = 1 the
// excitation stays with amplitude cos t and moves to q_j with -sin t. Cost:
// one X, 2d-2 Ry and 2d-2 CNOT.
inline std::vector<std::size_t> append_parameterized_w(Circuit& c, std::span<const int> qubits) {
  if (qubits.empty()) throw ArgumentError("W state needs at least one qubit");
  constexpr double kQuarter = std::numbers::pi / 2;
  std::vector<std::size_t> params;
  c.x(qubits[0]);
  for (std::size_t j = 1; j < qubits.size(); ++j) {
    const auto p = c.add_parameter();
    params.push_back(p);
    c.ry(qubits[j], c.ref(p, 1.0, kQuarter));
    c.cnot(qubits[j - 1], qubits[j]);
    c.ry(qubits[j], c.ref(p, -1.0, -kQuarter));
    c.cnot(qubits[j], qubits[j - 1]);
  }
  return params;
}

inline Circuit build_parameterized_w(int d) {
  if (d < 1) throw ArgumentError("W state dimension must be >= 1");
  Circuit c(d);
  std::vector<int> qs(d);
  for (int i = 0; i < d; ++i) qs[i] = i;
  append_parameterized_w(c, qs);
  return c;
}

namespace detail {

inline std::vector<int> column_qubits(const QubitLayout& L, int col, int rows) {
  std::vector<int> qs;
  for (int i = 0; i < rows; ++i) qs.push_back(L.x_index(i, col));
  return qs;
}

// One forwarding block of the assignment recursion: column `k` (0-based) gets
// a W state over rows [0, rows); if the 1 lands in row u < rows-1, row u's
// earlier entries are swapped into the fresh row rows-1. With `y_swaps`, the
// row's y bit follows the same swap and the fresh row's y starts at 1.
inline void forward_assignment_column(Circuit& c, const QubitLayout& L, int k, int rows, bool y_swaps) {
  append_parameterized_w(c, column_qubits(L, k, rows));
  const int fresh = rows - 1;
  if (y_swaps) c.x(L.y_index(fresh));
  for (int u = 0; u < fresh; ++u) {
    const int control = L.x_index(u, k);
    for (int v = 0; v < k; ++v) c.cswap(control, L.x_index(u, v), L.x_index(fresh, v));
    if (y_swaps) c.cswap(control, L.y_index(u), L.y_index(fresh));
  }
}

}  // namespace detail

// Permutation matrices: x(i, j) = 1 iff city i is visited at step j.
inline AnsatzBundle build_tsp_ansatz(int n) {
  if (n < 1) throw ArgumentError("tsp needs n >= 1");
  const auto spec = ConstraintSpec::tsp(n);
  const auto L = spec.ansatz_layout();
  Circuit c(L.total_qubits());
  c.x(L.x_index(0, 0));
  for (int k = 1; k < n; ++k) detail::forward_assignment_column(c, L, k, k + 1, false);
  return {std::move(c), L, spec, "tsp", true};
}

// n workers, m jobs: each job column one-hot, each worker row at most one.
inline AnsatzBundle build_assignment_ansatz(int n, int m) {
  const auto spec = ConstraintSpec::assignment(n, m);
  const auto L = spec.ansatz_layout();
  Circuit c(L.total_qubits());
  for (int k = 0; k < m; ++k) detail::forward_assignment_column(c, L, k, n - m + k + 1, false);
  return {std::move(c), L, spec, "assignment", true};
}

// n workers, m shifts: each shift column one-hot, a worker's row sum <= y_i.
inline AnsatzBundle build_shift_ansatz(int n, int m) {
  const auto spec = ConstraintSpec::shift(n, m);
  const auto L = spec.ansatz_layout();
  Circuit c(L.total_qubits());
  for (int i = 0; i < n - m; ++i) c.ry(L.y_index(i), c.ref(c.add_parameter()));
  for (int k = 0; k < m; ++k) detail::forward_assignment_column(c, L, k, n - m + k + 1, true);
  return {std::move(c), L, spec, "shift", true};
}

// n facilities (rows), m customers (columns): each customer column one-hot,
// x(i, j) <= y_i. Auxiliary a_k starts at 1 and is swapped into y_u when
// customer k lands on facility u; aux values are not constrained.
inline AnsatzBundle build_facility_ansatz(int n, int m) {
  const auto spec = ConstraintSpec::facility(n, m);
  const auto L = spec.ansatz_layout();
  Circuit c(L.total_qubits());
  for (int i = 0; i < n; ++i) c.ry(L.y_index(i), c.ref(c.add_parameter()));
  for (int k = 0; k < m; ++k) {
    append_parameterized_w(c, detail::column_qubits(L, k, n));
    c.x(L.aux_index(k));
    for (int u = 0; u < n; ++u) c.cswap(L.x_index(u, k), L.y_index(u), L.aux_index(k));
  }
  return {std::move(c), L, spec, "facility", true};
}

// y = prod_i x_i. Each x_i is a free Ry; y starts as a copy of x_1 and is
// swapped with a fresh |0> auxiliary whenever a later x_k is 0.
inline AnsatzBundle build_product_chain_ansatz(int n) {
  if (n < 1) throw ArgumentError("product chain needs n >= 1");
  const auto spec = ConstraintSpec::product_chain(n);
  const auto L = spec.ansatz_layout();
  Circuit c(L.total_qubits());
  const int y = L.y_index(0);
  c.ry(L.x_index(0, 0), c.ref(c.add_parameter()));
  c.cnot(L.x_index(0, 0), y);
  for (int k = 1; k < n; ++k) {
    const int xk = L.x_index(k, 0);
    c.ry(xk, c.ref(c.add_parameter()));
    c.x(xk);
    c.cswap(xk, y, L.aux_index(k - 1));
    c.x(xk);
  }
  return {std::move(c), L, spec, "product_chain", true};
}

inline AnsatzBundle build_ansatz(const ConstraintSpec& spec) {
  switch (spec.family()) {
    case Family::tsp: return build_tsp_ansatz(spec.n());
    case Family::assignment: return build_assignment_ansatz(spec.n(), spec.m());
    case Family::shift: return build_shift_ansatz(spec.n(), spec.m());
    case Family::facility: return build_facility_ansatz(spec.n(), spec.m());
    case Family::product_chain: return build_product_chain_ansatz(spec.n());
  }
  throw ArgumentError("unknown family");
}

// Hardware-efficient baseline: an Ry layer, then `layers` repetitions of a
// linear CNOT chain (q -> q+1) followed by another Ry layer.
inline AnsatzBundle build_layered_ansatz(int num_qubits, int layers) {
  if (num_qubits < 1) throw ArgumentError("layered ansatz needs at least one qubit");
  if (layers < 0) throw ArgumentError("layer count must be >= 0");
  Circuit c(num_qubits);
  auto rotation_layer = [&] {
    for (int q = 0; q < num_qubits; ++q) c.ry(q, c.ref(c.add_parameter()));
  };
  rotation_layer();
  for (int l = 0; l < layers; ++l) {
    for (int q = 0; q + 1 < num_qubits; ++q) c.cnot(q, q + 1);
    rotation_layer();
  }
  return {std::move(c), QubitLayout(num_qubits, 1, 0, 0), std::nullopt, "layered-" + std::to_string(layers), false};
}

// Layered baseline on exactly the problem register of `spec` (no auxiliaries).
inline AnsatzBundle build_layered_ansatz(const ConstraintSpec& spec, int layers) {
  auto bundle = build_layered_ansatz(spec.problem_bits(), layers);
  bundle.layout = spec.problem_layout();
  bundle.target = spec;
  return bundle;
}

}  // namespace ffvqc
