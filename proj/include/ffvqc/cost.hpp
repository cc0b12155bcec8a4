#pragma once

// Circuit cost accounting: counts measured on the built ansatz next to the
// closed-form qubit / parameter / CNOT figures for each family.

#include <string>
#include <utility>
#include <vector>

#include "ansatz.hpp"
#include "circuit.hpp"
#include "problems.hpp"

namespace ffvqc {

struct CostFormula {
  long long qubits = 0;
  long long parameters = 0;
  long long cnot_bound = 0;  // upper bound on CNOTs after decomposition
};

// Closed forms for the fully feasible builders, in the builder's own
// dimension convention (facility: n facilities, m customers).
//
//   assignment  mn        mn - m^2/2 - m/2        7m^2n/2 - 7m^3/6 - 3mn/2 - m^2 + m/6
//   shift       mn + n    mn - m^2/2 + n - 3m/2   7m^2n/2 - 7m^3/6 + 11mn/2 - 9m^2/2 - 10m/3
//   facility    mn + n + m  mn + n - m            9mn - 2m
//   tsp         n^2       n(n-1)/2                (14n^3 - 15n^2 + n)/6
//   product     2n        n                       7n - 6
//
// Each CNOT figure is (W states: sum of 2d-2) + 7 * (CSWAP count).
inline CostFormula closed_form_costs(const ConstraintSpec& spec) {
  const long long n = spec.n(), m = spec.m();
  switch (spec.family()) {
    case Family::assignment:
      return {m * n, (2 * m * n - m * m - m) / 2, (21 * m * m * n - 7 * m * m * m - 9 * m * n - 6 * m * m + m) / 6};
    case Family::shift:
      return {m * n + n, (2 * m * n - m * m + 2 * n - 3 * m) / 2,
              (21 * m * m * n - 7 * m * m * m + 33 * m * n - 27 * m * m - 20 * m) / 6};
    case Family::facility: return {m * n + n + m, m * n + n - m, 9 * m * n - 2 * m};
    case Family::tsp: return {n * n, n * (n - 1) / 2, (14 * n * n * n - 15 * n * n + n) / 6};
    case Family::product_chain: return {2 * n, n, 7 * n - 6};
  }
  return {};
}

inline CostFormula layered_closed_form(long long num_qubits, long long layers) {
  return {num_qubits, (layers + 1) * num_qubits, layers * (num_qubits - 1)};
}

// Dimension convention for facility rows of the cost table. The builder uses
// (n facilities, m customers); the comparison table lists (n customers,
// m facilities), in which case the builder is called with the roles swapped.
enum class FacilityDims { facilities_customers, customers_facilities };

struct CostComparison {
  ConstraintSpec spec;  // dims as passed to the builder
  CostReport measured;
  CostFormula closed_form;

  bool qubits_match() const { return measured.num_qubits == closed_form.qubits; }
  bool parameters_match() const { return static_cast<long long>(measured.num_parameters) == closed_form.parameters; }
  bool cnot_within_bound() const { return measured.cnot_count <= closed_form.cnot_bound; }
  bool cnot_at_bound() const { return measured.cnot_count == closed_form.cnot_bound; }
};

inline CostComparison cost_report(Family family, int n, int m,
                                  FacilityDims dims = FacilityDims::facilities_customers) {
  if (family == Family::facility && dims == FacilityDims::customers_facilities) std::swap(n, m);
  const auto spec = ConstraintSpec::make(family, n, m);
  const auto bundle = build_ansatz(spec);
  return {spec, measure_cost(bundle.circuit), closed_form_costs(spec)};
}

}  // namespace ffvqc
