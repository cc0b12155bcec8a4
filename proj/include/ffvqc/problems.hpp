#pragma once

// Constraint families, the facility-location cost model and its penalty
// formulation, and exhaustive oracles over the problem-variable register.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "layout.hpp"
#include "rng.hpp"
#include "sim.hpp"

namespace ffvqc {

enum class Family { tsp, assignment, shift, facility, product_chain };

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::tsp: return "tsp";
    case Family::assignment: return "assignment";
    case Family::shift: return "shift";
    case Family::facility: return "facility";
    case Family::product_chain: return "product_chain";
  }
  return "?";
}

inline Family family_from_string(std::string_view s) {
  for (auto f : {Family::tsp, Family::assignment, Family::shift, Family::facility, Family::product_chain})
    if (to_string(f) == s) return f;
  if (s == "product-chain") return Family::product_chain;
  throw ArgumentError("unknown family '" + std::string(s) + "'");
}

inline constexpr int kMaxEnumerationBits = 24;

// A problem-variable assignment: bit k is the variable on qubit k of the
// layout's problem register.
struct Bitstring {
  Basis value = 0;
  int length = 0;
};

// Dimensions per family:
//   tsp            n cities; x is n x n
//   assignment     n workers (rows), m jobs (cols), m <= n
//   shift          n workers (rows), m shifts (cols), m <= n; y per worker
//   facility       n facilities (rows), m customers (cols); y per facility
//   product_chain  n inputs x_i and one output y
class ConstraintSpec {
 public:
  static ConstraintSpec tsp(int n) { return {Family::tsp, n, n}; }
  static ConstraintSpec assignment(int n, int m) { return {Family::assignment, n, m}; }
  static ConstraintSpec shift(int n, int m) { return {Family::shift, n, m}; }
  static ConstraintSpec facility(int n, int m) { return {Family::facility, n, m}; }
  static ConstraintSpec product_chain(int n) { return {Family::product_chain, n, 1}; }

  static ConstraintSpec make(Family f, int n, int m) {
    switch (f) {
      case Family::tsp: return tsp(n);
      case Family::product_chain: return product_chain(n);
      default: return {f, n, m};
    }
  }

  Family family() const noexcept { return family_; }
  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }

  // Layout of the problem variables alone.
  QubitLayout problem_layout() const { return QubitLayout(n_, m_, num_y(), 0); }

  // Layout used by the fully feasible ansatz (adds auxiliary qubits).
  QubitLayout ansatz_layout() const {
    int aux = 0;
    if (family_ == Family::facility) aux = m_;
    if (family_ == Family::product_chain) aux = n_ - 1;
    return QubitLayout(n_, m_, num_y(), aux);
  }

  int problem_bits() const noexcept { return n_ * m_ + num_y(); }
  Basis problem_mask() const noexcept { return (Basis{1} << problem_bits()) - 1; }

  // Unchecked membership test on the low problem_bits() bits of `bits`.
  bool contains(Basis bits) const {
    const auto L = problem_layout();
    auto x = [&](int i, int j) { return static_cast<int>((bits >> L.x_index(i, j)) & 1u); };
    auto y = [&](int i) { return static_cast<int>((bits >> L.y_index(i)) & 1u); };
    if (family_ == Family::product_chain) {
      int prod = 1;
      for (int i = 0; i < n_; ++i) prod &= x(i, 0);
      return y(0) == prod;
    }
    for (int j = 0; j < m_; ++j) {
      int col = 0;
      for (int i = 0; i < n_; ++i) col += x(i, j);
      if (col != 1) return false;
    }
    for (int i = 0; i < n_; ++i) {
      int row = 0;
      for (int j = 0; j < m_; ++j) row += x(i, j);
      switch (family_) {
        case Family::tsp:
          if (row != 1) return false;
          break;
        case Family::assignment:
          if (row > 1) return false;
          break;
        case Family::shift:
          if (row > y(i)) return false;
          break;
        case Family::facility:
          for (int j = 0; j < m_; ++j)
            if (x(i, j) > y(i)) return false;
          break;
        case Family::product_chain: break;
      }
    }
    return true;
  }

  // Unweighted penalty: zero exactly on feasible bitstrings, >= 1 otherwise.
  //   (sum_i x_ij - 1)^2 per column       tsp, assignment, shift, facility
  //   (sum_j x_ij - 1)^2 per row          tsp
  //   sum_{k<j} x_ij x_ik per row         assignment, shift
  //   x_ij (1 - y_i)                      shift, facility
  //   (y - prod_i x_i)^2                  product_chain
  std::int64_t violation(Basis bits) const {
    const auto L = problem_layout();
    auto x = [&](int i, int j) { return static_cast<std::int64_t>((bits >> L.x_index(i, j)) & 1u); };
    auto y = [&](int i) { return static_cast<std::int64_t>((bits >> L.y_index(i)) & 1u); };
    if (family_ == Family::product_chain) {
      std::int64_t prod = 1;
      for (int i = 0; i < n_; ++i) prod &= x(i, 0);
      return (y(0) - prod) * (y(0) - prod);
    }
    std::int64_t p = 0;
    for (int j = 0; j < m_; ++j) {
      std::int64_t col = -1;
      for (int i = 0; i < n_; ++i) col += x(i, j);
      p += col * col;
    }
    for (int i = 0; i < n_; ++i) {
      std::int64_t row = 0, pairs = 0, unopened = 0;
      for (int j = 0; j < m_; ++j) {
        pairs += row * x(i, j);
        row += x(i, j);
        if (num_y() > 0) unopened += x(i, j) * (1 - y(i));
      }
      switch (family_) {
        case Family::tsp: p += (row - 1) * (row - 1); break;
        case Family::assignment: p += pairs; break;
        case Family::shift: p += pairs + unopened; break;
        case Family::facility: p += unopened; break;
        case Family::product_chain: break;
      }
    }
    return p;
  }

  friend bool operator==(const ConstraintSpec&, const ConstraintSpec&) = default;

 private:
  ConstraintSpec(Family f, int n, int m) : family_(f), n_(n), m_(m) {
    if (n < 1 || m < 1)
      throw ArgumentError(std::string(to_string(f)) + " dimensions must be positive (n=" + std::to_string(n) +
                          ", m=" + std::to_string(m) + ")");
    if ((f == Family::assignment || f == Family::shift) && m > n)
      throw ArgumentError(std::string(to_string(f)) + " requires m <= n (n=" + std::to_string(n) +
                          ", m=" + std::to_string(m) + ")");
  }

  int num_y() const noexcept {
    switch (family_) {
      case Family::shift:
      case Family::facility: return n_;
      case Family::product_chain: return 1;
      default: return 0;
    }
  }

  Family family_;
  int n_;
  int m_;
};

inline void check_length(const ConstraintSpec& spec, const Bitstring& bits) {
  if (bits.length != spec.problem_bits())
    throw DimensionError(std::string(to_string(spec.family())) + " expects " + std::to_string(spec.problem_bits()) +
                         " problem bits, got " + std::to_string(bits.length));
  if (bits.length < 64 && (bits.value >> bits.length) != 0)
    throw DimensionError("bitstring value has bits above its length");
}

inline bool check_feasible(const ConstraintSpec& spec, const Bitstring& bits) {
  check_length(spec, bits);
  return spec.contains(bits.value);
}

// Exhaustive scan of the problem register; ascending.
inline std::vector<Basis> enumerate_feasible(const ConstraintSpec& spec) {
  const int bits = spec.problem_bits();
  if (bits > kMaxEnumerationBits)
    throw CapacityError("problem register of " + std::to_string(bits) + " bits exceeds enumeration cap " +
                        std::to_string(kMaxEnumerationBits));
  std::vector<Basis> out;
  for (Basis b = 0; b < (Basis{1} << bits); ++b)
    if (spec.contains(b)) out.push_back(b);
  return out;
}

// Facility location: n facilities with opening costs A, m customers with
// assignment costs B[i][j] (facility i, customer j). Costs are small integers.
struct FacilityInstance {
  int n = 0;
  int m = 0;
  std::vector<std::int64_t> A;
  std::vector<std::vector<std::int64_t>> B;

  ConstraintSpec spec() const { return ConstraintSpec::facility(n, m); }

  void validate() const {
    if (n < 1 || m < 1) throw ArgumentError("facility instance needs n, m >= 1");
    if (static_cast<int>(A.size()) != n) throw DimensionError("A must have n entries");
    if (static_cast<int>(B.size()) != n) throw DimensionError("B must have n rows");
    for (const auto& row : B)
      if (static_cast<int>(row.size()) != m) throw DimensionError("every B row must have m entries");
  }

  friend bool operator==(const FacilityInstance&, const FacilityInstance&) = default;
};

struct PenaltyConfig {
  double lambda = 0.0;

  explicit PenaltyConfig(double l = 0.0) : lambda(l) {
    if (!(l >= 0.0)) throw ArgumentError("penalty coefficient must be >= 0");
  }
};

namespace detail {

inline std::int64_t energy_unchecked(const FacilityInstance& inst, const QubitLayout& L, Basis bits) {
  std::int64_t e = 0;
  for (int i = 0; i < inst.n; ++i) {
    if ((bits >> L.y_index(i)) & 1u) e += inst.A[i];
    for (int j = 0; j < inst.m; ++j)
      if ((bits >> L.x_index(i, j)) & 1u) e += inst.B[i][j];
  }
  return e;
}

}  // namespace detail

// sum_i A_i y_i + sum_ij B_ij x_ij
inline std::int64_t energy(const FacilityInstance& inst, const Bitstring& bits) {
  inst.validate();
  const auto spec = inst.spec();
  check_length(spec, bits);
  return detail::energy_unchecked(inst, spec.problem_layout(), bits.value);
}

// energy + lambda * (sum_j (sum_i x_ij - 1)^2 + sum_ij x_ij (1 - y_i))
inline double penalized_energy(const FacilityInstance& inst, const Bitstring& bits, const PenaltyConfig& penalty) {
  const auto e = energy(inst, bits);
  return static_cast<double>(e) + penalty.lambda * static_cast<double>(inst.spec().violation(bits.value));
}

struct Extrema {
  double e_min = 0.0;                 // min of the penalized energy over all bitstrings
  double e_max = 0.0;                 // max of the penalized energy over all bitstrings
  std::int64_t optimal_energy = 0;    // min of the cost over feasible bitstrings
  std::vector<Basis> optimal_set;     // feasible argmin of the cost, ascending
  std::vector<Basis> penalized_argmin;  // argmin of the penalized energy, ascending
};

inline Extrema brute_force_extrema(const FacilityInstance& inst, const PenaltyConfig& penalty) {
  inst.validate();
  const auto spec = inst.spec();
  const int bits = spec.problem_bits();
  if (bits > kMaxEnumerationBits) throw CapacityError("instance too large for brute force");
  const auto L = spec.problem_layout();
  Extrema ex;
  ex.e_min = std::numeric_limits<double>::infinity();
  ex.e_max = -std::numeric_limits<double>::infinity();
  ex.optimal_energy = std::numeric_limits<std::int64_t>::max();
  for (Basis b = 0; b < (Basis{1} << bits); ++b) {
    const auto e = detail::energy_unchecked(inst, L, b);
    const auto v = spec.violation(b);
    const double pe = static_cast<double>(e) + penalty.lambda * static_cast<double>(v);
    if (pe < ex.e_min) {
      ex.e_min = pe;
      ex.penalized_argmin.clear();
    }
    if (pe == ex.e_min) ex.penalized_argmin.push_back(b);
    ex.e_max = std::max(ex.e_max, pe);
    if (v == 0) {
      if (e < ex.optimal_energy) {
        ex.optimal_energy = e;
        ex.optimal_set.clear();
      }
      if (e == ex.optimal_energy) ex.optimal_set.push_back(b);
    }
  }
  return ex;
}

// A_i uniform over {1..5}, B_ij uniform over {0, 1, 2}.
inline std::vector<FacilityInstance> generate_instances(int count, std::uint64_t seed, int n = 3, int m = 3) {
  if (count < 1) throw ArgumentError("instance count must be >= 1");
  if (n < 1 || m < 1) throw ArgumentError("facility instance needs n, m >= 1");
  Rng rng(seed);
  std::vector<FacilityInstance> out;
  out.reserve(count);
  for (int c = 0; c < count; ++c) {
    FacilityInstance inst{n, m, {}, {}};
    for (int i = 0; i < n; ++i) inst.A.push_back(rng.uniform_int(1, 5));
    inst.B.assign(n, std::vector<std::int64_t>(m));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) inst.B[i][j] = rng.uniform_int(0, 2);
    out.push_back(std::move(inst));
  }
  return out;
}

// Observables over a register of `num_qubits` whose low qubits carry the
// instance's problem variables.
inline DiagonalHamiltonian cost_hamiltonian(const FacilityInstance& inst, int num_qubits) {
  inst.validate();
  const auto L = inst.spec().problem_layout();
  return DiagonalHamiltonian::from_function(num_qubits, L.problem_bits(), [&](Basis b) {
    return static_cast<double>(detail::energy_unchecked(inst, L, b));
  });
}

inline DiagonalHamiltonian penalized_hamiltonian(const FacilityInstance& inst, const PenaltyConfig& penalty,
                                                 int num_qubits) {
  inst.validate();
  const auto spec = inst.spec();
  const auto L = spec.problem_layout();
  return DiagonalHamiltonian::from_function(num_qubits, L.problem_bits(), [&](Basis b) {
    return static_cast<double>(detail::energy_unchecked(inst, L, b)) +
           penalty.lambda * static_cast<double>(spec.violation(b));
  });
}

inline nlohmann::json to_json(const FacilityInstance& inst) {
  return {{"n", inst.n}, {"m", inst.m}, {"A", inst.A}, {"B", inst.B}};
}

inline FacilityInstance instance_from_json(const nlohmann::json& j) {
  FacilityInstance inst;
  try {
    inst.n = j.at("n").get<int>();
    inst.m = j.at("m").get<int>();
    inst.A = j.at("A").get<std::vector<std::int64_t>>();
    inst.B = j.at("B").get<std::vector<std::vector<std::int64_t>>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("instance json: ") + e.what());
  }
  inst.validate();
  return inst;
}

}  // namespace ffvqc
