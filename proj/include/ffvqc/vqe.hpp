#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ansatz.hpp"
#include "circuit.hpp"
#include "errors.hpp"
#include "minimize.hpp"
#include "problems.hpp"
#include "rng.hpp"
#include "sim.hpp"

namespace ffvqc {

enum class OptimizerKind { cobyla_like, nelder_mead };

inline std::string_view to_string(OptimizerKind k) { return k == OptimizerKind::cobyla_like ? "cobyla_like" : "nelder_mead"; }

struct VqeConfig {
  std::int64_t shots = 2000;        // 0: exact expectation
  int max_iterations = 300;         // cap on objective evaluations
  OptimizerKind optimizer = OptimizerKind::cobyla_like;
  std::uint64_t init_seed = 0;
  int restarts = 1;                 // evaluations are split evenly between restarts
  std::int64_t final_shots = 2000;  // fresh sample at the best parameters
  double rho_begin = 1.0;
  double rho_end = 1e-4;

  void validate() const {
    if (shots < 0) throw ArgumentError("shots must be >= 0");
    if (max_iterations < 1) throw ArgumentError("max_iterations must be >= 1");
    if (restarts < 1 || restarts > max_iterations) throw ArgumentError("restarts must be in [1, max_iterations]");
    if (final_shots < 1) throw ArgumentError("final_shots must be >= 1");
  }
};

// What optimize() needs to turn the final sample into rates and the energy
// trace into normalized values.
struct Scoring {
  ConstraintSpec spec;
  std::vector<Basis> optimal_set;  // ascending problem-register bitstrings
  double e_min = 0.0;
  double e_max = 1.0;
};

struct Rates {
  double feasible_rate = 0.0;
  double optimal_rate = 0.0;
};

struct VqeResult {
  std::vector<double> best_params;
  double best_energy = 0.0;           // objective value at best_params when it was evaluated
  std::vector<double> energy_trace;   // objective value per evaluation
  Histogram final_histogram;
  double final_energy = 0.0;          // mean of the hamiltonian over final_histogram
  double feasible_rate = 0.0;
  double optimal_rate = 0.0;
  std::vector<double> normalized_trace;
};

// (h - e_min) / (e_max - e_min)
inline double normalize(double h_expect, double e_min, double e_max) {
  if (!(e_max > e_min)) throw DegenerateSpectrumError("normalization needs e_max > e_min");
  return (h_expect - e_min) / (e_max - e_min);
}

inline Rates metrics(const Histogram& hist, const ConstraintSpec& spec, std::span<const Basis> optimal_set) {
  std::int64_t total = 0, feasible = 0, optimal = 0;
  const Basis mask = spec.problem_mask();
  for (const auto& [b, n] : hist) {
    total += n;
    const Basis p = b & mask;
    if (!spec.contains(p)) continue;
    feasible += n;
    if (std::binary_search(optimal_set.begin(), optimal_set.end(), p)) optimal += n;
  }
  if (total == 0) throw ArgumentError("metrics need a nonempty histogram");
  return {static_cast<double>(feasible) / static_cast<double>(total),
          static_cast<double>(optimal) / static_cast<double>(total)};
}

inline double estimate_energy(const AnsatzBundle& bundle, std::span<const double> params,
                              const DiagonalHamiltonian& h, std::int64_t shots, std::uint64_t seed) {
  if (shots < 0) throw ArgumentError("shots must be >= 0");
  const auto state = simulate(bundle.circuit, params);
  if (shots == 0) return expectation_diagonal(state, h);
  if (h.num_qubits() != state.num_qubits()) throw DimensionError("hamiltonian and ansatz qubit counts differ");
  return histogram_mean(sample(state, shots, seed), h);
}

inline std::vector<double> random_parameters(std::size_t count, Rng& rng) {
  std::vector<double> p(count);
  for (auto& v : p) v = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return p;
}

inline VqeResult optimize(const AnsatzBundle& bundle, const DiagonalHamiltonian& h, const VqeConfig& config,
                          const std::optional<Scoring>& scoring = std::nullopt) {
  config.validate();
  if (h.num_qubits() != bundle.circuit.num_qubits()) throw DimensionError("hamiltonian and ansatz qubit counts differ");

  VqeResult res;
  Rng init_rng(derive_seed({config.init_seed, 0x1417}));
  std::uint64_t evaluation = 0;
  const Objective objective = [&](const std::vector<double>& x) {
    const auto seed = derive_seed({config.init_seed, 0x5a3b, evaluation++});
    const double e = estimate_energy(bundle, x, h, config.shots, seed);
    res.energy_trace.push_back(e);
    return e;
  };

  double best = std::numeric_limits<double>::infinity();
  for (int r = 0; r < config.restarts; ++r) {
    const int budget = config.max_iterations / config.restarts + (r < config.max_iterations % config.restarts ? 1 : 0);
    MinimizeOptions opt{config.rho_begin, config.rho_end, budget};
    auto x0 = random_parameters(bundle.circuit.num_parameters(), init_rng);
    const auto mr = config.optimizer == OptimizerKind::cobyla_like ? minimize_linear_trust_region(objective, x0, opt)
                                                                   : minimize_nelder_mead(objective, x0, opt);
    if (mr.fx < best) {
      best = mr.fx;
      res.best_params = mr.x;
    }
  }
  res.best_energy = best;

  const auto state = simulate(bundle.circuit, res.best_params);
  res.final_histogram = sample(state, config.final_shots, derive_seed({config.init_seed, 0xf17a1}));
  res.final_energy = histogram_mean(res.final_histogram, h);
  if (scoring) {
    const auto rates = metrics(res.final_histogram, scoring->spec, scoring->optimal_set);
    res.feasible_rate = rates.feasible_rate;
    res.optimal_rate = rates.optimal_rate;
    res.normalized_trace.reserve(res.energy_trace.size());
    for (double e : res.energy_trace) res.normalized_trace.push_back(normalize(e, scoring->e_min, scoring->e_max));
  }
  return res;
}

inline nlohmann::json histogram_to_json(const Histogram& hist) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [b, n] : hist) j[std::to_string(b)] = n;
  return j;
}

inline Histogram histogram_from_json(const nlohmann::json& j) {
  Histogram h;
  for (const auto& [k, v] : j.items()) h[std::stoull(k)] = v.get<std::int64_t>();
  return h;
}

inline nlohmann::json to_json(const VqeResult& r) {
  return {{"best_params", r.best_params},
          {"best_energy", r.best_energy},
          {"energy_trace", r.energy_trace},
          {"final_histogram", histogram_to_json(r.final_histogram)},
          {"final_energy", r.final_energy},
          {"feasible_rate", r.feasible_rate},
          {"optimal_rate", r.optimal_rate},
          {"normalized_trace", r.normalized_trace}};
}

}  // namespace ffvqc
