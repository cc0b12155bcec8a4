#pragma once

// Experiment harness: the fully feasible facility-location ansatz against
// layered penalty baselines over a grid of layer counts and penalty weights.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "ansatz.hpp"
#include "cost.hpp"
#include "errors.hpp"
#include "problems.hpp"
#include "rng.hpp"
#include "vqe.hpp"

namespace ffvqc {

struct Method {
  enum class Kind { proposed, layered };
  Kind kind = Kind::proposed;
  int layers = 0;
  double lambda = 0.0;  // penalty weight; unused by the proposed method

  static Method proposed() { return {}; }
  static Method layered(int layers, double lambda) { return {Kind::layered, layers, lambda}; }

  bool is_proposed() const { return kind == Kind::proposed; }

  std::string label() const {
    if (is_proposed()) return "proposed";
    std::ostringstream os;
    os << "layered_l" << layers << "_lambda" << lambda;
    return os.str();
  }

  friend bool operator==(const Method&, const Method&) = default;
};

struct ExperimentPlan {
  Family family = Family::facility;
  int n = 3;  // facilities
  int m = 3;  // customers
  int instance_count = 20;
  std::uint64_t seed = 1;
  std::vector<Method> methods;
  std::int64_t shots = 2000;
  int max_iterations = 300;
  // Penalty weights used to normalize the proposed method's energies.
  std::vector<double> lambdas{5, 10, 15, 20};
  OptimizerKind optimizer = OptimizerKind::cobyla_like;
  int threads = 0;  // 0: hardware concurrency
  // When non-empty, used instead of generated instances.
  std::vector<FacilityInstance> instances;

  static ExperimentPlan defaults() {
    ExperimentPlan p;
    p.methods.push_back(Method::proposed());
    for (int l : {1, 2, 3})
      for (double lam : p.lambdas) p.methods.push_back(Method::layered(l, lam));
    return p;
  }

  void validate() const {
    if (family != Family::facility)
      throw PlanError("only the facility family has a cost hamiltonian; got " + std::string(to_string(family)));
    if (n < 1 || m < 1) throw PlanError("dimensions must be positive");
    if (instance_count < 1) throw PlanError("instance_count must be >= 1");
    if (methods.empty()) throw PlanError("plan has no methods");
    if (shots < 0) throw PlanError("shots must be >= 0");
    if (max_iterations < 1) throw PlanError("max_iterations must be >= 1");
    if (lambdas.empty()) throw PlanError("at least one normalization lambda is required");
    for (double l : lambdas)
      if (!(l > 0.0)) throw PlanError("lambda values must be > 0");
    for (const auto& mth : methods) {
      if (mth.is_proposed()) continue;
      if (!(mth.lambda > 0.0)) throw PlanError("penalty methods need lambda > 0");
      if (mth.layers < 0) throw PlanError("layer count must be >= 0");
    }
    if (!instances.empty() && static_cast<int>(instances.size()) != instance_count)
      throw PlanError("instance list size differs from instance_count");
    for (const auto& inst : instances)
      if (inst.n != n || inst.m != m) throw PlanError("instance dimensions differ from the plan");
    const int qubits = ConstraintSpec::facility(n, m).ansatz_layout().total_qubits();
    if (qubits > kDefaultMaxQubits)
      throw CapacityError("proposed ansatz needs " + std::to_string(qubits) + " qubits, cap is " +
                          std::to_string(kDefaultMaxQubits));
  }
};

// Brute-force spectrum of one instance under one penalty weight.
struct Spectrum {
  double lambda = 0.0;
  double e_min = 0.0;
  double e_max = 0.0;
};

struct InstanceRecord {
  int instance = 0;
  std::string method;
  double lambda = 0.0;  // 0 for the proposed method
  double feasible_rate = 0.0;
  double optimal_rate = 0.0;
  double final_energy = 0.0;  // mean objective over the final sample
  std::vector<double> energy_trace;
  std::vector<double> best_params;
};

struct MethodSummary {
  std::string method;
  int layers = 0;
  double lambda = 0.0;
  int count = 0;
  double feasible_percent = 0.0;
  double optimal_percent = 0.0;
};

// Normalized-energy curve for one (method, lambda) pair, averaged over
// instances. Traces shorter than max_iterations are padded with their last
// value.
struct TraceSeries {
  std::string method;
  double lambda = 0.0;
  std::vector<double> mean;
  std::vector<double> stddev;
  double final_mean = 0.0;  // normalized final-sample energy, mean over instances
  double final_std = 0.0;
};

struct ExperimentReport {
  nlohmann::json plan;
  std::vector<FacilityInstance> instances;
  std::vector<std::vector<Spectrum>> spectra;  // [instance][lambda]
  std::vector<std::int64_t> optimal_energy;    // [instance], feasible optimum of the cost
  std::vector<InstanceRecord> records;  // instance-major, plan method order
  std::vector<MethodSummary> summary;
  std::vector<TraceSeries> series;
};

inline nlohmann::json to_json(const ExperimentPlan& p) {
  nlohmann::json methods = nlohmann::json::array();
  for (const auto& mth : p.methods)
    methods.push_back({{"kind", mth.is_proposed() ? "proposed" : "layered"}, {"layers", mth.layers}, {"lambda", mth.lambda}});
  return {{"family", std::string(to_string(p.family))},
          {"n", p.n},
          {"m", p.m},
          {"instance_count", p.instance_count},
          {"seed", p.seed},
          {"methods", methods},
          {"shots", p.shots},
          {"max_iterations", p.max_iterations},
          {"lambdas", p.lambdas},
          {"optimizer", std::string(to_string(p.optimizer))}};
}

namespace detail {

inline double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

inline double std_of(const std::vector<double>& v, double mean) {
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return v.empty() ? 0.0 : std::sqrt(s / static_cast<double>(v.size()));
}

inline const Spectrum& spectrum_for(const std::vector<Spectrum>& spectra, double lambda) {
  for (const auto& s : spectra)
    if (s.lambda == lambda) return s;
  throw PlanError("no spectrum for lambda " + std::to_string(lambda));
}

template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : std::thread::hardware_concurrency();
  workers = std::max<std::size_t>(1, std::min(workers, count));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

// Recomputes summary and series from records and spectra.
inline void aggregate(ExperimentReport& report, const ExperimentPlan& plan) {
  report.summary.clear();
  report.series.clear();
  const std::size_t M = plan.methods.size();
  const std::size_t I = report.instances.size();
  for (std::size_t k = 0; k < M; ++k) {
    const auto& mth = plan.methods[k];
    MethodSummary s{mth.label(), mth.layers, mth.is_proposed() ? 0.0 : mth.lambda, static_cast<int>(I), 0, 0};
    std::vector<double> feas, opt;
    for (std::size_t i = 0; i < I; ++i) {
      feas.push_back(report.records[i * M + k].feasible_rate);
      opt.push_back(report.records[i * M + k].optimal_rate);
    }
    s.feasible_percent = 100.0 * detail::mean_of(feas);
    s.optimal_percent = 100.0 * detail::mean_of(opt);
    report.summary.push_back(s);

    const std::vector<double> lambdas = mth.is_proposed() ? plan.lambdas : std::vector<double>{mth.lambda};
    for (double lam : lambdas) {
      TraceSeries ts{mth.label(), lam, {}, {}, 0, 0};
      const auto iters = static_cast<std::size_t>(plan.max_iterations);
      std::vector<std::vector<double>> normalized(I);
      std::vector<double> finals;
      for (std::size_t i = 0; i < I; ++i) {
        const auto& rec = report.records[i * M + k];
        const auto& sp = detail::spectrum_for(report.spectra[i], lam);
        for (std::size_t t = 0; t < iters; ++t) {
          const double e = rec.energy_trace.empty() ? rec.final_energy
                                                    : rec.energy_trace[std::min(t, rec.energy_trace.size() - 1)];
          normalized[i].push_back(normalize(e, sp.e_min, sp.e_max));
        }
        finals.push_back(normalize(rec.final_energy, sp.e_min, sp.e_max));
      }
      for (std::size_t t = 0; t < iters; ++t) {
        std::vector<double> col;
        for (std::size_t i = 0; i < I; ++i) col.push_back(normalized[i][t]);
        const double mu = detail::mean_of(col);
        ts.mean.push_back(mu);
        ts.stddev.push_back(detail::std_of(col, mu));
      }
      ts.final_mean = detail::mean_of(finals);
      ts.final_std = detail::std_of(finals, ts.final_mean);
      report.series.push_back(std::move(ts));
    }
  }
}

inline ExperimentReport run_experiment(const ExperimentPlan& plan) {
  plan.validate();
  ExperimentReport report;
  report.plan = to_json(plan);
  report.instances = plan.instances.empty() ? generate_instances(plan.instance_count, derive_seed({plan.seed, 1}),
                                                                 plan.n, plan.m)
                                            : plan.instances;
  const std::size_t I = report.instances.size();
  const std::size_t M = plan.methods.size();
  const auto spec = ConstraintSpec::facility(plan.n, plan.m);

  std::vector<double> all_lambdas = plan.lambdas;
  for (const auto& mth : plan.methods)
    if (!mth.is_proposed() && std::find(all_lambdas.begin(), all_lambdas.end(), mth.lambda) == all_lambdas.end())
      all_lambdas.push_back(mth.lambda);

  // Brute-force spectra; the feasible optimum does not depend on lambda.
  report.spectra.assign(I, {});
  report.optimal_energy.assign(I, 0);
  std::vector<std::vector<Basis>> optimal_sets(I);
  for (std::size_t i = 0; i < I; ++i) {
    for (double lam : all_lambdas) {
      const auto ex = brute_force_extrema(report.instances[i], PenaltyConfig(lam));
      report.spectra[i].push_back({lam, ex.e_min, ex.e_max});
      optimal_sets[i] = ex.optimal_set;
      report.optimal_energy[i] = ex.optimal_energy;
    }
  }

  // Shared read-only circuits, one per method.
  std::vector<AnsatzBundle> bundles;
  for (const auto& mth : plan.methods)
    bundles.push_back(mth.is_proposed() ? build_facility_ansatz(plan.n, plan.m) : build_layered_ansatz(spec, mth.layers));

  report.records.resize(I * M);
  detail::parallel_for(I * M, plan.threads, [&](std::size_t task) {
    const std::size_t i = task / M, k = task % M;
    const auto& mth = plan.methods[k];
    const auto& bundle = bundles[k];
    const int q = bundle.circuit.num_qubits();
    const auto h = mth.is_proposed() ? cost_hamiltonian(report.instances[i], q)
                                     : penalized_hamiltonian(report.instances[i], PenaltyConfig(mth.lambda), q);
    VqeConfig cfg;
    cfg.shots = plan.shots;
    cfg.max_iterations = plan.max_iterations;
    cfg.optimizer = plan.optimizer;
    cfg.init_seed = derive_seed({plan.seed, 2, i, k});
    cfg.final_shots = plan.shots > 0 ? plan.shots : 2000;
    const auto& sp = detail::spectrum_for(report.spectra[i], mth.is_proposed() ? plan.lambdas.front() : mth.lambda);
    const auto res = optimize(bundle, h, cfg, Scoring{spec, optimal_sets[i], sp.e_min, sp.e_max});
    report.records[task] = {static_cast<int>(i), mth.label(), mth.is_proposed() ? 0.0 : mth.lambda,
                            res.feasible_rate, res.optimal_rate, res.final_energy, res.energy_trace, res.best_params};
  });

  aggregate(report, plan);
  return report;
}

// ---- serialization ---------------------------------------------------------

inline ExperimentPlan plan_from_json(const nlohmann::json& j) {
  ExperimentPlan p;
  try {
    p.family = family_from_string(j.at("family").get<std::string>());
    p.n = j.at("n").get<int>();
    p.m = j.at("m").get<int>();
    p.instance_count = j.at("instance_count").get<int>();
    p.seed = j.at("seed").get<std::uint64_t>();
    p.shots = j.at("shots").get<std::int64_t>();
    p.max_iterations = j.at("max_iterations").get<int>();
    p.lambdas = j.at("lambdas").get<std::vector<double>>();
    p.optimizer = j.at("optimizer").get<std::string>() == "nelder_mead" ? OptimizerKind::nelder_mead
                                                                       : OptimizerKind::cobyla_like;
    for (const auto& jm : j.at("methods")) {
      if (jm.at("kind").get<std::string>() == "proposed")
        p.methods.push_back(Method::proposed());
      else
        p.methods.push_back(Method::layered(jm.at("layers").get<int>(), jm.at("lambda").get<double>()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("plan json: ") + e.what());
  }
  return p;
}

inline nlohmann::json to_json(const ExperimentReport& r) {
  nlohmann::json j;
  j["plan"] = r.plan;
  j["instances"] = nlohmann::json::array();
  for (const auto& inst : r.instances) j["instances"].push_back(to_json(inst));
  j["spectra"] = nlohmann::json::array();
  for (std::size_t i = 0; i < r.spectra.size(); ++i) {
    nlohmann::json js = nlohmann::json::array();
    for (const auto& s : r.spectra[i]) js.push_back({{"lambda", s.lambda}, {"e_min", s.e_min}, {"e_max", s.e_max}});
    j["spectra"].push_back({{"instance", i}, {"optimal_energy", r.optimal_energy.at(i)}, {"by_lambda", js}});
  }
  j["summary"] = nlohmann::json::array();
  for (const auto& s : r.summary)
    j["summary"].push_back({{"method", s.method},
                            {"layers", s.layers},
                            {"lambda", s.lambda},
                            {"count", s.count},
                            {"feasible_percent", s.feasible_percent},
                            {"optimal_percent", s.optimal_percent}});
  j["series"] = nlohmann::json::array();
  for (const auto& s : r.series)
    j["series"].push_back({{"method", s.method},
                           {"lambda", s.lambda},
                           {"mean", s.mean},
                           {"std", s.stddev},
                           {"final_mean", s.final_mean},
                           {"final_std", s.final_std}});
  j["records"] = nlohmann::json::array();
  for (const auto& rec : r.records)
    j["records"].push_back({{"instance", rec.instance},
                            {"method", rec.method},
                            {"lambda", rec.lambda},
                            {"feasible_rate", rec.feasible_rate},
                            {"optimal_rate", rec.optimal_rate},
                            {"final_energy", rec.final_energy},
                            {"energy_trace", rec.energy_trace},
                            {"best_params", rec.best_params}});
  return j;
}

inline ExperimentReport report_from_json(const nlohmann::json& j) {
  ExperimentReport r;
  try {
    r.plan = j.at("plan");
    for (const auto& ji : j.at("instances")) r.instances.push_back(instance_from_json(ji));
    for (const auto& js : j.at("spectra")) {
      std::vector<Spectrum> v;
      for (const auto& s : js.at("by_lambda"))
        v.push_back({s.at("lambda").get<double>(), s.at("e_min").get<double>(), s.at("e_max").get<double>()});
      r.spectra.push_back(std::move(v));
      r.optimal_energy.push_back(js.at("optimal_energy").get<std::int64_t>());
    }
    for (const auto& js : j.at("summary"))
      r.summary.push_back({js.at("method").get<std::string>(), js.at("layers").get<int>(), js.at("lambda").get<double>(),
                           js.at("count").get<int>(), js.at("feasible_percent").get<double>(),
                           js.at("optimal_percent").get<double>()});
    for (const auto& js : j.at("series"))
      r.series.push_back({js.at("method").get<std::string>(), js.at("lambda").get<double>(),
                          js.at("mean").get<std::vector<double>>(), js.at("std").get<std::vector<double>>(),
                          js.at("final_mean").get<double>(), js.at("final_std").get<double>()});
    for (const auto& js : j.at("records"))
      r.records.push_back({js.at("instance").get<int>(), js.at("method").get<std::string>(),
                           js.at("lambda").get<double>(), js.at("feasible_rate").get<double>(),
                           js.at("optimal_rate").get<double>(), js.at("final_energy").get<double>(),
                           js.at("energy_trace").get<std::vector<double>>(),
                           js.at("best_params").get<std::vector<double>>()});
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report json: ") + e.what());
  }
  return r;
}

inline std::string format_double(double v) {
  // Shortest round-trip form, same as the JSON writer.
  return nlohmann::json(v).dump();
}

inline std::string summary_csv(const ExperimentReport& r) {
  std::ostringstream os;
  os << "method,layers,lambda,instances,feasible_percent,optimal_percent\n";
  for (const auto& s : r.summary)
    os << s.method << ',' << s.layers << ',' << format_double(s.lambda) << ',' << s.count << ','
       << format_double(s.feasible_percent) << ',' << format_double(s.optimal_percent) << '\n';
  return os.str();
}

inline std::string traces_csv(const ExperimentReport& r) {
  std::ostringstream os;
  os << "method,lambda,iteration,mean_normalized_energy,std_normalized_energy\n";
  for (const auto& s : r.series)
    for (std::size_t t = 0; t < s.mean.size(); ++t)
      os << s.method << ',' << format_double(s.lambda) << ',' << (t + 1) << ',' << format_double(s.mean[t]) << ','
         << format_double(s.stddev[t]) << '\n';
  return os.str();
}

// Fixed-width text summary, one row per method.
inline std::string summary_table(const ExperimentReport& r) {
  std::ostringstream os;
  os << std::left << std::setw(28) << "method" << std::right << std::setw(14) << "feasible %" << std::setw(14)
     << "optimal %" << std::setw(16) << "final eps" << '\n';
  for (const auto& s : r.summary) {
    double eps = 0.0;
    for (const auto& t : r.series)
      if (t.method == s.method && (s.lambda == 0.0 || t.lambda == s.lambda)) {
        eps = t.final_mean;
        break;
      }
    os << std::left << std::setw(28) << s.method << std::right << std::fixed << std::setprecision(2) << std::setw(14)
       << s.feasible_percent << std::setw(14) << s.optimal_percent << std::setprecision(4) << std::setw(16) << eps
       << '\n';
  }
  return os.str();
}

enum class ReportFormat { json, csv };

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline nlohmann::json parse_json_file(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
}

// json: <dir>/report.json; csv: <dir>/summary.csv and <dir>/traces.csv.
// Returns the files written.
inline std::vector<std::filesystem::path> emit_report(const ExperimentReport& r, const std::filesystem::path& dir,
                                                      ReportFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> written;
  if (format == ReportFormat::json) {
    written.push_back(dir / "report.json");
    write_file(written.back(), to_json(r).dump(2) + "\n");
  } else {
    written.push_back(dir / "summary.csv");
    write_file(written.back(), summary_csv(r));
    written.push_back(dir / "traces.csv");
    write_file(written.back(), traces_csv(r));
  }
  return written;
}

// ---- cost table ------------------------------------------------------------

struct CostRow {
  Family family;
  int n = 0;  // as displayed
  int m = 0;
  CostComparison proposed;
  // Layered baseline on the same problem register: (layers, measured cost).
  std::vector<std::pair<int, CostReport>> layered;
};

inline std::vector<CostRow> cost_table(const std::vector<Family>& families, int max_n, const std::vector<int>& layers,
                                       FacilityDims dims = FacilityDims::customers_facilities) {
  if (max_n < 1) throw ArgumentError("max_n must be >= 1");
  std::vector<CostRow> rows;
  for (auto fam : families) {
    for (int n = 1; n <= max_n; ++n) {
      const bool square = fam == Family::tsp || fam == Family::product_chain;
      for (int m = square ? n : 1; m <= n; ++m) {
        CostRow row{fam, n, m, cost_report(fam, n, m, dims), {}};
        for (int l : layers) {
          const auto base = build_layered_ansatz(row.proposed.spec, l);
          row.layered.emplace_back(l, measure_cost(base.circuit));
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

inline std::string format_cost_table(const std::vector<CostRow>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(14) << "family" << std::right << std::setw(4) << "n" << std::setw(4) << "m"
     << std::setw(8) << "qubits" << std::setw(8) << "(form)" << std::setw(8) << "params" << std::setw(8) << "(form)"
     << std::setw(8) << "cnots" << std::setw(8) << "(bound)" << "  flags    layered(l: params/cnots)\n";
  for (const auto& r : rows) {
    const auto& c = r.proposed;
    std::string flags = c.parameters_match() && c.qubits_match() ? "match" : "MISMATCH";
    flags += c.cnot_at_bound() ? ",=" : (c.cnot_within_bound() ? ",<=" : ",OVER");
    os << std::left << std::setw(14) << to_string(r.family) << std::right << std::setw(4) << r.n << std::setw(4) << r.m
       << std::setw(8) << c.measured.num_qubits << std::setw(8) << c.closed_form.qubits << std::setw(8)
       << c.measured.num_parameters << std::setw(8) << c.closed_form.parameters << std::setw(8) << c.measured.cnot_count
       << std::setw(8) << c.closed_form.cnot_bound << "  " << std::left << std::setw(9) << flags;
    for (const auto& [l, rep] : r.layered) os << ' ' << l << ':' << rep.num_parameters << '/' << rep.cnot_count;
    os << '\n';
  }
  return os.str();
}

inline nlohmann::json to_json(const std::vector<CostRow>& rows) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rows) {
    const auto& c = r.proposed;
    nlohmann::json layered = nlohmann::json::array();
    for (const auto& [l, rep] : r.layered)
      layered.push_back({{"layers", l},
                         {"qubits", rep.num_qubits},
                         {"parameters", rep.num_parameters},
                         {"cnots", rep.cnot_count},
                         {"closed_form_parameters", layered_closed_form(rep.num_qubits, l).parameters}});
    j.push_back({{"family", std::string(to_string(r.family))},
                 {"n", r.n},
                 {"m", r.m},
                 {"qubits", c.measured.num_qubits},
                 {"qubits_closed_form", c.closed_form.qubits},
                 {"parameters", c.measured.num_parameters},
                 {"parameters_closed_form", c.closed_form.parameters},
                 {"cnots", c.measured.cnot_count},
                 {"cnot_bound", c.closed_form.cnot_bound},
                 {"single_qubit_gates", c.measured.single_qubit_count},
                 {"layered", layered}});
  }
  return j;
}

}  // namespace ffvqc
