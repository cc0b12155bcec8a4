// ffvqc: instances, experiment runs, cost tables and report conversion.
//
//   ffvqc gen-instances --n 3 --m 3 --instances 20 --seed 1 --out inst.json
//   ffvqc run --instances 20 --seed 1 --out results --format csv
//   ffvqc cost-table --family all --n 5
//   ffvqc report --input results/report.json --format csv --out results
//
// Failures print {"error": {"kind": ..., "message": ...}} on stderr and exit 1.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ffvqc/ffvqc.hpp"

using namespace ffvqc;

namespace {

void fail(std::string_view kind, const std::string& message) {
  nlohmann::json j{{"error", {{"kind", kind}, {"message", message}}}};
  std::cerr << j.dump() << '\n';
}

ReportFormat parse_format(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  throw ArgumentError("unknown format '" + s + "' (json or csv)");
}

void emit_text(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    write_file(out, text);
}

std::vector<Family> parse_families(const std::vector<std::string>& names) {
  std::vector<Family> out;
  for (const auto& s : names) {
    if (s == "all") return {Family::tsp, Family::assignment, Family::shift, Family::facility, Family::product_chain};
    out.push_back(family_from_string(s));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fully feasible variational circuits: experiments and cost tables"};
  app.require_subcommand(1);

  // gen-instances
  auto* gen = app.add_subcommand("gen-instances", "Generate random facility-location instances as JSON");
  int gen_n = 3, gen_m = 3, gen_count = 20;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  gen->add_option("--n", gen_n, "facilities")->capture_default_str();
  gen->add_option("--m", gen_m, "customers")->capture_default_str();
  gen->add_option("--instances", gen_count, "number of instances")->capture_default_str();
  gen->add_option("--seed", gen_seed, "random seed")->capture_default_str();
  gen->add_option("--out", gen_out, "output file (stdout if omitted)");

  // run
  auto* run = app.add_subcommand("run", "Run the VQE comparison and write a report");
  auto plan = ExperimentPlan::defaults();
  std::string run_family = "facility", run_out = "results", run_format = "json", run_input, run_optimizer = "cobyla";
  std::vector<double> run_lambdas;
  std::vector<int> run_layers;
  bool proposed_only = false, baselines_only = false;
  run->add_option("--family", run_family, "problem family (only facility has a cost hamiltonian)")->capture_default_str();
  run->add_option("--n", plan.n, "facilities")->capture_default_str();
  run->add_option("--m", plan.m, "customers")->capture_default_str();
  run->add_option("--instances", plan.instance_count, "number of instances")->capture_default_str();
  run->add_option("--seed", plan.seed, "master seed")->capture_default_str();
  run->add_option("--shots", plan.shots, "shots per energy estimate (0: exact)")->capture_default_str();
  run->add_option("--max-iter", plan.max_iterations, "objective evaluations per run")->capture_default_str();
  run->add_option("--lambda", run_lambdas, "penalty weights (default 5 10 15 20)");
  run->add_option("--layers", run_layers, "baseline layer counts (default 1 2 3)");
  run->add_option("--out", run_out, "output directory")->capture_default_str();
  run->add_option("--format", run_format, "json or csv")->capture_default_str();
  run->add_option("--input", run_input, "instance file from gen-instances");
  run->add_option("--threads", plan.threads, "worker threads (0: all cores)")->capture_default_str();
  run->add_option("--optimizer", run_optimizer, "cobyla or nelder-mead")->capture_default_str();
  run->add_flag("--proposed-only", proposed_only, "skip the penalty baselines");
  run->add_flag("--baselines-only", baselines_only, "skip the proposed ansatz");

  // cost-table
  auto* cost = app.add_subcommand("cost-table", "Measured circuit costs beside the closed forms");
  std::vector<std::string> cost_families{"all"};
  int cost_n = 5;
  std::vector<int> cost_layers{1, 2, 3};
  std::string cost_format = "text", cost_out, cost_dims = "customers-facilities";
  cost->add_option("--family", cost_families, "families, or all")->capture_default_str();
  cost->add_option("--n", cost_n, "largest n; every m <= n is listed")->capture_default_str();
  cost->add_option("--layers", cost_layers, "baseline layer counts")->capture_default_str();
  cost->add_option("--format", cost_format, "text or json")->capture_default_str();
  cost->add_option("--out", cost_out, "output file (stdout if omitted)");
  cost->add_option("--dims", cost_dims, "facility rows as customers-facilities or facilities-customers")
      ->capture_default_str();

  // report
  auto* rep = app.add_subcommand("report", "Re-emit a saved report.json");
  std::string rep_input, rep_out, rep_format = "text";
  rep->add_option("--input", rep_input, "report.json written by run")->required();
  rep->add_option("--out", rep_out, "output directory (json/csv) or file (text)");
  rep->add_option("--format", rep_format, "text, json or csv")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    fail("argument", e.what());
    return 1;
  }

  try {
    if (*gen) {
      nlohmann::json j = nlohmann::json::array();
      for (const auto& inst : generate_instances(gen_count, gen_seed, gen_n, gen_m)) j.push_back(to_json(inst));
      emit_text(gen_out, j.dump(2) + "\n");
    } else if (*run) {
      plan.family = family_from_string(run_family);
      if (run_optimizer == "cobyla")
        plan.optimizer = OptimizerKind::cobyla_like;
      else if (run_optimizer == "nelder-mead")
        plan.optimizer = OptimizerKind::nelder_mead;
      else
        throw ArgumentError("unknown optimizer '" + run_optimizer + "'");
      if (proposed_only && baselines_only) throw ArgumentError("--proposed-only and --baselines-only exclude each other");
      if (!run_lambdas.empty()) plan.lambdas = run_lambdas;
      if (run_layers.empty()) run_layers = {1, 2, 3};
      plan.methods.clear();
      if (!baselines_only) plan.methods.push_back(Method::proposed());
      if (!proposed_only)
        for (int l : run_layers)
          for (double lam : plan.lambdas) plan.methods.push_back(Method::layered(l, lam));
      if (!run_input.empty()) {
        const auto j = parse_json_file(run_input);
        if (!j.is_array()) throw ParseError("'" + run_input + "': expected an array of instances");
        for (const auto& ji : j) plan.instances.push_back(instance_from_json(ji));
        plan.instance_count = static_cast<int>(plan.instances.size());
        if (!plan.instances.empty()) plan.n = plan.instances[0].n, plan.m = plan.instances[0].m;
      }
      const auto format = parse_format(run_format);
      const auto report = run_experiment(plan);
      for (const auto& f : emit_report(report, run_out, format)) std::cerr << "wrote " << f.string() << '\n';
      std::cout << summary_table(report);
    } else if (*cost) {
      FacilityDims dims;
      if (cost_dims == "customers-facilities")
        dims = FacilityDims::customers_facilities;
      else if (cost_dims == "facilities-customers")
        dims = FacilityDims::facilities_customers;
      else
        throw ArgumentError("unknown --dims '" + cost_dims + "'");
      const auto rows = cost_table(parse_families(cost_families), cost_n, cost_layers, dims);
      if (cost_format == "text")
        emit_text(cost_out, format_cost_table(rows));
      else if (cost_format == "json")
        emit_text(cost_out, to_json(rows).dump(2) + "\n");
      else
        throw ArgumentError("unknown format '" + cost_format + "' (text or json)");
    } else if (*rep) {
      const auto report = report_from_json(parse_json_file(rep_input));
      if (rep_format == "text") {
        emit_text(rep_out, summary_table(report));
      } else {
        if (rep_out.empty()) throw ArgumentError("--out directory is required for json/csv");
        for (const auto& f : emit_report(report, rep_out, parse_format(rep_format))) std::cerr << "wrote " << f.string() << '\n';
      }
    }
  } catch (const Error& e) {
    fail(to_string(e.kind()), e.what());
    return 1;
  } catch (const std::exception& e) {
    fail("internal", e.what());
    return 1;
  }
  return 0;
}
