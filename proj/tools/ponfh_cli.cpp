// Command-line front end: instance generation, evaluation, solving,
// LP exchange and benchmark sweeps.

#include "ponfh/bench.hpp"
#include "ponfh/instance_gen.hpp"
#include "ponfh/milp.hpp"
#include "ponfh/serialization.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

using namespace ponfh;

namespace {

constexpr int kOk = 0;
constexpr int kInfeasible = 1;
constexpr int kUsage = 2;

// A preset name or a path to a scenario JSON file.
Scenario load_scenario(const std::string& arg) {
  for (const auto& n : scenario_preset_names())
    if (n == arg) return scenario_preset(arg);
  if (!std::filesystem::exists(arg))
    throw std::invalid_argument("scenario '" + arg + "' is neither a preset nor a file");
  return scenario_from_json(read_json_file(arg));
}

struct ProblemArgs {
  std::string instance;
  std::string scenario = "scenario1";
  std::string catalog;

  void attach(CLI::App* app) {
    app->add_option("-i,--instance", instance, "instance JSON")->required();
    app->add_option("--scenario", scenario, "preset name or scenario JSON");
    app->add_option("--catalog", catalog, "cost catalog JSON");
  }

  Problem load() const {
    const auto sc = load_scenario(scenario);
    CostCatalog cat;
    if (!catalog.empty()) cat = catalog_from_json(read_json_file(catalog));
    auto inst = instance_from_json(read_json_file(instance));
    const auto issues = validate_instance(inst);
    if (!issues.empty()) throw ParseError("invalid instance: " + issues.front().message);
    return make_problem(std::move(inst), sc, cat);
  }
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_text_file(path, text);
}

void print_breakdown(const CostBreakdown& c) {
  std::printf("dist_fiber_trench    %.2f\n", c.dist_fiber_trench);
  std::printf("feeder_trench_fiber  %.2f\n", c.feeder_trench_fiber);
  std::printf("equipment_capex      %.2f\n", c.equipment_capex);
  std::printf("maintenance_opex     %.2f\n", c.maintenance_opex);
  std::printf("rent_opex            %.2f\n", c.rent_opex);
  std::printf("energy_opex          %.2f\n", c.energy_opex);
  std::printf("total                %.2f\n", c.total);
}

void print_report(const FeasibilityReport& rep) {
  if (rep.feasible()) {
    std::printf("feasible\n");
    return;
  }
  std::printf("infeasible: %zu violations\n", rep.violations.size());
  for (const auto& v : rep.violations) {
    std::printf("  %s [", constraint_name(v.constraint));
    for (std::size_t i = 0; i < v.indices.size(); ++i)
      std::printf(i ? ",%d" : "%d", v.indices[i]);
    std::printf("] by %.6g\n", v.magnitude);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PON fronthaul planning toolkit"};
  app.require_subcommand(1);
  int code = kOk;

  // generate
  auto* gen = app.add_subcommand("generate", "sample a network instance");
  std::string gen_scenario = "scenario1", gen_out;
  GeneratorConfig gcfg;
  bool gen_any_size = false;
  gen->add_option("--scenario", gen_scenario, "preset name or scenario JSON");
  gen->add_option("--n-du", gcfg.n_du)->required();
  gen->add_option("--n-ru", gcfg.n_ru)->required();
  gen->add_option("--topology", gcfg.topology_index);
  gen->add_option("--seed", gcfg.master_seed);
  gen->add_flag("--any-size", gen_any_size, "allow sizes outside the scenario sweep");
  gen->add_option("-o,--out", gen_out);
  gen->callback([&] {
    gcfg.scenario = load_scenario(gen_scenario);
    gcfg.require_sweep_membership = !gen_any_size;
    emit(gen_out, to_json(generate_instance(gcfg)).dump(1) + "\n");
  });

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "TCO and feasibility of a solution");
  ProblemArgs ev_args;
  std::string ev_sol;
  bool ev_json = false;
  ev_args.attach(ev);
  ev->add_option("-s,--solution", ev_sol)->required();
  ev->add_flag("--json", ev_json);
  ev->callback([&] {
    const auto p = ev_args.load();
    const auto sol = solution_from_json(read_json_file(ev_sol));
    require_structure(p.inst, p.params, sol);
    const auto rep = check_solution(p, sol);
    const auto cost = compute_tco(p, sol);
    if (ev_json) {
      std::cout << Json{{"cost", to_json(cost)}, {"feasibility", to_json(rep)}}.dump(2) << "\n";
    } else {
      print_breakdown(cost);
      print_report(rep);
    }
    code = rep.feasible() ? kOk : kInfeasible;
  });

  // solve
  auto* so = app.add_subcommand("solve", "run one solver on one instance");
  ProblemArgs so_args;
  SolverSpec so_spec;
  so_spec.name = "rssa";
  std::uint64_t so_seed = 0;
  std::string so_out, so_config;
  so_args.attach(so);
  so->add_option("--solver", so_spec.name)->check(CLI::IsMember(solver_names()));
  so->add_option("--time", so_spec.t_run_s, "wall-clock budget in seconds");
  so->add_option("--patience", so_spec.patience);
  so->add_option("--seed", so_seed);
  so->add_option("--config", so_config, "solver options JSON");
  so->add_option("-o,--out", so_out, "solution JSON");
  so->callback([&] {
    const auto p = so_args.load();
    if (!so_config.empty()) so_spec.config = read_json_file(so_config);
    const auto out = run_solver(so_spec, p, so_seed);
    if (!out.solution) {
      std::fprintf(stderr, "%s: %s\n", so_spec.name.c_str(), out.failure.c_str());
      code = kInfeasible;
      return;
    }
    const auto rep = check_solution(p, *out.solution);
    print_breakdown(compute_tco(p, *out.solution));
    print_report(rep);
    std::printf("iterations %lld  runtime %.3fs\n", out.iterations, out.runtime_s);
    if (!so_out.empty()) write_text_file(so_out, to_json(*out.solution).dump(1) + "\n");
    code = rep.feasible() ? kOk : kInfeasible;
  });

  // export-lp
  auto* ex = app.add_subcommand("export-lp", "write the MILP in LP format");
  ProblemArgs ex_args;
  std::string ex_out;
  ex_args.attach(ex);
  ex->add_option("-o,--out", ex_out);
  ex->callback([&] { emit(ex_out, export_lp(build_model(ex_args.load()))); });

  // import-sol
  auto* im = app.add_subcommand("import-sol", "read an external solver's variable values");
  ProblemArgs im_args;
  std::string im_sol, im_out;
  im_args.attach(im);
  im->add_option("--values", im_sol, "\"name value\" listing")->required();
  im->add_option("-o,--out", im_out, "solution JSON");
  im->callback([&] {
    const auto p = im_args.load();
    const auto model = build_model(p);
    const auto imp = import_solution(model, read_text_file(im_sol));
    const auto rep = check_solution(p, imp.solution);
    const auto cost = compute_tco(p, imp.solution);
    print_breakdown(cost);
    print_report(rep);
    if (imp.reported_objective) {
      const double gap = relative_diff(*imp.reported_objective, cost.total);
      std::printf("reported objective %.2f (relative difference %.3g)\n", *imp.reported_objective,
                  gap);
    }
    if (!im_out.empty()) write_text_file(im_out, to_json(imp.solution).dump(1) + "\n");
    code = rep.feasible() ? kOk : kInfeasible;
  });

  // bench
  auto* be = app.add_subcommand("bench", "run an experiment sweep");
  std::string be_spec, be_dir;
  be->add_option("--spec", be_spec, "experiment JSON")->required();
  be->add_option("--out-dir", be_dir, "overrides the spec's output directory");
  be->callback([&] {
    auto spec = experiment_from_json(read_json_file(be_spec));
    if (!be_dir.empty()) spec.output_dir = be_dir;
    const auto records = run_experiment(spec, [](const RunRecord& r) {
      std::fprintf(stderr, "%s nd=%d nr=%d topo=%d %-6s %s %s\n", r.scenario.c_str(), r.n_du,
                   r.n_ru, r.topology_index, r.solver.c_str(),
                   r.feasible ? "feasible" : "infeasible", r.note.c_str());
    });
    std::printf("%zu records in %s, hash %016llx\n", records.size(), spec.output_dir.c_str(),
                static_cast<unsigned long long>(determinism_hash(records)));
  });

  // report
  auto* re = app.add_subcommand("report", "aggregate records into summary and plot tables");
  std::string re_records, re_dir = "report";
  re->add_option("--records", re_records, "records.csv from bench")->required();
  re->add_option("-o,--out-dir", re_dir);
  re->callback([&] {
    const auto records = records_from_csv(read_text_file(re_records));
    for (const auto& path : write_report(records, re_dir)) std::printf("%s\n", path.c_str());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  return code;
}
