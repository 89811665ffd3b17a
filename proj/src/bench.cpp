#include "ponfh/bench.hpp"

#include "ponfh/deadline.hpp"
#include "ponfh/instance_gen.hpp"
#include "ponfh/oracle.hpp"
#include "ponfh/random.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace ponfh {

namespace fs = std::filesystem;

const std::vector<std::string>& solver_names() {
  static const std::vector<std::string> names{"ga", "kmc", "rssa", "oracle"};
  return names;
}

namespace {

template <typename T>
void override_field(const Json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad solver option ") + key + ": " + e.what());
  }
}

void reject_unknown(const Json& j, const std::set<std::string>& known, const std::string& solver) {
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw ParseError("unknown option '" + k + "' for solver " + solver);
}

std::string fmt(double x) {
  if (!std::isfinite(x)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

}  // namespace

GaConfig ga_config_for(const SolverSpec& spec, std::uint64_t seed) {
  GaConfig c;
  c.t_run_s = spec.t_run_s;
  c.patience = spec.patience;
  c.seed = seed;
  const auto& j = spec.config;
  reject_unknown(j,
                 {"pop_size", "max_generations", "elite_fraction", "tournament_k", "p_crossover",
                  "p_mut_ru", "p_mut_sd", "p_repair", "knn", "hard_penalty", "soft_penalty",
                  "site_regularization", "repair_reroute_fraction", "epsilon"},
                 "ga");
  override_field(j, "pop_size", c.pop_size);
  override_field(j, "max_generations", c.max_generations);
  override_field(j, "elite_fraction", c.elite_fraction);
  override_field(j, "tournament_k", c.tournament_k);
  override_field(j, "p_crossover", c.p_crossover);
  override_field(j, "p_mut_ru", c.p_mut_ru);
  override_field(j, "p_mut_sd", c.p_mut_sd);
  override_field(j, "p_repair", c.p_repair);
  override_field(j, "knn", c.knn);
  override_field(j, "hard_penalty", c.hard_penalty);
  override_field(j, "soft_penalty", c.soft_penalty);
  override_field(j, "site_regularization", c.site_regularization);
  override_field(j, "repair_reroute_fraction", c.repair_reroute_fraction);
  override_field(j, "epsilon", c.epsilon);
  return c;
}

KmcConfig kmc_config_for(const SolverSpec& spec, std::uint64_t seed) {
  KmcConfig c;
  c.t_run_s = spec.t_run_s;
  c.patience = spec.patience;
  c.seed = seed;
  const auto& j = spec.config;
  reject_unknown(j, {"i_km", "eps_km", "i_inner", "replication_cap", "epsilon"}, "kmc");
  override_field(j, "i_km", c.i_km);
  override_field(j, "eps_km", c.eps_km);
  override_field(j, "i_inner", c.i_inner);
  override_field(j, "replication_cap", c.replication_cap);
  override_field(j, "epsilon", c.epsilon);
  return c;
}

RssaConfig rssa_config_for(const SolverSpec& spec, std::uint64_t seed) {
  RssaConfig c;
  c.t_run_s = spec.t_run_s;
  c.patience = spec.patience;
  c.seed = seed;
  const auto& j = spec.config;
  reject_unknown(j, {"t_ph1", "epsilon", "max_runs"}, "rssa");
  if (j.contains("t_ph1")) c.t_ph1 = j.at("t_ph1").get<int>();
  if (j.contains("max_runs")) c.max_runs = j.at("max_runs").get<long long>();
  override_field(j, "epsilon", c.epsilon);
  return c;
}

SolverOutcome run_solver(const SolverSpec& spec, const Problem& p, std::uint64_t seed) {
  SolverOutcome out;
  const Deadline clock(0.0);
  if (spec.name == "ga") {
    auto r = evolve(p, ga_config_for(spec, seed));
    if (r.feasible) out.solution = std::move(r.solution);
    else out.failure = "no feasible chromosome";
    out.iterations = r.generations;
  } else if (spec.name == "kmc") {
    auto r = solve_kmc(p, kmc_config_for(spec, seed));
    if (r.feasible) out.solution = std::move(r.solution);
    else out.failure = std::string("infeasible (") + failure_name(r.last_failure) + "): " + r.last_reason;
    out.iterations = r.attempts;
  } else if (spec.name == "rssa") {
    auto r = solve_rssa(p, rssa_config_for(spec, seed));
    if (r.feasible) out.solution = std::move(r.solution);
    else out.failure = "no feasible run";
    out.iterations = r.runs;
  } else if (spec.name == "oracle") {
    if (!spec.config.empty()) throw ParseError("oracle takes no options");
    auto r = brute_force_optimal(p);
    if (r) {
      out.solution = std::move(r->solution);
      out.iterations = r->nodes;
    } else {
      out.failure = "no feasible solution exists";
    }
  } else {
    throw std::invalid_argument("unknown solver: " + spec.name);
  }
  out.runtime_s = clock.elapsed();
  return out;
}

// ---------------------------------------------------------------------------

ExperimentSpec experiment_from_json(const Json& j) {
  ExperimentSpec spec;
  if (!j.contains("scenario")) throw ParseError("experiment: missing scenario");
  const auto& sc = j.at("scenario");
  spec.scenario = sc.is_string() ? scenario_preset(sc.get<std::string>()) : scenario_from_json(sc);
  try {
    if (j.contains("nd_sweep")) spec.nd_sweep = j.at("nd_sweep").get<std::vector<int>>();
    if (j.contains("nr_sweep")) spec.nr_sweep = j.at("nr_sweep").get<std::vector<int>>();
    if (j.contains("n_topologies")) spec.n_topologies = j.at("n_topologies").get<int>();
    if (j.contains("output_dir")) spec.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("master_seed")) spec.master_seed = j.at("master_seed").get<std::uint64_t>();
    if (j.contains("require_sweep_membership"))
      spec.require_sweep_membership = j.at("require_sweep_membership").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("experiment: ") + e.what());
  }
  if (j.contains("catalog")) spec.catalog = catalog_from_json(j.at("catalog"));
  if (spec.n_topologies < 1) throw ParseError("experiment: n_topologies must be >= 1");
  if (!j.contains("solvers") || !j.at("solvers").is_array() || j.at("solvers").empty())
    throw ParseError("experiment: solvers must be a non-empty list");
  for (const auto& s : j.at("solvers")) {
    SolverSpec ss;
    if (s.is_string()) {
      ss.name = s.get<std::string>();
    } else {
      if (!s.contains("name")) throw ParseError("experiment: solver without name");
      ss.name = s.at("name").get<std::string>();
      if (s.contains("t_run_s")) ss.t_run_s = s.at("t_run_s").get<double>();
      if (s.contains("patience")) ss.patience = s.at("patience").get<int>();
      if (s.contains("config")) ss.config = s.at("config");
    }
    bool known = false;
    for (const auto& n : solver_names()) known = known || n == ss.name;
    if (!known) throw ParseError("experiment: unknown solver " + ss.name);
    // Surface bad options now rather than mid-sweep.
    if (ss.name == "ga") ga_config_for(ss, 0);
    if (ss.name == "kmc") kmc_config_for(ss, 0);
    if (ss.name == "rssa") rssa_config_for(ss, 0);
    if (ss.name == "oracle" && !ss.config.empty()) throw ParseError("oracle takes no options");
    spec.solvers.push_back(std::move(ss));
  }
  return spec;
}

Json to_json(const ExperimentSpec& spec) {
  Json j;
  j["scenario"] = to_json(spec.scenario);
  j["nd_sweep"] = spec.nd_sweep;
  j["nr_sweep"] = spec.nr_sweep;
  j["n_topologies"] = spec.n_topologies;
  j["output_dir"] = spec.output_dir;
  j["master_seed"] = spec.master_seed;
  j["require_sweep_membership"] = spec.require_sweep_membership;
  j["catalog"] = to_json(spec.catalog);
  j["solvers"] = Json::array();
  for (const auto& s : spec.solvers)
    j["solvers"].push_back(
        {{"name", s.name}, {"t_run_s", s.t_run_s}, {"patience", s.patience}, {"config", s.config}});
  return j;
}

// ---------------------------------------------------------------------------

RunRecord measure(const Problem& p, const Solution& sol) {
  RunRecord rec;
  rec.feasible = true;
  rec.cost = compute_tco(p, sol);
  for (const auto& [key, n] : sol.splitter_counts) rec.n_splitters_deployed += n;
  for (bool a : sol.du_active) rec.n_dus_active += a ? 1 : 0;
  double dist = 0.0;
  int served = 0, ok = 0;
  for (int r = 0; r < p.inst.num_rus(); ++r) {
    const auto& a = sol.assignment[r];
    if (!a) continue;
    ++served;
    dist += p.inst.dist_sr(a->s, r);
    const bool lat = latency_ok(p.scenario, path_latency_us(p.inst, p.params, a->d, a->s, r));
    const bool loss = loss_ok(p.params, path_loss_db(p.inst, p.params, a->d, a->s, r, a->t));
    if (lat && loss) ++ok;
  }
  rec.avg_ru_splitter_distance_m = served ? dist / served : 0.0;
  rec.fraction_rus_constraint_ok =
      p.inst.num_rus() ? static_cast<double>(ok) / p.inst.num_rus() : 0.0;
  return rec;
}

RunRecord evaluate_cell(const Problem& p, const SolverSpec& solver, std::uint64_t seed) {
  RunRecord rec;
  try {
    const auto out = run_solver(solver, p, seed);
    if (out.solution) {
      require_structure(p.inst, p.params, *out.solution);
      const auto report = check_solution(p, *out.solution);
      if (report.feasible()) {
        rec = measure(p, *out.solution);
      } else {
        rec.note = "solver output failed validation (" + std::to_string(report.violations.size()) +
                   " violations)";
      }
    } else {
      rec.note = out.failure;
    }
    rec.runtime_s = out.runtime_s;
    rec.iterations = out.iterations;
  } catch (const std::exception& e) {
    rec = RunRecord{};
    rec.note = std::string("exception: ") + e.what();
  }
  rec.solver = solver.name;
  return rec;
}

std::uint64_t solver_seed(const ExperimentSpec& spec, int n_du, int n_ru, int topology,
                          const std::string& solver) {
  return derive_seed(spec.master_seed,
                     {static_cast<std::uint64_t>(n_du), static_cast<std::uint64_t>(n_ru),
                      static_cast<std::uint64_t>(topology), fnv1a64(solver)});
}

std::vector<RunRecord> run_experiment(const ExperimentSpec& spec, const RecordSink& sink) {
  const auto nds = spec.nd_sweep.empty() ? spec.scenario.nd_sweep : spec.nd_sweep;
  const auto nrs = spec.nr_sweep.empty() ? spec.scenario.nr_sweep : spec.nr_sweep;
  const fs::path dir(spec.output_dir);
  const auto csv_path = dir / "records.csv";
  std::ofstream csv;
  {
    std::error_code ec;
    fs::create_directories(dir, ec);
    csv.open(csv_path, std::ios::trunc);
    if (ec || !csv) throw IoError("output directory not writable: " + spec.output_dir);
    csv << csv_header() << '\n';
    csv.flush();
    std::ofstream js(dir / "experiment.json");
    js << to_json(spec).dump(2) << '\n';
    if (!csv || !js) throw IoError("output directory not writable: " + spec.output_dir);
  }

  std::vector<RunRecord> records;
  for (int nd : nds)
    for (int nr : nrs)
      for (int topo = 0; topo < spec.n_topologies; ++topo) {
        GeneratorConfig g{spec.scenario, nd, nr, topo, spec.master_seed,
                          spec.require_sweep_membership};
        std::optional<Problem> problem;
        std::string gen_error;
        try {
          problem = make_problem(generate_instance(g), spec.scenario, spec.catalog);
        } catch (const std::exception& e) {
          gen_error = std::string("instance generation failed: ") + e.what();
        }
        for (const auto& solver : spec.solvers) {
          RunRecord rec;
          if (problem) {
            rec = evaluate_cell(*problem, solver, solver_seed(spec, nd, nr, topo, solver.name));
          } else {
            rec.solver = solver.name;
            rec.note = gen_error;
          }
          rec.scenario = spec.scenario.name;
          rec.n_du = nd;
          rec.n_ru = nr;
          rec.topology_index = topo;
          csv << to_csv_row(rec) << '\n';
          csv.flush();
          if (sink) sink(rec);
          records.push_back(std::move(rec));
        }
      }
  if (!csv) throw IoError("failed writing " + csv_path.string());
  return records;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& cost_fields() {
  static const std::vector<std::string> f{"total",           "dist_fiber_trench",
                                          "feeder_trench_fiber", "equipment_capex",
                                          "maintenance_opex", "rent_opex",
                                          "energy_opex"};
  return f;
}

double cost_field(const CostBreakdown& c, const std::string& f) {
  if (f == "total") return c.total;
  if (f == "dist_fiber_trench") return c.dist_fiber_trench;
  if (f == "feeder_trench_fiber") return c.feeder_trench_fiber;
  if (f == "equipment_capex") return c.equipment_capex;
  if (f == "maintenance_opex") return c.maintenance_opex;
  if (f == "rent_opex") return c.rent_opex;
  if (f == "energy_opex") return c.energy_opex;
  throw std::invalid_argument("unknown cost field: " + f);
}

namespace {

const std::vector<std::string> kColumns{
    "scenario", "n_du", "n_ru", "topology_index", "solver", "feasible",
    "dist_fiber_trench", "feeder_trench_fiber", "equipment_capex", "maintenance_opex",
    "rent_opex", "energy_opex", "total", "n_splitters_deployed", "n_dus_active",
    "avg_ru_splitter_distance_m", "fraction_rus_constraint_ok", "runtime_s", "iterations"};

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::string row_with(const RunRecord& r, bool with_runtime) {
  std::vector<std::string> cells{r.scenario, std::to_string(r.n_du), std::to_string(r.n_ru),
                                 std::to_string(r.topology_index), r.solver,
                                 r.feasible ? "1" : "0"};
  for (const auto& f : {"dist_fiber_trench", "feeder_trench_fiber", "equipment_capex",
                        "maintenance_opex", "rent_opex", "energy_opex", "total"})
    cells.push_back(r.feasible ? fmt(cost_field(r.cost, f)) : "");
  cells.push_back(r.feasible ? std::to_string(r.n_splitters_deployed) : "");
  cells.push_back(r.feasible ? std::to_string(r.n_dus_active) : "");
  cells.push_back(r.feasible ? fmt(r.avg_ru_splitter_distance_m) : "");
  cells.push_back(r.feasible ? fmt(r.fraction_rus_constraint_ok) : "");
  cells.push_back(with_runtime ? fmt(r.runtime_s) : "");
  cells.push_back(std::to_string(r.iterations));
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out;
}

}  // namespace

std::string csv_header() {
  std::string out;
  for (std::size_t i = 0; i < kColumns.size(); ++i) {
    if (i) out += ',';
    out += kColumns[i];
  }
  return out;
}

std::string to_csv_row(const RunRecord& rec) {
  for (const auto& s : {rec.scenario, rec.solver})
    if (s.find_first_of(",\n") != std::string::npos)
      throw std::invalid_argument("CSV field contains a separator: " + s);
  return row_with(rec, true);
}

std::vector<RunRecord> records_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("records CSV is empty");
  const auto header = split_csv(line);
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  for (const auto& c : kColumns)
    if (!col.count(c)) throw ParseError("records CSV lacks column " + c);

  std::vector<RunRecord> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size())
      throw ParseError("records CSV line " + std::to_string(line_no) + ": wrong cell count");
    auto get = [&](const std::string& c) -> const std::string& { return cells[col.at(c)]; };
    auto num = [&](const std::string& c) {
      const auto& s = get(c);
      if (s.empty()) return 0.0;
      try {
        return std::stod(s);
      } catch (const std::exception&) {
        throw ParseError("records CSV line " + std::to_string(line_no) + ": bad number in " + c);
      }
    };
    RunRecord r;
    r.scenario = get("scenario");
    r.n_du = static_cast<int>(num("n_du"));
    r.n_ru = static_cast<int>(num("n_ru"));
    r.topology_index = static_cast<int>(num("topology_index"));
    r.solver = get("solver");
    r.feasible = get("feasible") == "1";
    r.cost.dist_fiber_trench = num("dist_fiber_trench");
    r.cost.feeder_trench_fiber = num("feeder_trench_fiber");
    r.cost.equipment_capex = num("equipment_capex");
    r.cost.maintenance_opex = num("maintenance_opex");
    r.cost.rent_opex = num("rent_opex");
    r.cost.energy_opex = num("energy_opex");
    r.cost.total = num("total");
    r.n_splitters_deployed = static_cast<int>(num("n_splitters_deployed"));
    r.n_dus_active = static_cast<int>(num("n_dus_active"));
    r.avg_ru_splitter_distance_m = num("avg_ru_splitter_distance_m");
    r.fraction_rus_constraint_ok = num("fraction_rus_constraint_ok");
    r.runtime_s = num("runtime_s");
    r.iterations = static_cast<long long>(num("iterations"));
    out.push_back(std::move(r));
  }
  return out;
}

std::uint64_t determinism_hash(const std::vector<RunRecord>& records) {
  std::string all;
  for (const auto& r : records) {
    all += row_with(r, false);
    all += '\n';
  }
  return fnv1a64(all);
}

// ---------------------------------------------------------------------------

Stat mean_ci(const std::vector<double>& xs) {
  Stat s;
  s.n = static_cast<int>(xs.size());
  if (xs.empty()) {
    s.mean = s.ci_lo = s.ci_hi = std::nan("");
    return s;
  }
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / s.n;
  if (s.n < 2) {
    s.ci_lo = s.ci_hi = std::nan("");
    return s;
  }
  double ss = 0.0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  const double sd = std::sqrt(ss / (s.n - 1));
  const boost::math::students_t dist(s.n - 1);
  const double tq = boost::math::quantile(boost::math::complement(dist, 0.025));
  const double half = tq * sd / std::sqrt(static_cast<double>(s.n));
  s.ci_lo = s.mean - half;
  s.ci_hi = s.mean + half;
  s.ci_defined = true;
  return s;
}

std::vector<SummaryRow> aggregate(const std::vector<RunRecord>& records) {
  using Key = std::tuple<std::string, int, int, std::string>;
  std::map<Key, std::vector<const RunRecord*>> groups;
  for (const auto& r : records) groups[{r.scenario, r.n_du, r.n_ru, r.solver}].push_back(&r);
  std::vector<SummaryRow> out;
  for (const auto& [key, recs] : groups) {
    SummaryRow row;
    std::tie(row.scenario, row.n_du, row.n_ru, row.solver) = key;
    row.n_records = static_cast<int>(recs.size());
    double runtime = 0.0;
    for (const auto* r : recs) {
      runtime += r->runtime_s;
      if (r->feasible) ++row.n_feasible;
    }
    row.feasibility_rate = static_cast<double>(row.n_feasible) / row.n_records;
    row.mean_runtime_s = runtime / row.n_records;
    for (const auto& f : cost_fields()) {
      std::vector<double> xs;
      for (const auto* r : recs)
        if (r->feasible) xs.push_back(cost_field(r->cost, f));
      row.cost.emplace_back(f, mean_ci(xs));
    }
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const std::vector<SummaryRow>& summary) {
  Json arr = Json::array();
  auto num = [](double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); };
  for (const auto& r : summary) {
    Json j{{"scenario", r.scenario},
           {"n_du", r.n_du},
           {"n_ru", r.n_ru},
           {"solver", r.solver},
           {"n_records", r.n_records},
           {"n_feasible", r.n_feasible},
           {"feasibility_rate", r.feasibility_rate},
           {"mean_runtime_s", r.mean_runtime_s}};
    Json cost = Json::object();
    for (const auto& [f, s] : r.cost)
      cost[f] = {{"mean", num(s.mean)},
                 {"ci_lo", num(s.ci_lo)},
                 {"ci_hi", num(s.ci_hi)},
                 {"n", s.n},
                 {"ci_defined", s.ci_defined}};
    j["cost"] = std::move(cost);
    arr.push_back(std::move(j));
  }
  return arr;
}

std::string summary_csv(const std::vector<SummaryRow>& summary) {
  std::ostringstream out;
  out << "scenario,n_du,n_ru,solver,n_records,n_feasible,feasibility_rate,mean_runtime_s";
  for (const auto& f : cost_fields()) out << ',' << f << "_mean," << f << "_ci_lo," << f << "_ci_hi";
  out << '\n';
  for (const auto& r : summary) {
    out << r.scenario << ',' << r.n_du << ',' << r.n_ru << ',' << r.solver << ',' << r.n_records
        << ',' << r.n_feasible << ',' << fmt(r.feasibility_rate) << ',' << fmt(r.mean_runtime_s);
    for (const auto& [f, s] : r.cost) out << ',' << fmt(s.mean) << ',' << fmt(s.ci_lo) << ',' << fmt(s.ci_hi);
    out << '\n';
  }
  return out.str();
}

std::vector<std::string> write_report(const std::vector<RunRecord>& records,
                                      const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir);
  const auto summary = aggregate(records);
  std::vector<std::string> written;
  auto put = [&](const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::trunc);
    f << text;
    if (!f) throw IoError("failed writing " + path.string());
    written.push_back(path.string());
  };
  put(fs::path(dir) / "summary.csv", summary_csv(summary));
  put(fs::path(dir) / "summary.json", to_json(summary).dump(2) + "\n");

  // Plot files: one per (scenario, fixed axis value).
  std::map<std::string, std::ostringstream> plots;
  const std::string plot_header = "x,solver,mean,ci_lo,ci_hi,component\n";
  auto emit = [&](const std::string& name, int x, const SummaryRow& r) {
    auto& os = plots[name];
    if (os.tellp() == 0) os << plot_header;
    for (const auto& [f, s] : r.cost)
      os << x << ',' << r.solver << ',' << fmt(s.mean) << ',' << fmt(s.ci_lo) << ','
         << fmt(s.ci_hi) << ',' << f << '\n';
  };
  // Summary is ordered by (scenario, n_du, n_ru, solver), which keeps x sorted
  // inside each vs-RU file. The vs-DU files need their own ordering.
  for (const auto& r : summary)
    emit("cost_vs_ru_" + r.scenario + "_nd" + std::to_string(r.n_du) + ".csv", r.n_ru, r);
  std::vector<const SummaryRow*> by_ru;
  for (const auto& r : summary) by_ru.push_back(&r);
  std::stable_sort(by_ru.begin(), by_ru.end(), [](const SummaryRow* a, const SummaryRow* b) {
    return std::tie(a->scenario, a->n_ru, a->n_du) < std::tie(b->scenario, b->n_ru, b->n_du);
  });
  for (const auto* r : by_ru)
    emit("cost_vs_du_" + r->scenario + "_nr" + std::to_string(r->n_ru) + ".csv", r->n_du, *r);
  for (const auto& [name, os] : plots) put(fs::path(dir) / name, os.str());
  return written;
}

}  // namespace ponfh
