#pragma once

// Experiment harness: sweeps, solver dispatch, metrics, persistence and
// aggregation into plot-ready tables.

#include "ponfh/costing.hpp"
#include "ponfh/ga.hpp"
#include "ponfh/kmc.hpp"
#include "ponfh/rssa.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ponfh {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Solver name plus budget; `config` holds per-solver overrides by field name.
struct SolverSpec {
  std::string name;
  double t_run_s = 1000.0;
  int patience = 1200;
  Json config = Json::object();
};

const std::vector<std::string>& solver_names();  // ga, kmc, rssa, oracle

struct SolverOutcome {
  std::optional<Solution> solution;  // set whenever the solver claims feasibility
  std::string failure;               // attribution when nothing feasible came back
  long long iterations = 0;          // generations, attempts or runs
  double runtime_s = 0.0;
};

SolverOutcome run_solver(const SolverSpec& spec, const Problem& problem, std::uint64_t seed);

GaConfig ga_config_for(const SolverSpec& spec, std::uint64_t seed);
KmcConfig kmc_config_for(const SolverSpec& spec, std::uint64_t seed);
RssaConfig rssa_config_for(const SolverSpec& spec, std::uint64_t seed);

struct ExperimentSpec {
  Scenario scenario;
  std::vector<int> nd_sweep;  // empty: the scenario's own sweep
  std::vector<int> nr_sweep;
  int n_topologies = 25;
  std::vector<SolverSpec> solvers;
  std::string output_dir = "results";
  std::uint64_t master_seed = 0;
  bool require_sweep_membership = true;
  CostCatalog catalog;
};

ExperimentSpec experiment_from_json(const Json& j);
Json to_json(const ExperimentSpec& spec);

struct RunRecord {
  std::string scenario;
  int n_du = 0;
  int n_ru = 0;
  int topology_index = 0;
  std::string solver;
  bool feasible = false;
  CostBreakdown cost;  // meaningful only when feasible
  int n_splitters_deployed = 0;
  int n_dus_active = 0;
  double avg_ru_splitter_distance_m = 0.0;
  double fraction_rus_constraint_ok = 0.0;
  double runtime_s = 0.0;
  long long iterations = 0;
  std::string note;  // failure attribution or exception text, not part of the CSV
};

// Metrics for a solution the harness has already validated.
RunRecord measure(const Problem& problem, const Solution& sol);

// Runs the solver and re-validates its output; never throws for solver
// failures, which land as infeasible records with a note.
RunRecord evaluate_cell(const Problem& problem, const SolverSpec& solver, std::uint64_t seed);

using RecordSink = std::function<void(const RunRecord&)>;

// Cartesian sweep. Writes records.csv in the output directory as it goes;
// throws IoError before any run when the directory is not writable.
std::vector<RunRecord> run_experiment(const ExperimentSpec& spec, const RecordSink& sink = {});

std::uint64_t solver_seed(const ExperimentSpec& spec, int n_du, int n_ru, int topology,
                          const std::string& solver);

std::string csv_header();
std::string to_csv_row(const RunRecord& rec);
std::vector<RunRecord> records_from_csv(const std::string& text);

// FNV-1a over the CSV rows with runtime_s blanked.
std::uint64_t determinism_hash(const std::vector<RunRecord>& records);

struct Stat {
  double mean = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  int n = 0;
  bool ci_defined = false;  // false when n < 2
};

// Mean and two-sided 95% Student-t interval; NaN mean for empty input.
Stat mean_ci(const std::vector<double>& xs);

struct SummaryRow {
  std::string scenario;
  int n_du = 0;
  int n_ru = 0;
  std::string solver;
  int n_records = 0;
  int n_feasible = 0;
  double feasibility_rate = 0.0;
  double mean_runtime_s = 0.0;
  // total plus the six components, over feasible records
  std::vector<std::pair<std::string, Stat>> cost;
};

const std::vector<std::string>& cost_fields();
double cost_field(const CostBreakdown& c, const std::string& field);

std::vector<SummaryRow> aggregate(const std::vector<RunRecord>& records);
Json to_json(const std::vector<SummaryRow>& summary);
std::string summary_csv(const std::vector<SummaryRow>& summary);

// summary.csv, summary.json and plot CSVs (cost vs RU count per n_du, cost
// vs DU count per n_ru) under `dir`. Returns the written paths.
std::vector<std::string> write_report(const std::vector<RunRecord>& records, const std::string& dir);

}  // namespace ponfh
