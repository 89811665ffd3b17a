#pragma once

// The single scoring authority: path physics, constraint checking and TCO.
// Every solver and the exact oracle score through these functions.

#include "ponfh/serialization.hpp"
#include "ponfh/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ponfh {

struct Problem {
  NetworkInstance inst;
  PhysicalParams params;
  CostCatalog catalog;
  Scenario scenario;
};

// Problem for a scenario, with the default catalog and optical parameters.
Problem make_problem(NetworkInstance inst, const Scenario& scenario, CostCatalog catalog = {},
                     PhysicalParams base = {});

double path_length_m(const NetworkInstance& inst, int d, int s, int r);
double latency_us(const PhysicalParams& params, double length_m, double proc_latency_us);
double loss_db(const PhysicalParams& params, double length_m, int type);

double path_latency_us(const NetworkInstance& inst, const PhysicalParams& params, int d, int s,
                       int r);
double path_loss_db(const NetworkInstance& inst, const PhysicalParams& params, int d, int s,
                    int r, int t);

bool latency_ok(const Scenario& scenario, double latency_us);
bool loss_ok(const PhysicalParams& params, double loss_db);

// Largest t with acceptable loss, ignoring latency; nullopt if even the
// smallest type exceeds the budget.
std::optional<int> max_type_for_length(const PhysicalParams& params, double length_m);

std::optional<int> max_feasible_type(const NetworkInstance& inst, const PhysicalParams& params,
                                     const Scenario& scenario, int d, int s, int r);

// Big-M of the feeder-link rows: the most splitters a corridor can need.
int feeder_big_m(const NetworkInstance& inst, const PhysicalParams& params);

enum class Constraint {
  SinglePath,      // each RU served by exactly one path
  PortCapacity,    // RUs on (d,s,t) fit in 2^t * n_dst ports
  FeederLink,      // sum_t n_dst <= M * z_ds
  DuActivation,    // z_ds <= u_d
  Latency,         // propagation + processing within budget
  LossBudget,      // fiber + splitter + fixed + margin within budget
  LevelSelection,  // exactly one level iff active
  DuLoad,          // RUs on d within 2^k
  DuLevelCap,      // 2^k <= n_ru_max
};

const char* constraint_name(Constraint c);
std::optional<Constraint> constraint_from_name(const std::string& name);

struct Violation {
  Constraint constraint;
  std::vector<int> indices;
  double magnitude = 0.0;
};

struct FeasibilityReport {
  std::vector<Violation> violations;
  bool feasible() const { return violations.empty(); }
  int count(Constraint c) const;
};

Json to_json(const FeasibilityReport& report);

// Throws std::invalid_argument when the solution is not shaped for the
// instance (wrong lengths, indices out of range, unknown type or level).
void require_structure(const NetworkInstance& inst, const PhysicalParams& params,
                       const Solution& sol);

FeasibilityReport check_solution(const NetworkInstance& inst, const PhysicalParams& params,
                                 const Scenario& scenario, const Solution& sol);
FeasibilityReport check_solution(const Problem& p, const Solution& sol);

// Tolerates infeasible solutions. ONU and per-RU energy terms count the RUs
// the solution actually serves.
CostBreakdown compute_tco(const NetworkInstance& inst, const CostCatalog& catalog,
                          const Solution& sol);
CostBreakdown compute_tco(const Problem& p, const Solution& sol);

// Splitter type and instance count for a group of RUs sharing one (d, s).
struct GroupDimension {
  int type = 1;
  int instances = 0;
};

// t* = min(max(1, ceil(log2 N)), t_feas), clipped to the type range;
// n = ceil(N / 2^t*).
GroupDimension dimension_group(int n_rus, int t_feas, const PhysicalParams& params);

int splitters_needed(int n_rus, int type);

// Smallest level whose capacity covers the load; the top level if none does.
int min_du_level(int load, const PhysicalParams& params);

// Completes a per-RU path choice into a full solution with minimal splitter
// counts per (d,s,t), feeders on used corridors and minimal DU levels.
Solution complete_assignment(const NetworkInstance& inst, const PhysicalParams& params,
                             std::vector<std::optional<PathChoice>> assignment);

double relative_diff(double a, double b);

}  // namespace ponfh
