#include "ponfh/costing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ponfh {

namespace {

constexpr double kFeasTol = 1e-9;

}  // namespace

Problem make_problem(NetworkInstance inst, const Scenario& scenario, CostCatalog catalog,
                     PhysicalParams base) {
  return Problem{std::move(inst), physical_params_for(scenario, std::move(base)),
                 std::move(catalog), scenario};
}

double path_length_m(const NetworkInstance& inst, int d, int s, int r) {
  return inst.dist_ds(d, s) + inst.dist_sr(s, r);
}

double latency_us(const PhysicalParams& params, double length_m, double proc_latency_us) {
  return length_m / params.v_fiber * 1e6 + proc_latency_us;
}

double loss_db(const PhysicalParams& params, double length_m, int type) {
  return params.l_fib * (length_m / 1000.0) + type * params.split_loss_per_level +
         params.l_fix + params.l_margin;
}

double path_latency_us(const NetworkInstance& inst, const PhysicalParams& params, int d, int s,
                       int r) {
  return latency_us(params, path_length_m(inst, d, s, r), inst.rus[r].proc_latency_us);
}

double path_loss_db(const NetworkInstance& inst, const PhysicalParams& params, int d, int s,
                    int r, int t) {
  return loss_db(params, path_length_m(inst, d, s, r), t);
}

bool latency_ok(const Scenario& scenario, double lat) {
  return lat <= scenario.t_fh_us + kFeasTol;
}

bool loss_ok(const PhysicalParams& params, double loss) {
  return loss <= params.l_budget + kFeasTol;
}

std::optional<int> max_type_for_length(const PhysicalParams& params, double length_m) {
  for (auto it = params.splitter_types.rbegin(); it != params.splitter_types.rend(); ++it)
    if (loss_ok(params, loss_db(params, length_m, *it))) return *it;
  return std::nullopt;
}

std::optional<int> max_feasible_type(const NetworkInstance& inst, const PhysicalParams& params,
                                     const Scenario& scenario, int d, int s, int r) {
  if (!latency_ok(scenario, path_latency_us(inst, params, d, s, r))) return std::nullopt;
  return max_type_for_length(params, path_length_m(inst, d, s, r));
}

int feeder_big_m(const NetworkInstance& inst, const PhysicalParams& params) {
  const int per = 1 << params.min_type();
  return std::max(1, (inst.num_rus() + per - 1) / per);
}

const char* constraint_name(Constraint c) {
  switch (c) {
    case Constraint::SinglePath: return "single_path";
    case Constraint::PortCapacity: return "port_capacity";
    case Constraint::FeederLink: return "feeder_link";
    case Constraint::DuActivation: return "du_activation";
    case Constraint::Latency: return "latency";
    case Constraint::LossBudget: return "loss_budget";
    case Constraint::LevelSelection: return "level_selection";
    case Constraint::DuLoad: return "du_load";
    case Constraint::DuLevelCap: return "du_level_cap";
  }
  return "unknown";
}

std::optional<Constraint> constraint_from_name(const std::string& name) {
  for (auto c : {Constraint::SinglePath, Constraint::PortCapacity, Constraint::FeederLink,
                 Constraint::DuActivation, Constraint::Latency, Constraint::LossBudget,
                 Constraint::LevelSelection, Constraint::DuLoad, Constraint::DuLevelCap})
    if (name == constraint_name(c)) return c;
  return std::nullopt;
}

int FeasibilityReport::count(Constraint c) const {
  return static_cast<int>(std::count_if(violations.begin(), violations.end(),
                                        [c](const Violation& v) { return v.constraint == c; }));
}

Json to_json(const FeasibilityReport& report) {
  Json j;
  j["feasible"] = report.feasible();
  j["violations"] = Json::array();
  for (const auto& v : report.violations)
    j["violations"].push_back({{"constraint", constraint_name(v.constraint)},
                               {"indices", v.indices},
                               {"magnitude", v.magnitude}});
  return j;
}

void require_structure(const NetworkInstance& inst, const PhysicalParams& params,
                       const Solution& sol) {
  const int nd = inst.num_dus(), ns = inst.num_splitters(), nr = inst.num_rus();
  auto fail = [](const std::string& what) { throw std::invalid_argument("solution: " + what); };
  if (static_cast<int>(sol.assignment.size()) != nr) fail("assignment length != |R|");
  if (static_cast<int>(sol.du_active.size()) != nd) fail("du_active length != |D|");
  if (static_cast<int>(sol.du_level.size()) != nd) fail("du_level length != |D|");
  auto check_ds = [&](int d, int s) {
    if (d < 0 || d >= nd || s < 0 || s >= ns) fail("DU/splitter index out of range");
  };
  for (const auto& a : sol.assignment) {
    if (!a) continue;
    check_ds(a->d, a->s);
    if (!params.has_type(a->t)) fail("unknown splitter type " + std::to_string(a->t));
  }
  for (const auto& [key, n] : sol.splitter_counts) {
    const auto [d, s, t] = key;
    check_ds(d, s);
    if (!params.has_type(t)) fail("unknown splitter type " + std::to_string(t));
    if (n < 0) fail("negative splitter count");
  }
  for (const auto& [key, on] : sol.feeder) check_ds(key.first, key.second);
  for (const auto& k : sol.du_level)
    if (k && !params.has_level(*k)) fail("unknown DU level " + std::to_string(*k));
}

FeasibilityReport check_solution(const NetworkInstance& inst, const PhysicalParams& params,
                                 const Scenario& scenario, const Solution& sol) {
  require_structure(inst, params, sol);
  FeasibilityReport rep;
  auto push = [&rep](Constraint c, std::vector<int> idx, double mag) {
    rep.violations.push_back({c, std::move(idx), mag});
  };
  const int nd = inst.num_dus(), nr = inst.num_rus();

  std::map<DstKey, int> load_dst;
  std::vector<int> load_d(static_cast<std::size_t>(nd), 0);
  for (int r = 0; r < nr; ++r) {
    const auto& a = sol.assignment[r];
    if (!a) {
      push(Constraint::SinglePath, {r}, 1.0);
      continue;
    }
    ++load_dst[{a->d, a->s, a->t}];
    ++load_d[a->d];
  }

  // Port capacity over every (d,s,t) that carries RUs or splitters.
  std::map<DstKey, std::pair<int, int>> port_rows;  // load, count
  for (const auto& [k, l] : load_dst) port_rows[k].first = l;
  for (const auto& [k, n] : sol.splitter_counts) port_rows[k].second = n;
  for (const auto& [k, row] : port_rows) {
    const auto [d, s, t] = k;
    const long long cap = (1LL << t) * row.second;
    if (row.first > cap) push(Constraint::PortCapacity, {d, s, t}, double(row.first - cap));
  }

  // Feeder link and DU activation over every corridor mentioned.
  const int big_m = feeder_big_m(inst, params);
  std::map<DsKey, int> splitters_ds;
  for (const auto& [k, n] : sol.splitter_counts)
    splitters_ds[{std::get<0>(k), std::get<1>(k)}] += n;
  for (const auto& [k, on] : sol.feeder) splitters_ds.try_emplace(k, 0);
  for (const auto& [k, n] : splitters_ds) {
    const int z = sol.has_feeder(k.first, k.second) ? 1 : 0;
    if (n > big_m * z) push(Constraint::FeederLink, {k.first, k.second}, double(n - big_m * z));
  }
  for (const auto& [k, on] : sol.feeder)
    if (on && !sol.du_active[k.first]) push(Constraint::DuActivation, {k.first, k.second}, 1.0);

  for (int r = 0; r < nr; ++r) {
    const auto& a = sol.assignment[r];
    if (!a) continue;
    const double lat = path_latency_us(inst, params, a->d, a->s, r);
    if (!latency_ok(scenario, lat))
      push(Constraint::Latency, {a->d, a->s, r, a->t}, lat - scenario.t_fh_us);
    const double loss = path_loss_db(inst, params, a->d, a->s, r, a->t);
    if (!loss_ok(params, loss))
      push(Constraint::LossBudget, {a->d, a->s, r, a->t}, loss - params.l_budget);
  }

  for (int d = 0; d < nd; ++d) {
    const bool active = sol.du_active[d];
    const auto& level = sol.du_level[d];
    if (active != level.has_value()) push(Constraint::LevelSelection, {d}, 1.0);
    const long long cap = level ? (1LL << *level) : 0;
    if (load_d[d] > cap) push(Constraint::DuLoad, {d}, double(load_d[d] - cap));
    if (cap > params.n_ru_max) push(Constraint::DuLevelCap, {d}, double(cap - params.n_ru_max));
  }
  return rep;
}

FeasibilityReport check_solution(const Problem& p, const Solution& sol) {
  return check_solution(p.inst, p.params, p.scenario, sol);
}

CostBreakdown compute_tco(const NetworkInstance& inst, const CostCatalog& c,
                          const Solution& sol) {
  CostBreakdown out;
  int served = 0;
  double onu = 0.0;
  for (std::size_t r = 0; r < sol.assignment.size(); ++r) {
    const auto& a = sol.assignment[r];
    if (!a) continue;
    ++served;
    out.dist_fiber_trench += (c.c_df + c.c_tr) * inst.dist_sr(a->s, static_cast<int>(r)) / 1000.0;
    onu += onu_cost_for_demand(c, inst.rus[r].demand_gbps);
  }

  std::map<DsKey, int> splitters_ds;
  double splitter_equipment = 0.0;
  for (const auto& [k, n] : sol.splitter_counts) {
    const auto [d, s, t] = k;
    splitters_ds[{d, s}] += n;
    splitter_equipment += c.splitter_cost(t) * n;
  }
  for (const auto& [k, on] : sol.feeder)
    if (on) splitters_ds.try_emplace(k, 0);
  for (const auto& [k, n] : splitters_ds) {
    const double km = inst.dist_ds(k.first, k.second) / 1000.0;
    const double z = sol.has_feeder(k.first, k.second) ? 1.0 : 0.0;
    out.feeder_trench_fiber += km * (c.c_tr * z + c.c_ff * n);
  }

  int active = 0;
  double du_power = 0.0;
  for (std::size_t d = 0; d < sol.du_active.size(); ++d) {
    if (sol.du_active[d]) {
      ++active;
      du_power += c.p_cool;
    }
    if (sol.du_level[d]) du_power += std::ldexp(c.p_du, *sol.du_level[d]);
  }

  out.equipment_capex = c.c_bp * active + onu + splitter_equipment;
  out.maintenance_opex = c.t_op * c.c_m * out.equipment_capex;
  out.rent_opex = c.t_op * c.c_rent * active;
  out.energy_opex = c.t_op * c.c_p * (du_power + served * (c.p_onu + c.p_ru));
  out.total = out.component_sum();
  return out;
}

CostBreakdown compute_tco(const Problem& p, const Solution& sol) {
  return compute_tco(p.inst, p.catalog, sol);
}

int splitters_needed(int n_rus, int type) {
  const int ports = 1 << type;
  return (n_rus + ports - 1) / ports;
}

GroupDimension dimension_group(int n_rus, int t_feas, const PhysicalParams& params) {
  const int need = std::max(1, ilog2_ceil(std::max(1, n_rus)));
  int t = std::min(need, t_feas);
  t = std::clamp(t, std::max(1, params.min_type()), params.max_type());
  return {t, splitters_needed(n_rus, t)};
}

int min_du_level(int load, const PhysicalParams& params) {
  for (int k : params.du_levels)
    if ((1LL << k) >= load) return k;
  return params.du_levels.back();
}

Solution complete_assignment(const NetworkInstance& inst, const PhysicalParams& params,
                             std::vector<std::optional<PathChoice>> assignment) {
  Solution sol = empty_solution(inst);
  sol.assignment = std::move(assignment);
  std::map<DstKey, int> load;
  std::vector<int> load_d(static_cast<std::size_t>(inst.num_dus()), 0);
  for (const auto& a : sol.assignment) {
    if (!a) continue;
    ++load[{a->d, a->s, a->t}];
    ++load_d[a->d];
  }
  for (const auto& [k, l] : load) {
    sol.splitter_counts[k] = splitters_needed(l, std::get<2>(k));
    sol.feeder[{std::get<0>(k), std::get<1>(k)}] = true;
  }
  for (int d = 0; d < inst.num_dus(); ++d) {
    if (load_d[d] == 0) continue;
    sol.du_active[d] = true;
    sol.du_level[d] = min_du_level(load_d[d], params);
  }
  return sol;
}

double relative_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace ponfh
