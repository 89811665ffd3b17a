#include "ponfh/types.hpp"

#include "ponfh/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ponfh {

NetworkInstance make_instance(std::vector<Point2D> du_sites,
                              std::vector<Point2D> splitter_sites,
                              std::vector<Ru> rus, std::uint64_t seed) {
  NetworkInstance inst;
  inst.du_sites = std::move(du_sites);
  inst.splitter_sites = std::move(splitter_sites);
  inst.rus = std::move(rus);
  inst.seed = seed;

  std::vector<Point2D> ru_points;
  ru_points.reserve(inst.rus.size());
  for (const auto& r : inst.rus) ru_points.push_back(r.position);

  const auto du = stack_points(inst.du_sites);
  const auto sp = stack_points(inst.splitter_sites);
  const auto ru = stack_points(ru_points);
  inst.dist_ds = pairwise_distances(du, sp);
  inst.dist_sr = pairwise_distances(sp, ru);
  return inst;
}

bool PhysicalParams::has_level(int k) const {
  return std::find(du_levels.begin(), du_levels.end(), k) != du_levels.end();
}

int Solution::count(int d, int s, int t) const {
  auto it = splitter_counts.find({d, s, t});
  return it == splitter_counts.end() ? 0 : it->second;
}

bool Solution::has_feeder(int d, int s) const {
  auto it = feeder.find({d, s});
  return it != feeder.end() && it->second;
}

Solution empty_solution(const NetworkInstance& inst) {
  Solution sol;
  sol.assignment.assign(inst.rus.size(), std::nullopt);
  sol.du_active.assign(inst.du_sites.size(), false);
  sol.du_level.assign(inst.du_sites.size(), std::nullopt);
  return sol;
}

namespace {

bool close_rel(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

bool finite(const Point2D& p) { return std::isfinite(p.x()) && std::isfinite(p.y()); }

}  // namespace

std::vector<InstanceViolation> validate_instance(const NetworkInstance& inst) {
  std::vector<InstanceViolation> out;
  const int nd = inst.num_dus(), ns = inst.num_splitters(), nr = inst.num_rus();
  if (nd == 0) out.push_back({"du_sites", {}, "empty"});
  if (ns == 0) out.push_back({"splitter_sites", {}, "empty"});
  if (nr == 0) out.push_back({"rus", {}, "empty"});

  for (int d = 0; d < nd; ++d)
    if (!finite(inst.du_sites[d])) out.push_back({"du_sites", {d}, "non-finite coordinate"});
  for (int s = 0; s < ns; ++s)
    if (!finite(inst.splitter_sites[s]))
      out.push_back({"splitter_sites", {s}, "non-finite coordinate"});
  for (int r = 0; r < nr; ++r) {
    const auto& ru = inst.rus[r];
    if (!finite(ru.position)) out.push_back({"rus", {r}, "non-finite coordinate"});
    if (!(ru.demand_gbps > 0.0)) out.push_back({"rus.demand_gbps", {r}, "must be > 0"});
    if (!(ru.proc_latency_us >= 0.0))
      out.push_back({"rus.proc_latency_us", {r}, "must be >= 0"});
  }

  if (inst.dist_ds.rows() != nd || inst.dist_ds.cols() != ns) {
    std::ostringstream msg;
    msg << "shape " << inst.dist_ds.rows() << "x" << inst.dist_ds.cols() << ", expected "
        << nd << "x" << ns;
    out.push_back({"dist_ds", {}, msg.str()});
  } else {
    for (int d = 0; d < nd; ++d)
      for (int s = 0; s < ns; ++s)
        if (!close_rel(inst.dist_ds(d, s), (inst.du_sites[d] - inst.splitter_sites[s]).norm()))
          out.push_back({"dist_ds", {d, s}, "distance mismatch"});
  }

  if (inst.dist_sr.rows() != ns || inst.dist_sr.cols() != nr) {
    std::ostringstream msg;
    msg << "shape " << inst.dist_sr.rows() << "x" << inst.dist_sr.cols() << ", expected "
        << ns << "x" << nr;
    out.push_back({"dist_sr", {}, msg.str()});
  } else {
    for (int s = 0; s < ns; ++s)
      for (int r = 0; r < nr; ++r)
        if (!close_rel(inst.dist_sr(s, r),
                       (inst.splitter_sites[s] - inst.rus[r].position).norm()))
          out.push_back({"dist_sr", {s, r}, "distance mismatch"});
  }
  return out;
}

double onu_cost_for_demand(const CostCatalog& catalog, double demand_gbps) {
  if (!(demand_gbps > 0.0)) throw std::invalid_argument("ONU demand must be positive");
  for (std::size_t i = 0; i < catalog.onu_rates.size(); ++i)
    if (catalog.onu_rates[i] >= demand_gbps) return catalog.onu_costs.at(i);
  std::ostringstream msg;
  msg << "no ONU rate covers a demand of " << demand_gbps << " Gb/s";
  throw UnsatisfiableDemand(msg.str());
}

int ilog2_ceil(long long n) {
  int k = 0;
  while ((1LL << k) < n) ++k;
  return k;
}

PhysicalParams physical_params_for(const Scenario& scenario, PhysicalParams base) {
  const int ratio = scenario.max_split_ratio;
  if (ratio < 2 || (ratio & (ratio - 1)) != 0)
    throw std::invalid_argument("max_split_ratio must be a power of two >= 2");
  base.splitter_types.clear();
  for (int t = 1; (1 << t) <= ratio; ++t) base.splitter_types.push_back(t);
  base.du_levels.clear();
  for (int k = 0; (1 << k) <= base.n_ru_max; ++k) base.du_levels.push_back(k);
  return base;
}

std::vector<std::string> scenario_preset_names() {
  return {"scenario1", "scenario2", "scenario3", "scenario4"};
}

Scenario scenario_preset(const std::string& name) {
  Scenario s;
  s.name = name;
  if (name == "scenario1") {
    s.bw_per_ru = 1.0;
    s.t_proc_us = 300.0;
    s.t_fh_us = 5000.0;
    s.max_split_ratio = 64;
    s.map_side_m = 20000.0;
    s.nd_sweep = {1, 2, 3, 5, 10};
    s.nr_sweep = {20, 50, 100, 200};
    s.splitter_spacing_m = 2000.0;
  } else if (name == "scenario2") {
    s.bw_per_ru = 2.0;
    s.t_proc_us = 25.0;
    s.t_fh_us = 100.0;
    s.max_split_ratio = 8;
    s.map_side_m = 5000.0;
    s.nd_sweep = {2, 4, 6, 10, 15};
    s.nr_sweep = {20, 50, 100, 150, 300, 500};
    s.splitter_spacing_m = 150.0;
  } else if (name == "scenario3") {
    s.bw_per_ru = 10.0;
    s.t_proc_us = 100.0;
    s.t_fh_us = 250.0;
    s.max_split_ratio = 16;
    s.map_side_m = 5000.0;
    s.nd_sweep = {2, 4, 6, 10, 15};
    s.nr_sweep = {20, 50, 100, 150, 300, 500};
    s.splitter_spacing_m = 150.0;
  } else if (name == "scenario4") {
    s.bw_per_ru = 5.0;
    s.t_proc_us = 100.0;
    s.t_fh_us = 150.0;
    s.max_split_ratio = 32;
    s.map_side_m = 10000.0;
    s.nd_sweep = {2, 3, 5, 10};
    s.nr_sweep = {50, 100, 200, 300};
    s.splitter_spacing_m = 500.0;
  } else {
    throw std::invalid_argument("unknown scenario preset: " + name);
  }
  return s;
}

}  // namespace ponfh
