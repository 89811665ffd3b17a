#include "ponfh/serialization.hpp"

#include <fstream>
#include <sstream>

namespace ponfh {

namespace {

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const Json& j, const char* field) {
  if (!j.is_array()) throw ParseError(std::string(field) + ": expected array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (static_cast<Eigen::Index>(j[i].size()) != cols)
      throw ParseError(std::string(field) + ": ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
  }
  return m;
}

template <typename T>
T field(const Json& j, const char* name) {
  if (!j.contains(name)) throw ParseError(std::string("missing field: ") + name);
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad field ") + name + ": " + e.what());
  }
}

template <typename T>
void maybe(const Json& j, const char* name, T& out) {
  if (j.contains(name)) out = field<T>(j, name);
}

}  // namespace

Json to_json(const Point2D& p) { return Json{{"x", p.x()}, {"y", p.y()}}; }

Point2D point_from_json(const Json& j) {
  return Point2D(field<double>(j, "x"), field<double>(j, "y"));
}

Json to_json(const NetworkInstance& inst) {
  Json j;
  j["du_sites"] = Json::array();
  for (const auto& p : inst.du_sites) j["du_sites"].push_back(to_json(p));
  j["splitter_sites"] = Json::array();
  for (const auto& p : inst.splitter_sites) j["splitter_sites"].push_back(to_json(p));
  j["rus"] = Json::array();
  for (const auto& r : inst.rus)
    j["rus"].push_back({{"position", to_json(r.position)},
                        {"demand_gbps", r.demand_gbps},
                        {"proc_latency_us", r.proc_latency_us}});
  j["dist_ds"] = matrix_to_json(inst.dist_ds);
  j["dist_sr"] = matrix_to_json(inst.dist_sr);
  j["seed"] = inst.seed;
  return j;
}

NetworkInstance instance_from_json(const Json& j) {
  NetworkInstance inst;
  for (const auto& p : field<Json>(j, "du_sites")) inst.du_sites.push_back(point_from_json(p));
  for (const auto& p : field<Json>(j, "splitter_sites"))
    inst.splitter_sites.push_back(point_from_json(p));
  for (const auto& r : field<Json>(j, "rus")) {
    Ru ru;
    ru.position = point_from_json(field<Json>(r, "position"));
    ru.demand_gbps = field<double>(r, "demand_gbps");
    ru.proc_latency_us = field<double>(r, "proc_latency_us");
    inst.rus.push_back(ru);
  }
  if (j.contains("dist_ds") && j.contains("dist_sr")) {
    inst.dist_ds = matrix_from_json(j["dist_ds"], "dist_ds");
    inst.dist_sr = matrix_from_json(j["dist_sr"], "dist_sr");
    // An empty matrix has no column count; restore the declared shape.
    if (inst.dist_ds.size() == 0) inst.dist_ds.resize(inst.num_dus(), inst.num_splitters());
    if (inst.dist_sr.size() == 0) inst.dist_sr.resize(inst.num_splitters(), inst.num_rus());
  } else {
    inst = make_instance(inst.du_sites, inst.splitter_sites, inst.rus);
  }
  maybe(j, "seed", inst.seed);
  return inst;
}

Json to_json(const Scenario& s) {
  return Json{{"name", s.name},
              {"bw_per_ru", s.bw_per_ru},
              {"t_proc_us", s.t_proc_us},
              {"t_fh_us", s.t_fh_us},
              {"max_split_ratio", s.max_split_ratio},
              {"map_side_m", s.map_side_m},
              {"nd_sweep", s.nd_sweep},
              {"nr_sweep", s.nr_sweep},
              {"splitter_spacing_m", s.splitter_spacing_m}};
}

Scenario scenario_from_json(const Json& j) {
  // Fields absent from the file fall back to the named preset when one exists.
  Scenario s;
  s.name = field<std::string>(j, "name");
  for (const auto& preset : scenario_preset_names())
    if (preset == s.name) s = scenario_preset(preset);
  maybe(j, "bw_per_ru", s.bw_per_ru);
  maybe(j, "t_proc_us", s.t_proc_us);
  maybe(j, "t_fh_us", s.t_fh_us);
  maybe(j, "max_split_ratio", s.max_split_ratio);
  maybe(j, "map_side_m", s.map_side_m);
  maybe(j, "nd_sweep", s.nd_sweep);
  maybe(j, "nr_sweep", s.nr_sweep);
  maybe(j, "splitter_spacing_m", s.splitter_spacing_m);
  return s;
}

Json to_json(const CostCatalog& c) {
  return Json{{"c_df", c.c_df},
              {"c_ff", c.c_ff},
              {"c_tr", c.c_tr},
              {"c_bp", c.c_bp},
              {"c_rent", c.c_rent},
              {"c_m", c.c_m},
              {"c_p", c.c_p},
              {"t_op", c.t_op},
              {"onu_rates", c.onu_rates},
              {"onu_costs", c.onu_costs},
              {"splitter_cost_base", c.splitter_cost_base},
              {"splitter_cost_per_level", c.splitter_cost_per_level},
              {"p_cool", c.p_cool},
              {"p_du", c.p_du},
              {"p_ru", c.p_ru},
              {"p_onu", c.p_onu}};
}

CostCatalog catalog_from_json(const Json& j) {
  CostCatalog c;
  maybe(j, "c_df", c.c_df);
  maybe(j, "c_ff", c.c_ff);
  maybe(j, "c_tr", c.c_tr);
  maybe(j, "c_bp", c.c_bp);
  maybe(j, "c_rent", c.c_rent);
  maybe(j, "c_m", c.c_m);
  maybe(j, "c_p", c.c_p);
  maybe(j, "t_op", c.t_op);
  maybe(j, "onu_rates", c.onu_rates);
  maybe(j, "onu_costs", c.onu_costs);
  maybe(j, "splitter_cost_base", c.splitter_cost_base);
  maybe(j, "splitter_cost_per_level", c.splitter_cost_per_level);
  maybe(j, "p_cool", c.p_cool);
  maybe(j, "p_du", c.p_du);
  maybe(j, "p_ru", c.p_ru);
  maybe(j, "p_onu", c.p_onu);
  if (c.onu_rates.size() != c.onu_costs.size())
    throw ParseError("onu_rates and onu_costs differ in length");
  for (std::size_t i = 1; i < c.onu_rates.size(); ++i)
    if (!(c.onu_rates[i] > c.onu_rates[i - 1]))
      throw ParseError("onu_rates must be strictly ascending");
  return c;
}

Json to_json(const PhysicalParams& p) {
  return Json{{"v_fiber", p.v_fiber},
              {"l_fib", p.l_fib},
              {"l_fix", p.l_fix},
              {"l_margin", p.l_margin},
              {"l_budget", p.l_budget},
              {"split_loss_per_level", p.split_loss_per_level},
              {"n_ru_max", p.n_ru_max},
              {"splitter_types", p.splitter_types},
              {"du_levels", p.du_levels}};
}

PhysicalParams params_from_json(const Json& j) {
  PhysicalParams p;
  maybe(j, "v_fiber", p.v_fiber);
  maybe(j, "l_fib", p.l_fib);
  maybe(j, "l_fix", p.l_fix);
  maybe(j, "l_margin", p.l_margin);
  maybe(j, "l_budget", p.l_budget);
  maybe(j, "split_loss_per_level", p.split_loss_per_level);
  maybe(j, "n_ru_max", p.n_ru_max);
  maybe(j, "splitter_types", p.splitter_types);
  maybe(j, "du_levels", p.du_levels);
  return p;
}

Json to_json(const Solution& sol) {
  Json j;
  j["assignment"] = Json::array();
  for (const auto& a : sol.assignment)
    j["assignment"].push_back(a ? Json{{"d", a->d}, {"s", a->s}, {"t", a->t}} : Json());
  j["splitter_counts"] = Json::array();
  for (const auto& [key, n] : sol.splitter_counts) {
    const auto [d, s, t] = key;
    j["splitter_counts"].push_back({{"d", d}, {"s", s}, {"t", t}, {"count", n}});
  }
  j["feeder"] = Json::array();
  for (const auto& [key, on] : sol.feeder)
    j["feeder"].push_back({{"d", key.first}, {"s", key.second}, {"value", on}});
  j["du_active"] = Json::array();
  for (bool a : sol.du_active) j["du_active"].push_back(a);
  j["du_level"] = Json::array();
  for (const auto& k : sol.du_level) j["du_level"].push_back(k ? Json(*k) : Json());
  return j;
}

Solution solution_from_json(const Json& j) {
  Solution sol;
  for (const auto& a : field<Json>(j, "assignment")) {
    if (a.is_null())
      sol.assignment.emplace_back(std::nullopt);
    else
      sol.assignment.emplace_back(
          PathChoice{field<int>(a, "d"), field<int>(a, "s"), field<int>(a, "t")});
  }
  for (const auto& e : field<Json>(j, "splitter_counts"))
    sol.splitter_counts[{field<int>(e, "d"), field<int>(e, "s"), field<int>(e, "t")}] =
        field<int>(e, "count");
  for (const auto& e : field<Json>(j, "feeder"))
    sol.feeder[{field<int>(e, "d"), field<int>(e, "s")}] = field<bool>(e, "value");
  for (const auto& a : field<Json>(j, "du_active")) sol.du_active.push_back(a.get<bool>());
  for (const auto& k : field<Json>(j, "du_level"))
    sol.du_level.push_back(k.is_null() ? std::nullopt : std::optional<int>(k.get<int>()));
  return sol;
}

Json to_json(const CostBreakdown& c) {
  return Json{{"dist_fiber_trench", c.dist_fiber_trench},
              {"feeder_trench_fiber", c.feeder_trench_fiber},
              {"equipment_capex", c.equipment_capex},
              {"maintenance_opex", c.maintenance_opex},
              {"rent_opex", c.rent_opex},
              {"energy_opex", c.energy_opex},
              {"total", c.total}};
}

CostBreakdown breakdown_from_json(const Json& j) {
  CostBreakdown c;
  c.dist_fiber_trench = field<double>(j, "dist_fiber_trench");
  c.feeder_trench_fiber = field<double>(j, "feeder_trench_fiber");
  c.equipment_capex = field<double>(j, "equipment_capex");
  c.maintenance_opex = field<double>(j, "maintenance_opex");
  c.rent_opex = field<double>(j, "rent_opex");
  c.energy_opex = field<double>(j, "energy_opex");
  c.total = field<double>(j, "total");
  return c;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::string& path) {
  try {
    return Json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace ponfh
