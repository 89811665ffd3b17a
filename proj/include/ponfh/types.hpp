#pragma once

// Shared domain types for PON fronthaul planning.
//
// Unit conventions: distances in meters, latencies in microseconds, rates in
// Gb/s. Catalog prices quoted per km are converted where they are applied.

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace ponfh {

using Point2D = Eigen::Vector2d;

struct Ru {
  Point2D position = Point2D::Zero();
  double demand_gbps = 1.0;
  double proc_latency_us = 0.0;
};

struct NetworkInstance {
  std::vector<Point2D> du_sites;
  std::vector<Point2D> splitter_sites;
  std::vector<Ru> rus;
  Eigen::MatrixXd dist_ds;  // |D| x |S|, meters
  Eigen::MatrixXd dist_sr;  // |S| x |R|, meters
  std::uint64_t seed = 0;

  int num_dus() const { return static_cast<int>(du_sites.size()); }
  int num_splitters() const { return static_cast<int>(splitter_sites.size()); }
  int num_rus() const { return static_cast<int>(rus.size()); }
};

// Builds an instance and fills both distance matrices from coordinates.
NetworkInstance make_instance(std::vector<Point2D> du_sites,
                              std::vector<Point2D> splitter_sites,
                              std::vector<Ru> rus, std::uint64_t seed = 0);

struct CostCatalog {
  double c_df = 2000.0;    // $/km distribution fiber
  double c_ff = 3000.0;    // $/km feeder fiber
  double c_tr = 16000.0;   // $/km trenching
  double c_bp = 135000.0;  // $ per DU pool
  double c_rent = 10000.0; // $/yr per active DU site
  double c_m = 0.10;       // maintenance fraction per year
  double c_p = 1.5;        // $/(W*yr)
  double t_op = 20.0;      // years
  std::vector<double> onu_rates{1.0, 2.5, 10.0};
  std::vector<double> onu_costs{100.0, 200.0, 400.0};
  double splitter_cost_base = 5000.0;
  double splitter_cost_per_level = 70.0;
  double p_cool = 500.0;
  double p_du = 100.0;
  double p_ru = 60.0;
  double p_onu = 4.0;

  double splitter_cost(int type) const {
    return splitter_cost_base + splitter_cost_per_level * type;
  }
};

struct PhysicalParams {
  double v_fiber = 2e8;  // m/s
  double l_fib = 0.25;   // dB/km
  double l_fix = 3.0;
  double l_margin = 2.0;
  double l_budget = 32.0;
  double split_loss_per_level = 3.5;
  int n_ru_max = 64;
  std::vector<int> splitter_types{1, 2, 3, 4, 5, 6};
  std::vector<int> du_levels{0, 1, 2, 3, 4, 5, 6};

  int min_type() const { return splitter_types.front(); }
  int max_type() const { return splitter_types.back(); }
  bool has_type(int t) const {
    return !splitter_types.empty() && t >= min_type() && t <= max_type();
  }
  bool has_level(int k) const;
};

struct Scenario {
  std::string name;
  double bw_per_ru = 1.0;
  double t_proc_us = 300.0;
  double t_fh_us = 5000.0;
  int max_split_ratio = 64;
  double map_side_m = 20000.0;
  std::vector<int> nd_sweep;
  std::vector<int> nr_sweep;
  double splitter_spacing_m = 2000.0;
};

// One RU's path choice: DU d, splitter site s, splitter type t.
struct PathChoice {
  int d = 0;
  int s = 0;
  int t = 1;
  auto operator<=>(const PathChoice&) const = default;
};

using DstKey = std::tuple<int, int, int>;
using DsKey = std::pair<int, int>;

struct Solution {
  std::vector<std::optional<PathChoice>> assignment;  // per RU
  std::map<DstKey, int> splitter_counts;              // n_dst
  std::map<DsKey, bool> feeder;                       // z_ds
  std::vector<bool> du_active;                        // u_d
  std::vector<std::optional<int>> du_level;           // k for active DUs

  bool operator==(const Solution&) const = default;

  int count(int d, int s, int t) const;
  bool has_feeder(int d, int s) const;
};

// Empty solution shaped for an instance: no RU assigned, nothing deployed.
Solution empty_solution(const NetworkInstance& inst);

struct CostBreakdown {
  double dist_fiber_trench = 0.0;
  double feeder_trench_fiber = 0.0;
  double equipment_capex = 0.0;
  double maintenance_opex = 0.0;
  double rent_opex = 0.0;
  double energy_opex = 0.0;
  double total = 0.0;

  double component_sum() const {
    return dist_fiber_trench + feeder_trench_fiber + equipment_capex +
           maintenance_opex + rent_opex + energy_opex;
  }
};

struct InstanceViolation {
  std::string field;
  std::vector<int> indices;
  std::string message;
};

std::vector<InstanceViolation> validate_instance(const NetworkInstance& inst);

class UnsatisfiableDemand : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Price of the smallest catalog ONU whose rate covers the demand.
double onu_cost_for_demand(const CostCatalog& catalog, double demand_gbps);

// Optical/latency parameters for a scenario: types {1..log2(max split)},
// levels {0..log2(n_ru_max)}.
PhysicalParams physical_params_for(const Scenario& scenario,
                                   PhysicalParams base = {});

// Built-in scenario presets: "scenario1" .. "scenario4".
Scenario scenario_preset(const std::string& name);
std::vector<std::string> scenario_preset_names();

int ilog2_ceil(long long n);  // smallest k >= 0 with 2^k >= n (n >= 1)

}  // namespace ponfh

namespace ponfh {

// Problem dimensions exceed what an operation accepts.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace ponfh
