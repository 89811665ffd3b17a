#include <doctest.h>

#include "ponfh/serialization.hpp"
#include "support.hpp"

#include <cmath>

using namespace ponfh;

TEST_CASE("onu cost picks the cheapest rate that covers demand") {
  const CostCatalog c;
  CHECK(onu_cost_for_demand(c, 1.0) == 100.0);
  CHECK(onu_cost_for_demand(c, 0.5) == 100.0);
  CHECK(onu_cost_for_demand(c, 2.0) == 200.0);
  CHECK(onu_cost_for_demand(c, 5.0) == 400.0);
  CHECK(onu_cost_for_demand(c, 10.0) == 400.0);
  CHECK_THROWS_AS(onu_cost_for_demand(c, 10.5), UnsatisfiableDemand);
}

TEST_CASE("onu cost is monotone in demand") {
  const CostCatalog c;
  double prev = 0.0;
  for (double g = 0.05; g <= 10.0; g += 0.05) {
    const double v = onu_cost_for_demand(c, g);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("splitter cost grows by 70 per level") {
  const CostCatalog c;
  CHECK(c.splitter_cost(1) == 5070.0);
  CHECK(c.splitter_cost(6) == 5420.0);
}

TEST_CASE("scenario presets") {
  const auto s2 = scenario_preset("scenario2");
  CHECK(s2.bw_per_ru == 2.0);
  CHECK(s2.t_fh_us == 100.0);
  CHECK(s2.max_split_ratio == 8);
  const auto prm = physical_params_for(s2);
  CHECK(prm.splitter_types == std::vector<int>{1, 2, 3});
  CHECK(prm.du_levels == std::vector<int>{0, 1, 2, 3, 4, 5, 6});
  CHECK_THROWS(scenario_preset("scenario9"));
  Scenario odd = s2;
  odd.max_split_ratio = 12;
  CHECK_THROWS(physical_params_for(odd));
}

TEST_CASE("ilog2_ceil") {
  CHECK(ilog2_ceil(1) == 0);
  CHECK(ilog2_ceil(2) == 1);
  CHECK(ilog2_ceil(3) == 2);
  CHECK(ilog2_ceil(64) == 6);
  CHECK(ilog2_ceil(65) == 7);
}

TEST_CASE("instance validation catches bad fields") {
  auto p = testing::worked_problem();
  CHECK(validate_instance(p.inst).empty());

  auto bad = p.inst;
  bad.rus[1].demand_gbps = 0.0;
  bad.dist_sr(0, 0) = 10.0;
  bad.du_sites[0].x() = std::nan("");
  const auto v = validate_instance(bad);
  CHECK(v.size() >= 3);

  auto shape = p.inst;
  shape.dist_ds.resize(2, 1);
  CHECK_FALSE(validate_instance(shape).empty());

  NetworkInstance empty;
  CHECK_FALSE(validate_instance(empty).empty());
}

TEST_CASE("solution json round trip") {
  auto p = testing::small_problem("scenario1", 3, 5, 6, 7);
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto sol = testing::random_solution(p, rng);
    CHECK(solution_from_json(to_json(sol)) == sol);
    // through text too
    CHECK(solution_from_json(Json::parse(to_json(sol).dump())) == sol);
  }
}

TEST_CASE("instance json round trip keeps distances exact") {
  auto p = testing::small_problem("scenario3", 2, 4, 5, 3);
  const auto back = instance_from_json(Json::parse(to_json(p.inst).dump()));
  CHECK(back.dist_ds == p.inst.dist_ds);
  CHECK(back.dist_sr == p.inst.dist_sr);
  CHECK(back.num_rus() == 5);
  CHECK(back.seed == p.inst.seed);
}

TEST_CASE("scenario and catalog json") {
  const auto s = scenario_preset("scenario4");
  const auto back = scenario_from_json(to_json(s));
  CHECK(back.nr_sweep == s.nr_sweep);
  CHECK(back.t_fh_us == s.t_fh_us);
  // partial override falls back to the preset
  const auto partial = scenario_from_json(Json{{"name", "scenario2"}, {"t_fh_us", 120.0}});
  CHECK(partial.t_fh_us == 120.0);
  CHECK(partial.max_split_ratio == 8);

  const CostCatalog c;
  const auto cb = catalog_from_json(to_json(c));
  CHECK(cb.onu_costs == c.onu_costs);
  CHECK(cb.c_tr == c.c_tr);
  auto broken = to_json(c);
  broken["onu_rates"] = {10.0, 1.0, 2.5};
  CHECK_THROWS_AS(catalog_from_json(broken), ParseError);
}

TEST_CASE("malformed json is a parse error") {
  CHECK_THROWS_AS(solution_from_json(Json{{"assignment", 3}}), ParseError);
  CHECK_THROWS_AS(instance_from_json(Json::object()), ParseError);
}
