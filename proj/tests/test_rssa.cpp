#include <doctest.h>

#include "ponfh/oracle.hpp"
#include "ponfh/rssa.hpp"
#include "support.hpp"

#include <cmath>
#include <numeric>

using namespace ponfh;

namespace {

RssaConfig quick(std::uint64_t seed) {
  RssaConfig c;
  c.patience = 100;
  c.t_run_s = 30;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("proxy terms on a fresh state") {
  const auto p = testing::worked_problem();
  RssaState st(p, 1);
  // 500 m at (16000 + 2000) $/km plus a 1 Gb/s ONU
  CHECK(st.cost_sr(0, 0) == doctest::Approx(9100.0));
  // trench 16 + feeder 3 + splitter 5070 * 3
  CHECK(st.delta_ds(0, 0) == doctest::Approx(16000.0 + 3000.0 + 5070.0 * 3.0));
  // pool 135000 * 3, rent 200000, cooling 15000, one level-0 slot 3000
  CHECK(st.delta_du(0) == doctest::Approx(405000.0 + 200000.0 + 15000.0 + 3000.0));
  const ProxyWeights w{1.0 / 3, 1.0 / 3, 1.0 / 3};
  CHECK(st.proxy(0, 0, 0, w) ==
        doctest::Approx((st.delta_du(0) + st.delta_ds(0, 0) + st.cost_sr(0, 0)) / 3));
}

TEST_CASE("second RU on an open corridor pays no trench or splitter") {
  const auto p = testing::worked_problem();
  RssaState st(p, 1);
  REQUIRE(st.commit(0, 0, 0, 6));
  CHECK(st.trench_paid(0, 0));
  CHECK(st.rem_cap(0, 0) == 1);
  CHECK(st.delta_ds(0, 0) == 0.0);
  // now level 0 -> 1: 2 - 1 slots of 100 W over 20 years at 1.5 $/W-yr
  CHECK(st.delta_du(0) == doctest::Approx(3000.0));
  REQUIRE(st.commit(0, 0, 1, 4));
  CHECK(st.rem_cap(0, 0) == 0);
  CHECK(st.group_tmax(0, 0) == 4);
  CHECK(st.group_size(0, 0) == 2);
  CHECK(st.du_load(0) == 2);
  CHECK(st.du_level(0) == 1);
  CHECK(st.committed() == 2);
}

TEST_CASE("state port accounting") {
  const auto p = testing::small_problem("scenario1", 1, 1, 6, 2);
  RssaState st(p, 2);
  const int expect[] = {3, 2, 1, 0, 3, 2};
  for (int r = 0; r < 6; ++r) {
    REQUIRE(st.commit(0, 0, r, 6));
    CHECK(st.rem_cap(0, 0) == expect[r]);
  }
}

TEST_CASE("weights are normalized") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto w = sample_weights(s);
    CHECK(w[0] + w[1] + w[2] == doctest::Approx(1.0));
    for (double x : w) CHECK(x >= 0.0);
  }
}

TEST_CASE("post-dimensioning follows group size and running tmax") {
  auto inst = make_instance({Point2D(0, 0)}, {Point2D(100, 0)}, {});
  std::vector<Ru> rus;
  for (int i = 0; i < 10; ++i) rus.push_back(Ru{Point2D(100, 10.0 * i), 1.0, 300.0});
  inst = make_instance(inst.du_sites, inst.splitter_sites, rus);
  const auto p = make_problem(inst, scenario_preset("scenario1"));
  RssaState st(p, 6);
  for (int r = 0; r < 10; ++r) REQUIRE(st.commit(0, 0, r, r == 3 ? 4 : 6));
  const auto sol = post_dimension(p, st);
  CHECK(sol.count(0, 0, 4) == 1);
  CHECK(sol.assignment[7]->t == 4);
  CHECK(check_solution(p, sol).feasible());
}

TEST_CASE("single feasible path matches the oracle") {
  const auto p = testing::worked_problem();
  auto one = p;
  one.inst = make_instance(p.inst.du_sites, p.inst.splitter_sites, {p.inst.rus[0]});
  const auto run = run_once(one, quick(0), 5);
  const auto opt = brute_force_optimal(one);
  REQUIRE(run);
  REQUIRE(opt);
  CHECK(run->solution == opt->solution);
}

TEST_CASE("runs are feasible and bounded below by the optimum") {
  int found = 0;
  for (int i = 0; i < 16; ++i) {
    const auto p = testing::small_problem(scenario_preset_names()[i % 4], 1 + i % 3, 6, 6, 40 + i);
    const auto res = solve_rssa(p, quick(i));
    const auto opt = brute_force_optimal(p);
    if (!res.feasible) continue;
    ++found;
    REQUIRE(opt);
    CHECK(check_solution(p, *res.solution).feasible());
    CHECK(res.cost.total >= opt->cost.total * (1 - 1e-9));
  }
  CHECK(found > 4);
}

TEST_CASE("zero budget means zero runs") {
  const auto p = testing::worked_problem();
  auto cfg = quick(1);
  cfg.t_run_s = 0.0;
  const auto res = solve_rssa(p, cfg);
  CHECK(res.runs == 0);
  CHECK_FALSE(res.feasible);
}

TEST_CASE("fixed seed reproduces the best design; trace never worsens") {
  const auto p = testing::small_problem("scenario1", 3, 30, 40, 12);
  auto cfg = quick(7);
  cfg.max_runs = 200;
  const auto a = solve_rssa(p, cfg);
  const auto b = solve_rssa(p, cfg);
  REQUIRE(a.feasible);
  CHECK(*a.solution == *b.solution);
  CHECK(a.cost.total == b.cost.total);
  double best = INFINITY;
  for (const auto& row : a.trace) {
    if (row.feasible) best = std::min(best, row.true_cost);
    CHECK(row.weights[0] + row.weights[1] + row.weights[2] == doctest::Approx(1.0));
  }
  CHECK(best == doctest::Approx(a.cost.total));
}

TEST_CASE("too large a phase-one type is rejected") {
  const auto p = testing::worked_problem();
  auto cfg = quick(1);
  cfg.t_ph1 = 9;
  CHECK_THROWS_AS(solve_rssa(p, cfg), std::invalid_argument);
}
