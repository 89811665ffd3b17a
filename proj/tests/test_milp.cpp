#include <doctest.h>

#include "ponfh/milp.hpp"
#include "ponfh/oracle.hpp"
#include "support.hpp"

#include <algorithm>
#include <set>
#include <sstream>

using namespace ponfh;

namespace {

double objective_of(const MilpModel& m, const std::vector<double>& x) {
  double v = 0.0;
  for (const auto& t : m.objective) v += t.coef * x[t.var];
  return v;
}

std::string values_text(const MilpModel& m, const std::vector<double>& x) {
  std::ostringstream os;
  os << "# Objective value = " << objective_of(m, x) << "\n";
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0.0) os << m.variables[i].name << " " << x[i] << "\n";
  return os.str();
}

}  // namespace

TEST_CASE("model dimensions and naming") {
  const auto p = testing::small_problem("scenario2", 2, 3, 4, 5);
  const auto m = build_model(p);
  const std::size_t nt = 3, nk = 7;
  CHECK(m.variables.size() == 2 * 3 * 4 * nt + 2 * 3 * nt + 2 * 3 + 2 + 2 * nk);
  CHECK(m.variables[m.f(1, 2, 3, 3)].name == "f_1_2_3_3");
  CHECK(m.variables[m.n(0, 1, 2)].name == "n_0_1_2");
  CHECK(m.variables[m.z(1, 0)].name == "z_1_0");
  CHECK(m.variables[m.u(1)].name == "u_1");
  CHECK(m.variables[m.y(0, 6)].name == "y_0_6");
  CHECK(m.find("y_0_6") == m.y(0, 6));
  CHECK(m.find("q_9") == -1);
  CHECK(m.big_m == 2);  // ceil(4 / 2)
  // one row per RU, per (d,s,t), two per (d,s), three per d
  CHECK(m.rows.size() == 4 + 2 * 3 * nt + 2 * 2 * 3 + 3 * 2);
}

TEST_CASE("model objective equals TCO on the worked fixture") {
  const auto p = testing::worked_problem();
  const auto m = build_model(p);
  const auto x = to_values(m, testing::worked_solution());
  const auto ev = evaluate(m, x);
  CHECK(ev.objective == doctest::Approx(682650.0).epsilon(1e-12));
  CHECK(ev.violations.empty());
  CHECK(ev.bound_violations.empty());
}

TEST_CASE("presolve prunes inadmissible paths") {
  auto p = testing::worked_problem();
  p.params.l_budget = 13.5;  // 0.375 fiber + 5 fixed leaves room for two levels
  const auto m = build_model(p);
  CHECK(m.variables[m.f(0, 0, 0, 2)].pruned_by.empty());
  CHECK(m.variables[m.f(0, 0, 0, 3)].pruned_by == std::vector<Constraint>{Constraint::LossBudget});
  CHECK(m.num_pruned() == 2 * 4);
  p.scenario.t_fh_us = 100.0;
  const auto m2 = build_model(p);
  const auto& both = m2.variables[m2.f(0, 0, 1, 6)].pruned_by;
  CHECK(both.size() == 2);
  CHECK(m2.variables[m2.f(0, 0, 1, 1)].pruned_by == std::vector<Constraint>{Constraint::Latency});
}

TEST_CASE("variable budget is enforced") {
  const auto p = testing::small_problem("scenario1", 3, 6, 6, 1);
  CHECK_THROWS_AS(build_model(p, 100), SizeError);
}

TEST_CASE("LP export structure") {
  auto p = testing::worked_problem();
  p.params.l_budget = 13.5;
  const auto m = build_model(p);
  const auto lp = export_lp(m);
  for (const char* section : {"Minimize", "Subject To", "Bounds", "Binaries", "Generals", "End"})
    CHECK(lp.find(section) != std::string::npos);
  CHECK(lp.find("single_path_0:") != std::string::npos);
  CHECK(lp.find("port_capacity_0_0_1:") != std::string::npos);
  CHECK(lp.find("f_0_0_0_2") != std::string::npos);
  CHECK(lp.find("f_0_0_0_3") == std::string::npos);  // pruned
  CHECK(lp.find("\\") == 0);
  CHECK(lp.rfind("End") > lp.find("Generals"));
}

TEST_CASE("import round trip") {
  const auto p = testing::small_problem("scenario1", 2, 3, 5, 8);
  const auto m = build_model(p);
  const auto opt = brute_force_optimal(p);
  REQUIRE(opt);
  const auto x = to_values(m, opt->solution);
  const auto imp = import_solution(m, values_text(m, x));
  CHECK(imp.solution == opt->solution);
  REQUIRE(imp.reported_objective);
  CHECK(relative_diff(*imp.reported_objective, opt->cost.total) < 1e-5);
}

TEST_CASE("import rejects bad listings") {
  const auto p = testing::worked_problem();
  const auto m = build_model(p);
  CHECK_THROWS_AS(import_solution(m, "f_0_0_0_1 0.5\n"), IntegralityError);
  CHECK_THROWS_AS(import_solution(m, "u_0 2\n"), IntegralityError);
  CHECK_THROWS_AS(import_solution(m, "bogus 1\n"), ParseError);
  CHECK_THROWS_AS(import_solution(m, "u_0\n"), ParseError);
  CHECK_THROWS_AS(import_solution(m, "f_0_0_0_1 1\nf_0_0_0_2 1\n"), ParseError);
  CHECK_THROWS_AS(import_solution(m, "y_0_1 1\ny_0_2 1\n"), ParseError);
  const auto ok = import_solution(m, "# comment only\n\nn_0_0_1 2.0000000001\n");
  CHECK(ok.solution.count(0, 0, 1) == 2);
  CHECK_FALSE(ok.reported_objective.has_value());
}

TEST_CASE("model rows agree with the checker on random solutions") {
  Rng rng(31);
  for (int i = 0; i < 40; ++i) {
    const auto name = scenario_preset_names()[i % 4];
    const auto p = testing::small_problem(name, 1 + i % 3, 2 + i % 4, 1 + i % 6, 100 + i);
    const auto m = build_model(p);
    const auto sol = testing::random_solution(p, rng);
    const auto ev = evaluate(m, to_values(m, sol));
    CHECK(relative_diff(ev.objective, compute_tco(p, sol).total) <= 1e-9);
    std::set<std::pair<Constraint, std::vector<int>>> a, b;
    for (const auto& v : ev.violations) a.insert({v.family, v.indices});
    for (const auto& v : check_solution(p, sol).violations) b.insert({v.constraint, v.indices});
    CHECK(a == b);
    CHECK(ev.bound_violations.empty());
  }
}
