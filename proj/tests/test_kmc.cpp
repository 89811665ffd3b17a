#include <doctest.h>

#include "ponfh/kmc.hpp"
#include "ponfh/oracle.hpp"
#include "support.hpp"

using namespace ponfh;

namespace {

KmcConfig quick(std::uint64_t seed) {
  KmcConfig c;
  c.patience = 60;
  c.t_run_s = 30;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("initial cluster counts") {
  // 100 / mean(2, 4, 8) and 100 / 32, both rounded up
  CHECK(initial_cluster_counts(100, {1, 2, 3}, 64) == std::pair{22, 4});
  CHECK(initial_cluster_counts(1, {1, 2, 3, 4, 5, 6}, 64) == std::pair{1, 1});
  CHECK(initial_cluster_counts(64, {1}, 64) == std::pair{32, 2});
}

TEST_CASE("failure names") {
  CHECK(std::string(failure_name(KmcFailure::SplitterTier)) == "KS");
  CHECK(std::string(failure_name(KmcFailure::DuTier)) == "KD");
  CHECK(std::string(failure_name(KmcFailure::None)) == "none");
}

TEST_CASE("single attempt on the worked fixture") {
  const auto p = testing::worked_problem();
  const auto a = kmc_attempt(p, 1, 1, KmcConfig{}, 3);
  REQUIRE(a.solution);
  CHECK(a.failure == KmcFailure::None);
  CHECK(*a.solution == testing::worked_solution());
}

TEST_CASE("latency failures blame the splitter tier") {
  auto p = testing::worked_problem();
  p.scenario.t_fh_us = 301.0;
  const auto a = kmc_attempt(p, 1, 1, KmcConfig{}, 3);
  CHECK_FALSE(a.solution);
  CHECK(a.failure == KmcFailure::SplitterTier);
  const auto res = solve_kmc(p, quick(1));
  CHECK_FALSE(res.feasible);
  CHECK(res.last_failure == KmcFailure::SplitterTier);
  CHECK_FALSE(res.last_reason.empty());
}

TEST_CASE("DU overload blames the DU tier") {
  auto p = testing::small_problem("scenario1", 2, 4, 10, 4);
  p.params.n_ru_max = 4;
  p.params.du_levels = {0, 1, 2};
  const auto a = kmc_attempt(p, 4, 1, KmcConfig{}, 5);
  CHECK_FALSE(a.solution);
  CHECK(a.failure == KmcFailure::DuTier);
}

TEST_CASE("solutions pass the checker and never beat the optimum") {
  for (int i = 0; i < 12; ++i) {
    const auto p = testing::small_problem(scenario_preset_names()[i % 4], 1 + i % 3, 6, 6, 300 + i);
    const auto res = solve_kmc(p, quick(i));
    const auto opt = brute_force_optimal(p);
    if (!res.feasible) {
      CHECK(res.last_failure != KmcFailure::None);
      continue;
    }
    REQUIRE(opt);
    CHECK(check_solution(p, *res.solution).feasible());
    CHECK(res.cost.total >= opt->cost.total * (1 - 1e-9));
  }
}

TEST_CASE("solve_kmc is reproducible") {
  const auto p = testing::small_problem("scenario1", 3, 20, 40, 8);
  const auto a = solve_kmc(p, quick(4));
  const auto b = solve_kmc(p, quick(4));
  CHECK(a.feasible == b.feasible);
  CHECK(a.attempts == b.attempts);
  if (a.feasible) {
    CHECK(*a.solution == *b.solution);
    CHECK(a.cost.total == b.cost.total);
  }
}

TEST_CASE("cluster counts rise after failures and stay bounded") {
  auto p = testing::small_problem("scenario2", 3, 8, 30, 2);
  const auto res = solve_kmc(p, quick(3));
  CHECK(res.k_s <= 8);
  CHECK(res.k_d <= 3);
  for (const auto& row : res.trace) {
    CHECK(row.k_s >= 1);
    CHECK(row.k_d >= 1);
  }
}
