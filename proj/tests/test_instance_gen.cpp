#include <doctest.h>

#include "ponfh/instance_gen.hpp"
#include "ponfh/random.hpp"

#include <cmath>

using namespace ponfh;

namespace {

GeneratorConfig config(const std::string& sc, int nd, int nr, int topo, std::uint64_t seed = 1) {
  return GeneratorConfig{scenario_preset(sc), nd, nr, topo, seed, true};
}

}  // namespace

TEST_CASE("grid includes both boundaries") {
  const auto g = grid_splitter_sites(20000, 2000);
  CHECK(g.size() == 121);
  CHECK(g.front() == Point2D(0, 0));
  CHECK(g.back() == Point2D(20000, 20000));
  CHECK(g[1] == Point2D(2000, 0));  // x varies fastest
  CHECK(grid_splitter_sites(5000, 150).size() == 34 * 34);
  CHECK(grid_splitter_sites(10000, 500).size() == 21 * 21);
  CHECK_THROWS_AS(grid_splitter_sites(100, 150), DegenerateGrid);
  CHECK_THROWS(grid_splitter_sites(100, 0));
}

TEST_CASE("grid covers the map to within half a diagonal pitch") {
  const double side = 5000, sp = 150;
  const auto g = grid_splitter_sites(side, sp);
  Rng rng(4);
  for (int i = 0; i < 2000; ++i) {
    const Point2D q(rng.uniform(0, side), rng.uniform(0, side));
    double best = 1e18;
    for (const auto& p : g) best = std::min(best, (p - q).norm());
    CHECK(best <= sp * std::sqrt(2.0) / 2 + 1e-9);
  }
}

TEST_CASE("generated instance shape and attributes") {
  const auto inst = generate_instance(config("scenario3", 4, 50, 0));
  CHECK(inst.num_dus() == 4);
  CHECK(inst.num_rus() == 50);
  CHECK(inst.num_splitters() == 34 * 34);
  CHECK(validate_instance(inst).empty());
  for (const auto& r : inst.rus) {
    CHECK(r.demand_gbps == 10.0);
    CHECK(r.proc_latency_us == 100.0);
    CHECK(r.position.x() >= 0.0);
    CHECK(r.position.x() <= 5000.0);
  }
}

TEST_CASE("DU sites stay fixed across topologies, RUs change") {
  const auto a = generate_instance(config("scenario1", 3, 20, 0));
  const auto b = generate_instance(config("scenario1", 3, 20, 1));
  CHECK(a.du_sites == b.du_sites);
  CHECK(a.rus[0].position != b.rus[0].position);
  const auto again = generate_instance(config("scenario1", 3, 20, 1));
  CHECK(again.rus[5].position == b.rus[5].position);
  CHECK(again.seed == b.seed);
  const auto other_seed = generate_instance(config("scenario1", 3, 20, 1, 2));
  CHECK(other_seed.du_sites != b.du_sites);
}

TEST_CASE("sweep membership is enforced unless disabled") {
  auto cfg = config("scenario4", 3, 20, 0);
  CHECK_THROWS_AS(generate_instance(cfg), std::invalid_argument);
  cfg.require_sweep_membership = false;
  CHECK(generate_instance(cfg).num_rus() == 20);
  cfg.n_ru = 0;
  CHECK_THROWS(generate_instance(cfg));
}

TEST_CASE("RU placement is uniform over quadrants") {
  Scenario sc = scenario_preset("scenario1");
  int counts[4] = {0, 0, 0, 0};
  int total = 0;
  for (int topo = 0; topo < 100; ++topo) {
    GeneratorConfig cfg{sc, 1, 200, topo, 99, true};
    for (const auto& r : generate_instance(cfg).rus) {
      const int q = (r.position.x() >= sc.map_side_m / 2) + 2 * (r.position.y() >= sc.map_side_m / 2);
      ++counts[q];
      ++total;
    }
  }
  CHECK(total == 20000);
  for (int q = 0; q < 4; ++q) CHECK(std::abs(counts[q] / double(total) - 0.25) <= 0.02);
}
