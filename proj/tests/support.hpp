#pragma once

// Shared fixtures and independent reference computations for the tests.

#include "ponfh/costing.hpp"
#include "ponfh/instance_gen.hpp"
#include "ponfh/random.hpp"

#include <limits>
#include <optional>
#include <string>

namespace testing {

using namespace ponfh;

#ifndef PONFH_TEST_DATA
#define PONFH_TEST_DATA "tests/data"
#endif

inline std::string data_path(const std::string& name) {
  return std::string(PONFH_TEST_DATA) + "/" + name;
}

// One DU at the origin, one splitter 1 km east, two RUs 500 m north and
// south of it; Scenario 1 (1 Gb/s).
inline Problem worked_problem() {
  auto inst = make_instance({Point2D(0, 0)}, {Point2D(1000, 0)},
                            {Ru{Point2D(1000, 500), 1.0, 300.0}, Ru{Point2D(1000, -500), 1.0, 300.0}});
  return make_problem(std::move(inst), scenario_preset("scenario1"));
}

inline Solution worked_solution() {
  Solution s;
  s.assignment = {PathChoice{0, 0, 1}, PathChoice{0, 0, 1}};
  s.splitter_counts[{0, 0, 1}] = 1;
  s.feeder[{0, 0}] = true;
  s.du_active = {true};
  s.du_level = {1};
  return s;
}

inline Problem small_problem(const std::string& scenario, int nd, int ns, int nr,
                             std::uint64_t seed) {
  const auto sc = scenario_preset(scenario);
  return make_problem(sample_small_instance(sc, nd, ns, nr, seed), sc);
}

// Arbitrary, mostly infeasible solution that still fits the instance shape.
inline Solution random_solution(const Problem& p, Rng& rng) {
  const auto& inst = p.inst;
  const auto& types = p.params.splitter_types;
  const auto& levels = p.params.du_levels;
  Solution s = empty_solution(inst);
  for (auto& a : s.assignment)
    if (rng.bernoulli(0.9))
      a = PathChoice{rng.index(inst.num_dus()), rng.index(inst.num_splitters()),
                     types[rng.index(types.size())]};
  for (int d = 0; d < inst.num_dus(); ++d)
    for (int sp = 0; sp < inst.num_splitters(); ++sp) {
      for (int t : types)
        if (rng.bernoulli(0.15)) s.splitter_counts[{d, sp, t}] = rng.index(3);
      if (rng.bernoulli(0.4)) s.feeder[{d, sp}] = rng.bernoulli(0.8);
    }
  for (int d = 0; d < inst.num_dus(); ++d) {
    s.du_active[d] = rng.bernoulli(0.7);
    if (rng.bernoulli(0.7)) s.du_level[d] = levels[rng.index(levels.size())];
  }
  return s;
}

// Reference optimum by plain enumeration of every per-RU (d, s, t) over
// individually admissible paths. Minimal counts, feeders and levels are
// optimal for a fixed per-RU choice, so the best completion is the optimum.
struct NaiveOptimum {
  double cost = std::numeric_limits<double>::infinity();
  std::optional<Solution> solution;
};

inline NaiveOptimum naive_optimum(const Problem& p) {
  const auto& inst = p.inst;
  std::vector<std::vector<PathChoice>> options(static_cast<std::size_t>(inst.num_rus()));
  for (int r = 0; r < inst.num_rus(); ++r)
    for (int d = 0; d < inst.num_dus(); ++d)
      for (int s = 0; s < inst.num_splitters(); ++s)
        for (int t : p.params.splitter_types) {
          // Recomputed from coordinates rather than through the path helpers.
          const double len = (inst.du_sites[d] - inst.splitter_sites[s]).norm() +
                             (inst.splitter_sites[s] - inst.rus[r].position).norm();
          const double lat = len / p.params.v_fiber * 1e6 + inst.rus[r].proc_latency_us;
          const double loss = len / 1000.0 * p.params.l_fib + t * p.params.split_loss_per_level +
                              p.params.l_fix + p.params.l_margin;
          if (lat <= p.scenario.t_fh_us + 1e-9 && loss <= p.params.l_budget + 1e-9)
            options[r].push_back({d, s, t});
        }
  NaiveOptimum best;
  std::vector<std::optional<PathChoice>> cur(options.size());
  auto rec = [&](auto&& self, std::size_t r) -> void {
    if (r == options.size()) {
      auto sol = complete_assignment(inst, p.params, cur);
      if (!check_solution(p, sol).feasible()) return;
      const double c = compute_tco(p, sol).total;
      if (c < best.cost) {
        best.cost = c;
        best.solution = std::move(sol);
      }
      return;
    }
    for (const auto& o : options[r]) {
      cur[r] = o;
      self(self, r + 1);
    }
  };
  rec(rec, 0);
  return best;
}

}  // namespace testing
