#pragma once

// Randomized constructive assignment. Each run draws proxy weights and an RU
// order, greedily commits the cheapest (d, s) per RU at a fixed splitter
// type, then re-dimensions every used corridor. Runs are scored on true TCO.

#include "ponfh/costing.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace ponfh {

struct RssaConfig {
  std::optional<int> t_ph1;  // defaults to the largest splitter type
  double t_run_s = 1000.0;
  int patience = 1200;
  double epsilon = 1e-3;
  std::uint64_t seed = 0;
  std::optional<long long> max_runs;
};

using ProxyWeights = std::array<double, 3>;

// Construction state, dense over D x S.
class RssaState {
 public:
  RssaState(const Problem& problem, int t_ph1);

  int t_ph1() const { return t_ph1_; }
  bool trench_paid(int d, int s) const { return trench_[idx(d, s)]; }
  int rem_cap(int d, int s) const { return rem_cap_[idx(d, s)]; }
  int group_size(int d, int s) const { return size_[idx(d, s)]; }
  int group_tmax(int d, int s) const { return tmax_[idx(d, s)]; }
  bool du_active(int d) const { return du_active_[d]; }
  int du_load(int d) const { return du_load_[d]; }
  int du_level(int d) const { return du_level_[d]; }
  int committed() const { return committed_; }
  const std::vector<std::optional<PathChoice>>& assignment() const { return assignment_; }

  // Level a DU would need after one more RU.
  int level_after_add(int d) const;

  double delta_du(int d) const;
  double delta_ds(int d, int s) const;
  double cost_sr(int s, int r) const;
  double proxy(int d, int s, int r, const ProxyWeights& w) const {
    return w[0] * delta_du(d) + w[1] * delta_ds(d, s) + w[2] * cost_sr(s, r);
  }

  // Returns false when the commit overflows the DU's top level.
  bool commit(int d, int s, int r, int tmax);

 private:
  std::size_t idx(int d, int s) const {
    return static_cast<std::size_t>(d) * static_cast<std::size_t>(ns_) +
           static_cast<std::size_t>(s);
  }

  const Problem* p_;
  int t_ph1_;
  int ns_;
  std::vector<char> trench_;
  std::vector<int> rem_cap_, size_, tmax_;
  std::vector<char> du_active_;
  std::vector<int> du_load_, du_level_;
  std::vector<std::optional<PathChoice>> assignment_;
  int committed_ = 0;
};

struct RssaCandidate {
  int d = 0;
  int s = 0;
  int tmax = 0;
};

// Per RU: every (d, s) whose largest feasible type reaches t_ph1, ordered by (d, s).
std::vector<std::vector<RssaCandidate>> rssa_candidates(const Problem& problem, int t_ph1);

ProxyWeights sample_weights(std::uint64_t run_seed);

struct RssaRun {
  Solution solution;
  CostBreakdown cost;
};

// Re-dimensions each used (d, s) from its group size and running tmax, then
// completes feeders and minimal DU levels.
Solution post_dimension(const Problem& problem, const RssaState& state);

std::optional<RssaRun> run_once(const Problem& problem, const RssaConfig& cfg,
                                std::uint64_t run_seed);

struct RssaTraceRow {
  long long run = 0;
  bool feasible = false;
  double true_cost = 0.0;  // NaN for infeasible runs
  double elapsed_s = 0.0;
  ProxyWeights weights{};
};

struct RssaResult {
  std::optional<Solution> solution;
  CostBreakdown cost;
  bool feasible = false;
  long long runs = 0;
  std::vector<RssaTraceRow> trace;
};

RssaResult solve_rssa(const Problem& problem, const RssaConfig& cfg);

}  // namespace ponfh
