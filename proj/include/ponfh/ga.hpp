#pragma once

// Genetic algorithm over two-tier assignments (RU -> splitter site,
// splitter site -> DU) with penalized fitness and optional repair.

#include "ponfh/costing.hpp"
#include "ponfh/deadline.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ponfh {

struct Chromosome {
  std::vector<int> s_assign;  // per RU: splitter site
  std::vector<int> d_assign;  // per splitter site: DU
  bool operator==(const Chromosome&) const = default;
};

struct GaConfig {
  int pop_size = 200;
  long long max_generations = 1'000'000;
  double elite_fraction = 0.10;
  int tournament_k = 3;
  double p_crossover = 0.85;
  double p_mut_ru = 0.03;
  double p_mut_sd = 0.02;
  double p_repair = 0.40;
  int knn = 8;
  double hard_penalty = 1e9;
  double soft_penalty = 1e6;
  double site_regularization = 100.0;  // $ per active splitter site in the proxy
  double repair_reroute_fraction = 0.25;
  double t_run_s = 1000.0;
  int patience = 1200;
  double epsilon = 1e-3;
  std::uint64_t seed = 0;
};

// knn nearest splitter sites per RU and nearest DUs per splitter site,
// ordered by distance (ties by index). knn is clamped per tier.
struct CandidateSets {
  std::vector<std::vector<int>> ru_splitters;
  std::vector<std::vector<int>> splitter_dus;
};

CandidateSets nearest_candidates(const NetworkInstance& inst, int knn);

// Hard violation counts by category plus soft magnitudes: reach excess in
// km beyond the smallest splitter type's optical reach, latency excess in
// microseconds, DU overload in RUs. Reach is judged on the smallest type, so
// a splitter without any feasible type counts under both reach and no_type.
struct ViolationTally {
  int reach = 0;
  int latency = 0;
  int no_type = 0;
  int capacity = 0;
  double reach_excess_km = 0.0;
  double latency_excess_us = 0.0;
  double capacity_excess = 0.0;

  int hard() const { return reach + latency + no_type + capacity; }
};

struct Decoded {
  double fitness = 0.0;  // J = psi + omega
  double psi = 0.0;
  double omega = 0.0;
  Solution solution;
  ViolationTally tally;
};

// Deterministic decoding: active sites are those with RUs; each takes the DU
// its gene names, the type from the group dimensioning rule applied to its
// worst-case path, and ceil(load / 2^t) splitters.
Decoded decode_and_score(const Chromosome& chrom, const Problem& problem, const GaConfig& cfg);

Chromosome repair(Chromosome chrom, const Problem& problem, const CandidateSets& cands,
                  const GaConfig& cfg, const Deadline& deadline);

// Site genes for unused sites point at their nearest DU.
Chromosome chromosome_from_solution(const Solution& sol, const NetworkInstance& inst);

struct GaTraceRow {
  long long generation = 0;
  double best_j = 0.0;
  double best_true_cost = 0.0;  // NaN until a feasible solution is known
  bool feasible = false;
  double elapsed_s = 0.0;
};

struct GaResult {
  Chromosome best;
  Solution solution;
  bool feasible = false;
  double best_score = 0.0;  // exact TCO when feasible, J otherwise
  CostBreakdown cost;
  long long generations = 0;
  int restarts = 0;
  std::vector<GaTraceRow> trace;
};

GaResult evolve(const Problem& problem, const GaConfig& cfg,
                const std::vector<Chromosome>& seeds = {});

}  // namespace ponfh
