#pragma once

// Clustering heuristic: RUs are clustered onto splitter sites, active sites
// onto DU sites, then paths are verified and splitters dimensioned. Failed
// attempts raise the cluster count of the tier blamed for the failure.

#include "ponfh/costing.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ponfh {

struct KmcConfig {
  int i_km = 100;
  double eps_km = 1.0;  // meters
  int i_inner = 5;
  int replication_cap = 8;
  double t_run_s = 1000.0;
  int patience = 1200;
  double epsilon = 1e-3;
  std::uint64_t seed = 0;
};

enum class KmcFailure { None, SplitterTier, DuTier };

const char* failure_name(KmcFailure f);

// Initial (K_S, K_D): ceil(|R| / mean_t 2^t) and ceil(|R| / (N_max / 2)).
std::pair<int, int> initial_cluster_counts(int n_ru, const std::vector<int>& types, int n_ru_max);

struct KmcAttempt {
  std::optional<Solution> solution;
  KmcFailure failure = KmcFailure::None;
  std::string reason;
};

// One pass through the three phases at fixed cluster counts.
KmcAttempt kmc_attempt(const Problem& problem, int k_s, int k_d, const KmcConfig& cfg,
                       std::uint64_t attempt_seed);

struct KmcTraceRow {
  long long attempt = 0;
  int k_s = 0;
  int k_d = 0;
  std::string outcome;
  double cost = 0.0;  // NaN unless feasible
  double elapsed_s = 0.0;
};

struct KmcResult {
  std::optional<Solution> solution;
  CostBreakdown cost;
  bool feasible = false;
  KmcFailure last_failure = KmcFailure::None;
  std::string last_reason;
  long long attempts = 0;
  int k_s = 0, k_d = 0;  // counts when the search stopped
  std::vector<KmcTraceRow> trace;
};

KmcResult solve_kmc(const Problem& problem, const KmcConfig& cfg);

}  // namespace ponfh
