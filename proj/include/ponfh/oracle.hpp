#pragma once

#include "ponfh/costing.hpp"

#include <optional>

namespace ponfh {

struct OracleLimits {
  int max_rus = 6;
  int max_dus = 3;
  int max_splitters = 6;
};

struct OracleResult {
  Solution solution;
  CostBreakdown cost;
  long long nodes = 0;  // search nodes expanded
};

// Exact minimum-TCO solution by exhaustive enumeration of RU -> (d, s)
// choices. For each (d, s) group the splitter types are chosen by an exact
// covering recursion, which equals enumerating every per-RU type with
// n_dst = ceil(load / 2^t). Partial costs only grow as RUs are added, so
// subtrees whose partial cost reaches the incumbent are skipped.
// Returns nullopt if no feasible solution exists. Throws SizeError when the
// instance exceeds the limits.
std::optional<OracleResult> brute_force_optimal(const Problem& problem,
                                                const OracleLimits& limits = {});

}  // namespace ponfh
