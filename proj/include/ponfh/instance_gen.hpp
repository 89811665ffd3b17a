#pragma once

#include "ponfh/types.hpp"

#include <cstdint>

namespace ponfh {

struct GeneratorConfig {
  Scenario scenario;
  int n_du = 1;
  int n_ru = 1;
  int topology_index = 0;
  std::uint64_t master_seed = 0;
  // Reject n_du / n_ru outside the scenario sweep sets.
  bool require_sweep_membership = true;
};

class DegenerateGrid : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Square grid anchored at the origin, pitch `spacing`, both boundaries
// included, row-major (y outer, x inner).
std::vector<Point2D> grid_splitter_sites(double map_side_m, double spacing_m);

// Substream seeds. DU sites ignore the topology index so they stay fixed
// across topologies of a (n_du, n_ru) cell.
std::uint64_t du_stream_seed(const GeneratorConfig& cfg);
std::uint64_t ru_stream_seed(const GeneratorConfig& cfg);

NetworkInstance generate_instance(const GeneratorConfig& cfg);

// Small random instance with uniformly placed splitter candidates instead of
// the periodic grid; used for exhaustive-oracle comparisons.
NetworkInstance sample_small_instance(const Scenario& scenario, int n_du, int n_splitters,
                                      int n_ru, std::uint64_t seed);

}  // namespace ponfh
