#include "ponfh/instance_gen.hpp"

#include "ponfh/random.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ponfh {

namespace {

constexpr std::uint64_t kRoleDu = 0xD0;
constexpr std::uint64_t kRoleRu = 0x20;
constexpr std::uint64_t kRoleSplitter = 0x5;

std::vector<Point2D> uniform_points(Rng& rng, int n, double side) {
  std::vector<Point2D> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double x = rng.uniform(0.0, side);
    const double y = rng.uniform(0.0, side);
    pts.emplace_back(x, y);
  }
  return pts;
}

std::vector<Ru> homogeneous_rus(const std::vector<Point2D>& pts, const Scenario& sc) {
  std::vector<Ru> rus;
  rus.reserve(pts.size());
  for (const auto& p : pts) rus.push_back(Ru{p, sc.bw_per_ru, sc.t_proc_us});
  return rus;
}

bool contains(const std::vector<int>& v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

std::vector<Point2D> grid_splitter_sites(double map_side_m, double spacing_m) {
  if (!(spacing_m > 0.0)) throw std::invalid_argument("splitter spacing must be positive");
  if (!(map_side_m > 0.0)) throw std::invalid_argument("map side must be positive");
  if (spacing_m > map_side_m) {
    std::ostringstream msg;
    msg << "splitter spacing " << spacing_m << " m exceeds map side " << map_side_m << " m";
    throw DegenerateGrid(msg.str());
  }
  // Small slack so exact multiples are not lost to rounding.
  const int per_axis = static_cast<int>(std::floor(map_side_m / spacing_m + 1e-9)) + 1;
  std::vector<Point2D> pts;
  pts.reserve(static_cast<std::size_t>(per_axis) * per_axis);
  for (int j = 0; j < per_axis; ++j)
    for (int i = 0; i < per_axis; ++i) pts.emplace_back(i * spacing_m, j * spacing_m);
  return pts;
}

std::uint64_t du_stream_seed(const GeneratorConfig& cfg) {
  return derive_seed(cfg.master_seed,
                     {fnv1a64(cfg.scenario.name), static_cast<std::uint64_t>(cfg.n_du),
                      static_cast<std::uint64_t>(cfg.n_ru), kRoleDu});
}

std::uint64_t ru_stream_seed(const GeneratorConfig& cfg) {
  return derive_seed(cfg.master_seed,
                     {fnv1a64(cfg.scenario.name), static_cast<std::uint64_t>(cfg.n_du),
                      static_cast<std::uint64_t>(cfg.n_ru), kRoleRu,
                      static_cast<std::uint64_t>(cfg.topology_index)});
}

NetworkInstance generate_instance(const GeneratorConfig& cfg) {
  const auto& sc = cfg.scenario;
  if (cfg.n_du < 1 || cfg.n_ru < 1) throw std::invalid_argument("n_du and n_ru must be >= 1");
  if (cfg.topology_index < 0) throw std::invalid_argument("topology_index must be >= 0");
  if (cfg.require_sweep_membership) {
    if (!contains(sc.nd_sweep, cfg.n_du))
      throw std::invalid_argument("n_du not in scenario nd_sweep");
    if (!contains(sc.nr_sweep, cfg.n_ru))
      throw std::invalid_argument("n_ru not in scenario nr_sweep");
  }
  auto splitters = grid_splitter_sites(sc.map_side_m, sc.splitter_spacing_m);

  Rng du_rng(du_stream_seed(cfg));
  auto dus = uniform_points(du_rng, cfg.n_du, sc.map_side_m);

  const auto seed = ru_stream_seed(cfg);
  Rng ru_rng(seed);
  auto ru_pts = uniform_points(ru_rng, cfg.n_ru, sc.map_side_m);

  return make_instance(std::move(dus), std::move(splitters), homogeneous_rus(ru_pts, sc), seed);
}

NetworkInstance sample_small_instance(const Scenario& scenario, int n_du, int n_splitters,
                                      int n_ru, std::uint64_t seed) {
  if (n_du < 1 || n_splitters < 1 || n_ru < 1)
    throw std::invalid_argument("instance sizes must be >= 1");
  const double side = scenario.map_side_m;
  Rng du_rng(derive_seed(seed, {kRoleDu}));
  Rng sp_rng(derive_seed(seed, {kRoleSplitter}));
  Rng ru_rng(derive_seed(seed, {kRoleRu}));
  auto dus = uniform_points(du_rng, n_du, side);
  auto sps = uniform_points(sp_rng, n_splitters, side);
  auto rus = uniform_points(ru_rng, n_ru, side);
  return make_instance(std::move(dus), std::move(sps), homogeneous_rus(rus, scenario), seed);
}

}  // namespace ponfh
