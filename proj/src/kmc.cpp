#include "ponfh/kmc.hpp"

#include "ponfh/deadline.hpp"
#include "ponfh/kmeans.hpp"
#include "ponfh/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace ponfh {

const char* failure_name(KmcFailure f) {
  switch (f) {
    case KmcFailure::None: return "none";
    case KmcFailure::SplitterTier: return "KS";
    case KmcFailure::DuTier: return "KD";
  }
  return "none";
}

std::pair<int, int> initial_cluster_counts(int n_ru, const std::vector<int>& types,
                                           int n_ru_max) {
  double mean_fanout = 0.0;
  for (int t : types) mean_fanout += std::ldexp(1.0, t);
  mean_fanout /= static_cast<double>(types.size());
  const int k_s = static_cast<int>(std::ceil(n_ru / mean_fanout - 1e-12));
  const int k_d = static_cast<int>(std::ceil(n_ru / (n_ru_max / 2.0) - 1e-12));
  return {std::max(1, k_s), std::max(1, k_d)};
}

KmcAttempt kmc_attempt(const Problem& p, int k_s, int k_d, const KmcConfig& cfg,
                       std::uint64_t attempt_seed) {
  const auto& inst = p.inst;
  const auto& prm = p.params;
  Rng rng(attempt_seed);
  KmcAttempt out;
  auto fail = [&out](KmcFailure f, std::string why) {
    out.failure = f;
    out.reason = std::move(why);
    return out;
  };

  // Phase 1: RUs -> splitter sites.
  std::vector<Point2D> ru_pts;
  for (const auto& r : inst.rus) ru_pts.push_back(r.position);
  const auto ru_mat = stack_points(ru_pts);
  const auto sp_mat = stack_points(inst.splitter_sites);
  const int ks = std::clamp(k_s, 1, inst.num_rus());
  const auto ru_clusters = kmeans<double>(ru_mat, ks, cfg.i_km, cfg.eps_km, rng);
  std::vector<int> site_of_cluster(static_cast<std::size_t>(ks));
  for (int c = 0; c < ks; ++c)
    site_of_cluster[c] =
        static_cast<int>(nearest_row(sp_mat, ru_clusters.centers.row(c).transpose()));
  std::vector<int> site_of_ru(static_cast<std::size_t>(inst.num_rus()));
  std::map<int, std::vector<int>> members;  // active site -> RUs, ordered by site
  for (int r = 0; r < inst.num_rus(); ++r) {
    site_of_ru[r] = site_of_cluster[ru_clusters.assignment[r]];
    members[site_of_ru[r]].push_back(r);
  }
  if (members.empty()) return fail(KmcFailure::SplitterTier, "no active splitter site");

  // Phase 2: active sites, replicated by RU count up to the cap -> DU sites.
  std::vector<Point2D> weighted;
  for (const auto& [s, rus] : members) {
    const int copies = std::min<int>(static_cast<int>(rus.size()), std::max(1, cfg.replication_cap));
    for (int i = 0; i < copies; ++i) weighted.push_back(inst.splitter_sites[s]);
  }
  const auto w_mat = stack_points(weighted);
  const auto du_mat = stack_points(inst.du_sites);
  const int kd = std::clamp(k_d, 1, static_cast<int>(weighted.size()));
  const auto site_clusters = kmeans<double>(w_mat, kd, cfg.i_km, cfg.eps_km, rng);
  std::set<int> active_dus;
  for (int c = 0; c < kd; ++c)
    active_dus.insert(
        static_cast<int>(nearest_row(du_mat, site_clusters.centers.row(c).transpose())));
  if (active_dus.empty()) return fail(KmcFailure::DuTier, "no active DU");
  std::map<int, int> du_of_site;
  for (const auto& [s, rus] : members) {
    int best = *active_dus.begin();
    for (int d : active_dus)
      if (inst.dist_ds(d, s) < inst.dist_ds(best, s)) best = d;
    du_of_site[s] = best;
  }

  // Phase 3: worst-case path checks and dimensioning.
  std::vector<std::optional<PathChoice>> assignment(static_cast<std::size_t>(inst.num_rus()));
  std::vector<int> du_load(static_cast<std::size_t>(inst.num_dus()), 0);
  for (const auto& [s, rus] : members) {
    const int d = du_of_site.at(s);
    double far = 0.0, proc = 0.0;
    for (int r : rus) {
      far = std::max(far, inst.dist_sr(s, r));
      proc = std::max(proc, inst.rus[r].proc_latency_us);
    }
    const double total = inst.dist_ds(d, s) + far;
    if (!latency_ok(p.scenario, latency_us(prm, total, proc)))
      return fail(KmcFailure::SplitterTier, "latency at site " + std::to_string(s));
    const auto t_feas = max_type_for_length(prm, total);
    if (!t_feas) return fail(KmcFailure::DuTier, "no feasible type at site " + std::to_string(s));
    const auto dim = dimension_group(static_cast<int>(rus.size()), *t_feas, prm);
    for (int r : rus) assignment[r] = PathChoice{d, s, dim.type};
    du_load[d] += static_cast<int>(rus.size());
  }
  for (int d = 0; d < inst.num_dus(); ++d)
    if (du_load[d] > prm.n_ru_max)
      return fail(KmcFailure::DuTier, "DU " + std::to_string(d) + " overloaded");

  auto sol = complete_assignment(inst, prm, std::move(assignment));
  if (!check_solution(p, sol).feasible())
    return fail(KmcFailure::DuTier, "final feasibility check");
  out.solution = std::move(sol);
  return out;
}

KmcResult solve_kmc(const Problem& p, const KmcConfig& cfg) {
  const Deadline deadline(cfg.t_run_s);
  KmcResult res;
  const int ks_max = std::max(1, std::min(p.inst.num_splitters(), p.inst.num_rus()));
  const int kd_max = std::max(1, p.inst.num_dus());
  auto [ks, kd] = initial_cluster_counts(p.inst.num_rus(), p.params.splitter_types,
                                         p.params.n_ru_max);
  ks = std::min(ks, ks_max);
  kd = std::min(kd, kd_max);
  double best = std::numeric_limits<double>::infinity();
  int no_imp = 0;

  while (!deadline.expired()) {
    KmcFailure batch_failure = KmcFailure::None;
    for (int in = 0; in < std::max(1, cfg.i_inner); ++in) {
      if (deadline.expired()) break;
      const auto seed = derive_seed(cfg.seed, {static_cast<std::uint64_t>(res.attempts)});
      ++res.attempts;
      auto att = kmc_attempt(p, ks, kd, cfg, seed);
      KmcTraceRow row{res.attempts, ks, kd, "", std::nan(""), 0.0};
      if (!att.solution) {
        batch_failure = att.failure;
        res.last_failure = att.failure;
        res.last_reason = att.reason;
        row.outcome = std::string("fail_") + failure_name(att.failure);
        row.elapsed_s = deadline.elapsed();
        res.trace.push_back(std::move(row));
        continue;
      }
      const auto cost = compute_tco(p, *att.solution);
      row.outcome = "feasible";
      row.cost = cost.total;
      row.elapsed_s = deadline.elapsed();
      res.trace.push_back(std::move(row));
      if (cost.total < best - cfg.epsilon) {
        best = cost.total;
        res.solution = std::move(att.solution);
        res.cost = cost;
        res.feasible = true;
        no_imp = 0;
      } else {
        ++no_imp;
      }
      if (no_imp >= cfg.patience) {
        res.k_s = ks;
        res.k_d = kd;
        return res;
      }
    }
    if (ks >= ks_max && kd >= kd_max) break;
    // Bump the blamed tier, or the other one once the blamed tier is maxed.
    const bool bump_splitters = batch_failure != KmcFailure::DuTier;
    if (bump_splitters ? ks < ks_max : kd >= kd_max)
      ++ks;
    else
      ++kd;
  }
  res.k_s = ks;
  res.k_d = kd;
  return res;
}

}  // namespace ponfh
