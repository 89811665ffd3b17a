#include "ponfh/ga.hpp"

#include "ponfh/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ponfh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<int> k_nearest(const Eigen::VectorXd& dist, int k) {
  std::vector<int> idx(static_cast<std::size_t>(dist.size()));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return dist(a) < dist(b); });
  idx.resize(static_cast<std::size_t>(std::min<Eigen::Index>(k, dist.size())));
  return idx;
}

int nearest_du(const NetworkInstance& inst, int s) {
  Eigen::Index best = 0;
  inst.dist_ds.col(s).minCoeff(&best);
  return static_cast<int>(best);
}

// Per-site group state derived from a chromosome.
struct SiteGroups {
  std::vector<std::vector<int>> members;  // RUs per site
  std::vector<int> du_load;
};

SiteGroups group_sites(const Chromosome& c, const NetworkInstance& inst) {
  SiteGroups g;
  g.members.resize(static_cast<std::size_t>(inst.num_splitters()));
  g.du_load.assign(static_cast<std::size_t>(inst.num_dus()), 0);
  for (int r = 0; r < inst.num_rus(); ++r) g.members[c.s_assign[r]].push_back(r);
  for (int s = 0; s < inst.num_splitters(); ++s)
    g.du_load[c.d_assign[s]] += static_cast<int>(g.members[s].size());
  return g;
}

double worst_length(const NetworkInstance& inst, int d, int s, const std::vector<int>& rus) {
  double worst = 0.0;
  for (int r : rus) worst = std::max(worst, inst.dist_sr(s, r));
  return inst.dist_ds(d, s) + worst;
}

double worst_latency(const NetworkInstance& inst, const PhysicalParams& prm, int d, int s,
                     const std::vector<int>& rus) {
  double worst = 0.0;
  for (int r : rus) worst = std::max(worst, path_latency_us(inst, prm, d, s, r));
  return worst;
}

// Longest path the smallest splitter type tolerates, in km.
double reach_km(const PhysicalParams& prm) {
  const double spare =
      prm.l_budget - prm.l_fix - prm.l_margin - prm.min_type() * prm.split_loss_per_level;
  return spare / prm.l_fib;
}

}  // namespace

CandidateSets nearest_candidates(const NetworkInstance& inst, int knn) {
  CandidateSets c;
  const int k_s = std::clamp(knn, 1, std::max(1, inst.num_splitters()));
  const int k_d = std::clamp(knn, 1, std::max(1, inst.num_dus()));
  for (int r = 0; r < inst.num_rus(); ++r)
    c.ru_splitters.push_back(k_nearest(inst.dist_sr.col(r), k_s));
  for (int s = 0; s < inst.num_splitters(); ++s)
    c.splitter_dus.push_back(k_nearest(inst.dist_ds.col(s), k_d));
  return c;
}

Decoded decode_and_score(const Chromosome& chrom, const Problem& p, const GaConfig& cfg) {
  const auto& inst = p.inst;
  const auto& prm = p.params;
  const auto groups = group_sites(chrom, inst);
  const double reach = reach_km(prm);

  Decoded out;
  std::vector<std::optional<PathChoice>> assignment(static_cast<std::size_t>(inst.num_rus()));
  int active_sites = 0;
  for (int s = 0; s < inst.num_splitters(); ++s) {
    const auto& rus = groups.members[s];
    if (rus.empty()) continue;
    ++active_sites;
    const int d = chrom.d_assign[s];
    const double len = worst_length(inst, d, s, rus);

    const double excess_km = len / 1000.0 - reach;
    if (!loss_ok(prm, loss_db(prm, len, prm.min_type()))) {
      ++out.tally.reach;
      out.tally.reach_excess_km += std::max(0.0, excess_km);
    }
    const double lat_excess = worst_latency(inst, prm, d, s, rus) - p.scenario.t_fh_us;
    if (!latency_ok(p.scenario, lat_excess + p.scenario.t_fh_us)) {
      ++out.tally.latency;
      out.tally.latency_excess_us += lat_excess;
    }
    const auto t_feas = max_type_for_length(prm, len);
    if (!t_feas) ++out.tally.no_type;
    const auto dim =
        dimension_group(static_cast<int>(rus.size()), t_feas.value_or(prm.min_type()), prm);
    for (int r : rus) assignment[r] = PathChoice{d, s, dim.type};
  }
  for (int d = 0; d < inst.num_dus(); ++d) {
    const int over = groups.du_load[d] - prm.n_ru_max;
    if (over > 0) {
      ++out.tally.capacity;
      out.tally.capacity_excess += over;
    }
  }

  out.solution = complete_assignment(inst, prm, std::move(assignment));
  out.psi = compute_tco(p, out.solution).total + cfg.site_regularization * active_sites;
  out.omega = cfg.hard_penalty * out.tally.hard() +
              cfg.soft_penalty * (out.tally.reach_excess_km + out.tally.latency_excess_us +
                                  out.tally.capacity_excess);
  out.fitness = out.psi + out.omega;
  return out;
}

Chromosome repair(Chromosome c, const Problem& p, const CandidateSets& cands,
                  const GaConfig& cfg, const Deadline& deadline) {
  const auto& inst = p.inst;
  const auto& prm = p.params;
  auto groups = group_sites(c, inst);

  // (i) sites with no feasible optical type move to their nearest DU.
  for (int s = 0; s < inst.num_splitters(); ++s) {
    if (deadline.expired()) return c;
    const auto& rus = groups.members[s];
    if (rus.empty()) continue;
    if (!max_type_for_length(prm, worst_length(inst, c.d_assign[s], s, rus)))
      c.d_assign[s] = nearest_du(inst, s);
  }

  // (ii) reroute the worst-placed share of RUs off reach/latency violators.
  auto path_ok = [&](int d, int s, int r) {
    return latency_ok(p.scenario, path_latency_us(inst, prm, d, s, r)) &&
           loss_ok(prm, path_loss_db(inst, prm, d, s, r, prm.min_type()));
  };
  std::vector<int> movers;
  for (int s = 0; s < inst.num_splitters(); ++s) {
    if (deadline.expired()) return c;
    auto rus = groups.members[s];
    if (rus.empty()) continue;
    const int d = c.d_assign[s];
    const bool reach_bad = !max_type_for_length(prm, worst_length(inst, d, s, rus));
    const bool lat_bad = !latency_ok(p.scenario, worst_latency(inst, prm, d, s, rus));
    if (!reach_bad && !lat_bad) continue;
    std::stable_sort(rus.begin(), rus.end(),
                     [&](int a, int b) { return inst.dist_sr(s, a) > inst.dist_sr(s, b); });
    const auto take = static_cast<std::size_t>(
        std::ceil(cfg.repair_reroute_fraction * static_cast<double>(rus.size())));
    movers.insert(movers.end(), rus.begin(), rus.begin() + std::min(take, rus.size()));
  }
  for (int r : movers) {
    if (deadline.expired()) return c;
    for (int s : cands.ru_splitters[r]) {
      if (s == c.s_assign[r]) continue;
      if (path_ok(c.d_assign[s], s, r)) {
        c.s_assign[r] = s;
        break;
      }
    }
  }

  // (iii) move the lightest sites off overloaded DUs to the nearest DU that fits them.
  groups = group_sites(c, inst);
  for (int d = 0; d < inst.num_dus(); ++d) {
    while (groups.du_load[d] > prm.n_ru_max) {
      if (deadline.expired()) return c;
      int light = -1;
      for (int s = 0; s < inst.num_splitters(); ++s) {
        if (c.d_assign[s] != d || groups.members[s].empty()) continue;
        if (light < 0 || groups.members[s].size() < groups.members[light].size()) light = s;
      }
      if (light < 0) break;
      const int load = static_cast<int>(groups.members[light].size());
      int target = -1;
      for (int d2 : k_nearest(inst.dist_ds.col(light), inst.num_dus())) {
        if (d2 != d && groups.du_load[d2] + load <= prm.n_ru_max) {
          target = d2;
          break;
        }
      }
      if (target < 0) break;
      c.d_assign[light] = target;
      groups.du_load[d] -= load;
      groups.du_load[target] += load;
    }
  }
  return c;
}

Chromosome chromosome_from_solution(const Solution& sol, const NetworkInstance& inst) {
  Chromosome c;
  c.s_assign.assign(static_cast<std::size_t>(inst.num_rus()), 0);
  c.d_assign.resize(static_cast<std::size_t>(inst.num_splitters()));
  for (int s = 0; s < inst.num_splitters(); ++s) c.d_assign[s] = nearest_du(inst, s);
  for (int r = 0; r < inst.num_rus(); ++r)
    if (const auto& a = sol.assignment[r]) {
      c.s_assign[r] = a->s;
      c.d_assign[a->s] = a->d;
    }
  return c;
}

namespace {

class Evolution {
 public:
  Evolution(const Problem& p, const GaConfig& cfg, const std::vector<Chromosome>& seeds)
      : p_(p),
        cfg_(cfg),
        seeds_(seeds),
        cands_(nearest_candidates(p.inst, cfg.knn)),
        rng_(cfg.seed),
        deadline_(cfg.t_run_s) {
    result_.solution = empty_solution(p.inst);
    result_.best_score = kInf;
  }

  GaResult run() {
    int restarts_no_imp = 0;
    while (true) {
      if (deadline_.expired()) return finish();
      auto pop = initial_population();
      ++result_.restarts;
      const double before = result_.best_score;
      if (!generations(pop)) return finish();
      if (result_.best_score < before - cfg_.epsilon)
        restarts_no_imp = 0;
      else
        ++restarts_no_imp;
      if (restarts_no_imp >= cfg_.patience) break;
    }
    return finish();
  }

 private:
  Chromosome random_individual() {
    Chromosome c;
    c.s_assign.resize(static_cast<std::size_t>(p_.inst.num_rus()));
    c.d_assign.resize(static_cast<std::size_t>(p_.inst.num_splitters()));
    for (std::size_t r = 0; r < c.s_assign.size(); ++r) {
      const auto& opts = cands_.ru_splitters[r];
      c.s_assign[r] = opts[rng_.index(opts.size())];
    }
    for (std::size_t s = 0; s < c.d_assign.size(); ++s) {
      const auto& opts = cands_.splitter_dus[s];
      c.d_assign[s] = opts[rng_.index(opts.size())];
    }
    return c;
  }

  std::vector<Chromosome> initial_population() {
    std::vector<Chromosome> pop;
    const int n = std::max(1, cfg_.pop_size);
    for (const auto& s : seeds_)
      if (static_cast<int>(pop.size()) < n) pop.push_back(s);
    while (static_cast<int>(pop.size()) < n) pop.push_back(random_individual());
    return pop;
  }

  int tournament(const std::vector<double>& fit) {
    int best = -1;
    for (int i = 0; i < std::max(1, cfg_.tournament_k); ++i) {
      const int c = rng_.index(fit.size());
      if (best < 0 || fit[c] < fit[best] || (fit[c] == fit[best] && c < best)) best = c;
    }
    return best;
  }

  Chromosome offspring(const std::vector<Chromosome>& pop, const std::vector<double>& fit) {
    const auto& a = pop[tournament(fit)];
    const auto& b = pop[tournament(fit)];
    Chromosome child = a;
    if (rng_.bernoulli(cfg_.p_crossover)) {
      for (std::size_t i = 0; i < child.s_assign.size(); ++i)
        if (rng_.bernoulli(0.5)) child.s_assign[i] = b.s_assign[i];
      for (std::size_t i = 0; i < child.d_assign.size(); ++i)
        if (rng_.bernoulli(0.5)) child.d_assign[i] = b.d_assign[i];
    }
    for (std::size_t r = 0; r < child.s_assign.size(); ++r)
      if (rng_.bernoulli(cfg_.p_mut_ru)) {
        const auto& opts = cands_.ru_splitters[r];
        child.s_assign[r] = opts[rng_.index(opts.size())];
      }
    for (std::size_t s = 0; s < child.d_assign.size(); ++s)
      if (rng_.bernoulli(cfg_.p_mut_sd)) {
        const auto& opts = cands_.splitter_dus[s];
        child.d_assign[s] = opts[rng_.index(opts.size())];
      }
    if (rng_.bernoulli(cfg_.p_repair)) child = repair(std::move(child), p_, cands_, cfg_, deadline_);
    return child;
  }

  // Returns false when the time budget ran out.
  bool generations(std::vector<Chromosome>& pop) {
    double restart_best = kInf;
    long long no_imp = 0;
    for (long long g = 0; g < cfg_.max_generations; ++g) {
      if (deadline_.expired()) return false;
      std::vector<double> fit(pop.size());
      std::vector<Decoded> decoded(pop.size());
      for (std::size_t i = 0; i < pop.size(); ++i) {
        if (deadline_.expired()) return false;
        decoded[i] = decode_and_score(pop[i], p_, cfg_);
        fit[i] = decoded[i].fitness;
      }
      const auto star = static_cast<std::size_t>(
          std::min_element(fit.begin(), fit.end()) - fit.begin());
      if (fit[star] < restart_best - cfg_.epsilon) {
        restart_best = fit[star];
        no_imp = 0;
      } else {
        ++no_imp;
      }
      consider(pop[star], decoded[star]);
      ++result_.generations;
      result_.trace.push_back({result_.generations, result_.best_score,
                               result_.feasible ? result_.cost.total : std::nan(""),
                               result_.feasible, deadline_.elapsed()});
      if (no_imp >= cfg_.patience) return true;

      std::vector<std::size_t> order(pop.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return fit[a] < fit[b]; });
      const auto n_elite = std::min(
          pop.size(), static_cast<std::size_t>(std::ceil(cfg_.elite_fraction * pop.size())));
      std::vector<Chromosome> next;
      next.reserve(pop.size());
      for (std::size_t i = 0; i < n_elite; ++i) next.push_back(pop[order[i]]);
      while (next.size() < pop.size()) {
        if (deadline_.expired()) return false;
        next.push_back(offspring(pop, fit));
      }
      pop = std::move(next);
    }
    return true;
  }

  // Feasible individuals are tracked by their exact TCO, others by J.
  void consider(const Chromosome& c, const Decoded& dec) {
    const bool feasible = check_solution(p_, dec.solution).feasible();
    const CostBreakdown cost = compute_tco(p_, dec.solution);
    const double score = feasible ? cost.total : dec.fitness;
    if (score < result_.best_score - cfg_.epsilon) {
      result_.best_score = score;
      result_.best = c;
      result_.solution = dec.solution;
      result_.feasible = feasible;
      result_.cost = cost;
    }
  }

  GaResult finish() { return std::move(result_); }

  const Problem& p_;
  const GaConfig& cfg_;
  const std::vector<Chromosome>& seeds_;
  CandidateSets cands_;
  Rng rng_;
  Deadline deadline_;
  GaResult result_;
};

}  // namespace

GaResult evolve(const Problem& problem, const GaConfig& cfg, const std::vector<Chromosome>& seeds) {
  return Evolution(problem, cfg, seeds).run();
}

}  // namespace ponfh
