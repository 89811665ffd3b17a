#include "ponfh/rssa.hpp"

#include "ponfh/deadline.hpp"
#include "ponfh/random.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ponfh {

RssaState::RssaState(const Problem& problem, int t_ph1)
    : p_(&problem), t_ph1_(t_ph1), ns_(problem.inst.num_splitters()) {
  const auto nd = static_cast<std::size_t>(problem.inst.num_dus());
  const auto cells = nd * static_cast<std::size_t>(ns_);
  trench_.assign(cells, 0);
  rem_cap_.assign(cells, 0);
  size_.assign(cells, 0);
  tmax_.assign(cells, problem.params.max_type());
  du_active_.assign(nd, 0);
  du_load_.assign(nd, 0);
  du_level_.assign(nd, 0);
  assignment_.assign(static_cast<std::size_t>(problem.inst.num_rus()), std::nullopt);
}

int RssaState::level_after_add(int d) const {
  return min_du_level(du_load_[d] + 1, p_->params);
}

double RssaState::delta_du(int d) const {
  const auto& c = p_->catalog;
  const double energy_unit = c.t_op * c.c_p * c.p_du;
  const int k_new = level_after_add(d);
  if (!du_active_[d]) {
    return c.c_bp * (1.0 + c.t_op * c.c_m) + c.t_op * c.c_rent + c.t_op * c.c_p * c.p_cool +
           energy_unit * std::ldexp(1.0, k_new);
  }
  const int k_old = du_level_[d];
  return energy_unit * (std::ldexp(1.0, k_new) - std::ldexp(1.0, k_old));
}

double RssaState::delta_ds(int d, int s) const {
  const auto& c = p_->catalog;
  const double km = p_->inst.dist_ds(d, s) / 1000.0;
  double out = trench_[idx(d, s)] ? 0.0 : km * c.c_tr;
  if (rem_cap_[idx(d, s)] == 0)
    out += km * c.c_ff + c.splitter_cost(t_ph1_) * (1.0 + c.t_op * c.c_m);
  return out;
}

double RssaState::cost_sr(int s, int r) const {
  const auto& c = p_->catalog;
  return p_->inst.dist_sr(s, r) / 1000.0 * (c.c_tr + c.c_df) +
         onu_cost_for_demand(c, p_->inst.rus[r].demand_gbps);
}

bool RssaState::commit(int d, int s, int r, int tmax) {
  const auto i = idx(d, s);
  trench_[i] = 1;
  if (rem_cap_[i] == 0)
    rem_cap_[i] = (1 << t_ph1_) - 1;
  else
    --rem_cap_[i];
  ++size_[i];
  tmax_[i] = std::min(tmax_[i], tmax);
  du_active_[d] = 1;
  ++du_load_[d];
  du_level_[d] = min_du_level(du_load_[d], p_->params);
  assignment_[r] = PathChoice{d, s, t_ph1_};
  ++committed_;
  return du_load_[d] <= p_->params.n_ru_max &&
         du_load_[d] <= (1 << p_->params.du_levels.back());
}

std::vector<std::vector<RssaCandidate>> rssa_candidates(const Problem& p, int t_ph1) {
  const auto& inst = p.inst;
  std::vector<std::vector<RssaCandidate>> out(static_cast<std::size_t>(inst.num_rus()));
  for (int r = 0; r < inst.num_rus(); ++r)
    for (int d = 0; d < inst.num_dus(); ++d)
      for (int s = 0; s < inst.num_splitters(); ++s) {
        const auto t = max_feasible_type(inst, p.params, p.scenario, d, s, r);
        if (t && *t >= t_ph1) out[r].push_back({d, s, *t});
      }
  return out;
}

ProxyWeights sample_weights(std::uint64_t run_seed) {
  Rng rng(derive_seed(run_seed, {1}));
  ProxyWeights w{};
  double sum = 0.0;
  for (auto& x : w) {
    x = rng.uniform01();
    sum += x;
  }
  if (sum <= 0.0) return {1.0 / 3, 1.0 / 3, 1.0 / 3};
  for (auto& x : w) x /= sum;
  return w;
}

Solution post_dimension(const Problem& p, const RssaState& state) {
  auto assignment = state.assignment();
  for (auto& a : assignment) {
    if (!a) continue;
    const auto dim = dimension_group(state.group_size(a->d, a->s),
                                     state.group_tmax(a->d, a->s), p.params);
    a->t = dim.type;
  }
  return complete_assignment(p.inst, p.params, std::move(assignment));
}

namespace {

int resolve_t_ph1(const Problem& p, const RssaConfig& cfg) {
  const int t = cfg.t_ph1.value_or(p.params.max_type());
  if (!p.params.has_type(t)) throw std::invalid_argument("t_ph1 outside the splitter types");
  return t;
}

std::optional<RssaRun> run_with(const Problem& p, int t_ph1,
                                const std::vector<std::vector<RssaCandidate>>& cands,
                                std::uint64_t run_seed, const ProxyWeights& w) {
  const int nr = p.inst.num_rus();
  std::vector<int> order(static_cast<std::size_t>(nr));
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(run_seed, {2}));
  rng.shuffle(order);

  RssaState state(p, t_ph1);
  for (int r : order) {
    const RssaCandidate* best = nullptr;
    double best_v = std::numeric_limits<double>::infinity();
    for (const auto& c : cands[r]) {
      if (state.du_load(c.d) >= p.params.n_ru_max) continue;
      const double v = state.proxy(c.d, c.s, r, w);
      if (v < best_v) {
        best_v = v;
        best = &c;
      }
    }
    if (!best) return std::nullopt;
    if (!state.commit(best->d, best->s, r, best->tmax)) return std::nullopt;
  }
  RssaRun run;
  run.solution = post_dimension(p, state);
  if (!check_solution(p, run.solution).feasible()) return std::nullopt;
  run.cost = compute_tco(p, run.solution);
  return run;
}

}  // namespace

std::optional<RssaRun> run_once(const Problem& p, const RssaConfig& cfg, std::uint64_t run_seed) {
  const int t = resolve_t_ph1(p, cfg);
  return run_with(p, t, rssa_candidates(p, t), run_seed, sample_weights(run_seed));
}

RssaResult solve_rssa(const Problem& p, const RssaConfig& cfg) {
  const Deadline deadline(cfg.t_run_s);
  RssaResult res;
  const int t = resolve_t_ph1(p, cfg);
  if (deadline.expired()) return res;
  const auto cands = rssa_candidates(p, t);
  double best = std::numeric_limits<double>::infinity();
  int no_imp = 0;
  while (!deadline.expired() && no_imp < cfg.patience) {
    if (cfg.max_runs && res.runs >= *cfg.max_runs) break;
    const auto run_seed = derive_seed(cfg.seed, {static_cast<std::uint64_t>(res.runs)});
    const auto w = sample_weights(run_seed);
    auto run = run_with(p, t, cands, run_seed, w);
    ++res.runs;
    RssaTraceRow row{res.runs - 1, run.has_value(), std::nan(""), 0.0, w};
    if (run) row.true_cost = run->cost.total;
    if (run && run->cost.total < best - cfg.epsilon) {
      best = run->cost.total;
      res.solution = std::move(run->solution);
      res.cost = run->cost;
      res.feasible = true;
      no_imp = 0;
    } else {
      ++no_imp;
    }
    row.elapsed_s = deadline.elapsed();
    res.trace.push_back(row);
  }
  return res;
}

}  // namespace ponfh
