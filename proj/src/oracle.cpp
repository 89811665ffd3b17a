#include "ponfh/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ponfh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Candidate {
  int d;
  int s;
  int tmax;
  double fixed;  // distribution, ONU and per-RU energy cost
};

class Search {
 public:
  explicit Search(const Problem& p) : p_(p) {
    const auto& c = p.catalog;
    const int nd = p.inst.num_dus(), ns = p.inst.num_splitters(), nr = p.inst.num_rus();
    maint_ = 1.0 + c.t_op * c.c_m;
    tmin_ = p.params.min_type();
    tmax_ = p.params.max_type();
    cands_.resize(nr);
    for (int r = 0; r < nr; ++r) {
      const double ru_cost =
          onu_cost_for_demand(c, p.inst.rus[r].demand_gbps) * maint_ +
          c.t_op * c.c_p * (c.p_onu + c.p_ru);
      for (int d = 0; d < nd; ++d)
        for (int s = 0; s < ns; ++s)
          if (auto t = max_feasible_type(p.inst, p.params, p.scenario, d, s, r))
            cands_[r].push_back(
                {d, s, *t, ru_cost + (c.c_df + c.c_tr) * p.inst.dist_sr(s, r) / 1000.0});
    }
    min_fixed_tail_.assign(nr + 1, 0.0);
    for (int r = nr - 1; r >= 0; --r) {
      double best = kInf;
      for (const auto& cd : cands_[r]) best = std::min(best, cd.fixed);
      min_fixed_tail_[r] = min_fixed_tail_[r + 1] + best;
    }
    groups_.assign(static_cast<std::size_t>(nd * ns), Group(tmax_ + 1));
    du_load_.assign(nd, 0);
    du_cost_.assign(nd, 0.0);
    choice_.assign(nr, -1);
  }

  bool any_infeasible_ru() const {
    return std::any_of(cands_.begin(), cands_.end(), [](const auto& v) { return v.empty(); });
  }

  void run() { dfs(0, 0.0); }

  bool found() const { return best_ < kInf; }
  long long nodes() const { return nodes_; }

  Solution build_best() const {
    const int nr = p_.inst.num_rus();
    std::vector<std::optional<PathChoice>> assignment(nr);
    // Regroup, then split each group's RUs across the optimal type mix.
    std::map<DsKey, std::vector<int>> members;
    for (int r = 0; r < nr; ++r) {
      const auto& cd = cands_[r][best_choice_[r]];
      members[{cd.d, cd.s}].push_back(r);
    }
    for (const auto& [key, rus] : members) {
      Group g(tmax_ + 1);
      for (int r : rus) ++g.by_tmax[cands_[r][best_choice_[r]].tmax];
      std::vector<int> mix;
      group_cost(key.first, key.second, g.by_tmax, &mix);
      std::vector<bool> placed(rus.size(), false);
      for (int t = tmax_; t >= tmin_; --t) {
        int ports = mix[t] * (1 << t);
        for (std::size_t i = 0; i < rus.size() && ports > 0; ++i) {
          if (placed[i] || cands_[rus[i]][best_choice_[rus[i]]].tmax < t) continue;
          assignment[rus[i]] = PathChoice{key.first, key.second, t};
          placed[i] = true;
          --ports;
        }
      }
    }
    return complete_assignment(p_.inst, p_.params, std::move(assignment));
  }

 private:
  struct Group {
    explicit Group(int n) : by_tmax(static_cast<std::size_t>(n), 0) {}
    std::vector<int> by_tmax;
    int size = 0;
    double cost = 0.0;
  };

  // Cheapest splitter mix covering a group whose RUs tolerate types up to
  // their tmax. Types are visited from largest to smallest; RUs still
  // uncovered at type t may use any smaller type, so only their count matters.
  double group_cost(int d, int s, const std::vector<int>& by_tmax, std::vector<int>* mix) const {
    const auto& c = p_.catalog;
    const double feeder_km = p_.inst.dist_ds(d, s) / 1000.0;
    int total = 0;
    for (int v : by_tmax) total += v;
    if (total == 0) return 0.0;
    std::vector<double> unit(tmax_ + 1, 0.0);
    for (int t = tmin_; t <= tmax_; ++t)
      unit[t] = c.c_ff * feeder_km + c.splitter_cost(t) * maint_;

    std::vector<int> chosen(tmax_ + 1, 0), best_mix;
    double best = kInf;
    auto rec = [&](auto&& self, int t, int pool, double acc) -> void {
      if (acc >= best) return;
      if (t < tmin_) {
        if (pool == 0) {
          best = acc;
          best_mix = chosen;
        }
        return;
      }
      pool += by_tmax[t];
      const int ports = 1 << t;
      const int max_n = (pool + ports - 1) / ports;
      for (int n = max_n; n >= 0; --n) {
        chosen[t] = n;
        self(self, t - 1, std::max(0, pool - n * ports), acc + n * unit[t]);
      }
      chosen[t] = 0;
    };
    rec(rec, tmax_, 0, 0.0);
    if (mix) *mix = best_mix;
    return best + c.c_tr * feeder_km;
  }

  double du_cost(int load) const {
    if (load == 0) return 0.0;
    const auto& c = p_.catalog;
    const int k = min_du_level(load, p_.params);
    return c.c_bp * maint_ + c.t_op * c.c_rent +
           c.t_op * c.c_p * (c.p_cool + std::ldexp(c.p_du, k));
  }

  void dfs(int r, double partial) {
    ++nodes_;
    const int nr = p_.inst.num_rus();
    if (r == nr) {
      if (partial < best_ - 1e-9 * std::abs(best_ == kInf ? 0.0 : best_)) {
        best_ = partial;
        best_choice_ = choice_;
      }
      return;
    }
    const int ns = p_.inst.num_splitters();
    for (int i = 0; i < static_cast<int>(cands_[r].size()); ++i) {
      const auto& cd = cands_[r][i];
      if (du_load_[cd.d] + 1 > p_.params.n_ru_max) continue;
      auto& g = groups_[static_cast<std::size_t>(cd.d * ns + cd.s)];
      const double old_g = g.cost, old_du = du_cost_[cd.d];
      ++g.by_tmax[cd.tmax];
      ++g.size;
      g.cost = group_cost(cd.d, cd.s, g.by_tmax, nullptr);
      ++du_load_[cd.d];
      du_cost_[cd.d] = du_cost(du_load_[cd.d]);
      const double next = partial + cd.fixed + (g.cost - old_g) + (du_cost_[cd.d] - old_du);
      const double bound = next + min_fixed_tail_[r + 1];
      if (best_ == kInf || bound < best_ - 1e-9 * std::abs(best_)) {
        choice_[r] = i;
        dfs(r + 1, next);
      }
      --du_load_[cd.d];
      du_cost_[cd.d] = old_du;
      --g.by_tmax[cd.tmax];
      --g.size;
      g.cost = old_g;
    }
  }

  const Problem& p_;
  double maint_ = 1.0;
  int tmin_ = 1, tmax_ = 1;
  std::vector<std::vector<Candidate>> cands_;
  std::vector<double> min_fixed_tail_;
  std::vector<Group> groups_;
  std::vector<int> du_load_;
  std::vector<double> du_cost_;
  std::vector<int> choice_, best_choice_;
  double best_ = kInf;
  long long nodes_ = 0;
};

}  // namespace

std::optional<OracleResult> brute_force_optimal(const Problem& p, const OracleLimits& limits) {
  const auto& inst = p.inst;
  if (inst.num_rus() > limits.max_rus || inst.num_dus() > limits.max_dus ||
      inst.num_splitters() > limits.max_splitters) {
    std::ostringstream msg;
    msg << "oracle accepts at most " << limits.max_dus << " DUs, " << limits.max_splitters
        << " splitter sites, " << limits.max_rus << " RUs; got " << inst.num_dus() << ", "
        << inst.num_splitters() << ", " << inst.num_rus();
    throw SizeError(msg.str());
  }
  Search search(p);
  if (search.any_infeasible_ru()) return std::nullopt;
  search.run();
  if (!search.found()) return std::nullopt;
  OracleResult out;
  out.solution = search.build_best();
  out.cost = compute_tco(p, out.solution);
  out.nodes = search.nodes();
  return out;
}

}  // namespace ponfh
