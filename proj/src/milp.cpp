#include "ponfh/milp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace ponfh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string name_of(const char* prefix, std::initializer_list<int> idx) {
  std::string s(prefix);
  for (int i : idx) {
    s += '_';
    s += std::to_string(i);
  }
  return s;
}

std::string fmt_num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

}  // namespace

int MilpModel::level_pos(int k) const {
  auto it = std::find(levels.begin(), levels.end(), k);
  if (it == levels.end()) throw std::out_of_range("unknown DU level");
  return static_cast<int>(it - levels.begin());
}

int MilpModel::f(int d, int s, int r, int t) const {
  const int nt = static_cast<int>(types.size());
  return f_base_ + ((d * num_splitters + s) * num_rus + r) * nt + type_pos(t);
}

int MilpModel::n(int d, int s, int t) const {
  const int nt = static_cast<int>(types.size());
  return n_base_ + (d * num_splitters + s) * nt + type_pos(t);
}

int MilpModel::z(int d, int s) const { return z_base_ + d * num_splitters + s; }
int MilpModel::u(int d) const { return u_base_ + d; }
int MilpModel::y(int d, int k) const {
  return y_base_ + d * static_cast<int>(levels.size()) + level_pos(k);
}

int MilpModel::find(const std::string& name) const {
  auto it = std::lower_bound(by_name_.begin(), by_name_.end(), name,
                             [](const auto& e, const std::string& n) { return e.first < n; });
  return it != by_name_.end() && it->first == name ? it->second : -1;
}

std::size_t MilpModel::num_pruned() const {
  return static_cast<std::size_t>(std::count_if(
      variables.begin(), variables.end(), [](const Variable& v) { return v.pruned(); }));
}

MilpModel build_model(const Problem& p, std::size_t variable_budget) {
  const auto& inst = p.inst;
  const auto& c = p.catalog;
  const auto& prm = p.params;
  MilpModel m;
  m.num_dus = inst.num_dus();
  m.num_splitters = inst.num_splitters();
  m.num_rus = inst.num_rus();
  m.types = prm.splitter_types;
  m.levels = prm.du_levels;
  m.big_m = feeder_big_m(inst, prm);
  const std::size_t nd = m.num_dus, ns = m.num_splitters, nr = m.num_rus;
  const std::size_t nt = m.types.size(), nk = m.levels.size();

  const std::size_t total = nd * ns * nr * nt + nd * ns * nt + nd * ns + nd + nd * nk;
  if (total > variable_budget) {
    std::ostringstream msg;
    msg << "model needs " << total << " variables (|D|=" << nd << ", |S|=" << ns
        << ", |R|=" << nr << ", |T|=" << nt << ", |K|=" << nk << "), budget "
        << variable_budget;
    throw SizeError(msg.str());
  }
  m.variables.reserve(total);
  m.f_base_ = 0;
  m.n_base_ = static_cast<int>(nd * ns * nr * nt);
  m.z_base_ = m.n_base_ + static_cast<int>(nd * ns * nt);
  m.u_base_ = m.z_base_ + static_cast<int>(nd * ns);
  m.y_base_ = m.u_base_ + static_cast<int>(nd);

  const double maint = 1.0 + c.t_op * c.c_m;
  const double energy = c.t_op * c.c_p;
  std::vector<double> ru_fixed(nr);
  for (std::size_t r = 0; r < nr; ++r)
    ru_fixed[r] = onu_cost_for_demand(c, inst.rus[r].demand_gbps) * maint +
                  energy * (c.p_onu + c.p_ru);

  for (int d = 0; d < m.num_dus; ++d)
    for (int s = 0; s < m.num_splitters; ++s)
      for (int r = 0; r < m.num_rus; ++r) {
        const bool lat_ok = latency_ok(p.scenario, path_latency_us(inst, prm, d, s, r));
        for (int t : m.types) {
          Variable v{name_of("f", {d, s, r, t}), VarKind::Binary, 0.0, 1.0, {}};
          if (!lat_ok) v.pruned_by.push_back(Constraint::Latency);
          if (!loss_ok(prm, path_loss_db(inst, prm, d, s, r, t)))
            v.pruned_by.push_back(Constraint::LossBudget);
          if (v.pruned()) v.upper = 0.0;
          m.variables.push_back(std::move(v));
          const double coef = (c.c_df + c.c_tr) * inst.dist_sr(s, r) / 1000.0 + ru_fixed[r];
          m.objective.push_back({static_cast<int>(m.variables.size()) - 1, coef});
        }
      }
  for (int d = 0; d < m.num_dus; ++d)
    for (int s = 0; s < m.num_splitters; ++s)
      for (int t : m.types) {
        m.variables.push_back({name_of("n", {d, s, t}), VarKind::Integer, 0.0, kInf, {}});
        const double coef = c.c_ff * inst.dist_ds(d, s) / 1000.0 + c.splitter_cost(t) * maint;
        m.objective.push_back({static_cast<int>(m.variables.size()) - 1, coef});
      }
  for (int d = 0; d < m.num_dus; ++d)
    for (int s = 0; s < m.num_splitters; ++s) {
      m.variables.push_back({name_of("z", {d, s}), VarKind::Binary, 0.0, 1.0, {}});
      m.objective.push_back(
          {static_cast<int>(m.variables.size()) - 1, c.c_tr * inst.dist_ds(d, s) / 1000.0});
    }
  for (int d = 0; d < m.num_dus; ++d) {
    m.variables.push_back({name_of("u", {d}), VarKind::Binary, 0.0, 1.0, {}});
    m.objective.push_back({static_cast<int>(m.variables.size()) - 1,
                           c.c_bp * maint + c.t_op * c.c_rent + energy * c.p_cool});
  }
  for (int d = 0; d < m.num_dus; ++d)
    for (int k : m.levels) {
      m.variables.push_back({name_of("y", {d, k}), VarKind::Binary, 0.0, 1.0, {}});
      m.objective.push_back(
          {static_cast<int>(m.variables.size()) - 1, energy * std::ldexp(c.p_du, k)});
    }

  // Rows in constraint order.
  for (int r = 0; r < m.num_rus; ++r) {
    Row row{"single_path_" + std::to_string(r), Constraint::SinglePath, {r}, {}, Sense::Equal, 1.0};
    for (int d = 0; d < m.num_dus; ++d)
      for (int s = 0; s < m.num_splitters; ++s)
        for (int t : m.types) row.terms.push_back({m.f(d, s, r, t), 1.0});
    m.rows.push_back(std::move(row));
  }
  for (int d = 0; d < m.num_dus; ++d)
    for (int s = 0; s < m.num_splitters; ++s)
      for (int t : m.types) {
        Row row{name_of("port_capacity", {d, s, t}),
                Constraint::PortCapacity, {d, s, t}, {}, Sense::LessEqual, 0.0};
        for (int r = 0; r < m.num_rus; ++r) row.terms.push_back({m.f(d, s, r, t), 1.0});
        row.terms.push_back({m.n(d, s, t), -std::ldexp(1.0, t)});
        m.rows.push_back(std::move(row));
      }
  for (int d = 0; d < m.num_dus; ++d)
    for (int s = 0; s < m.num_splitters; ++s) {
      Row row{name_of("feeder_link", {d, s}), Constraint::FeederLink,
              {d, s}, {}, Sense::LessEqual, 0.0};
      for (int t : m.types) row.terms.push_back({m.n(d, s, t), 1.0});
      row.terms.push_back({m.z(d, s), -double(m.big_m)});
      m.rows.push_back(std::move(row));
    }
  for (int d = 0; d < m.num_dus; ++d)
    for (int s = 0; s < m.num_splitters; ++s)
      m.rows.push_back({name_of("du_activation", {d, s}),
                        Constraint::DuActivation, {d, s},
                        {{m.z(d, s), 1.0}, {m.u(d), -1.0}}, Sense::LessEqual, 0.0});
  for (int d = 0; d < m.num_dus; ++d) {
    Row row{"level_selection_" + std::to_string(d), Constraint::LevelSelection, {d}, {},
            Sense::Equal, 0.0};
    for (int k : m.levels) row.terms.push_back({m.y(d, k), 1.0});
    row.terms.push_back({m.u(d), -1.0});
    m.rows.push_back(std::move(row));
  }
  for (int d = 0; d < m.num_dus; ++d) {
    Row row{"du_load_" + std::to_string(d), Constraint::DuLoad, {d}, {}, Sense::LessEqual, 0.0};
    for (int s = 0; s < m.num_splitters; ++s)
      for (int r = 0; r < m.num_rus; ++r)
        for (int t : m.types) row.terms.push_back({m.f(d, s, r, t), 1.0});
    for (int k : m.levels) row.terms.push_back({m.y(d, k), -std::ldexp(1.0, k)});
    m.rows.push_back(std::move(row));
  }
  for (int d = 0; d < m.num_dus; ++d) {
    Row row{"du_level_cap_" + std::to_string(d), Constraint::DuLevelCap, {d}, {},
            Sense::LessEqual, double(prm.n_ru_max)};
    for (int k : m.levels) row.terms.push_back({m.y(d, k), std::ldexp(1.0, k)});
    m.rows.push_back(std::move(row));
  }

  m.by_name_.reserve(m.variables.size());
  for (std::size_t i = 0; i < m.variables.size(); ++i)
    m.by_name_.emplace_back(m.variables[i].name, static_cast<int>(i));
  std::sort(m.by_name_.begin(), m.by_name_.end());
  return m;
}

namespace {

// Writes "c1 x1 + c2 x2 ..." skipping pruned variables, wrapping long lines.
void write_terms(std::ostream& os, const MilpModel& m, const std::vector<Term>& terms) {
  int on_line = 0;
  bool first = true;
  for (const auto& term : terms) {
    if (term.coef == 0.0 || m.variables[term.var].pruned()) continue;
    if (on_line == 8) {
      os << "\n   ";
      on_line = 0;
    }
    const double a = std::abs(term.coef);
    if (first)
      os << (term.coef < 0 ? "- " : "");
    else
      os << (term.coef < 0 ? " - " : " + ");
    if (a != 1.0) os << fmt_num(a) << ' ';
    os << m.variables[term.var].name;
    first = false;
    ++on_line;
  }
  if (first) os << "0 " << m.variables.front().name;
}

}  // namespace

std::string export_lp(const MilpModel& m) {
  std::ostringstream os;
  std::size_t bins = 0, gens = 0;
  for (const auto& v : m.variables)
    if (!v.pruned()) (v.kind == VarKind::Binary ? bins : gens)++;
  os << "\\ PON fronthaul design model\n"
     << "\\ |D|=" << m.num_dus << " |S|=" << m.num_splitters << " |R|=" << m.num_rus
     << " |T|=" << m.types.size() << " |K|=" << m.levels.size() << "\n"
     << "\\ variables: " << m.variables.size() << " declared (" << bins << " binary, " << gens
     << " general exported), " << m.num_pruned()
     << " path variables fixed to 0 by latency/loss presolve and omitted\n"
     << "\\ big-M (feeder link): " << m.big_m << "\n";
  os << "Minimize\n obj: ";
  write_terms(os, m, m.objective);
  os << "\nSubject To\n";
  for (const auto& row : m.rows) {
    os << ' ' << row.name << ": ";
    write_terms(os, m, row.terms);
    os << (row.sense == Sense::Equal ? " = " : " <= ") << fmt_num(row.rhs) << '\n';
  }
  os << "Bounds\n";
  for (const auto& v : m.variables)
    if (!v.pruned() && v.kind == VarKind::Integer) os << " " << v.name << " >= 0\n";
  os << "Binaries\n";
  int col = 0;
  for (const auto& v : m.variables) {
    if (v.pruned() || v.kind != VarKind::Binary) continue;
    os << ' ' << v.name;
    if (++col % 10 == 0) os << '\n';
  }
  if (col % 10 != 0) os << '\n';
  os << "Generals\n";
  col = 0;
  for (const auto& v : m.variables) {
    if (v.pruned() || v.kind != VarKind::Integer) continue;
    os << ' ' << v.name;
    if (++col % 10 == 0) os << '\n';
  }
  if (col % 10 != 0) os << '\n';
  os << "End\n";
  return os.str();
}

std::vector<double> to_values(const MilpModel& m, const Solution& sol) {
  std::vector<double> x(m.variables.size(), 0.0);
  for (int r = 0; r < static_cast<int>(sol.assignment.size()); ++r)
    if (const auto& a = sol.assignment[r]) x[m.f(a->d, a->s, r, a->t)] = 1.0;
  for (const auto& [k, n] : sol.splitter_counts)
    x[m.n(std::get<0>(k), std::get<1>(k), std::get<2>(k))] = n;
  for (const auto& [k, on] : sol.feeder)
    if (on) x[m.z(k.first, k.second)] = 1.0;
  for (int d = 0; d < static_cast<int>(sol.du_active.size()); ++d) {
    if (sol.du_active[d]) x[m.u(d)] = 1.0;
    if (sol.du_level[d]) x[m.y(d, *sol.du_level[d])] = 1.0;
  }
  return x;
}

ModelEvaluation evaluate(const MilpModel& m, const std::vector<double>& x) {
  if (x.size() != m.variables.size())
    throw std::invalid_argument("value vector length does not match the model");
  constexpr double tol = 1e-9;
  ModelEvaluation ev;
  for (const auto& term : m.objective) ev.objective += term.coef * x[term.var];
  for (const auto& row : m.rows) {
    double lhs = 0.0;
    for (const auto& term : row.terms) lhs += term.coef * x[term.var];
    const double excess = row.sense == Sense::Equal ? std::abs(lhs - row.rhs) : lhs - row.rhs;
    if (excess > tol) ev.violations.push_back({row.name, row.family, row.indices, excess});
  }
  // Presolved path bounds stand in for the latency and loss rows.
  const int nt = static_cast<int>(m.types.size());
  for (std::size_t i = 0; i < m.variables.size(); ++i) {
    const auto& v = m.variables[i];
    if (v.pruned() && x[i] > tol) {
      const int idx = static_cast<int>(i);
      const int t = m.types[idx % nt];
      const int r = (idx / nt) % m.num_rus;
      const int s = (idx / nt / m.num_rus) % m.num_splitters;
      const int d = idx / nt / m.num_rus / m.num_splitters;
      for (auto family : v.pruned_by) ev.violations.push_back({v.name, family, {d, s, r, t}, x[i]});
      continue;
    }
    if (x[i] < v.lower - tol || x[i] > v.upper + tol ||
        std::abs(x[i] - std::round(x[i])) > tol)
      ev.bound_violations.push_back(v.name);
  }
  return ev;
}

ImportedSolution import_solution(const MilpModel& m, const std::string& text) {
  ImportedSolution out;
  std::vector<double> x(m.variables.size(), 0.0);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      std::string comment = line.substr(hash + 1);
      std::string lower = comment;
      std::transform(lower.begin(), lower.end(), lower.begin(),
                     [](unsigned char ch) { return std::tolower(ch); });
      const auto pos = lower.find("objective");
      if (pos != std::string::npos) {
        const auto eq = comment.find_first_of("=:", pos);
        const auto start = eq == std::string::npos ? pos + 9 : eq + 1;
        try {
          out.reported_objective = std::stod(comment.substr(start));
        } catch (const std::exception&) {
        }
      }
      line.resize(hash);
    }
    std::istringstream ls(line);
    std::string name;
    if (!(ls >> name)) continue;
    double value = 0.0;
    if (!(ls >> value))
      throw ParseError("line " + std::to_string(lineno) + ": expected '<name> <value>'");
    const int idx = m.find(name);
    if (idx < 0) throw ParseError("line " + std::to_string(lineno) + ": unknown variable " + name);
    const auto& v = m.variables[idx];
    const double rounded = std::round(value);
    if (std::abs(value - rounded) > 1e-6)
      throw IntegralityError(name + " = " + fmt_num(value) + " is not integral");
    if (rounded < 0 || (v.kind == VarKind::Binary && rounded > 1))
      throw IntegralityError(name + " = " + fmt_num(value) + " is outside its domain");
    x[idx] = rounded;
  }

  Solution sol;
  sol.assignment.assign(m.num_rus, std::nullopt);
  sol.du_active.assign(m.num_dus, false);
  sol.du_level.assign(m.num_dus, std::nullopt);
  for (int d = 0; d < m.num_dus; ++d)
    for (int s = 0; s < m.num_splitters; ++s) {
      for (int t : m.types) {
        for (int r = 0; r < m.num_rus; ++r) {
          if (x[m.f(d, s, r, t)] < 0.5) continue;
          if (sol.assignment[r])
            throw ParseError("RU " + std::to_string(r) + " is assigned more than one path");
          sol.assignment[r] = PathChoice{d, s, t};
        }
        const double n = x[m.n(d, s, t)];
        if (n > 0.5) sol.splitter_counts[{d, s, t}] = static_cast<int>(n);
      }
      if (x[m.z(d, s)] > 0.5) sol.feeder[{d, s}] = true;
    }
  for (int d = 0; d < m.num_dus; ++d) {
    sol.du_active[d] = x[m.u(d)] > 0.5;
    for (int k : m.levels) {
      if (x[m.y(d, k)] < 0.5) continue;
      if (sol.du_level[d])
        throw ParseError("DU " + std::to_string(d) + " selects more than one level");
      sol.du_level[d] = k;
    }
  }
  out.solution = std::move(sol);
  return out;
}

}  // namespace ponfh
