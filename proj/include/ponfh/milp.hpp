#pragma once

// Exact mixed-integer model of the fronthaul design problem, LP-format export
// and solution import for external solvers.

#include "ponfh/costing.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace ponfh {

enum class VarKind { Binary, Integer };
enum class Sense { LessEqual, Equal };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Binary;
  double lower = 0.0;
  double upper = 1.0;
  // Non-empty when presolve fixed the variable to 0: the constraints the
  // encoded path breaks (latency, loss or both).
  std::vector<Constraint> pruned_by;
  bool pruned() const { return !pruned_by.empty(); }
};

struct Term {
  int var = 0;
  double coef = 0.0;
};

struct Row {
  std::string name;
  Constraint family;
  std::vector<int> indices;
  std::vector<Term> terms;
  Sense sense = Sense::LessEqual;
  double rhs = 0.0;
};

class MilpModel {
 public:
  std::vector<Variable> variables;
  std::vector<Term> objective;
  std::vector<Row> rows;

  int num_dus = 0, num_splitters = 0, num_rus = 0;
  std::vector<int> types;   // splitter types t
  std::vector<int> levels;  // DU levels k
  int big_m = 0;

  int f(int d, int s, int r, int t) const;
  int n(int d, int s, int t) const;
  int z(int d, int s) const;
  int u(int d) const;
  int y(int d, int k) const;

  int find(const std::string& name) const;  // -1 if absent
  std::size_t num_pruned() const;

 private:
  friend MilpModel build_model(const Problem&, std::size_t);
  int type_pos(int t) const { return t - types.front(); }
  int level_pos(int k) const;
  int f_base_ = 0, n_base_ = 0, z_base_ = 0, u_base_ = 0, y_base_ = 0;
  std::vector<std::pair<std::string, int>> by_name_;  // sorted
};

constexpr std::size_t kDefaultVariableBudget = 20'000'000;

MilpModel build_model(const Problem& problem,
                      std::size_t variable_budget = kDefaultVariableBudget);

std::string export_lp(const MilpModel& model);

// Variable vector induced by a solution.
std::vector<double> to_values(const MilpModel& model, const Solution& sol);

struct RowViolation {
  std::string name;
  Constraint family;
  std::vector<int> indices;
  double magnitude = 0.0;
};

struct ModelEvaluation {
  double objective = 0.0;
  std::vector<RowViolation> violations;  // rows and presolve bounds
  std::vector<std::string> bound_violations;  // other bounds and integrality
};

ModelEvaluation evaluate(const MilpModel& model, const std::vector<double>& values);

class IntegralityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ImportedSolution {
  Solution solution;
  std::optional<double> reported_objective;
};

// Reads "name value" lines; '#' starts a comment. A comment of the form
// "# Objective value = X" records the solver's objective. Omitted variables
// are zero.
ImportedSolution import_solution(const MilpModel& model, const std::string& solver_output);

}  // namespace ponfh
