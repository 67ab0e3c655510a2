#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "octic/multipoly.hpp"

namespace octic {

struct ElimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A factor is dropped when it matches the rule. Filters never run implicitly; callers list them.
struct FactorFilter {
  std::string name;
  std::string description;
  std::function<bool(const MultiPoly&)> matches;
  // Known degenerate polynomials divided out of every resultant before factoring.
  std::vector<MultiPoly> divisors;

  // Factor equal, up to a scalar, to the given polynomial (e.g. a vanishing leading coefficient).
  static FactorFilter equals(std::string name, const MultiPoly& p, std::string description = {});
  // Factor consisting of a single variable.
  static FactorFilter monomial(std::string name = "monomial");
  // Factor dividing the given polynomial (e.g. a point-collision discriminant).
  static FactorFilter divides(std::string name, const MultiPoly& p, std::string description = {});
};

struct ResultantFactor {
  MultiPoly poly;  // normalized: leading coefficient one
  int multiplicity = 1;
  bool resolved = true;  // false: beyond the degree cap or multivariate and unsplit
};

struct FactoredResultant {
  std::size_t with;  // index of the other generator
  MultiPoly resultant;
  bool zero = false;      // pivot and generator share a factor involving the variable
  bool constant = false;  // nonzero constant: no common zero
  std::vector<ResultantFactor> factors;
};

enum class NodeStatus { Open, Contradictory, SolvedLeaf, UnresolvedLeaf, Expanded, Budget };
std::string to_string(NodeStatus s);

struct EliminationNode {
  int id = 0;
  int parent = -1;
  std::vector<MultiPoly> generators;
  std::vector<std::string> history;    // variables eliminated on the path from the root
  std::vector<std::string> remaining;  // elimination order still to process
  std::string eliminated;              // variable eliminated at this node when expanded
  NodeStatus status = NodeStatus::Open;
  std::string note;
  std::optional<UPoly> leaf_polynomial;  // solved leaves: gcd of the univariate generators
  std::string leaf_variable;
};

struct ElimLog {
  std::vector<std::string> lines;
  void add(std::string s) { lines.push_back(std::move(s)); }
};

struct ElimBudgets {
  int node_cap = 2000;
  int degree_cap = 4;
  double time_cap_seconds = 600;
  long max_subsets = 200000;
};

// Lowest positive degree in `var`, ties by term count, then by position.
std::optional<std::size_t> choose_pivot(const std::vector<MultiPoly>& gens, const std::string& var);

std::vector<FactoredResultant> eliminate_step(const EliminationNode& node, std::size_t pivot, const std::string& var,
                                              const std::vector<FactorFilter>& filters, const ElimBudgets& budgets,
                                              ElimLog& log);

std::vector<EliminationNode> expand_children(const EliminationNode& node, const std::string& var,
                                             const std::vector<FactoredResultant>& results,
                                             const std::vector<FactorFilter>& filters, ElimLog& log);

struct TreeReport {
  std::vector<EliminationNode> nodes;
  ElimLog log;
  std::string status = "complete";  // or "budget: ..."
  std::vector<int> leaves(NodeStatus s) const;
  nlohmann::json to_json() const;
};

TreeReport search(const std::vector<MultiPoly>& root_generators, const std::vector<std::string>& order,
                  const std::vector<FactorFilter>& filters, const ElimBudgets& budgets = {});

struct SolutionRecord {
  std::map<std::string, FieldElement> values;
  Field field = nullptr;
  std::vector<std::string> extensions;  // minimal polynomials adjoined, outermost last
  bool verified = false;
  nlohmann::json to_json() const;
};

struct BackSubstitution {
  std::vector<SolutionRecord> solutions;
  std::vector<std::string> unresolved;  // branches stopped by the degree cap or the tower depth
  std::vector<std::string> discarded;   // branches with no common root: spurious resultant factors
};

// Throws ElimError when an emitted solution fails verification against the root generators.
BackSubstitution back_substitute(const TreeReport& tree, int leaf, const ElimBudgets& budgets = {});

// System document: {"variables", "field", "generators", "order", "filters", "budgets"}.
struct SystemSpec {
  std::vector<std::string> variables;
  Field field = nullptr;
  std::vector<MultiPoly> generators;
  std::vector<std::string> order;
  std::vector<FactorFilter> filters;
  ElimBudgets budgets;
};
SystemSpec system_from_json(const nlohmann::json& j);

}  // namespace octic
