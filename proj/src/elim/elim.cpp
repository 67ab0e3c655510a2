#include "octic/elim.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "octic/factor.hpp"

namespace octic {

namespace {

MultiPoly normalized(const MultiPoly& p) {
  if (p.is_zero()) return p;
  return p * p.leading_coefficient().inverse();
}

bool involves(const MultiPoly& p, const std::string& var) {
  return p.has_variable(var) && p.involves(p.var_index(var));
}

// The single variable p depends on, if exactly one.
std::optional<std::size_t> sole_variable(const MultiPoly& p) {
  std::optional<std::size_t> found;
  for (std::size_t i = 0; i < p.nvars(); ++i)
    if (p.involves(i)) {
      if (found) return std::nullopt;
      found = i;
    }
  return found;
}

std::string set_key(const std::vector<MultiPoly>& gens) {
  std::vector<std::string> s;
  for (const auto& g : gens) s.push_back(g.to_string());
  std::sort(s.begin(), s.end());
  std::string key;
  for (const auto& x : s) key += x + ";";
  return key;
}

const FactorFilter* matching_filter(const MultiPoly& f, const std::vector<FactorFilter>& filters) {
  for (const auto& flt : filters)
    if (flt.matches && flt.matches(f)) return &flt;
  return nullptr;
}

std::vector<ResultantFactor> factor_polynomial(MultiPoly r, const std::vector<FactorFilter>& filters,
                                               const ElimBudgets& budgets, ElimLog& log) {
  std::vector<ResultantFactor> out;
  for (const auto& flt : filters)
    for (const auto& d : flt.divisors) {
      if (d.is_constant()) continue;
      while (true) {
        auto q = try_divide(r, d.lift_to(common_field(r.field(), d.field())));
        if (!q) break;
        log.add("filter " + flt.name + " divided out " + d.to_string());
        r = *q;
      }
    }
  // Monomial content.
  for (std::size_t i = 0; i < r.nvars(); ++i) {
    const int k = r.min_degree_in(i);
    if (k <= 0) continue;
    MultiPoly v = MultiPoly::variable(r.variables(), r.field(), i);
    r = divide_exact(r, v.pow(k));
    out.push_back({v, k, true});
  }
  if (!r.is_constant()) {
    if (auto var = sole_variable(r)) {
      FactorOptions fo;
      fo.degree_cap = budgets.degree_cap;
      fo.max_subsets = budgets.max_subsets;
      for (const auto& sf : squarefree_decomposition(to_upoly(r, *var))) {
        const FactorResult fr = factor(sf.factor, fo);
        for (const auto& x : fr.irreducible)
          out.push_back({from_upoly(x.factor, r.variables(), *var), sf.multiplicity * x.multiplicity, true});
        for (const auto& x : fr.unresolved)
          out.push_back({from_upoly(x.factor, r.variables(), *var), sf.multiplicity * x.multiplicity, false});
      }
    } else {
      out.push_back({normalized(r), 1, false});
    }
  }
  return out;
}

}  // namespace

FactorFilter FactorFilter::equals(std::string name, const MultiPoly& p, std::string description) {
  const MultiPoly target = normalized(p);
  FactorFilter f;
  f.name = std::move(name);
  f.description = description.empty() ? "factor equal to " + p.to_string() : std::move(description);
  f.matches = [target](const MultiPoly& x) {
    return x.variables() == target.variables() && normalized(x) == target.lift_to(common_field(x.field(), target.field()));
  };
  f.divisors = {p};
  return f;
}

FactorFilter FactorFilter::monomial(std::string name) {
  FactorFilter f;
  f.name = std::move(name);
  f.description = "factor is a single variable";
  f.matches = [](const MultiPoly& x) { return x.num_terms() == 1 && x.total_degree() == 1; };
  return f;
}

FactorFilter FactorFilter::divides(std::string name, const MultiPoly& p, std::string description) {
  FactorFilter f;
  f.name = std::move(name);
  f.description = description.empty() ? "factor divides " + p.to_string() : std::move(description);
  f.matches = [p](const MultiPoly& x) {
    if (x.is_constant() || x.variables() != p.variables()) return false;
    return try_divide(p.lift_to(common_field(p.field(), x.field())), x).has_value();
  };
  return f;
}

std::string to_string(NodeStatus s) {
  switch (s) {
    case NodeStatus::Open: return "open";
    case NodeStatus::Contradictory: return "contradictory";
    case NodeStatus::SolvedLeaf: return "solved-leaf";
    case NodeStatus::UnresolvedLeaf: return "unresolved-leaf";
    case NodeStatus::Expanded: return "expanded";
    case NodeStatus::Budget: return "budget";
  }
  return "open";
}

std::optional<std::size_t> choose_pivot(const std::vector<MultiPoly>& gens, const std::string& var) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!involves(gens[i], var)) continue;
    if (!best) {
      best = i;
      continue;
    }
    const MultiPoly& a = gens[i];
    const MultiPoly& b = gens[*best];
    const int da = a.degree_in(a.var_index(var)), db = b.degree_in(b.var_index(var));
    if (da < db || (da == db && a.num_terms() < b.num_terms())) best = i;
  }
  return best;
}

std::vector<FactoredResultant> eliminate_step(const EliminationNode& node, std::size_t pivot, const std::string& var,
                                              const std::vector<FactorFilter>& filters, const ElimBudgets& budgets,
                                              ElimLog& log) {
  if (pivot >= node.generators.size() || !involves(node.generators[pivot], var))
    throw ElimError("pivot does not involve " + var);
  const MultiPoly& f0 = node.generators[pivot];
  std::vector<FactoredResultant> out;
  for (std::size_t i = 0; i < node.generators.size(); ++i) {
    if (i == pivot || !involves(node.generators[i], var)) continue;
    FactoredResultant fr;
    fr.with = i;
    fr.resultant = resultant(f0, node.generators[i], var);
    std::ostringstream os;
    os << "node " << node.id << ": Res_" << var << "(g" << pivot << ", g" << i << ")";
    if (fr.resultant.is_zero()) {
      fr.zero = true;
      log.add(os.str() + " = 0 (common factor)");
    } else if (fr.resultant.is_constant()) {
      fr.constant = true;
      log.add(os.str() + " = " + fr.resultant.constant_term().to_string());
    } else {
      fr.factors = factor_polynomial(fr.resultant, filters, budgets, log);
      os << " degree " << fr.resultant.total_degree() << ", " << fr.factors.size() << " factor(s)";
      for (const auto& f : fr.factors)
        if (!f.resolved) os << "; unresolved " << f.poly.to_string();
      log.add(os.str());
    }
    out.push_back(std::move(fr));
  }
  return out;
}

std::vector<EliminationNode> expand_children(const EliminationNode& node, const std::string& var,
                                             const std::vector<FactoredResultant>& results,
                                             const std::vector<FactorFilter>& filters, ElimLog& log) {
  std::vector<MultiPoly> passthrough;
  for (const auto& g : node.generators)
    if (!involves(g, var)) passthrough.push_back(g);

  std::vector<std::vector<MultiPoly>> choices;
  for (const auto& r : results) {
    if (r.constant) {
      log.add("node " + std::to_string(node.id) + ": constant resultant, no common zero");
      return {};
    }
    if (r.zero) continue;
    std::vector<MultiPoly> keep;
    for (const auto& f : r.factors) {
      if (const FactorFilter* flt = matching_filter(f.poly, filters)) {
        log.add("node " + std::to_string(node.id) + ": filter " + flt->name + " removed " + f.poly.to_string());
        continue;
      }
      keep.push_back(normalized(f.poly));
    }
    if (keep.empty()) {
      log.add("node " + std::to_string(node.id) + ": every factor filtered, branch closed");
      return {};
    }
    choices.push_back(std::move(keep));
  }

  std::vector<EliminationNode> children;
  std::set<std::string> seen;
  std::vector<std::size_t> idx(choices.size(), 0);
  for (;;) {
    std::vector<MultiPoly> gens = passthrough;
    for (std::size_t k = 0; k < choices.size(); ++k) {
      const MultiPoly& p = choices[k][idx[k]];
      if (std::find(gens.begin(), gens.end(), p) == gens.end()) gens.push_back(p);
    }
    const std::string key = set_key(gens);
    if (seen.insert(key).second) {
      EliminationNode child;
      child.parent = node.id;
      child.generators = std::move(gens);
      child.history = node.history;
      child.history.push_back(var);
      child.remaining.assign(node.remaining.begin() + 1, node.remaining.end());
      children.push_back(std::move(child));
    }
    std::size_t k = 0;
    while (k < choices.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
    if (k == choices.size()) break;
  }
  return children;
}

std::vector<int> TreeReport::leaves(NodeStatus s) const {
  std::vector<int> out;
  for (const auto& n : nodes)
    if (n.status == s) out.push_back(n.id);
  return out;
}

nlohmann::json TreeReport::to_json() const {
  nlohmann::json j;
  j["status"] = status;
  j["nodes"] = nlohmann::json::array();
  for (const auto& n : nodes) {
    nlohmann::json nj{{"id", n.id}, {"parent", n.parent}, {"status", to_string(n.status)}, {"history", n.history}};
    std::vector<std::string> gens;
    for (const auto& g : n.generators) gens.push_back(g.to_string());
    nj["generators"] = gens;
    if (!n.eliminated.empty()) nj["eliminated"] = n.eliminated;
    if (!n.note.empty()) nj["note"] = n.note;
    if (n.leaf_polynomial) nj["leaf"] = n.leaf_polynomial->to_string(n.leaf_variable);
    j["nodes"].push_back(nj);
  }
  j["log"] = log.lines;
  return j;
}

TreeReport search(const std::vector<MultiPoly>& root_generators, const std::vector<std::string>& order,
                  const std::vector<FactorFilter>& filters, const ElimBudgets& budgets) {
  if (root_generators.empty()) throw ElimError("empty system");
  const auto& vars = root_generators.front().variables();
  for (const auto& g : root_generators)
    if (g.variables() != vars) throw ElimError("generators must share a variable list");
  for (const auto& v : vars)
    if (std::find(order.begin(), order.end(), v) == order.end()) throw ElimError("order does not cover variable " + v);
  for (const auto& v : order)
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) throw ElimError("unknown variable in order: " + v);

  const auto start = std::chrono::steady_clock::now();
  TreeReport tree;
  EliminationNode root;
  for (const auto& g : root_generators)
    if (!g.is_zero()) root.generators.push_back(normalized(g));
  root.remaining = order;
  tree.nodes.push_back(root);
  std::vector<int> stack{0};

  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (static_cast<int>(tree.nodes.size()) > budgets.node_cap || elapsed > budgets.time_cap_seconds) {
      tree.status = static_cast<int>(tree.nodes.size()) > budgets.node_cap ? "budget: node cap" : "budget: time cap";
      tree.nodes[static_cast<std::size_t>(id)].status = NodeStatus::Budget;
      for (int rest : stack) tree.nodes[static_cast<std::size_t>(rest)].status = NodeStatus::Budget;
      break;
    }
    EliminationNode node = tree.nodes[static_cast<std::size_t>(id)];
    auto finish = [&](NodeStatus s, std::string note) {
      node.status = s;
      node.note = std::move(note);
      tree.log.add("node " + std::to_string(id) + ": " + to_string(s) + (node.note.empty() ? "" : " (" + node.note + ")"));
      tree.nodes[static_cast<std::size_t>(id)] = node;
    };

    if (std::any_of(node.generators.begin(), node.generators.end(), [](const MultiPoly& g) { return g.is_constant(); })) {
      finish(NodeStatus::Contradictory, "nonzero constant generator");
      continue;
    }
    if (node.generators.empty()) {
      finish(NodeStatus::UnresolvedLeaf, "underdetermined: no generators left");
      continue;
    }
    if (node.remaining.size() == 1) {
      const std::string& var = node.remaining.front();
      const auto vi = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), var) - vars.begin());
      UPoly g;
      bool first = true;
      for (const auto& p : node.generators) {
        const UPoly u = to_upoly(p, vi);
        g = first ? u.monic() : gcd(g, u);
        first = false;
      }
      node.leaf_variable = var;
      if (g.degree() < 1) {
        finish(NodeStatus::Contradictory, "univariate generators are coprime");
        continue;
      }
      FactorOptions fo;
      fo.degree_cap = budgets.degree_cap;
      fo.max_subsets = budgets.max_subsets;
      const FactorResult fr = factor(g, fo);
      node.leaf_polynomial = g;
      const bool within_cap = std::all_of(fr.irreducible.begin(), fr.irreducible.end(),
                                          [&](const SquarefreeFactor& x) { return x.factor.degree() <= budgets.degree_cap; });
      if (fr.complete() && within_cap)
        finish(NodeStatus::SolvedLeaf, var + ": " + g.to_string(var));
      else
        finish(NodeStatus::UnresolvedLeaf, "factor beyond degree cap in " + g.to_string(var));
      continue;
    }
    const std::string var = node.remaining.front();
    const auto pivot = choose_pivot(node.generators, var);
    if (!pivot) {
      finish(NodeStatus::UnresolvedLeaf, "variable " + var + " is unconstrained");
      continue;
    }
    node.eliminated = var;
    const auto results = eliminate_step(node, *pivot, var, filters, budgets, tree.log);
    auto children = expand_children(node, var, results, filters, tree.log);
    if (children.empty()) {
      finish(NodeStatus::Contradictory, "no surviving resultant factors");
      continue;
    }
    finish(NodeStatus::Expanded, "pivot g" + std::to_string(*pivot) + ", " + std::to_string(children.size()) + " children");
    std::vector<int> ids;
    for (auto& c : children) {
      c.id = static_cast<int>(tree.nodes.size());
      ids.push_back(c.id);
      tree.nodes.push_back(std::move(c));
    }
    // Depth-first, children in creation order.
    for (auto it = ids.rbegin(); it != ids.rend(); ++it) stack.push_back(*it);
  }
  return tree;
}

nlohmann::json SolutionRecord::to_json() const {
  nlohmann::json j;
  j["field"] = field ? field->describe() : "Q";
  j["extensions"] = extensions;
  j["verified"] = verified;
  nlohmann::json vals = nlohmann::json::object();
  for (const auto& [k, v] : values) vals[k] = v.to_string();
  j["values"] = vals;
  return j;
}

namespace {

struct Branch {
  std::map<std::string, FieldElement> values;
  Field field;
  std::vector<std::string> extensions;
};

UPoly specialize(const MultiPoly& g, const Branch& b, std::size_t var) {
  MultiPoly p = g.lift_to(common_field(g.field(), b.field));
  for (const auto& [name, value] : b.values)
    if (p.has_variable(name)) p = p.partial_evaluate(p.var_index(name), value);
  for (std::size_t i = 0; i < p.nvars(); ++i)
    if (i != var && p.involves(i)) throw ElimError("back-substitution left variable " + p.variables()[i] + " unassigned");
  return to_upoly(p, var);
}

// Extends each branch by the roots of `poly` in `var`.
void extend(const std::vector<Branch>& in, const std::string& var,
            const std::function<std::optional<UPoly>(const Branch&, std::string&, bool&)>& poly_for,
            const ElimBudgets& budgets, std::vector<Branch>& out, BackSubstitution& report) {
  auto& unresolved = report.unresolved;
  for (const auto& b : in) {
    std::string why;
    bool empty = false;
    const auto p = poly_for(b, why, empty);
    if (!p) {
      (empty ? report.discarded : unresolved).push_back(why);
      continue;
    }
    FactorOptions fo;
    fo.degree_cap = budgets.degree_cap;
    fo.max_subsets = budgets.max_subsets;
    const FactorResult fr = factor(*p, fo);
    for (const auto& u : fr.unresolved)
      unresolved.push_back(var + ": factor beyond degree cap " + u.factor.to_string(var));
    for (const auto& sf : fr.irreducible) {
      Branch nb = b;
      const UPoly& q = sf.factor;
      if (q.degree() > budgets.degree_cap) {
        unresolved.push_back(var + ": irreducible factor above the degree cap " + q.to_string(var));
        continue;
      }
      if (q.degree() == 1) {
        nb.values.emplace(var, -q.coeff(0));
      } else {
        Field ext;
        try {
          ext = NumberField::create(b.field, var + std::to_string(b.field->depth() + 1), q.coeffs());
        } catch (const FieldError& e) {
          unresolved.push_back(var + ": cannot adjoin a root of " + q.to_string(var) + " (" + e.what() + ")");
          continue;
        }
        for (auto& [k, v] : nb.values) v = v.lift_to(ext);
        nb.field = ext;
        nb.values.emplace(var, ext->generator());
        nb.extensions.push_back(q.to_string(var));
      }
      out.push_back(std::move(nb));
    }
  }
}

}  // namespace

BackSubstitution back_substitute(const TreeReport& tree, int leaf, const ElimBudgets& budgets) {
  const EliminationNode& lnode = tree.nodes.at(static_cast<std::size_t>(leaf));
  if (lnode.status != NodeStatus::SolvedLeaf || !lnode.leaf_polynomial) throw ElimError("node is not a solved leaf");
  BackSubstitution out;
  std::vector<Branch> branches;
  {
    Branch start{{}, lnode.leaf_polynomial->field(), {}};
    const UPoly leaf_poly = *lnode.leaf_polynomial;
    extend({start}, lnode.leaf_variable, [&](const Branch&, std::string&, bool&) { return std::optional<UPoly>(leaf_poly); },
           budgets, branches, out);
  }
  for (int id = lnode.parent; id >= 0; id = tree.nodes[static_cast<std::size_t>(id)].parent) {
    const EliminationNode& node = tree.nodes[static_cast<std::size_t>(id)];
    const std::string& var = node.eliminated;
    const std::size_t vi = node.generators.front().var_index(var);
    std::vector<Branch> next;
    extend(branches, var,
           [&](const Branch& b, std::string& why, bool& empty) -> std::optional<UPoly> {
             UPoly g;
             bool any = false;
             for (const auto& gen : node.generators) {
               const UPoly u = specialize(gen, b, vi);
               if (u.is_zero()) continue;
               if (u.degree() == 0) {
                 why = var + ": inconsistent branch (nonzero constant after substitution)";
                 empty = true;
                 return std::nullopt;
               }
               g = any ? gcd(g, u) : u.monic();
               any = true;
             }
             if (!any) {
               why = var + ": unconstrained after substitution";
               return std::nullopt;
             }
             if (g.degree() < 1) {
               why = var + ": no common root after substitution";
               empty = true;
               return std::nullopt;
             }
             return g;
           },
           budgets, next, out);
    branches = std::move(next);
  }
  const EliminationNode& root = tree.nodes.front();
  for (auto& b : branches) {
    SolutionRecord rec{b.values, b.field, b.extensions, false};
    const auto& vars = root.generators.front().variables();
    std::vector<FieldElement> point;
    for (const auto& v : vars) {
      auto it = b.values.find(v);
      if (it == b.values.end()) throw ElimError("solution misses variable " + v);
      point.push_back(it->second);
    }
    for (const auto& g : root.generators)
      if (!g.lift_to(b.field).evaluate(point).is_zero())
        throw ElimError("solution failed verification against " + g.to_string());
    rec.verified = true;
    out.solutions.push_back(std::move(rec));
  }
  return out;
}

SystemSpec system_from_json(const nlohmann::json& j) {
  SystemSpec s;
  s.variables = j.at("variables").get<std::vector<std::string>>();
  s.field = j.contains("field") ? field_from_json(j.at("field")) : NumberField::rationals();
  for (const auto& g : j.at("generators")) s.generators.push_back(parse_poly(g.get<std::string>(), s.variables, s.field));
  if (j.contains("order"))
    s.order = j.at("order").get<std::vector<std::string>>();
  else
    s.order.assign(s.variables.rbegin(), s.variables.rend());
  if (j.contains("filters"))
    for (const auto& f : j.at("filters")) {
      const std::string type = f.at("type").get<std::string>();
      const std::string name = f.value("name", type);
      if (type == "equals")
        s.filters.push_back(FactorFilter::equals(name, parse_poly(f.at("poly").get<std::string>(), s.variables, s.field),
                                                 f.value("description", "")));
      else if (type == "divides")
        s.filters.push_back(FactorFilter::divides(name, parse_poly(f.at("poly").get<std::string>(), s.variables, s.field),
                                                  f.value("description", "")));
      else if (type == "monomial")
        s.filters.push_back(FactorFilter::monomial(name));
      else
        throw ElimError("unknown filter type '" + type + "'");
    }
  if (j.contains("budgets")) {
    const auto& b = j.at("budgets");
    s.budgets.node_cap = b.value("node_cap", s.budgets.node_cap);
    s.budgets.degree_cap = b.value("degree_cap", s.budgets.degree_cap);
    s.budgets.time_cap_seconds = b.value("time_cap_seconds", s.budgets.time_cap_seconds);
    s.budgets.max_subsets = b.value("max_subsets", s.budgets.max_subsets);
  }
  return s;
}

}  // namespace octic
