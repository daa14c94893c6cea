#include "beliefbound/dist_table.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace beliefbound {

namespace {

void check_probability(double p) {
  if (!std::isfinite(p) || p < 0.0) fail(ErrorKind::Input, "probability must be finite and non-negative");
}

}  // namespace

DistTable::DistTable(std::vector<Variable> scope, const std::map<Key, double>& entries) {
  std::set<std::string> names;
  for (const auto& v : scope) {
    v.validate();
    if (!names.insert(v.name).second) fail(ErrorKind::Input, "variable " + v.name + " repeated in scope");
  }
  std::vector<std::size_t> order(scope.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return scope[a].name < scope[b].name; });
  for (auto i : order) scope_.push_back(scope[i]);

  double total = 0.0;
  for (const auto& [key, p] : entries) {
    if (key.size() != scope.size()) fail(ErrorKind::Input, "table entry does not match scope width");
    check_probability(p);
    Key canon(key.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      int value = key[order[i]];
      if (!scope_[i].contains(value))
        fail(ErrorKind::Input, "value " + std::to_string(value) + " outside domain of " + scope_[i].name);
      canon[i] = value;
    }
    total += p;
    if (p > 0.0) entries_[canon] += p;
  }
  if (std::abs(total - 1.0) > kNormTolerance)
    fail(ErrorKind::Input, "table probabilities sum to " + std::to_string(total) + ", not 1");
}

DistTable::DistTable(std::vector<Variable> scope, const std::vector<std::pair<Assignment, double>>& entries)
    : DistTable(scope, [&] {
        std::map<Key, double> keyed;
        for (const auto& [a, p] : entries) {
          if (a.size() != scope.size()) fail(ErrorKind::Input, "assignment " + to_string(a) + " does not cover scope");
          Key key;
          for (const auto& v : scope) {
            auto it = a.find(v.name);
            if (it == a.end()) fail(ErrorKind::Input, "assignment " + to_string(a) + " misses " + v.name);
            key.push_back(it->second);
          }
          if (!keyed.emplace(key, p).second) fail(ErrorKind::Input, "assignment " + to_string(a) + " listed twice");
        }
        return keyed;
      }()) {}

std::vector<std::string> DistTable::names() const {
  std::vector<std::string> out;
  for (const auto& v : scope_) out.push_back(v.name);
  return out;
}

bool DistTable::has(const std::string& name) const {
  return std::any_of(scope_.begin(), scope_.end(), [&](const Variable& v) { return v.name == name; });
}

std::size_t DistTable::position(const std::string& name) const {
  for (std::size_t i = 0; i < scope_.size(); ++i)
    if (scope_[i].name == name) return i;
  fail(ErrorKind::Input, "variable " + name + " not in table scope");
}

bool DistTable::matches(const Key& key, const Assignment& event) const {
  for (const auto& [name, value] : event)
    if (key[position(name)] != value) return false;
  return true;
}

Assignment DistTable::assignment(const Key& key) const {
  Assignment a;
  for (std::size_t i = 0; i < scope_.size(); ++i) a[scope_[i].name] = key[i];
  return a;
}

double DistTable::probability(const Assignment& event) const {
  for (const auto& [name, value] : event) position(name);
  double mass = 0.0;
  for (const auto& [key, p] : entries_)
    if (matches(key, event)) mass += p;
  return mass;
}

double DistTable::weighted_mass(const std::string& of, const Assignment& event) const {
  std::size_t pos = position(of);
  if (scope_[pos].is_labelled()) fail(ErrorKind::Input, "variable " + of + " is not numeric");
  for (const auto& [name, value] : event) position(name);
  double mass = 0.0;
  for (const auto& [key, p] : entries_)
    if (matches(key, event)) mass += key[pos] * p;
  return mass;
}

DistTable DistTable::marginal(const std::vector<std::string>& vars) const { return query(*this, vars, {}); }

DistTable query(const DistTable& t, const std::vector<std::string>& target, const Assignment& given) {
  std::vector<Variable> scope;
  for (const auto& name : target) scope.push_back(t.variable(name));
  double mass = t.probability(given);
  if (!(mass > 0.0)) fail(ErrorKind::Domain, "conditioning event " + to_string(given) + " has zero probability");

  std::map<DistTable::Key, double> out;
  for (const auto& [key, p] : t.entries()) {
    Assignment a = t.assignment(key);
    if (!agrees(a, given)) continue;
    DistTable::Key sub;
    for (const auto& name : target) sub.push_back(a.at(name));
    out[sub] += p;
  }
  if (!given.empty())
    for (auto& [key, p] : out) p /= mass;
  return DistTable(scope, out);
}

double expectation(const DistTable& t, const std::string& of, const Assignment& given) {
  const Variable& var = t.variable(of);
  if (var.is_labelled()) fail(ErrorKind::Input, "variable " + of + " is not numeric");
  DistTable q = query(t, {of}, given);
  double e = 0.0;
  for (int value : var.domain) {
    auto it = q.entries().find({value});
    if (it != q.entries().end()) e += value * it->second;
  }
  return e;
}

double total_variation(const DistTable& p, const DistTable& q) {
  if (p.scope() != q.scope()) fail(ErrorKind::Input, "total variation needs identical scopes");
  double sum = 0.0;
  for (const auto& [key, pv] : p.entries()) {
    auto it = q.entries().find(key);
    sum += std::abs(pv - (it == q.entries().end() ? 0.0 : it->second));
  }
  for (const auto& [key, qv] : q.entries())
    if (!p.entries().count(key)) sum += qv;
  return std::clamp(0.5 * sum, 0.0, 1.0);
}

DistTable estimate_from_samples(const std::vector<WeightedRow>& rows, const std::vector<Variable>& domains) {
  if (rows.empty()) fail(ErrorKind::Input, "no sample rows");
  std::vector<std::string> names;
  for (const auto& [name, value] : rows.front().values) names.push_back(name);

  std::map<std::string, std::set<int>> seen;
  double total = 0.0;
  for (const auto& row : rows) {
    if (row.values.size() != names.size())
      fail(ErrorKind::Input, "sample rows assign different variable sets");
    for (const auto& name : names) {
      auto it = row.values.find(name);
      if (it == row.values.end()) fail(ErrorKind::Input, "sample row misses " + name);
      seen[name].insert(it->second);
    }
    if (!std::isfinite(row.weight) || row.weight < 0.0) fail(ErrorKind::Input, "sample weights must be non-negative");
    total += row.weight;
  }
  if (!(total > 0.0)) fail(ErrorKind::Input, "sample weights are all zero");

  std::vector<Variable> scope;
  for (const auto& name : names) {
    auto it = std::find_if(domains.begin(), domains.end(), [&](const Variable& v) { return v.name == name; });
    if (it != domains.end()) {
      scope.push_back(*it);
    } else {
      scope.push_back(Variable::numeric(name, {seen[name].begin(), seen[name].end()}));
    }
  }
  std::map<DistTable::Key, double> weights;
  for (const auto& row : rows) {
    DistTable::Key key;
    for (const auto& name : names) key.push_back(row.values.at(name));
    weights[key] += row.weight;
  }
  for (auto& [key, w] : weights) w /= total;
  return DistTable(scope, weights);
}

double Policy::prob(const Assignment& ctx, int d) const {
  std::vector<int> key;
  for (const auto& name : context) {
    auto it = ctx.find(name);
    if (it == ctx.end()) fail(ErrorKind::Input, "policy context misses " + name);
    key.push_back(it->second);
  }
  auto row = table.find(key);
  if (row == table.end()) return 0.0;
  auto cell = row->second.find(d);
  return cell == row->second.end() ? 0.0 : cell->second;
}

void Policy::validate() const {
  for (const auto& [key, row] : table) {
    if (key.size() != context.size()) fail(ErrorKind::Input, "policy row does not match context width");
    double sum = 0.0;
    for (const auto& [d, p] : row) {
      check_probability(p);
      sum += p;
    }
    if (std::abs(sum - 1.0) > kNormTolerance) fail(ErrorKind::Input, "policy row does not sum to 1");
  }
}

Policy empirical_policy(const DistTable& p_pi, const std::string& decision, const std::vector<std::string>& context) {
  Policy pi{decision, context, {}};
  std::vector<Variable> ctx_vars;
  for (const auto& name : context) ctx_vars.push_back(p_pi.variable(name));
  const Variable& dvar = p_pi.variable(decision);
  for_each_config(ctx_vars, [&](const std::vector<int>& values) {
    Assignment c;
    for (std::size_t i = 0; i < context.size(); ++i) c[context[i]] = values[i];
    double pc = p_pi.probability(c);
    if (!(pc > 0.0)) return;
    auto& row = pi.table[values];
    for (int d : dvar.domain) {
      Assignment dc = c;
      dc[decision] = d;
      row[d] = p_pi.probability(dc) / pc;
    }
  });
  return pi;
}

DistTable policy_to_atomic(const DistTable& p_pi, const Policy& pi, int d) {
  pi.validate();
  const Variable& dvar = p_pi.variable(pi.decision);
  if (!dvar.contains(d)) fail(ErrorKind::Input, "decision value outside domain of " + pi.decision);
  std::vector<Variable> ctx_vars;
  for (const auto& name : pi.context) {
    if (name == pi.decision) fail(ErrorKind::Input, "policy context contains the decision");
    ctx_vars.push_back(p_pi.variable(name));
  }

  // Mass of each context and of (d, context); positivity is checked per context.
  std::map<std::vector<int>, double> p_c, p_dc;
  for_each_config(ctx_vars, [&](const std::vector<int>& values) {
    Assignment c;
    for (std::size_t i = 0; i < values.size(); ++i) c[pi.context[i]] = values[i];
    double pc = p_pi.probability(c);
    if (!(pc > 0.0)) return;
    c[pi.decision] = d;
    double pdc = p_pi.probability(c);
    if (!(pdc > 0.0) || !(pi.prob(c, d) > 0.0))
      fail(ErrorKind::Domain, "decision " + dvar.format(d) + " never taken in context " + to_string(c) +
                                  "; positivity fails");
    p_c[values] = pc;
    p_dc[values] = pdc;
  });

  std::vector<Variable> scope;
  for (const auto& v : p_pi.scope())
    if (v.name != pi.decision) scope.push_back(v);
  std::map<DistTable::Key, double> out;
  for (const auto& [key, p] : p_pi.entries()) {
    Assignment a = p_pi.assignment(key);
    if (a.at(pi.decision) != d) continue;
    std::vector<int> ctx;
    for (const auto& name : pi.context) ctx.push_back(a.at(name));
    DistTable::Key sub;
    for (const auto& v : scope) sub.push_back(a.at(v.name));
    out[sub] += p / p_dc.at(ctx) * p_c.at(ctx);
  }
  return DistTable(scope, out);
}

std::vector<int> BehaviouralDataset::decisions() const {
  std::vector<int> out;
  for (const auto& [d, t] : per_decision) out.push_back(d);
  return out;
}

const DistTable& BehaviouralDataset::table(int d) const {
  auto it = per_decision.find(d);
  if (it == per_decision.end()) fail(ErrorKind::Input, "no data for decision " + decision.format(d));
  return it->second;
}

void BehaviouralDataset::validate() const {
  decision.validate();
  if (per_decision.empty()) fail(ErrorKind::Input, "dataset has no per-decision tables");
  const auto& scope = per_decision.begin()->second.scope();
  for (const auto& [d, t] : per_decision) {
    if (!decision.contains(d)) fail(ErrorKind::Input, "decision value outside domain");
    if (t.scope() != scope) fail(ErrorKind::Input, "per-decision tables disagree on scope");
  }
  const DistTable& first = per_decision.begin()->second;
  if (first.has(decision.name)) fail(ErrorKind::Input, "per-decision tables must not contain the decision");
  if (!first.has(utility)) fail(ErrorKind::Input, "utility " + utility + " missing from tables");
  for (const auto& dom : domains) {
    for (const auto& [name, value] : dom.intervened)
      if (!first.variable(name).contains(value))
        fail(ErrorKind::Input, "intervened value outside domain of " + name);
    for (const auto& [d, t] : dom.per_decision) {
      if (!decision.contains(d)) fail(ErrorKind::Input, "decision value outside domain");
      for (const auto& v : t.scope())
        if (!first.has(v.name) || first.variable(v.name) != v)
          fail(ErrorKind::Input, "domain " + dom.label + " table has a foreign variable " + v.name);
    }
  }
}

}  // namespace beliefbound
