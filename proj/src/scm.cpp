#include "beliefbound/scm.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace beliefbound {

Mechanism Mechanism::constant(std::string target, int value) {
  Mechanism m;
  m.target = std::move(target);
  m.table[{}] = value;
  return m;
}

Mechanism tabulate(std::string target, const std::vector<Variable>& parents, const std::vector<Variable>& exo_parents,
                   const std::function<int(const Assignment&)>& fn) {
  Mechanism m;
  m.target = std::move(target);
  std::vector<Variable> inputs = parents;
  inputs.insert(inputs.end(), exo_parents.begin(), exo_parents.end());
  for (const auto& v : parents) m.parents.push_back(v.name);
  for (const auto& v : exo_parents) m.exo_parents.push_back(v.name);
  for_each_config(inputs, [&](const std::vector<int>& values) {
    Assignment a;
    for (std::size_t i = 0; i < inputs.size(); ++i) a[inputs[i].name] = values[i];
    m.table[values] = fn(a);
  });
  return m;
}

Scm::Scm(std::vector<Variable> endogenous, std::vector<Variable> exogenous, std::vector<Mechanism> mechanisms,
         ExoDistribution exo)
    : endogenous_(std::move(endogenous)), exogenous_(std::move(exogenous)), exo_(std::move(exo)) {
  std::set<std::string> names;
  for (const auto* list : {&endogenous_, &exogenous_})
    for (const auto& v : *list) {
      v.validate();
      if (!names.insert(v.name).second) fail(ErrorKind::Input, "variable " + v.name + " declared twice");
    }

  // Mechanisms are stored in endogenous declaration order.
  for (const auto& v : endogenous_) {
    auto it = std::find_if(mechanisms.begin(), mechanisms.end(), [&](const Mechanism& m) { return m.target == v.name; });
    if (it == mechanisms.end()) fail(ErrorKind::Model, "no mechanism for " + v.name);
    mechanisms_.push_back(*it);
  }
  if (mechanisms.size() != endogenous_.size()) fail(ErrorKind::Model, "mechanisms do not match endogenous variables");

  for (const auto& m : mechanisms_) {
    std::vector<Variable> inputs;
    std::set<std::string> seen;
    for (const auto& p : m.parents) {
      if (!seen.insert(p).second) fail(ErrorKind::Input, "mechanism for " + m.target + " repeats parent " + p);
      inputs.push_back(find_variable(endogenous_, p));
    }
    for (const auto& p : m.exo_parents) {
      if (!seen.insert(p).second) fail(ErrorKind::Input, "mechanism for " + m.target + " repeats parent " + p);
      inputs.push_back(find_variable(exogenous_, p));
    }
    const Variable& target = find_variable(endogenous_, m.target);
    std::size_t expected = 0;
    for_each_config(inputs, [&](const std::vector<int>& values) {
      auto it = m.table.find(values);
      if (it == m.table.end()) fail(ErrorKind::Model, "mechanism for " + m.target + " is not total");
      if (!target.contains(it->second))
        fail(ErrorKind::Model, "mechanism for " + m.target + " outputs a value outside its domain");
      ++expected;
    });
    if (m.table.size() != expected) fail(ErrorKind::Model, "mechanism for " + m.target + " has stray entries");
  }

  if (exo_.atoms.empty() && exogenous_.empty()) exo_.atoms.push_back({{}, 1.0, Rational(1)});
  std::set<Assignment> distinct;
  double total = 0.0;
  for (const auto& atom : exo_.atoms) {
    if (atom.values.size() != exogenous_.size()) fail(ErrorKind::Input, "exogenous atom does not assign every variable");
    for (const auto& v : exogenous_) {
      auto it = atom.values.find(v.name);
      if (it == atom.values.end()) fail(ErrorKind::Input, "exogenous atom misses " + v.name);
      if (!v.contains(it->second)) fail(ErrorKind::Input, "exogenous value outside domain of " + v.name);
    }
    if (!std::isfinite(atom.p) || atom.p < 0.0 || atom.p > 1.0)
      fail(ErrorKind::Input, "exogenous probability outside [0,1]");
    if (!distinct.insert(atom.values).second) fail(ErrorKind::Input, "exogenous atom listed twice");
    total += atom.p;
  }
  if (std::abs(total - 1.0) > kNormTolerance)
    fail(ErrorKind::Input, "exogenous probabilities sum to " + std::to_string(total) + ", not 1");

  // Kahn's algorithm, always releasing the earliest declared ready variable.
  std::vector<bool> placed(mechanisms_.size(), false);
  while (order_.size() < mechanisms_.size()) {
    bool progressed = false;
    for (std::size_t i = 0; i < mechanisms_.size(); ++i) {
      if (placed[i]) continue;
      bool ready = std::all_of(mechanisms_[i].parents.begin(), mechanisms_[i].parents.end(), [&](const std::string& p) {
        for (std::size_t j = 0; j < mechanisms_.size(); ++j)
          if (mechanisms_[j].target == p) return static_cast<bool>(placed[j]);
        return false;
      });
      if (ready) {
        placed[i] = true;
        order_.push_back(i);
        progressed = true;
        break;
      }
    }
    if (!progressed) fail(ErrorKind::Model, "mechanisms form a cycle");
  }
}

const Mechanism& Scm::mechanism(const std::string& target) const {
  for (const auto& m : mechanisms_)
    if (m.target == target) return m;
  fail(ErrorKind::Input, "unknown variable " + target);
}

bool Scm::has(const std::string& name) const {
  return std::any_of(endogenous_.begin(), endogenous_.end(), [&](const Variable& v) { return v.name == name; });
}

Assignment evaluate(const Scm& scm, const Assignment& u) {
  for (const auto& v : scm.exogenous()) {
    auto it = u.find(v.name);
    if (it == u.end()) fail(ErrorKind::Input, "missing exogenous value for " + v.name);
    if (!v.contains(it->second)) fail(ErrorKind::Input, "exogenous value outside domain of " + v.name);
  }
  Assignment out;
  std::vector<int> key;
  for (std::size_t i : scm.order()) {
    const Mechanism& m = scm.mechanisms()[i];
    key.clear();
    for (const auto& p : m.parents) key.push_back(out.at(p));
    for (const auto& p : m.exo_parents) key.push_back(u.at(p));
    out[m.target] = m.table.at(key);
  }
  return out;
}

Scm submodel(const Scm& scm, const Intervention& iv) {
  std::vector<Mechanism> mechs = scm.mechanisms();
  for (const auto& [name, value] : iv) {
    const Variable& v = scm.variable(name);
    if (!v.contains(value)) fail(ErrorKind::Input, "intervention value outside domain of " + name);
    for (auto& m : mechs)
      if (m.target == name) m = Mechanism::constant(name, value);
  }
  return Scm(scm.endogenous(), scm.exogenous(), std::move(mechs), scm.exo());
}

Scm apply_shift(const Scm& scm, const Shift& sh) {
  if (sh.targets.empty()) return scm;
  std::vector<Mechanism> mechs = scm.mechanisms();
  for (const auto& target : sh.targets) {
    scm.variable(target);
    auto it = sh.replacements.find(target);
    if (it == sh.replacements.end())
      fail(ErrorKind::Unsupported, "shift on " + target + " has no replacement mechanism");
    if (it->second.target != target) fail(ErrorKind::Input, "replacement mechanism targets the wrong variable");
    for (auto& m : mechs)
      if (m.target == target) m = it->second;
  }

  std::vector<Variable> exogenous = scm.exogenous();
  ExoDistribution exo = scm.exo();
  if (!sh.new_exogenous.empty()) {
    exogenous.insert(exogenous.end(), sh.new_exogenous.begin(), sh.new_exogenous.end());
    exo.atoms.clear();
    for (const auto& a : scm.exo().atoms)
      for (const auto& b : sh.new_exo.atoms) {
        ExoAtom atom;
        atom.values = merge(a.values, b.values);
        atom.p = a.p * b.p;
        if (a.exact && b.exact) atom.exact = *a.exact * *b.exact;
        exo.atoms.push_back(std::move(atom));
      }
  }
  return Scm(scm.endogenous(), std::move(exogenous), std::move(mechs), std::move(exo));
}

DistTable joint_distribution(const Scm& scm) {
  std::map<DistTable::Key, double> cells;
  for (const auto& atom : scm.exo().atoms) {
    if (atom.p == 0.0) continue;
    Assignment v = evaluate(scm, atom.values);
    DistTable::Key key;
    for (const auto& var : scm.endogenous()) key.push_back(v.at(var.name));
    cells[key] += atom.p;
  }
  return DistTable(scm.endogenous(), cells);
}

std::map<Assignment, Rational> joint_distribution_exact(const Scm& scm) {
  std::map<Assignment, Rational> out;
  for (const auto& atom : scm.exo().atoms) {
    if (!atom.exact) fail(ErrorKind::Unsupported, "exogenous atom lacks an exact probability");
    if (atom.exact->num() == 0) continue;
    out[evaluate(scm, atom.values)] += *atom.exact;
  }
  return out;
}

double counterfactual_probability(const Scm& scm, const std::vector<CounterfactualEvent>& events) {
  std::vector<Scm> worlds;
  for (const auto& e : events) {
    for (const auto& [name, value] : e.outcome) scm.variable(name);
    worlds.push_back(submodel(scm, e.iv));
  }
  double total = 0.0, mass = 0.0;
  for (const auto& atom : scm.exo().atoms) {
    mass += atom.p;
    bool all = true;
    for (std::size_t i = 0; i < events.size() && all; ++i) all = agrees(evaluate(worlds[i], atom.values), events[i].outcome);
    if (all) total += atom.p;
  }
  return total == mass ? 1.0 : total / mass;
}

Scm with_policy(const Scm& scm, const Policy& pi) {
  pi.validate();
  const Variable& dvar = scm.variable(pi.decision);
  std::vector<Variable> ctx;
  for (const auto& name : pi.context) ctx.push_back(scm.variable(name));

  std::vector<std::vector<int>> configs;
  for_each_config(ctx, [&](const std::vector<int>& values) { configs.push_back(values); });
  const std::size_t base = dvar.domain.size();
  double count = std::pow(static_cast<double>(base), static_cast<double>(configs.size()));
  if (count > 1e6) fail(ErrorKind::Unsupported, "policy has too many response functions");
  const auto n = static_cast<std::size_t>(count);

  // Response function r sends context config k to digit k of r in base |D|.
  auto digit = [&](std::size_t r, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) r /= base;
    return dvar.domain[r % base];
  };
  std::vector<int> ids(n);
  for (std::size_t r = 0; r < n; ++r) ids[r] = static_cast<int>(r);
  Variable noise = Variable::numeric("pi_" + pi.decision, ids);

  Shift sh;
  sh.targets = {pi.decision};
  sh.new_exogenous = {noise};
  double total = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    double p = 1.0;
    for (std::size_t k = 0; k < configs.size(); ++k) {
      auto row = pi.table.find(configs[k]);
      if (row == pi.table.end()) fail(ErrorKind::Input, "policy has no row for a context configuration");
      auto cell = row->second.find(digit(r, k));
      p *= cell == row->second.end() ? 0.0 : cell->second;
    }
    if (p > 0.0) {
      sh.new_exo.atoms.push_back({{{noise.name, static_cast<int>(r)}}, p, std::nullopt});
      total += p;
    }
  }
  for (auto& atom : sh.new_exo.atoms) atom.p /= total;

  Mechanism m;
  m.target = pi.decision;
  m.parents = pi.context;
  m.exo_parents = {noise.name};
  for (std::size_t k = 0; k < configs.size(); ++k)
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<int> key = configs[k];
      key.push_back(static_cast<int>(r));
      m.table[key] = digit(r, k);
    }
  sh.replacements[pi.decision] = m;
  return apply_shift(scm, sh);
}

}  // namespace beliefbound
