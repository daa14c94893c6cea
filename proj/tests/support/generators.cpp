#include "generators.hpp"

namespace beliefbound::testing {

int Gen::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

double Gen::unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }

std::vector<double> Gen::simplex(std::size_t n) {
  std::vector<double> w(n);
  double total = 0.0;
  for (double& v : w) total += v = 0.05 + unit();
  for (double& v : w) v /= total;
  return w;
}

Variable decisions_variable(int k) {
  std::vector<std::string> labels;
  for (int i = 0; i < k; ++i) labels.push_back("d" + std::to_string(i));
  return Variable::labelled("D", labels);
}

namespace {

Variable binary(const std::string& name) { return Variable::numeric(name, {0, 1}); }

ExoDistribution random_exo(Gen& g, const Variable& u) {
  ExoDistribution exo;
  std::vector<double> p = g.simplex(u.domain.size());
  for (std::size_t i = 0; i < p.size(); ++i) exo.atoms.push_back({{{u.name, u.domain[i]}}, p[i], std::nullopt});
  return exo;
}

Variable exo_variable(int atoms) {
  std::vector<int> ids(static_cast<std::size_t>(atoms));
  for (int i = 0; i < atoms; ++i) ids[static_cast<std::size_t>(i)] = i;
  return Variable::numeric("U", ids);
}

Mechanism random_mechanism(Gen& g, const Variable& target, const std::vector<Variable>& parents, const Variable& u) {
  return tabulate(target.name, parents, {u}, [&](const Assignment&) {
    return target.domain[static_cast<std::size_t>(g.integer(0, static_cast<int>(target.domain.size()) - 1))];
  });
}

}  // namespace

Scm random_scm(Gen& g, int endogenous, int exo_atoms) {
  Variable u = exo_variable(exo_atoms);
  std::vector<Variable> vars;
  std::vector<Mechanism> mechs;
  for (int i = 0; i < endogenous; ++i) {
    Variable v = binary("V" + std::to_string(i));
    std::vector<Variable> parents;
    for (const auto& earlier : vars)
      if (g.coin()) parents.push_back(earlier);
    mechs.push_back(random_mechanism(g, v, parents, u));
    vars.push_back(v);
  }
  return Scm(vars, {u}, mechs, random_exo(g, u));
}

Scm random_shift_model(Gen& g, int decisions, int exo_atoms) {
  Variable u = exo_variable(exo_atoms);
  Variable d = decisions_variable(decisions), z = binary("Z"), y = binary("Y");
  std::vector<Mechanism> mechs{Mechanism::constant("D", 0), random_mechanism(g, z, {}, u),
                               random_mechanism(g, y, {d, z}, u)};
  return Scm({d, z, y}, {u}, mechs, random_exo(g, u));
}

Scm random_context_model(Gen& g, int decisions, int exo_atoms) {
  Variable u = exo_variable(exo_atoms);
  Variable d = decisions_variable(decisions), z = binary("Z"), x = binary("X"), y = binary("Y");
  std::vector<Mechanism> mechs{Mechanism::constant("D", 0), random_mechanism(g, z, {}, u),
                               random_mechanism(g, x, {z}, u), random_mechanism(g, y, {d, x, z}, u)};
  return Scm({d, z, x, y}, {u}, mechs, random_exo(g, u));
}

Scm random_confounded_model(Gen& g, int exo_atoms) {
  Variable u = exo_variable(exo_atoms);
  Variable c = binary("C"), d = decisions_variable(2), m = binary("M"), y = binary("Y");
  std::vector<Mechanism> mechs{random_mechanism(g, c, {}, u), random_mechanism(g, d, {c}, u),
                               random_mechanism(g, m, {c, d}, u), random_mechanism(g, y, {c, d, m}, u)};
  return Scm({c, d, m, y}, {u}, mechs, random_exo(g, u));
}

Policy random_policy(Gen& g, const Variable& decision, const std::vector<Variable>& context) {
  Policy pi;
  pi.decision = decision.name;
  for (const auto& v : context) pi.context.push_back(v.name);
  for_each_config(context, [&](const std::vector<int>& values) {
    std::vector<double> p = g.simplex(decision.domain.size());
    for (std::size_t i = 0; i < p.size(); ++i) pi.table[values][decision.domain[i]] = p[i];
  });
  return pi;
}

}  // namespace beliefbound::testing
