#include "fixtures.hpp"

#include "beliefbound/io.hpp"

namespace beliefbound::testing {

Variable decision_variable() { return Variable::labelled("D", {"d0", "d1"}); }
Variable binary(const std::string& name) { return Variable::numeric(name, {0, 1}); }

int medai_y(int d, int z, int u, bool alternative) {
  if (!alternative) {
    if (d == 0) return z ? u == 4 : (u == 1 || u == 3 || u == 4);
    return z ? u != 2 : (u == 2 || u == 4);
  }
  if (d == 0) return z ? u != 1 : (u == 3 || u == 4);
  return z ? (u == 1 || u == 4) : (u == 1 || u == 2);
}

Scm medai_model(bool alternative) {
  Variable d = decision_variable(), z = binary("Z"), y = binary("Y");
  Variable u = Variable::numeric("U", {1, 2, 3, 4, 5});
  ExoDistribution exo;
  for (int v : u.domain) exo.atoms.push_back({{{"U", v}}, 0.2, Rational(1, 5)});
  Mechanism md = Mechanism::constant("D", 0);
  Mechanism mz = tabulate("Z", {}, {u}, [](const Assignment& a) {
    const int v = a.at("U");
    return static_cast<int>(v == 1 || v == 4);
  });
  Mechanism my = tabulate("Y", {d, z}, {u}, [alternative](const Assignment& a) {
    return medai_y(a.at("D"), a.at("Z"), a.at("U"), alternative);
  });
  return Scm({d, z, y}, {u}, {md, mz, my}, exo);
}

const std::array<MappingRow, 5>& mapping_rows() {
  static const std::array<MappingRow, 5> rows{{
      {1, {1, 1}, {0, 1}, 0.2},
      {2, {0, 0}, {0, 1}, 0.2},
      {3, {0, 0}, {1, 0}, 0.2},
      {4, {1, 1}, {1, 1}, 0.2},
      {5, {0, 0}, {0, 0}, 0.2},
  }};
  return rows;
}

DistTable yz_table(const std::vector<std::tuple<int, int, double>>& cells) {
  std::vector<std::pair<Assignment, double>> entries;
  for (const auto& [y, z, p] : cells) entries.push_back({{{"Y", y}, {"Z", z}}, p});
  return DistTable({binary("Y"), binary("Z")}, entries);
}

BehaviouralDataset medai_data() {
  BehaviouralDataset data;
  data.decision = decision_variable();
  data.per_decision[0] = yz_table({{0, 1, 0.2}, {0, 0, 0.4}, {1, 0, 0.2}, {1, 1, 0.2}});
  data.per_decision[1] = yz_table({{1, 1, 0.4}, {1, 0, 0.2}, {0, 0, 0.4}});
  return data;
}

BehaviouralDataset medai_experiment_data() {
  BehaviouralDataset data = medai_data();
  ExperimentalDomain dom;
  dom.label = "do(Z=1)";
  dom.intervened = {{"Z", 1}};
  dom.per_decision[0] = yz_table({{1, 1, 0.2}, {0, 1, 0.8}});
  dom.per_decision[1] = yz_table({{1, 1, 0.8}, {0, 1, 0.2}});
  data.domains.push_back(dom);
  return data;
}

BehaviouralDataset uniform_data() {
  BehaviouralDataset data;
  data.decision = decision_variable();
  for (int d : {0, 1}) data.per_decision[d] = yz_table({{0, 0, 0.25}, {0, 1, 0.25}, {1, 0, 0.25}, {1, 1, 0.25}});
  return data;
}

Scm medai_with_covariate_model() {
  Scm base = medai_model();
  Variable u = base.exogenous().front();
  std::vector<Variable> endo = base.endogenous();
  endo.push_back(binary("W"));
  std::vector<Mechanism> mechs = base.mechanisms();
  mechs.push_back(tabulate("W", {}, {u}, [](const Assignment& a) {
    const int v = a.at("U");
    return static_cast<int>(v == 1 || v == 2);
  }));
  return Scm(endo, base.exogenous(), mechs, base.exo());
}

BehaviouralDataset medai_with_covariate_data() { return dataset_from_scm(medai_with_covariate_model(), "D", "Y"); }

}  // namespace beliefbound::testing
