#include "beliefbound/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace beliefbound {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::Input, where + " lacks \"" + key + "\"");
  return j.at(key);
}

std::string text(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(ErrorKind::Input, where + " must be a string");
  return j.get<std::string>();
}

// Probability given as a decimal string, a fraction string, or a number.
struct Prob {
  double value;
  std::optional<Rational> exact;
};

Prob prob_from_json(const Json& j) {
  std::string s;
  if (j.is_string()) {
    s = j.get<std::string>();
  } else if (j.is_number()) {
    s = j.dump();
  } else {
    fail(ErrorKind::Input, "probability must be a number or a decimal string");
  }
  Prob p{0.0, std::nullopt};
  try {
    p.exact = Rational::parse(s);
    // Decimal text goes through strtod so the double is correctly rounded.
    p.value = s.find('/') == std::string::npos ? std::strtod(s.c_str(), nullptr) : p.exact->to_double();
  } catch (const Error&) {
    if (!j.is_number()) fail(ErrorKind::Input, "unreadable probability '" + s + "'");
    p.value = j.get<double>();
  }
  if (!std::isfinite(p.value) || p.value < 0.0) fail(ErrorKind::Input, "probability must be finite and non-negative");
  return p;
}

Json prob_to_json(double p) { return p; }

Assignment assignment_from_json(const Json& j, const std::vector<Variable>& vars, const std::string& where) {
  if (!j.is_object()) fail(ErrorKind::Input, where + " must be an object");
  Assignment a;
  for (const auto& [name, value] : j.items()) {
    const Variable& v = find_variable(vars, name);
    a[name] = value_from_json(v, value);
  }
  return a;
}

Json assignment_to_json(const Assignment& a, const std::vector<Variable>& vars) {
  Json j = Json::object();
  for (const auto& [name, value] : a) j[name] = value_to_json(find_variable(vars, name), value);
  return j;
}

std::map<int, DistTable> per_decision_from_json(const Json& j, const Variable& decision, const std::string& where) {
  if (!j.is_object()) fail(ErrorKind::Input, where + " must map decisions to tables");
  std::map<int, DistTable> out;
  for (const auto& [key, table] : j.items()) {
    auto d = decision.parse(key);
    if (!d) fail(ErrorKind::Input, where + ": unknown decision '" + key + "'");
    out[*d] = table_from_json(table);
  }
  return out;
}

Json per_decision_to_json(const std::map<int, DistTable>& m, const Variable& decision) {
  Json j = Json::object();
  for (const auto& [d, t] : m) j[decision.format(d)] = table_to_json(t);
  return j;
}

bool is_integer(const std::string& s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return !s.empty() && ec == std::errc() && ptr == s.data() + s.size();
}

DistTable to_table(const std::map<Assignment, Rational>& exact, const std::vector<Variable>& scope) {
  std::vector<std::pair<Assignment, double>> entries;
  for (const auto& [a, p] : exact) entries.emplace_back(a, p.to_double());
  return DistTable(scope, entries);
}

// Law of every variable except `drop` in the given submodel.
DistTable regime_table(const Scm& scm, const Assignment& iv, const std::vector<std::string>& drop) {
  Scm sub = submodel(scm, iv);
  std::vector<std::string> keep;
  for (const auto& v : scm.endogenous())
    if (std::find(drop.begin(), drop.end(), v.name) == drop.end()) keep.push_back(v.name);
  const bool exact = std::all_of(sub.exo().atoms.begin(), sub.exo().atoms.end(),
                                 [](const ExoAtom& a) { return a.exact.has_value(); });
  if (!exact) return joint_distribution(sub).marginal(keep);
  std::map<Assignment, Rational> out;
  for (const auto& [a, p] : joint_distribution_exact(sub)) {
    Assignment k;
    for (const auto& name : keep) k[name] = a.at(name);
    out[k] += p;
  }
  std::vector<Variable> scope;
  for (const auto& name : keep) scope.push_back(scm.variable(name));
  return to_table(out, scope);
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Input, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Input, path + ": " + e.what());
  }
}

Variable variable_from_json(const Json& j) {
  const std::string name = text(field(j, "name", "variable"), "variable name");
  const Json& dom = field(j, "domain", "variable " + name);
  if (!dom.is_array() || dom.empty()) fail(ErrorKind::Input, "domain of " + name + " must be a non-empty list");
  if (std::all_of(dom.begin(), dom.end(), [](const Json& x) { return x.is_number_integer(); })) {
    std::vector<int> values;
    for (const auto& x : dom) values.push_back(x.get<int>());
    return Variable::numeric(name, values);
  }
  std::vector<std::string> labels;
  for (const auto& x : dom) {
    if (!x.is_string()) fail(ErrorKind::Input, "domain of " + name + " mixes labels and numbers");
    labels.push_back(x.get<std::string>());
  }
  return Variable::labelled(name, labels);
}

Json variable_to_json(const Variable& v) {
  Json j;
  j["name"] = v.name;
  Json dom = Json::array();
  for (int x : v.domain) dom.push_back(value_to_json(v, x));
  j["domain"] = dom;
  return j;
}

int value_from_json(const Variable& v, const Json& j) {
  std::optional<int> out;
  if (j.is_string()) {
    out = v.parse(j.get<std::string>());
  } else if (j.is_number_integer() && !v.is_labelled()) {
    int x = j.get<int>();
    if (v.contains(x)) out = x;
  }
  if (!out) fail(ErrorKind::Input, "value " + j.dump() + " outside domain of " + v.name);
  return *out;
}

Json value_to_json(const Variable& v, int value) {
  if (v.is_labelled()) return v.format(value);
  return value;
}

ScmFile scm_from_json(const Json& j) {
  std::vector<Variable> endo, exo;
  std::map<std::string, std::pair<std::vector<std::string>, std::vector<std::string>>> parents;
  const Json& vars = field(j, "variables", "model");
  if (!vars.is_array()) fail(ErrorKind::Input, "\"variables\" must be a list");
  for (const auto& v : vars) {
    endo.push_back(variable_from_json(v));
    auto& [pa, ex] = parents[endo.back().name];
    if (v.contains("parents"))
      for (const auto& p : v.at("parents")) pa.push_back(text(p, "parent name"));
    if (v.contains("exo_parents"))
      for (const auto& p : v.at("exo_parents")) ex.push_back(text(p, "parent name"));
  }
  if (j.contains("exogenous"))
    for (const auto& v : j.at("exogenous")) exo.push_back(variable_from_json(v));

  std::vector<Variable> all = endo;
  all.insert(all.end(), exo.begin(), exo.end());

  const Json& mj = field(j, "mechanisms", "model");
  if (!mj.is_object()) fail(ErrorKind::Input, "\"mechanisms\" must map targets to rules");
  std::vector<Mechanism> mechs;
  for (const auto& v : endo) {
    if (!mj.contains(v.name)) fail(ErrorKind::Input, "no mechanism for " + v.name);
    Mechanism m;
    m.target = v.name;
    std::tie(m.parents, m.exo_parents) = parents.at(v.name);
    for (const auto& rule : mj.at(v.name)) {
      Assignment given = rule.contains("given") ? assignment_from_json(rule.at("given"), all, "mechanism rule")
                                                : Assignment{};
      std::vector<int> key;
      for (const auto* names : {&m.parents, &m.exo_parents})
        for (const auto& p : *names) {
          auto it = given.find(p);
          if (it == given.end()) fail(ErrorKind::Input, "rule for " + v.name + " does not set " + p);
          key.push_back(it->second);
        }
      if (given.size() != key.size()) fail(ErrorKind::Input, "rule for " + v.name + " sets a non-parent");
      if (!m.table.emplace(key, value_from_json(v, field(rule, "value", "mechanism rule"))).second)
        fail(ErrorKind::Input, "duplicate rule for " + v.name);
    }
    mechs.push_back(std::move(m));
  }

  ExoDistribution dist;
  if (j.contains("exogenous_distribution"))
    for (const auto& atom : j.at("exogenous_distribution")) {
      Prob p = prob_from_json(field(atom, "p", "exogenous atom"));
      dist.atoms.push_back({assignment_from_json(field(atom, "assignment", "exogenous atom"), exo, "exogenous atom"),
                            p.value, p.exact});
    }

  ScmFile f{Scm(endo, exo, mechs, dist)};
  if (j.contains("decision")) f.decision = text(j.at("decision"), "\"decision\"");
  if (j.contains("utility")) f.utility = text(j.at("utility"), "\"utility\"");
  f.scm.variable(f.decision);
  f.scm.variable(f.utility);
  return f;
}

Json scm_to_json(const Scm& scm, const std::string& decision, const std::string& utility) {
  std::vector<Variable> all = scm.endogenous();
  all.insert(all.end(), scm.exogenous().begin(), scm.exogenous().end());
  Json j;
  j["decision"] = decision;
  j["utility"] = utility;
  j["variables"] = Json::array();
  for (const auto& v : scm.endogenous()) {
    const Mechanism& m = scm.mechanism(v.name);
    Json vj = variable_to_json(v);
    vj["parents"] = m.parents;
    vj["exo_parents"] = m.exo_parents;
    j["variables"].push_back(vj);
  }
  j["exogenous"] = Json::array();
  for (const auto& v : scm.exogenous()) j["exogenous"].push_back(variable_to_json(v));
  j["exogenous_distribution"] = Json::array();
  for (const auto& atom : scm.exo().atoms) {
    Json aj;
    aj["assignment"] = assignment_to_json(atom.values, scm.exogenous());
    aj["p"] = atom.exact ? Json(atom.exact->str()) : Json(atom.p);
    j["exogenous_distribution"].push_back(aj);
  }
  j["mechanisms"] = Json::object();
  for (const auto& v : scm.endogenous()) {
    const Mechanism& m = scm.mechanism(v.name);
    Json rules = Json::array();
    for (const auto& [key, value] : m.table) {
      Assignment given;
      std::size_t i = 0;
      for (const auto& p : m.parents) given[p] = key[i++];
      for (const auto& p : m.exo_parents) given[p] = key[i++];
      rules.push_back({{"given", assignment_to_json(given, all)}, {"value", value_to_json(v, value)}});
    }
    j["mechanisms"][v.name] = rules;
  }
  return j;
}

DistTable table_from_json(const Json& j) {
  std::vector<Variable> scope;
  const Json& sj = field(j, "scope", "table");
  if (!sj.is_array()) fail(ErrorKind::Input, "table scope must be a list");
  for (const auto& v : sj) scope.push_back(variable_from_json(v));
  std::vector<std::pair<Assignment, double>> entries;
  for (const auto& e : field(j, "entries", "table")) {
    Assignment a = assignment_from_json(field(e, "assignment", "table entry"), scope, "table entry");
    if (a.size() != scope.size()) fail(ErrorKind::Input, "table entry " + to_string(a) + " does not cover the scope");
    entries.emplace_back(a, prob_from_json(field(e, "p", "table entry")).value);
  }
  return DistTable(scope, entries);
}

Json table_to_json(const DistTable& t) {
  Json j;
  j["scope"] = Json::array();
  for (const auto& v : t.scope()) j["scope"].push_back(variable_to_json(v));
  j["entries"] = Json::array();
  for (const auto& [key, p] : t.entries())
    j["entries"].push_back({{"assignment", assignment_to_json(t.assignment(key), t.scope())}, {"p", prob_to_json(p)}});
  return j;
}

DatasetFile dataset_from_json(const Json& j) {
  DatasetFile f;
  BehaviouralDataset& data = f.data;
  data.decision = variable_from_json(field(j, "decision", "dataset"));
  if (j.contains("utility")) data.utility = text(j.at("utility"), "\"utility\"");
  data.per_decision = per_decision_from_json(field(j, "per_decision", "dataset"), data.decision, "per_decision");
  if (j.contains("domains"))
    for (const auto& dj : j.at("domains")) {
      ExperimentalDomain dom;
      dom.per_decision = per_decision_from_json(field(dj, "per_decision", "domain"), data.decision, "domain");
      std::vector<Variable> vars = dom.per_decision.begin()->second.scope();
      for (const auto& v : data.per_decision.begin()->second.scope())
        if (std::none_of(vars.begin(), vars.end(), [&](const Variable& x) { return x.name == v.name; }))
          vars.push_back(v);
      dom.intervened = assignment_from_json(field(dj, "intervened", "domain"), vars, "domain");
      dom.label = dj.contains("label") ? text(dj.at("label"), "domain label") : "do" + to_string(dom.intervened);
      data.domains.push_back(std::move(dom));
    }
  if (j.contains("observational")) data.observational = table_from_json(j.at("observational"));
  data.validate();

  if (j.contains("skeleton")) f.skeleton = parse_skeleton(text(j.at("skeleton"), "\"skeleton\""));
  if (j.contains("defaults")) {
    const Json& dj = j.at("defaults");
    const auto& scope = data.per_decision.begin()->second.scope();
    if (dj.contains("shift")) f.default_shift = assignment_from_json(dj.at("shift"), scope, "default shift");
    if (dj.contains("context")) f.default_context = assignment_from_json(dj.at("context"), scope, "default context");
  }
  return f;
}

Json dataset_to_json(const DatasetFile& f) {
  const BehaviouralDataset& data = f.data;
  Json j;
  j["decision"] = variable_to_json(data.decision);
  j["utility"] = data.utility;
  j["per_decision"] = per_decision_to_json(data.per_decision, data.decision);
  if (!data.domains.empty()) {
    j["domains"] = Json::array();
    for (const auto& dom : data.domains) {
      std::vector<Variable> vars = data.per_decision.begin()->second.scope();
      j["domains"].push_back({{"label", dom.label},
                              {"intervened", assignment_to_json(dom.intervened, vars)},
                              {"per_decision", per_decision_to_json(dom.per_decision, data.decision)}});
    }
  }
  if (data.observational) j["observational"] = table_to_json(*data.observational);
  if (f.skeleton) j["skeleton"] = to_string(*f.skeleton);
  if (!f.default_shift.empty() || !f.default_context.empty()) {
    const auto& scope = data.per_decision.begin()->second.scope();
    j["defaults"] = {{"shift", assignment_to_json(f.default_shift, scope)},
                     {"context", assignment_to_json(f.default_context, scope)}};
  }
  return j;
}

SampleLog read_csv_log(std::istream& in) {
  std::string line;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line))
    if (!trim(line).empty()) header = split(line, ',');
  if (header.empty()) fail(ErrorKind::Input, "log has no header row");
  if (header.front().rfind("\xEF\xBB\xBF", 0) == 0) header.front() = header.front().substr(3);
  std::set<std::string> unique(header.begin(), header.end());
  if (unique.size() != header.size()) fail(ErrorKind::Input, "log header repeats a column");
  auto wpos = std::find(header.begin(), header.end(), "weight");
  const std::size_t weight_col = wpos == header.end() ? header.size() : static_cast<std::size_t>(wpos - header.begin());

  std::vector<std::vector<std::string>> cells;
  std::vector<double> weights;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto row = split(line, ',');
    if (row.size() != header.size())
      fail(ErrorKind::Input, "log line " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                                 " fields, expected " + std::to_string(header.size()));
    double w = 1.0;
    if (weight_col < header.size()) {
      const std::string& s = row[weight_col];
      char* end = nullptr;
      w = std::strtod(s.c_str(), &end);
      if (s.empty() || *end != '\0' || !std::isfinite(w) || w < 0.0)
        fail(ErrorKind::Input, "log line " + std::to_string(line_no) + " has a bad weight");
    }
    for (std::size_t i = 0; i < row.size(); ++i)
      if (i != weight_col && row[i].empty())
        fail(ErrorKind::Input, "log line " + std::to_string(line_no) + " has an empty value");
    cells.push_back(std::move(row));
    weights.push_back(w);
  }
  if (cells.empty()) fail(ErrorKind::Input, "log has no data rows");

  SampleLog log;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c == weight_col) continue;
    std::set<std::string> seen;
    for (const auto& row : cells) seen.insert(row[c]);
    if (std::all_of(seen.begin(), seen.end(), is_integer)) {
      std::set<int> values;
      for (const auto& s : seen) values.insert(std::stoi(s));
      log.variables.push_back(Variable::numeric(header[c], {values.begin(), values.end()}));
    } else {
      log.variables.push_back(Variable::labelled(header[c], {seen.begin(), seen.end()}));
    }
  }
  for (std::size_t r = 0; r < cells.size(); ++r) {
    WeightedRow row;
    row.weight = weights[r];
    std::size_t v = 0;
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c == weight_col) continue;
      row.values[header[c]] = *log.variables[v++].parse(cells[r][c]);
    }
    log.rows.push_back(std::move(row));
  }
  return log;
}

BehaviouralDataset dataset_from_log(const SampleLog& log, const std::string& decision, const std::string& utility,
                                    const std::vector<std::string>& context) {
  DistTable joint = estimate_from_samples(log.rows, log.variables);
  BehaviouralDataset data;
  data.decision = joint.variable(decision);
  data.utility = utility;
  joint.variable(utility);
  Policy pi = empirical_policy(joint, decision, context);
  for (int d : data.decision.domain) data.per_decision[d] = policy_to_atomic(joint, pi, d);
  data.observational = joint;
  data.validate();
  return data;
}

BehaviouralDataset dataset_from_scm(const Scm& scm, const std::string& decision, const std::string& utility,
                                    const std::vector<Assignment>& experiments) {
  BehaviouralDataset data;
  data.decision = scm.variable(decision);
  data.utility = utility;
  scm.variable(utility);
  for (int d : data.decision.domain) data.per_decision[d] = regime_table(scm, {{decision, d}}, {decision});
  for (const auto& r : experiments) {
    if (r.count(decision)) fail(ErrorKind::Input, "an experiment must not set the decision");
    ExperimentalDomain dom;
    dom.intervened = r;
    dom.label = "do(" + format_assignment(r, scm.endogenous()) + ")";
    for (int d : data.decision.domain) {
      Assignment iv = r;
      iv[decision] = d;
      dom.per_decision[d] = regime_table(scm, iv, {decision});
    }
    data.domains.push_back(std::move(dom));
  }
  data.validate();
  return data;
}

Skeleton skeleton_of(const Scm& scm, const std::string& decision) {
  Skeleton s;
  for (std::size_t i : scm.order()) {
    const Mechanism& m = scm.mechanisms()[i];
    if (m.target == decision) continue;
    s.push_back({m.target, m.parents});
  }
  return s;
}

Assignment parse_assignment(const std::string& text, const std::vector<Variable>& vars) {
  Assignment a;
  if (trim(text).empty()) return a;
  for (const auto& part : split(text, ',')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) fail(ErrorKind::Input, "expected NAME=VALUE, got '" + part + "'");
    const std::string name = trim(part.substr(0, eq));
    const std::string value = trim(part.substr(eq + 1));
    const Variable& v = find_variable(vars, name);
    auto x = v.parse(value);
    if (!x) fail(ErrorKind::Input, "value '" + value + "' outside domain of " + name);
    if (!a.emplace(name, *x).second) fail(ErrorKind::Input, "variable " + name + " assigned twice");
  }
  return a;
}

std::string format_assignment(const Assignment& a, const std::vector<Variable>& vars) {
  std::string out;
  for (const auto& [name, value] : a) {
    if (!out.empty()) out += ",";
    auto it = std::find_if(vars.begin(), vars.end(), [&](const Variable& v) { return v.name == name; });
    out += name + "=" + (it == vars.end() ? std::to_string(value) : it->format(value));
  }
  return out;
}

}  // namespace beliefbound
