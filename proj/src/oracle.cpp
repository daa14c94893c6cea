#include "beliefbound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>

#include "beliefbound/lp.hpp"

namespace beliefbound {

namespace {

constexpr std::size_t kDecisionSlot = std::numeric_limits<std::size_t>::max();

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\n");
  auto e = s.find_last_not_of(" \t\n");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

lp::Problem equality_problem(const Polytope& p, std::vector<double> objective, bool maximize) {
  lp::Problem prob;
  prob.num_vars = p.space.size();
  prob.objective = std::move(objective);
  prob.maximize = maximize;
  for (std::size_t i = 0; i < p.rows.size(); ++i) prob.constraints.push_back({p.rows[i], lp::Sense::Equal, p.rhs[i]});
  return prob;
}

std::vector<double> normalised(std::vector<double> x) {
  double total = 0.0;
  for (double& v : x) {
    v = std::max(0.0, v);
    total += v;
  }
  if (!(total > 0.0)) fail(ErrorKind::Internal, "feasible point has no mass");
  for (double& v : x) v /= total;
  return x;
}

}  // namespace

Skeleton parse_skeleton(const std::string& text) {
  Skeleton s;
  for (const auto& entry : split(text, ';')) {
    if (entry.empty()) continue;
    auto arrow = entry.find("<-");
    if (arrow == std::string::npos) fail(ErrorKind::Input, "skeleton entry '" + entry + "' lacks '<-'");
    SkeletonEntry e{trim(entry.substr(0, arrow)), {}};
    if (e.name.empty()) fail(ErrorKind::Input, "skeleton entry '" + entry + "' has no variable");
    for (const auto& p : split(entry.substr(arrow + 2), ','))
      if (!p.empty()) e.parents.push_back(p);
    s.push_back(std::move(e));
  }
  if (s.empty()) fail(ErrorKind::Input, "empty skeleton");
  return s;
}

std::string to_string(const Skeleton& s) {
  std::string out;
  for (const auto& e : s) {
    if (!out.empty()) out += "; ";
    out += e.name + "<-";
    for (std::size_t i = 0; i < e.parents.size(); ++i) out += (i ? "," : "") + e.parents[i];
  }
  return out;
}

std::uint64_t default_atom_limit() {
  if (const char* env = std::getenv("BELIEFBOUND_ATOM_LIMIT")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) fail(ErrorKind::Input, "BELIEFBOUND_ATOM_LIMIT must be a positive integer");
    return v;
  }
  return 1000000;
}

CanonicalAtomSpace::CanonicalAtomSpace(std::vector<Variable> variables, Variable decision, Skeleton skeleton,
                                       std::uint64_t atom_limit)
    : decision_(std::move(decision)), skeleton_(std::move(skeleton)) {
  std::set<std::string> declared;
  for (const auto& e : skeleton_) {
    if (e.name == decision_.name) fail(ErrorKind::Input, "the decision cannot have a skeleton entry");
    if (!declared.insert(e.name).second) fail(ErrorKind::Input, "skeleton declares " + e.name + " twice");
  }
  if (declared.size() != variables.size())
    fail(ErrorKind::Input, "skeleton must declare exactly the observed variables");

  double total = 1.0;
  for (const auto& e : skeleton_) {
    Slot slot;
    auto it = std::find_if(variables.begin(), variables.end(), [&](const Variable& v) { return v.name == e.name; });
    if (it == variables.end()) fail(ErrorKind::Input, "skeleton variable " + e.name + " is not observed");
    variables_.push_back(*it);
    slot.var = variables_.size() - 1;
    double configs = 1.0;
    for (const auto& p : e.parents) {
      if (p == decision_.name) {
        slot.parents.push_back(kDecisionSlot);
        configs *= static_cast<double>(decision_.domain.size());
        continue;
      }
      auto pos = std::find_if(variables_.begin(), variables_.end() - 1, [&](const Variable& v) { return v.name == p; });
      if (pos == variables_.end() - 1)
        fail(ErrorKind::Input, "parent " + p + " of " + e.name + " must be declared earlier in the skeleton");
      slot.parents.push_back(static_cast<std::size_t>(pos - variables_.begin()));
      configs *= static_cast<double>(pos->domain.size());
    }
    double responses = std::pow(static_cast<double>(it->domain.size()), configs);
    total *= responses;
    if (!(total <= static_cast<double>(atom_limit)))
      fail(ErrorKind::AtomLimit, "canonical space exceeds the atom limit of " + std::to_string(atom_limit));
    slot.responses = static_cast<std::size_t>(responses);
    slots_.push_back(slot);
  }
  // Later variables vary fastest.
  size_ = 1;
  for (auto s = slots_.rbegin(); s != slots_.rend(); ++s) {
    s->stride = size_;
    size_ *= s->responses;
  }
}

std::size_t CanonicalAtomSpace::response_count(const std::string& name) const {
  for (const auto& s : slots_)
    if (variables_[s.var].name == name) return s.responses;
  fail(ErrorKind::Input, "unknown variable " + name);
}

Assignment CanonicalAtomSpace::evaluate(std::size_t atom, const Assignment& iv) const {
  auto dit = iv.find(decision_.name);
  if (dit == iv.end()) fail(ErrorKind::Input, "evaluation needs the decision to be set");
  const int d = dit->second;
  std::vector<int> values(variables_.size(), 0);
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    const Slot& s = slots_[i];
    const Variable& v = variables_[s.var];
    if (auto f = iv.find(v.name); f != iv.end()) {
      values[s.var] = f->second;
      continue;
    }
    std::size_t config = 0;
    for (std::size_t p : s.parents) {
      const Variable& pv = p == kDecisionSlot ? decision_ : variables_[p];
      const int value = p == kDecisionSlot ? d : values[p];
      config = config * pv.domain.size() + pv.index_of(value);
    }
    std::size_t r = (atom / s.stride) % s.responses;
    for (std::size_t k = 0; k < config; ++k) r /= v.domain.size();
    values[s.var] = v.domain[r % v.domain.size()];
  }
  Assignment out;
  out[decision_.name] = d;
  for (std::size_t i = 0; i < variables_.size(); ++i) out[variables_[i].name] = values[i];
  return out;
}

Polytope build_polytope(const BehaviouralDataset& data, const Skeleton& skeleton, std::uint64_t atom_limit) {
  data.validate();
  const DistTable& first = data.per_decision.begin()->second;
  Polytope p{CanonicalAtomSpace(first.scope(), data.decision, skeleton, atom_limit), {}, {}, {}, 0, data.utility};
  const std::size_t n = p.space.size();

  auto add_rows = [&](const DistTable& t, const Assignment& iv, const std::string& tag) {
    std::map<DistTable::Key, std::size_t> row_of;
    for_each_config(t.scope(), [&](const std::vector<int>& key) {
      row_of[key] = p.rows.size();
      p.rows.emplace_back(n, 0.0);
      auto it = t.entries().find(key);
      p.rhs.push_back(it == t.entries().end() ? 0.0 : it->second);
      p.labels.push_back(tag + " " + to_string(t.assignment(key)));
    });
    for (std::size_t a = 0; a < n; ++a) {
      Assignment v = p.space.evaluate(a, iv);
      DistTable::Key key;
      for (const auto& var : t.scope()) key.push_back(v.at(var.name));
      p.rows[row_of.at(key)][a] = 1.0;
    }
  };

  for (const auto& [d, t] : data.per_decision)
    add_rows(t, {{data.decision.name, d}}, "do(" + data.decision.name + "=" + data.decision.format(d) + ")");
  for (const auto& dom : data.domains)
    for (const auto& [d, t] : dom.per_decision) {
      Assignment iv = dom.intervened;
      iv[data.decision.name] = d;
      add_rows(t, iv, dom.label + " do(" + data.decision.name + "=" + data.decision.format(d) + ")");
    }

  // Cells no atom can reach must be empty in the data.
  for (std::size_t i = p.rows.size(); i-- > 0;) {
    if (std::any_of(p.rows[i].begin(), p.rows[i].end(), [](double v) { return v != 0.0; })) continue;
    if (p.rhs[i] > kNormTolerance)
      fail(ErrorKind::Data, "infeasible polytope: " + p.labels[i] + " is unreachable under the skeleton");
    p.rows.erase(p.rows.begin() + static_cast<std::ptrdiff_t>(i));
    p.rhs.erase(p.rhs.begin() + static_cast<std::ptrdiff_t>(i));
    p.labels.erase(p.labels.begin() + static_cast<std::ptrdiff_t>(i));
  }
  p.data_rows = p.rows.size();
  p.rows.emplace_back(n, 1.0);
  p.rhs.push_back(1.0);
  p.labels.push_back("simplex");
  feasible_point(p);
  return p;
}

std::vector<double> feasible_point(const Polytope& p, const std::vector<double>& objective) {
  std::vector<double> obj = objective.empty() ? std::vector<double>(p.space.size(), 0.0) : objective;
  if (obj.size() != p.space.size()) fail(ErrorKind::Input, "objective width does not match the atom count");
  lp::Solution s = lp::solve(equality_problem(p, obj, false));
  if (s.status == lp::Status::Infeasible) fail(ErrorKind::Data, "infeasible polytope");
  if (s.status != lp::Status::Optimal) fail(ErrorKind::Internal, "feasibility program did not solve");
  return normalised(s.x);
}

GapOptimum optimize_gap(const Polytope& p, const Assignment& z, const Assignment& c, int d, int d_star,
                        Direction direction) {
  const std::string& dname = p.space.decision().name;
  if (z.count(dname) || c.count(dname)) fail(ErrorKind::Input, "shift and context must not mention the decision");
  const std::size_t n = p.space.size();
  std::vector<double> gain(n, 0.0), in_context(n, 0.0);
  bool always = true;
  for (std::size_t a = 0; a < n; ++a) {
    Assignment iv = z;
    iv[dname] = d;
    Assignment vd = p.space.evaluate(a, iv);
    iv[dname] = d_star;
    Assignment vs = p.space.evaluate(a, iv);
    const bool cd = agrees(vd, c), cs = agrees(vs, c);
    if (cd != cs)
      fail(ErrorKind::Unsupported, "context depends on the decision; the gap is not a single-denominator ratio");
    if (!cd) {
      always = false;
      continue;
    }
    in_context[a] = 1.0;
    gain[a] = vd.at(p.utility) - vs.at(p.utility);
  }
  const bool maximize = direction == Direction::Max;

  GapOptimum out;
  if (always) {
    lp::Solution s = lp::solve(equality_problem(p, gain, maximize));
    if (s.status != lp::Status::Optimal) fail(ErrorKind::Internal, "gap program did not solve");
    out.value = s.value;
    out.point = normalised(s.x);
    return out;
  }

  lp::Solution den = lp::solve(equality_problem(p, in_context, false));
  if (den.status != lp::Status::Optimal) fail(ErrorKind::Internal, "context-mass program did not solve");
  if (!(den.value > 1e-12))
    fail(ErrorKind::Domain, "context " + to_string(c) + " can have zero probability under the shift");

  // Ratio objective: substitute q = t p with t = 1 / P_z(c) so that the
  // context mass becomes the constraint in_context . q = 1.
  lp::Problem prob;
  prob.num_vars = n + 1;
  prob.maximize = maximize;
  prob.objective = gain;
  prob.objective.push_back(0.0);
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    std::vector<double> row = p.rows[i];
    row.push_back(-p.rhs[i]);
    prob.constraints.push_back({std::move(row), lp::Sense::Equal, 0.0});
  }
  std::vector<double> norm = in_context;
  norm.push_back(0.0);
  prob.constraints.push_back({std::move(norm), lp::Sense::Equal, 1.0});
  lp::Solution s = lp::solve(prob);
  if (s.status != lp::Status::Optimal) fail(ErrorKind::Internal, "ratio program did not solve");
  const double t = s.x[n];
  if (!(t > 0.0)) fail(ErrorKind::Internal, "ratio program returned a degenerate scale");
  out.value = s.value;
  out.point.assign(s.x.begin(), s.x.begin() + static_cast<std::ptrdiff_t>(n));
  for (double& v : out.point) v /= t;
  out.point = normalised(out.point);
  return out;
}

Scm canonical_scm(const Polytope& p, const std::vector<double>& point) {
  const std::size_t n = p.space.size();
  if (point.size() != n) fail(ErrorKind::Input, "point width does not match the atom count");
  std::vector<double> q = normalised(point);
  std::vector<int> ids(n);
  for (std::size_t a = 0; a < n; ++a) ids[a] = static_cast<int>(a);
  Variable r = Variable::numeric("R", ids);

  const Variable& dvar = p.space.decision();
  std::vector<Variable> endo{dvar};
  std::vector<Mechanism> mechs{Mechanism::constant(dvar.name, dvar.domain.front())};
  for (const auto& e : p.space.skeleton()) {
    std::vector<Variable> parents;
    for (const auto& name : e.parents)
      parents.push_back(name == dvar.name ? dvar : find_variable(p.space.variables(), name));
    endo.push_back(find_variable(p.space.variables(), e.name));
    // The response of an atom to given parent values is read off a full
    // evaluation with every parent forced.
    mechs.push_back(tabulate(e.name, parents, {r}, [&](const Assignment& in) {
      Assignment iv;
      iv[dvar.name] = dvar.domain.front();
      for (const auto& [name, value] : in)
        if (name != r.name) iv[name] = value;
      return p.space.evaluate(static_cast<std::size_t>(in.at(r.name)), iv).at(e.name);
    }));
  }

  ExoDistribution exo;
  double total = 0.0;
  for (std::size_t a = 0; a < n; ++a)
    if (q[a] > 1e-15) total += q[a];
  for (std::size_t a = 0; a < n; ++a)
    if (q[a] > 1e-15) exo.atoms.push_back({{{r.name, static_cast<int>(a)}}, q[a] / total, std::nullopt});
  return Scm(endo, {r}, mechs, exo);
}

Scm feasible_scm(const Polytope& p) { return canonical_scm(p, feasible_point(p)); }

Scm intervention_witness_scm(const Scm& base, const std::string& decision, const std::string& utility,
                             const Assignment& z, const Assignment& c, int d1, int d0) {
  const Variable& dvar = base.variable(decision);
  const Variable& yvar = base.variable(utility);
  merge(c, z);
  for (const auto* a : {&z, &c})
    if (a->count(decision) || a->count(utility))
      fail(ErrorKind::Input, "shift and context must not mention the decision or the utility");
  if (z.empty()) fail(ErrorKind::Input, "witness needs a non-empty shift");
  for (const auto& [name, value] : c)
    if (!base.variable(name).contains(value)) fail(ErrorKind::Input, "context value outside domain of " + name);
  for (const auto& [name, value] : z)
    if (!base.variable(name).contains(value)) fail(ErrorKind::Input, "shift value outside domain of " + name);

  // Natural world of each atom under every decision.
  const auto& atoms = base.exo().atoms;
  std::map<int, std::vector<Assignment>> natural;
  for (int d : dvar.domain) {
    Scm sub = submodel(base, {{decision, d}});
    for (const auto& atom : atoms) natural[d].push_back(evaluate(sub, atom.values));
  }

  std::vector<int> ids(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) ids[i] = static_cast<int>(i);
  Variable u = Variable::numeric("U", ids);
  ExoDistribution exo;
  for (std::size_t i = 0; i < atoms.size(); ++i) exo.atoms.push_back({{{u.name, ids[i]}}, atoms[i].p, atoms[i].exact});

  std::vector<Variable> zvars;
  for (const auto& [name, value] : z) zvars.push_back(base.variable(name));
  std::vector<Variable> readers{dvar};
  readers.insert(readers.end(), zvars.begin(), zvars.end());

  const int y_high = *std::max_element(yvar.domain.begin(), yvar.domain.end());
  const int y_low = *std::min_element(yvar.domain.begin(), yvar.domain.end());

  std::vector<Mechanism> mechs;
  for (const auto& v : base.endogenous()) {
    if (v.name == decision) {
      mechs.push_back(Mechanism::constant(decision, dvar.domain.front()));
    } else if (z.count(v.name)) {
      mechs.push_back(tabulate(v.name, {dvar}, {u}, [&](const Assignment& in) {
        return natural.at(in.at(decision))[static_cast<std::size_t>(in.at(u.name))].at(v.name);
      }));
    } else {
      // Off the event where Z took its shifted value naturally, the context is
      // forced to c and the utility is pushed against d1.
      mechs.push_back(tabulate(v.name, readers, {u}, [&](const Assignment& in) {
        const int d = in.at(decision);
        const Assignment& nat = natural.at(d)[static_cast<std::size_t>(in.at(u.name))];
        const bool consistent =
            std::all_of(zvars.begin(), zvars.end(), [&](const Variable& zv) { return in.at(zv.name) == nat.at(zv.name); });
        if (consistent) return nat.at(v.name);
        if (v.name == utility) {
          if (d == d0) return y_high;
          if (d == d1) return y_low;
          return nat.at(v.name);
        }
        auto it = c.find(v.name);
        return it == c.end() ? nat.at(v.name) : it->second;
      }));
    }
  }
  return Scm(base.endogenous(), {u}, mechs, exo);
}

ResponseTable response_table(const DistTable& p_zy, const std::string& z, const std::string& y, ResponseForm form) {
  for (const auto& name : {z, y}) {
    const Variable& v = p_zy.variable(name);
    if (v.domain.size() != 2 || !v.contains(0) || !v.contains(1))
      fail(ErrorKind::Input, "response tables need " + name + " with domain {0,1}");
  }
  auto q = [&](int a, int b) { return p_zy.probability({{z, a}, {y, b}}); };
  ResponseTable t{};
  if (form == ResponseForm::NoConstantOne) {
    t[0][0] = q(0, 0);
    t[0][2] = q(0, 1);
    t[1][0] = q(1, 0);
    t[1][1] = q(1, 1);
  } else {
    t[0][1] = q(0, 0);
    t[0][3] = q(0, 1);
    t[1][2] = q(1, 0);
    t[1][3] = q(1, 1);
  }
  return t;
}

Scm response_scm(const ResponseTable& t) {
  Variable rz = Variable::numeric("RZ", {0, 1});
  Variable ry = Variable::numeric("RY", {0, 1, 2, 3});
  Variable zv = Variable::numeric("Z", {0, 1});
  Variable yv = Variable::numeric("Y", {0, 1});
  ExoDistribution exo;
  double total = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 4; ++b) {
      double p = t[a][b];
      if (!std::isfinite(p) || p < 0.0) fail(ErrorKind::Input, "response table entries must be non-negative");
      total += p;
      exo.atoms.push_back({{{"RZ", a}, {"RY", b}}, p, std::nullopt});
    }
  if (std::abs(total - 1.0) > kNormTolerance) fail(ErrorKind::Input, "response table does not sum to 1");
  Mechanism mz = tabulate("Z", {}, {rz}, [](const Assignment& in) { return in.at("RZ"); });
  Mechanism my = tabulate("Y", {zv}, {ry}, [](const Assignment& in) {
    const int zval = in.at("Z");
    switch (in.at("RY")) {
      case 0: return 0;
      case 1: return zval;
      case 2: return 1 - zval;
      default: return 1;
    }
  });
  return Scm({zv, yv}, {rz, ry}, {mz, my}, exo);
}

ShiftWitnesses unknown_shift_witnesses(const ResponseTable& t) {
  response_scm(t);
  ResponseTable low = t, high = t;
  // r_y = 1 follows z and r_y = 2 opposes it; the shifted Z picks the branch.
  low[0][1] = t[0][1] + t[1][1];
  low[1][1] = 0.0;
  low[0][2] = 0.0;
  low[1][2] = t[0][2] + t[1][2];
  high[0][1] = 0.0;
  high[1][1] = t[0][1] + t[1][1];
  high[0][2] = t[0][2] + t[1][2];
  high[1][2] = 0.0;
  return {low, high, response_scm(low), response_scm(high)};
}

}  // namespace beliefbound
