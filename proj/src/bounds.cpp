#include "beliefbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace beliefbound {

namespace {

constexpr double kSlack = 1e-12;  // rounding noise tolerated before a clamp counts
constexpr double kMinMass = 1e-12;  // smaller conditioning masses count as zero

void require_utility(const DistTable& t, const std::string& y, bool binary) {
  const Variable& v = t.variable(y);
  if (v.is_labelled()) fail(ErrorKind::Input, "utility " + y + " must be numeric");
  for (int value : v.domain)
    if (value < 0 || value > 1) fail(ErrorKind::Input, "utility " + y + " must take values in [0,1]");
  if (binary && v.domain.size() != 2) fail(ErrorKind::Input, "utility " + y + " must be binary");
}

// View of an event inside a table that was collected under do(r). Variables
// fixed by r may be absent from the table; they then either agree with r and
// are dropped, or contradict it and make the event impossible.
struct Event {
  Assignment in_scope;
  bool possible = true;
};

Event project(const DistTable& t, const Assignment& event, const Assignment& r) {
  Event e;
  for (const auto& [name, value] : event) {
    if (t.has(name)) {
      e.in_scope[name] = value;
      continue;
    }
    auto it = r.find(name);
    if (it == r.end()) fail(ErrorKind::Input, "variable " + name + " missing from data");
    if (it->second != value) e.possible = false;
  }
  return e;
}

double mass(const DistTable& t, const Assignment& event, const Assignment& r = {}) {
  Event e = project(t, event, r);
  return e.possible ? t.probability(e.in_scope) : 0.0;
}

double utility_mass(const DistTable& t, const std::string& y, const Assignment& event, const Assignment& r = {}) {
  Event e = project(t, event, r);
  return e.possible ? t.weighted_mass(y, e.in_scope) : 0.0;
}

// Extremes of E_{z,d}[Y | c] over models that reproduce table t.
struct TermParts {
  double utility_cz;  // E[Y 1{c,z}]
  double mass_cz;
  double mass_z;
  double denominator() const { return mass_cz + 1.0 - mass_z; }
};

TermParts term_parts(const DistTable& t, const std::string& y, const Assignment& c, const Assignment& z,
                     const Assignment& r = {}) {
  Assignment cz = merge(c, z);
  TermParts p{utility_mass(t, y, cz, r), mass(t, cz, r), mass(t, z, r)};
  if (!(p.denominator() > kMinMass))
    fail(ErrorKind::Domain, "context " + to_string(c) + " has no mass under the shift " + to_string(z));
  return p;
}

double term_low(const TermParts& p) { return p.utility_cz / p.denominator(); }
double term_high(const TermParts& p) { return (p.utility_cz + 1.0 - p.mass_z) / p.denominator(); }

void record(std::map<std::string, double>& inputs, const std::string& prefix, const TermParts& p) {
  inputs[prefix + ".utility_cz"] = p.utility_cz;
  inputs[prefix + ".mass_cz"] = p.mass_cz;
  inputs[prefix + ".mass_z"] = p.mass_z;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const Variable& single_binary(const DistTable& t, const Assignment& a, const char* what) {
  if (a.size() != 1) fail(ErrorKind::Input, std::string(what) + " must assign exactly one variable");
  const Variable& v = t.variable(a.begin()->first);
  if (v.domain.size() != 2) fail(ErrorKind::Input, std::string(what) + " variable must be binary");
  if (!v.contains(a.begin()->second)) fail(ErrorKind::Input, std::string(what) + " value outside domain");
  return v;
}

}  // namespace

const char* to_string(GapKind kind) {
  switch (kind) {
    case GapKind::Preference: return "preference";
    case GapKind::Fairness: return "fairness";
    case GapKind::Harm: return "harm";
    case GapKind::DirectDiscrimination: return "direct-discrimination";
    case GapKind::CausalHarm: return "causal-harm";
  }
  return "unknown";
}

std::string GapInterval::digest() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](const std::string& s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ull;
    }
  };
  mix(source);
  for (const auto& [name, value] : inputs) mix(";" + name + "=" + fmt(value));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

GapInterval make_interval(GapKind kind, std::string source, double raw_lower, double raw_upper, bool tight,
                          std::map<std::string, double> inputs) {
  if (!std::isfinite(raw_lower) || !std::isfinite(raw_upper))
    fail(ErrorKind::Domain, source + ": bound is not finite");
  const bool unit = kind == GapKind::Harm || kind == GapKind::CausalHarm;
  const double lo = unit ? 0.0 : -1.0, hi = 1.0;

  GapInterval g;
  g.kind = kind;
  g.source = std::move(source);
  g.tight = tight;
  g.inputs = std::move(inputs);
  g.raw_lower = raw_lower;
  g.raw_upper = raw_upper;
  g.lower = std::clamp(raw_lower, lo, hi);
  g.upper = std::clamp(raw_upper, lo, hi);
  if (raw_lower < lo - kSlack || raw_lower > hi + kSlack)
    g.warnings.push_back("clamp: lower " + fmt(raw_lower) + " moved to " + fmt(g.lower));
  if (raw_upper < lo - kSlack || raw_upper > hi + kSlack)
    g.warnings.push_back("clamp: upper " + fmt(raw_upper) + " moved to " + fmt(g.upper));
  if (g.lower > g.upper) {
    if (g.lower - g.upper > kSlack)
      fail(ErrorKind::Domain, g.source + ": lower bound exceeds upper bound; tables are inconsistent");
    g.upper = g.lower;
  }
  return g;
}

GapInterval intervention_gap_interval(const BehaviouralDataset& data, const Assignment& c, const Assignment& z, int d,
                                      int d_star) {
  const DistTable& pd = data.table(d);
  const DistTable& ps = data.table(d_star);
  require_utility(pd, data.utility, false);
  TermParts a = term_parts(pd, data.utility, c, z);
  TermParts b = term_parts(ps, data.utility, c, z);
  std::map<std::string, double> inputs;
  record(inputs, "d", a);
  record(inputs, "d_star", b);
  return make_interval(GapKind::Preference, "intervention", term_low(a) - term_high(b), term_high(a) - term_low(b),
                       true, std::move(inputs));
}

GapInterval multidomain_gap_interval(const BehaviouralDataset& data, const Assignment& c, const Assignment& z, int d,
                                     int d_star) {
  require_utility(data.table(d), data.utility, false);
  data.table(d_star);

  struct Source {
    std::string label;
    Assignment r;
    const std::map<int, DistTable>* tables;
  };
  std::vector<Source> sources{{"observational", {}, &data.per_decision}};
  for (const auto& dom : data.domains) sources.push_back({dom.label, dom.intervened, &dom.per_decision});

  // The lower bound pairs the best d-side term with the best d*-side term, each
  // taken over domains independently; the upper bound mirrors that.
  const double inf = std::numeric_limits<double>::infinity();
  double d_low = -inf, d_high = inf, s_low = -inf, s_high = inf;
  std::map<std::string, double> inputs;
  for (const auto& s : sources) {
    Assignment rest;
    for (const auto& [name, value] : s.r) {
      auto it = z.find(name);
      if (it == z.end())
        fail(ErrorKind::Input, "domain " + s.label + " intervenes on " + name + ", which the shift leaves alone");
      if (it->second != value)
        fail(ErrorKind::Input, "domain " + s.label + " sets " + name + " to a value the shift does not");
    }
    for (const auto& [name, value] : z)
      if (!s.r.count(name)) rest[name] = value;

    if (auto it = s.tables->find(d); it != s.tables->end()) {
      TermParts p = term_parts(it->second, data.utility, c, rest, s.r);
      record(inputs, s.label + ".d", p);
      d_low = std::max(d_low, term_low(p));
      d_high = std::min(d_high, term_high(p));
    }
    if (auto it = s.tables->find(d_star); it != s.tables->end()) {
      TermParts p = term_parts(it->second, data.utility, c, rest, s.r);
      record(inputs, s.label + ".d_star", p);
      s_low = std::max(s_low, term_low(p));
      s_high = std::min(s_high, term_high(p));
    }
  }
  const std::size_t k = sources.size();
  GapInterval g =
      make_interval(GapKind::Preference, "multidomain", d_low - s_high, d_high - s_low, k <= 2, std::move(inputs));
  if (k > 2) g.warnings.push_back("multidomain: tightness is only established for up to two domains");
  return g;
}

GapInterval unknown_shift_gap_interval() {
  return make_interval(GapKind::Preference, "unknown-shift", -1.0, 1.0, true, {});
}

GapInterval covariate_shift_gap_interval(const BehaviouralDataset& data, double p_sigma_c, const Assignment& c,
                                         const Assignment& z, int d, int d_star) {
  if (z.empty()) fail(ErrorKind::Input, "covariate shift needs the shifted variables");
  for (const auto& [name, value] : z) {
    auto it = c.find(name);
    if (it == c.end()) fail(ErrorKind::Input, "shifted variable " + name + " must be part of the context");
    if (it->second != value) fail(ErrorKind::Input, "context and shift disagree on " + name);
  }
  if (!std::isfinite(p_sigma_c) || p_sigma_c > 1.0 || p_sigma_c < 0.0)
    fail(ErrorKind::Input, "shifted context probability must lie in [0,1]");
  if (!(p_sigma_c > 0.0)) fail(ErrorKind::Domain, "context has zero probability after the shift");

  const DistTable& pd = data.table(d);
  const DistTable& ps = data.table(d_star);
  require_utility(pd, data.utility, false);
  const std::string& y = data.utility;
  const double ud = pd.weighted_mass(y, c), us = ps.weighted_mass(y, c);
  const double cd = pd.probability(c), cs = ps.probability(c);
  const double zd = pd.probability(z), zs = ps.probability(z);

  double raw_lower = 1.0 - (2.0 + us - ud - zd - zs + cd) / p_sigma_c;
  double raw_upper = -(1.0 - (2.0 + ud - us - zs - zd + cs) / p_sigma_c);
  std::map<std::string, double> inputs{{"d.utility_c", ud},   {"d_star.utility_c", us}, {"d.mass_c", cd},
                                       {"d_star.mass_c", cs}, {"d.mass_z", zd},         {"d_star.mass_z", zs},
                                       {"sigma.mass_c", p_sigma_c}};
  GapInterval g = make_interval(GapKind::Preference, "covariate-shift", raw_lower, raw_upper, false, std::move(inputs));
  g.warnings.push_back("covariate-shift: upper endpoint is the role-swapped mirror of the lower bound");
  return g;
}

GapInterval covariate_shift_gap_interval(const BehaviouralDataset& data, const DistTable& p_sigma, const Assignment& c,
                                         const Assignment& z, int d, int d_star) {
  return covariate_shift_gap_interval(data, p_sigma.probability(c), c, z, d, d_star);
}

GapInterval fairness_gap_interval(const BehaviouralDataset& data, int d, const Assignment& z0, const Assignment& c) {
  const DistTable& pd = data.table(d);
  require_utility(pd, data.utility, false);
  const Variable& attr = single_binary(pd, z0, "protected attribute");
  if (c.count(attr.name)) fail(ErrorKind::Input, "context must not contain the protected attribute");
  const double e = expectation(pd, data.utility, merge(z0, c));
  return make_interval(GapKind::Fairness, "fairness", -e, 1.0 - e, true, {{"d.utility_given_z0c", e}});
}

GapInterval harm_gap_interval(double a, double b) {
  if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0)) fail(ErrorKind::Input, "success rates must lie in [0,1]");
  // P(Y_d0 = 1, Y_d = 0) over all couplings of Bernoulli(b) and Bernoulli(a).
  return make_interval(GapKind::Harm, "harm", std::max(0.0, b - a), std::min(b, 1.0 - a), true,
                       {{"d.success", a}, {"baseline.success", b}});
}

GapInterval harm_gap_interval(const BehaviouralDataset& data, int d, int d0, const Assignment& c) {
  require_utility(data.table(d), data.utility, true);
  const double a = expectation(data.table(d), data.utility, c);
  const double b = expectation(data.table(d0), data.utility, c);
  return harm_gap_interval(a, b);
}

GapInterval direct_discrimination_interval(const BehaviouralDataset& data, int d, const Assignment& z0,
                                           const Assignment& z1, const Assignment& c) {
  const DistTable& pd = data.table(d);
  require_utility(pd, data.utility, false);
  const Variable& a0 = single_binary(pd, z0, "baseline attribute");
  const Variable& a1 = single_binary(pd, z1, "alternative attribute");
  if (a0.name != a1.name || z0.begin()->second == z1.begin()->second)
    fail(ErrorKind::Input, "attribute values must be the two levels of one variable");
  if (c.count(a0.name)) fail(ErrorKind::Input, "context must not contain the protected attribute");
  const Assignment e0 = merge(z0, c), e1 = merge(z1, c);
  const double u1 = pd.weighted_mass(data.utility, e1), u0 = pd.weighted_mass(data.utility, e0);
  const double m1 = pd.probability(e1), m0 = pd.probability(e0);
  return make_interval(GapKind::DirectDiscrimination, "direct-discrimination", u1 - u0 + m0 - 1.0, u1 - u0 + 1.0 - m1,
                       true, {{"utility_z1c", u1}, {"utility_z0c", u0}, {"mass_z1c", m1}, {"mass_z0c", m0}});
}

GapInterval causal_harm_interval(const CausalHarmInputs& in) {
  for (double v : {in.p_y1_given_d1, in.p_y0_given_d0, in.p_d1, in.p_d0})
    if (!(v >= 0.0 && v <= 1.0)) fail(ErrorKind::Input, "causal-harm inputs must be probabilities");
  const double den = in.p_y0_given_d0 * in.p_d0;
  if (!(den > 0.0)) fail(ErrorKind::Domain, "causal-harm denominator P(y0|d0,c)P(d0|c) is zero");
  // The lower numerator is printed as a difference of identical terms.
  const double lower_ratio = (in.p_y1_given_d1 - in.p_y1_given_d1) / den;
  const double upper_ratio = (in.p_y1_given_d1 - in.p_y1_given_d1 * in.p_d1) / den;
  GapInterval g = make_interval(GapKind::CausalHarm, "causal-harm", std::max(0.0, lower_ratio),
                                std::min(1.0, upper_ratio), false,
                                {{"d1.harm_outcome", in.p_y1_given_d1},
                                 {"d0.safe_outcome", in.p_y0_given_d0},
                                 {"policy.d1", in.p_d1},
                                 {"policy.d0", in.p_d0},
                                 {"upper_ratio", upper_ratio}});
  g.warnings.push_back("causal-harm: lower endpoint is identically zero as stated");
  return g;
}

GapInterval causal_harm_interval(const DistTable& p, const std::string& decision, const std::string& utility, int d1,
                                 int d0, const Assignment& c) {
  require_utility(p, utility, true);
  const Variable& yv = p.variable(utility);
  const int y0 = yv.domain[0] < yv.domain[1] ? yv.domain[0] : yv.domain[1];
  const int y1 = y0 == yv.domain[0] ? yv.domain[1] : yv.domain[0];
  auto cond = [&](int d, int y) {
    Assignment given = c;
    given[decision] = d;
    Assignment event = given;
    event[utility] = y;
    const double m = p.probability(given);
    if (!(m > 0.0)) fail(ErrorKind::Domain, "decision never taken in context " + to_string(c));
    return p.probability(event) / m;
  };
  CausalHarmInputs in;
  in.p_y1_given_d1 = cond(d1, y1);
  in.p_y0_given_d0 = cond(d0, y0);
  const double pc = p.probability(c);
  if (!(pc > 0.0)) fail(ErrorKind::Domain, "context " + to_string(c) + " has zero probability");
  Assignment a1 = c, a0 = c;
  a1[decision] = d1;
  a0[decision] = d0;
  in.p_d1 = p.probability(a1) / pc;
  in.p_d0 = p.probability(a0) / pc;
  return causal_harm_interval(in);
}

}  // namespace beliefbound
