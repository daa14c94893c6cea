#include "beliefbound/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "beliefbound/bounds.hpp"
#include "beliefbound/io.hpp"
#include "beliefbound/oracle.hpp"
#include "beliefbound/predictability.hpp"
#include "beliefbound/relaxations.hpp"

namespace beliefbound {

namespace {

struct Args {
  std::string data_path;
  std::string format = "json";
  std::string decision, baseline;
  std::string shift, context;
  std::string policy_context;
  std::string decision_var = "D", utility = "Y";
  std::vector<std::string> experiments;
  bool shift_set = false, context_set = false, policy_context_set = false;

  std::string theorem;
  std::string sigma_context, z0, z1;

  std::string mode = "weak";
  double lambda = 0.0;
  bool require_verdict = false;

  std::string skeleton, direction = "both";
  double tol = 1e-6;

  std::string method;
  std::optional<double> delta, alpha;
  std::optional<std::uint64_t> seed;
  std::size_t proposals = 10000;
  double concentration = 400.0;
  std::string covariate;
};

struct Loaded {
  std::optional<BehaviouralDataset> data;
  std::optional<Skeleton> skeleton;
  Assignment shift, context;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(s);
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

const std::vector<Variable>& scope_of(const BehaviouralDataset& data) { return data.per_decision.begin()->second.scope(); }

Loaded load(const Args& a) {
  Loaded l;
  if (a.data_path.empty()) return l;
  if (ends_with(a.data_path, ".csv")) {
    std::ifstream in(a.data_path);
    if (!in) fail(ErrorKind::Input, "cannot open " + a.data_path);
    SampleLog log = read_csv_log(in);
    std::vector<std::string> context;
    if (a.policy_context_set) {
      context = split_names(a.policy_context);
    } else {
      for (const auto& v : log.variables)
        if (v.name != a.decision_var && v.name != a.utility) context.push_back(v.name);
    }
    l.data = dataset_from_log(log, a.decision_var, a.utility, context);
  } else {
    Json j = read_json_file(a.data_path);
    if (j.is_object() && j.contains("mechanisms")) {
      ScmFile f = scm_from_json(j);
      std::vector<Assignment> experiments;
      for (const auto& e : a.experiments) experiments.push_back(parse_assignment(e, f.scm.endogenous()));
      l.data = dataset_from_scm(f.scm, f.decision, f.utility, experiments);
      l.skeleton = skeleton_of(f.scm, f.decision);
    } else {
      DatasetFile f = dataset_from_json(j);
      l.data = std::move(f.data);
      l.skeleton = f.skeleton;
      l.shift = f.default_shift;
      l.context = f.default_context;
    }
  }
  if (!a.experiments.empty() && l.data && l.data->domains.empty())
    fail(ErrorKind::Input, "--experiment applies only to model files");
  if (a.shift_set) l.shift = parse_assignment(a.shift, scope_of(*l.data));
  if (a.context_set) l.context = parse_assignment(a.context, scope_of(*l.data));
  if (!a.skeleton.empty()) l.skeleton = parse_skeleton(a.skeleton);
  return l;
}

const BehaviouralDataset& need_data(const Loaded& l) {
  if (!l.data) fail(ErrorKind::Input, "--data is required");
  return *l.data;
}

int parse_decision(const BehaviouralDataset& data, const std::string& token) {
  auto d = data.decision.parse(token);
  if (!d || !data.per_decision.count(*d)) fail(ErrorKind::Input, "unknown decision '" + token + "'");
  return *d;
}

std::vector<int> chosen_decisions(const BehaviouralDataset& data, const Args& a) {
  if (!a.decision.empty()) return {parse_decision(data, a.decision)};
  return data.decisions();
}

std::vector<std::pair<int, int>> chosen_pairs(const BehaviouralDataset& data, const Args& a) {
  std::vector<int> ds = chosen_decisions(data, a);
  std::vector<int> bs = a.baseline.empty() ? data.decisions() : std::vector<int>{parse_decision(data, a.baseline)};
  std::vector<std::pair<int, int>> out;
  for (int d : ds)
    for (int b : bs)
      if (d != b) out.emplace_back(d, b);
  if (out.empty()) fail(ErrorKind::Input, "no pair of distinct decisions selected");
  return out;
}

Json finite(double v) {
  if (!std::isfinite(v)) fail(ErrorKind::Internal, "non-finite value in report");
  return v;
}

Json label(const BehaviouralDataset* data, std::optional<int> d) {
  if (!d || !data) return nullptr;
  return data->decision.format(*d);
}

struct Report {
  Json j;
  const BehaviouralDataset* data = nullptr;

  Report(const std::string& command, Json request) {
    j["tool"] = "beliefbound";
    j["version"] = kToolVersion;
    j["command"] = command;
    j["request"] = std::move(request);
    j["intervals"] = Json::array();
    j["verdict"] = nullptr;
    j["oracle"] = nullptr;
    j["relaxation"] = nullptr;
    j["warnings"] = Json::array();
    j["seed"] = nullptr;
  }

  void add(const GapInterval& g, std::optional<int> d, std::optional<int> b) {
    Json e;
    e["decision"] = label(data, d);
    e["baseline"] = label(data, b);
    e["kind"] = to_string(g.kind);
    e["source"] = g.source;
    e["lower"] = finite(g.lower);
    e["upper"] = finite(g.upper);
    e["raw_lower"] = finite(g.raw_lower);
    e["raw_upper"] = finite(g.raw_upper);
    e["tight"] = g.tight;
    e["inputs"] = Json::object();
    for (const auto& [k, v] : g.inputs) e["inputs"][k] = finite(v);
    e["digest"] = g.digest();
    e["warnings"] = g.warnings;
    std::string who = d ? label(data, d).get<std::string>() : std::string("all");
    if (b) who += " vs " + label(data, b).get<std::string>();
    for (const auto& w : g.warnings) j["warnings"].push_back(who + ": " + w);
    j["intervals"].push_back(std::move(e));
  }
};

Json request_of(const Args& a, const Loaded& l, const std::string& command) {
  Json r;
  r["data"] = a.data_path.empty() ? Json(nullptr) : Json(std::filesystem::path(a.data_path).filename().string());
  const std::vector<Variable> none;
  const auto& vars = l.data ? scope_of(*l.data) : none;
  r["shift"] = format_assignment(l.shift, vars);
  r["context"] = format_assignment(l.context, vars);
  if (!a.decision.empty()) r["decision"] = a.decision;
  if (!a.baseline.empty()) r["baseline"] = a.baseline;
  if (!a.experiments.empty()) r["experiments"] = a.experiments;
  if (command == "bounds" || command == "predict" || command == "oracle") r["theorem"] = a.theorem;
  if (command == "predict") {
    r["mode"] = a.mode;
    r["lambda"] = a.lambda;
  }
  if (command == "oracle") {
    r["direction"] = a.direction;
    r["tol"] = a.tol;
    if (l.skeleton) r["skeleton"] = to_string(*l.skeleton);
  }
  if (command == "relax") r["method"] = a.method;
  return r;
}

// Closed-form preference interval for the grounded cases.
GapInterval preference(const std::string& theorem, const BehaviouralDataset& data, const Assignment& c,
                       const Assignment& z, int d, int b) {
  if (theorem == "intervention") return intervention_gap_interval(data, c, z, d, b);
  if (theorem == "multidomain") return multidomain_gap_interval(data, c, z, d, b);
  fail(ErrorKind::Input, "theorem '" + theorem + "' does not apply here");
}

std::string default_theorem(const BehaviouralDataset& data) {
  return data.domains.empty() ? "intervention" : "multidomain";
}

std::pair<Assignment, double> parse_sigma(const std::string& text, const BehaviouralDataset& data) {
  auto colon = text.rfind(':');
  if (colon == std::string::npos) fail(ErrorKind::Input, "--sigma-context expects NAME=VALUE:PROB");
  Assignment c = parse_assignment(text.substr(0, colon), scope_of(data));
  const std::string p = text.substr(colon + 1);
  char* end = nullptr;
  double v = std::strtod(p.c_str(), &end);
  if (p.empty() || *end != '\0' || !std::isfinite(v) || v < 0.0 || v > 1.0)
    fail(ErrorKind::Input, "--sigma-context probability must lie in [0,1]");
  return {c, v};
}

int cmd_bounds(const Args& a, std::ostream& out, Json& report_out) {
  Loaded l = load(a);
  const std::string theorem = a.theorem.empty() ? "intervention" : a.theorem;
  Args echo = a;
  echo.theorem = theorem;
  Report r("bounds", request_of(echo, l, "bounds"));
  r.data = l.data ? &*l.data : nullptr;

  if (theorem == "unknown-shift") {
    if (!l.data) {
      r.add(unknown_shift_gap_interval(), std::nullopt, std::nullopt);
    } else {
      for (auto [d, b] : chosen_pairs(*l.data, a)) r.add(unknown_shift_gap_interval(), d, b);
    }
    report_out = r.j;
    return 0;
  }

  const BehaviouralDataset& data = need_data(l);
  if (theorem == "intervention" || theorem == "multidomain") {
    for (auto [d, b] : chosen_pairs(data, a)) r.add(preference(theorem, data, l.context, l.shift, d, b), d, b);
  } else if (theorem == "covariate-shift") {
    if (a.sigma_context.empty()) fail(ErrorKind::Input, "covariate-shift needs --sigma-context");
    auto [c_sigma, p] = parse_sigma(a.sigma_context, data);
    const Assignment c = a.context_set ? l.context : c_sigma;
    const Assignment z = a.shift_set ? l.shift : c;
    r.j["request"]["sigma_context"] = a.sigma_context;
    r.j["request"]["shift"] = format_assignment(z, scope_of(data));
    r.j["request"]["context"] = format_assignment(c, scope_of(data));
    for (auto [d, b] : chosen_pairs(data, a)) r.add(covariate_shift_gap_interval(data, p, c, z, d, b), d, b);
  } else if (theorem == "fairness") {
    if (a.z0.empty()) fail(ErrorKind::Input, "fairness needs --z0");
    const Assignment z0 = parse_assignment(a.z0, scope_of(data));
    r.j["request"]["z0"] = a.z0;
    for (int d : chosen_decisions(data, a)) r.add(fairness_gap_interval(data, d, z0, l.context), d, std::nullopt);
  } else if (theorem == "harm") {
    for (auto [d, b] : chosen_pairs(data, a)) r.add(harm_gap_interval(data, d, b, l.context), d, b);
  } else if (theorem == "direct-discrimination") {
    if (a.z0.empty() || a.z1.empty()) fail(ErrorKind::Input, "direct-discrimination needs --z0 and --z1");
    const Assignment z0 = parse_assignment(a.z0, scope_of(data));
    const Assignment z1 = parse_assignment(a.z1, scope_of(data));
    r.j["request"]["z0"] = a.z0;
    r.j["request"]["z1"] = a.z1;
    for (int d : chosen_decisions(data, a))
      r.add(direct_discrimination_interval(data, d, z0, z1, l.context), d, std::nullopt);
  } else if (theorem == "causal-harm") {
    if (!data.observational) fail(ErrorKind::Input, "causal-harm needs logged data that includes the decision");
    for (auto [d, b] : chosen_pairs(data, a))
      r.add(causal_harm_interval(*data.observational, data.decision.name, data.utility, d, b, l.context), d, b);
  } else {
    fail(ErrorKind::Input, "unknown theorem '" + theorem + "'");
  }
  (void)out;
  report_out = r.j;
  return 0;
}

int cmd_predict(const Args& a, Json& report_out) {
  Loaded l = load(a);
  const BehaviouralDataset& data = need_data(l);
  Args echo = a;
  echo.theorem = a.theorem.empty() ? default_theorem(data) : a.theorem;
  if (a.mode != "weak" && a.mode != "strong") fail(ErrorKind::Input, "--mode must be weak or strong");
  Report r("predict", request_of(echo, l, "predict"));
  r.data = &data;

  std::vector<int> decisions = data.decisions();
  std::map<std::pair<int, int>, GapInterval> seen;
  GapLowerFn bound = [&](int d, int b) {
    auto it = seen.find({d, b});
    if (it == seen.end()) it = seen.emplace(std::pair{d, b}, preference(echo.theorem, data, l.context, l.shift, d, b)).first;
    return it->second.lower;
  };
  PredictabilityVerdict v =
      a.mode == "weak" ? weak_verdict(bound, decisions, a.lambda) : strong_verdict(bound, decisions, a.lambda);
  for (const auto& [pair, g] : seen) r.add(g, pair.first, pair.second);

  auto labels = [&](const std::vector<int>& xs) {
    Json arr = Json::array();
    for (int x : xs) arr.push_back(data.decision.format(x));
    return arr;
  };
  Json vj;
  vj["mode"] = a.mode;
  vj["lambda"] = a.lambda;
  vj["ruled_out"] = labels(v.ruled_out);
  vj["surviving"] = labels(v.surviving);
  vj["strong_winner"] = label(&data, v.strong_winner);
  vj["pairwise_dominance"] = v.pairwise_dominance;
  vj["certificates"] = Json::array();
  for (const auto& c : v.certificates)
    vj["certificates"].push_back({{"ruled_out", data.decision.format(c.d_star)},
                                  {"by", data.decision.format(c.d)},
                                  {"lower", finite(c.lower)}});
  r.j["verdict"] = vj;
  report_out = r.j;

  if (!a.require_verdict) return 0;
  const bool has = a.mode == "weak" ? !v.ruled_out.empty() : v.strong_winner.has_value();
  return has ? 0 : 3;
}

int cmd_oracle(const Args& a, Json& report_out) {
  Loaded l = load(a);
  const BehaviouralDataset& data = need_data(l);
  if (!l.skeleton) fail(ErrorKind::Input, "oracle needs --skeleton or a skeleton in the data file");
  if (a.direction != "min" && a.direction != "max" && a.direction != "both")
    fail(ErrorKind::Input, "--direction must be min, max or both");
  if (!(a.tol >= 0.0)) fail(ErrorKind::Input, "--tol must be non-negative");
  Args echo = a;
  echo.theorem = a.theorem.empty() ? default_theorem(data) : a.theorem;
  Report r("oracle", request_of(echo, l, "oracle"));
  r.data = &data;

  Polytope poly = build_polytope(data, *l.skeleton);
  r.j["oracle"] = Json::array();
  bool disagree = false;
  for (auto [d, b] : chosen_pairs(data, a)) {
    GapInterval g = preference(echo.theorem, data, l.context, l.shift, d, b);
    r.add(g, d, b);
    for (Direction dir : {Direction::Min, Direction::Max}) {
      if (a.direction == "min" && dir == Direction::Max) continue;
      if (a.direction == "max" && dir == Direction::Min) continue;
      GapOptimum opt = optimize_gap(poly, l.shift, l.context, d, b, dir);
      const double closed = dir == Direction::Min ? g.lower : g.upper;
      const double delta = opt.value - closed;
      const bool ok = std::abs(delta) <= a.tol;
      disagree = disagree || !ok;
      r.j["oracle"].push_back({{"decision", data.decision.format(d)},
                               {"baseline", data.decision.format(b)},
                               {"direction", dir == Direction::Min ? "min" : "max"},
                               {"lp", finite(opt.value)},
                               {"closed_form", finite(closed)},
                               {"delta", finite(delta)},
                               {"tight", ok},
                               {"atoms", poly.space.size()}});
    }
  }
  report_out = r.j;
  return disagree ? 4 : 0;
}

int cmd_relax(const Args& a, Json& report_out) {
  Loaded l = load(a);
  const BehaviouralDataset& data = need_data(l);
  Report r("relax", request_of(a, l, "relax"));
  r.data = &data;
  r.j["relaxation"] = Json::array();

  if (a.method == "exact" || a.method == "sample") {
    if (!a.delta) fail(ErrorKind::Input, "--delta is required");
    GroundingBall ball = GroundingBall::around(data, *a.delta);
    r.j["request"]["delta"] = *a.delta;
    if (a.method == "sample") {
      if (!a.seed) fail(ErrorKind::Input, "sampling needs --seed");
      r.j["seed"] = *a.seed;
      r.j["request"]["proposals"] = a.proposals;
      r.j["request"]["concentration"] = a.concentration;
    }
    for (auto [d, b] : chosen_pairs(data, a)) {
      GapInterval grounded = intervention_gap_interval(data, l.context, l.shift, d, b);
      r.add(grounded, d, b);
      Json e{{"decision", data.decision.format(d)}, {"baseline", data.decision.format(b)}, {"method", a.method}};
      e["delta"] = *a.delta;
      e["grounded_lower"] = finite(grounded.lower);
      if (a.method == "exact") {
        e["value"] = finite(approx_grounding_lower_exact(ball, data.utility, l.context, l.shift, d, b));
      } else {
        SamplerOptions opt;
        opt.proposals = a.proposals;
        opt.seed = *a.seed;
        opt.concentration = a.concentration;
        SampledLower s = approx_grounding_lower_sampled(ball, data.utility, l.context, l.shift, d, b, opt);
        e["value"] = finite(s.value);
        e["accepted"] = s.accepted;
        e["proposals"] = s.proposals;
      }
      r.j["relaxation"].push_back(std::move(e));
    }
  } else if (a.method == "proxy") {
    if (!a.alpha) fail(ErrorKind::Input, "--alpha is required");
    r.j["request"]["alpha"] = *a.alpha;
    for (auto [d, b] : chosen_pairs(data, a))
      r.j["relaxation"].push_back({{"decision", data.decision.format(d)},
                                   {"baseline", data.decision.format(b)},
                                   {"method", a.method},
                                   {"alpha", *a.alpha},
                                   {"value", finite(proxy_alignment_lower(data, *a.alpha, l.shift, d, b))}});
  } else if (a.method == "unconfounded") {
    if (a.covariate.empty()) fail(ErrorKind::Input, "--covariate is required");
    r.j["request"]["covariate"] = a.covariate;
    for (auto [d, b] : chosen_pairs(data, a))
      r.add(partial_unconfoundedness_interval(data, a.covariate, l.shift, d, b), d, b);
  } else {
    fail(ErrorKind::Input, "--method must be exact, sample, proxy or unconfounded");
  }
  report_out = r.j;
  return 0;
}

int cmd_eval(const Args& a, std::ostream& out) {
  Loaded l = load(a);
  DatasetFile f{need_data(l), l.skeleton, l.shift, l.context};
  out << dataset_to_json(f).dump(2) << "\n";
  return 0;
}

std::string num(const Json& v) {
  if (v.is_null()) return "-";
  if (!v.is_number()) return v.is_string() ? v.get<std::string>() : v.dump();
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v.get<double>());
  return buf;
}

void render_table(const Json& r, std::ostream& out) {
  out << r["tool"].get<std::string>() << " " << r["version"].get<std::string>() << "  " << r["command"].get<std::string>()
      << "\n";
  for (const auto& [k, v] : r["request"].items()) out << "  " << k << ": " << num(v) << "\n";
  if (!r["intervals"].empty()) {
    out << "intervals\n";
    for (const auto& e : r["intervals"]) {
      std::string pair = num(e["decision"]);
      if (!e["baseline"].is_null()) pair += " vs " + num(e["baseline"]);
      out << "  " << pair << "  " << e["source"].get<std::string>() << "  [" << num(e["lower"]) << ", "
          << num(e["upper"]) << "]" << (e["tight"].get<bool>() ? "  tight" : "") << "\n";
    }
  }
  if (!r["verdict"].is_null()) {
    const Json& v = r["verdict"];
    auto join = [](const Json& arr) {
      std::string s;
      for (const auto& x : arr) s += (s.empty() ? "" : ",") + x.get<std::string>();
      return s.empty() ? std::string("-") : s;
    };
    out << "verdict (" << v["mode"].get<std::string>() << ", lambda " << num(v["lambda"]) << ")\n"
        << "  ruled out: " << join(v["ruled_out"]) << "\n"
        << "  surviving: " << join(v["surviving"]) << "\n"
        << "  winner: " << num(v["strong_winner"]) << "\n";
  }
  if (!r["oracle"].is_null()) {
    out << "oracle\n";
    for (const auto& e : r["oracle"])
      out << "  " << num(e["decision"]) << " vs " << num(e["baseline"]) << "  " << num(e["direction"]) << "  lp "
          << num(e["lp"]) << "  closed " << num(e["closed_form"]) << "  delta " << num(e["delta"])
          << (e["tight"].get<bool>() ? "  ok" : "  MISMATCH") << "\n";
  }
  if (!r["relaxation"].is_null() && !r["relaxation"].empty()) {
    out << "relaxation\n";
    for (const auto& e : r["relaxation"])
      out << "  " << num(e["decision"]) << " vs " << num(e["baseline"]) << "  " << num(e["method"]) << "  "
          << num(e["value"]) << "\n";
  }
  for (const auto& w : r["warnings"]) out << "warning: " << w.get<std::string>() << "\n";
}

void add_common(CLI::App* sub, Args& a, bool pairs = true) {
  sub->add_option("--data", a.data_path, "Tables JSON, model JSON, or CSV log");
  sub->add_option("--format", a.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  sub->add_option("--shift", a.shift, "Shift, e.g. Z=1")->each([&a](const std::string&) { a.shift_set = true; });
  sub->add_option("--context", a.context, "Context, e.g. Z=1")->each([&a](const std::string&) { a.context_set = true; });
  sub->add_option("--policy-context", a.policy_context, "Variables the logging policy read (CSV input)")
      ->each([&a](const std::string&) { a.policy_context_set = true; });
  sub->add_option("--decision-var", a.decision_var, "Decision column (CSV input)");
  sub->add_option("--utility", a.utility, "Utility column (CSV input)");
  sub->add_option("--experiment", a.experiments, "Experimental domain for model input, e.g. Z=1");
  if (pairs) {
    sub->add_option("--decision", a.decision, "Preferred decision");
    sub->add_option("--baseline", a.baseline, "Compared decision");
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Args a;
  CLI::App app{"Bounds on what an agent's behaviour reveals about its preferences under shift", "beliefbound"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  auto* bounds = app.add_subcommand("bounds", "Closed-form gap intervals");
  add_common(bounds, a);
  bounds->add_option("--theorem", a.theorem,
                     "intervention, multidomain, unknown-shift, covariate-shift, fairness, harm, "
                     "direct-discrimination or causal-harm");
  bounds->add_option("--sigma-context", a.sigma_context, "Shifted context law, e.g. Z=1:0.9");
  bounds->add_option("--z0", a.z0, "Protected attribute baseline value");
  bounds->add_option("--z1", a.z1, "Protected attribute flipped value");

  auto* predict = app.add_subcommand("predict", "Weak or strong predictability verdict");
  add_common(predict, a, false);
  predict->add_option("--theorem", a.theorem, "intervention or multidomain");
  predict->add_option("--mode", a.mode, "weak or strong");
  predict->add_option("--lambda", a.lambda, "Margin a lower bound must exceed");
  predict->add_flag("--require-verdict", a.require_verdict, "Exit 3 when nothing is ruled out");

  auto* oracle = app.add_subcommand("oracle", "Certify closed forms against the exact program");
  add_common(oracle, a);
  oracle->add_option("--theorem", a.theorem, "intervention or multidomain");
  oracle->add_option("--skeleton", a.skeleton, "Declared parents, e.g. \"Z<-; Y<-D,Z\"");
  oracle->add_option("--direction", a.direction, "min, max or both");
  oracle->add_option("--tol", a.tol, "Largest accepted |lp - closed form|");

  auto* relax = app.add_subcommand("relax", "Bounds under relaxed grounding");
  add_common(relax, a);
  relax->add_option("--method", a.method, "exact, sample, proxy or unconfounded")->required();
  relax->add_option("--delta", a.delta, "Total-variation radius");
  relax->add_option("--alpha", a.alpha, "Proxy alignment");
  relax->add_option("--seed", a.seed, "Sampler seed");
  relax->add_option("--proposals", a.proposals, "Sampler proposals");
  relax->add_option("--concentration", a.concentration, "Dirichlet concentration");
  relax->add_option("--covariate", a.covariate, "Binary covariate that makes Y unconfounded");

  auto* eval = app.add_subcommand("eval", "Convert input into a tables file");
  add_common(eval, a, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    Json report;
    int code = 0;
    if (*eval) return cmd_eval(a, out);
    if (*bounds) code = cmd_bounds(a, out, report);
    if (*predict) code = cmd_predict(a, report);
    if (*oracle) code = cmd_oracle(a, report);
    if (*relax) code = cmd_relax(a, report);
    if (a.format == "table") {
      render_table(report, out);
    } else {
      out << report.dump(2) << "\n";
    }
    return code;
  } catch (const Error& e) {
    std::string msg = e.what();
    for (char& ch : msg)
      if (ch == '\n') ch = ' ';
    err << "error: " << to_string(e.kind()) << ": " << msg << "\n";
    return e.kind() == ErrorKind::AtomLimit ? 5 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace beliefbound
