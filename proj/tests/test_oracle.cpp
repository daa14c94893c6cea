#include "doctest.h"

#include <cstdlib>
#include <set>

#include "beliefbound/bounds.hpp"
#include "beliefbound/io.hpp"
#include "beliefbound/oracle.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace beliefbound;
using namespace beliefbound::testing;
using doctest::Approx;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Internal;
}

const Assignment kZ1{{"Z", 1}};
const char* kMedaiSkeleton = "Z<-; Y<-D,Z";

// Delta(d over d_star) under do(z) given c, by enumerating the model.
double model_gap(const Scm& m, const Assignment& z, const Assignment& c, int d, int d_star) {
  auto term = [&](int dv) {
    Intervention iv = z;
    iv["D"] = dv;
    return expectation(joint_distribution(submodel(m, iv)), "Y", c);
  };
  return term(d) - term(d_star);
}

// Largest per-cell gap between the model's interventional laws and the data.
double reproduction_error(const Scm& m, const BehaviouralDataset& data) {
  double worst = 0.0;
  for (int d : data.decisions()) {
    const DistTable& want = data.table(d);
    DistTable got = joint_distribution(submodel(m, {{"D", d}})).marginal(want.names());
    for (const auto& [key, p] : want.entries()) worst = std::max(worst, std::abs(p - got.probability(want.assignment(key))));
    for (const auto& [key, p] : got.entries()) worst = std::max(worst, std::abs(p - want.probability(got.assignment(key))));
  }
  return worst;
}

class AtomLimitEnv {
 public:
  explicit AtomLimitEnv(const char* value) { setenv("BELIEFBOUND_ATOM_LIMIT", value, 1); }
  ~AtomLimitEnv() { unsetenv("BELIEFBOUND_ATOM_LIMIT"); }
};

}  // namespace

TEST_CASE("skeleton parsing") {
  Skeleton s = parse_skeleton(kMedaiSkeleton);
  REQUIRE(s.size() == 2);
  CHECK(s[0].name == "Z");
  CHECK(s[0].parents.empty());
  CHECK(s[1].parents == std::vector<std::string>{"D", "Z"});
  CHECK(to_string(s) == "Z<-; Y<-D,Z");
  CHECK(to_string(parse_skeleton(to_string(s))) == to_string(s));
  CHECK(kind_of([] { parse_skeleton("Z"); }) == ErrorKind::Input);
  CHECK(kind_of([] { parse_skeleton(" ; "); }) == ErrorKind::Input);
}

TEST_CASE("canonical atom counts") {
  CanonicalAtomSpace space({binary("Z"), binary("Y")}, decision_variable(), parse_skeleton(kMedaiSkeleton), 1000);
  CHECK(space.response_count("Z") == 2);
  CHECK(space.response_count("Y") == 16);
  CHECK(space.size() == 32);

  CanonicalAtomSpace lone({binary("Y")}, decision_variable(), parse_skeleton("Y<-"), 1000);
  CHECK(lone.size() == 2);

  CHECK(kind_of([] {
          CanonicalAtomSpace({binary("Z"), binary("Y")}, decision_variable(), parse_skeleton("Y<-D,Z; Z<-"), 1000);
        }) == ErrorKind::Input);
  CHECK(kind_of([] { CanonicalAtomSpace({binary("Z"), binary("Y")}, decision_variable(), parse_skeleton("Y<-"), 1000); }) ==
        ErrorKind::Input);
}

TEST_CASE("every response function appears exactly once") {
  CanonicalAtomSpace space({binary("Z"), binary("Y")}, decision_variable(), parse_skeleton(kMedaiSkeleton), 1000);
  std::set<std::vector<int>> seen;
  for (std::size_t a = 0; a < space.size(); ++a) {
    std::vector<int> signature;
    signature.push_back(space.evaluate(a, {{"D", 0}}).at("Z"));
    for (int d : {0, 1})
      for (int z : {0, 1}) signature.push_back(space.evaluate(a, {{"D", d}, {"Z", z}}).at("Y"));
    seen.insert(signature);
  }
  CHECK(seen.size() == 32);
}

TEST_CASE("medical polytope") {
  Polytope p = build_polytope(medai_data(), parse_skeleton(kMedaiSkeleton));
  CHECK(p.space.size() == 32);
  CHECK(p.data_rows == 8);
  CHECK(p.rows.size() == 9);
  CHECK(p.labels.size() == p.rows.size());
  for (double v : p.rows.back()) CHECK(v == 1.0);

  std::vector<double> x = feasible_point(p);
  REQUIRE(x.size() == 32);
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    double lhs = 0.0;
    for (std::size_t a = 0; a < x.size(); ++a) lhs += p.rows[i][a] * x[a];
    CHECK(lhs == Approx(p.rhs[i]).epsilon(1e-12));
  }
}

TEST_CASE("single binary utility") {
  BehaviouralDataset data;
  data.decision = decision_variable();
  for (int d : {0, 1})
    data.per_decision[d] = DistTable({binary("Y")}, std::map<DistTable::Key, double>{{{0}, 0.3}, {{1}, 0.7}});
  Polytope p = build_polytope(data, parse_skeleton("Y<-"));
  CHECK(p.space.size() == 2);
  std::vector<double> x = feasible_point(p);
  double mean = 0.0;
  for (std::size_t a = 0; a < 2; ++a) mean += x[a] * p.space.evaluate(a, {{"D", 0}}).at("Y");
  CHECK(mean == Approx(0.7).epsilon(1e-12));
}

TEST_CASE("oracle matches the closed form on the medical data") {
  Polytope p = build_polytope(medai_data(), parse_skeleton(kMedaiSkeleton));
  CHECK(optimize_gap(p, kZ1, kZ1, 1, 0, Direction::Min).value == Approx(-0.4).epsilon(1e-9));
  CHECK(optimize_gap(p, kZ1, kZ1, 0, 1, Direction::Min).value == Approx(-0.8).epsilon(1e-9));
  CHECK(optimize_gap(p, kZ1, kZ1, 1, 0, Direction::Max).value == Approx(0.8).epsilon(1e-9));

  Polytope u = build_polytope(uniform_data(), parse_skeleton(kMedaiSkeleton));
  CHECK(optimize_gap(u, kZ1, kZ1, 1, 0, Direction::Min).value == Approx(-0.5).epsilon(1e-9));
  CHECK(optimize_gap(u, kZ1, kZ1, 1, 0, Direction::Min).value ==
        Approx(intervention_gap_interval(uniform_data(), kZ1, kZ1, 1, 0).lower).epsilon(1e-9));
}

TEST_CASE("oracle optimum is attained by its own point") {
  Polytope p = build_polytope(medai_data(), parse_skeleton(kMedaiSkeleton));
  for (Direction dir : {Direction::Min, Direction::Max}) {
    GapOptimum opt = optimize_gap(p, kZ1, kZ1, 1, 0, dir);
    Scm m = canonical_scm(p, opt.point);
    CHECK(model_gap(m, kZ1, kZ1, 1, 0) == Approx(opt.value).epsilon(1e-9));
    CHECK(reproduction_error(m, medai_data()) < 1e-9);
  }
}

TEST_CASE("oracle matches the closed form on random data") {
  Gen g(505);
  const Skeleton sk = parse_skeleton(kContextSkeleton);
  int compared = 0;
  for (int trial = 0; trial < 50; ++trial) {
    Scm m = random_context_model(g, 2, g.integer(2, 6));
    BehaviouralDataset data = dataset_from_scm(m, "D", "Y");
    Polytope p = build_polytope(data, sk);
    for (const Assignment& c : {Assignment{}, Assignment{{"X", 1}}, kZ1}) {
      for (int d : {0, 1}) {
        GapInterval closed;
        double lo, hi;
        try {
          closed = intervention_gap_interval(data, c, kZ1, d, 1 - d);
          lo = optimize_gap(p, kZ1, c, d, 1 - d, Direction::Min).value;
          hi = optimize_gap(p, kZ1, c, d, 1 - d, Direction::Max).value;
        } catch (const Error& e) {
          CHECK(e.kind() == ErrorKind::Domain);
          continue;
        }
        CHECK(std::abs(lo - closed.raw_lower) <= 1e-9);
        CHECK(std::abs(hi - closed.raw_upper) <= 1e-9);
        ++compared;
      }
    }
  }
  CHECK(compared >= 200);
}

TEST_CASE("every feasible model lies between the oracle extremes") {
  Gen g(606);
  const Skeleton sk = parse_skeleton(kContextSkeleton);
  int checked = 0;
  while (checked < 100) {
    Scm hidden = random_context_model(g, 2, g.integer(2, 6));
    BehaviouralDataset data = dataset_from_scm(hidden, "D", "Y");
    Polytope p = build_polytope(data, sk);
    const Assignment c = g.coin() ? Assignment{} : kZ1;
    const double lo = optimize_gap(p, kZ1, c, 1, 0, Direction::Min).value;
    const double hi = optimize_gap(p, kZ1, c, 1, 0, Direction::Max).value;
    for (int k = 0; k < 5; ++k) {
      std::vector<double> objective(p.space.size());
      for (double& v : objective) v = 2.0 * g.unit() - 1.0;
      Scm m = canonical_scm(p, feasible_point(p, objective));
      CHECK(reproduction_error(m, data) < 1e-9);
      const double gap = model_gap(m, kZ1, c, 1, 0);
      CHECK(gap >= lo - 1e-9);
      CHECK(gap <= hi + 1e-9);
      ++checked;
    }
    const double truth = model_gap(hidden, kZ1, c, 1, 0);
    CHECK(truth >= lo - 1e-9);
    CHECK(truth <= hi + 1e-9);
  }
}

TEST_CASE("feasible models reproduce the data") {
  Scm m = feasible_scm(build_polytope(medai_data(), parse_skeleton(kMedaiSkeleton)));
  CHECK(reproduction_error(m, medai_data()) < 1e-9);

  Scm u = feasible_scm(build_polytope(uniform_data(), parse_skeleton(kMedaiSkeleton)));
  CHECK(reproduction_error(u, uniform_data()) < 1e-9);

  BehaviouralDataset point;
  point.decision = decision_variable();
  for (int d : {0, 1}) point.per_decision[d] = yz_table({{d, 1, 1.0}});
  Scm pm = feasible_scm(build_polytope(point, parse_skeleton(kMedaiSkeleton)));
  CHECK(reproduction_error(pm, point) < 1e-12);
  CHECK(pm.exo().atoms.size() == 1);
}

TEST_CASE("inconsistent data has no model") {
  BehaviouralDataset bad;
  bad.decision = decision_variable();
  bad.per_decision[0] = yz_table({{1, 1, 0.4}, {0, 0, 0.6}});
  bad.per_decision[1] = yz_table({{1, 1, 0.6}, {0, 0, 0.4}});
  try {
    build_polytope(bad, parse_skeleton(kMedaiSkeleton));
    FAIL("expected a data error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Data);
    CHECK(std::string(e.what()).find("infeasible polytope") != std::string::npos);
  }
}

TEST_CASE("atom limit") {
  CHECK(default_atom_limit() == 1000000);
  CHECK(kind_of([] { build_polytope(medai_data(), parse_skeleton(kMedaiSkeleton), 31); }) == ErrorKind::AtomLimit);
  CHECK_NOTHROW(build_polytope(medai_data(), parse_skeleton(kMedaiSkeleton), 32));
  {
    AtomLimitEnv env("10");
    CHECK(default_atom_limit() == 10);
    CHECK(kind_of([] { build_polytope(medai_data(), parse_skeleton(kMedaiSkeleton)); }) == ErrorKind::AtomLimit);
  }
  {
    AtomLimitEnv env("ten");
    CHECK(kind_of([] { default_atom_limit(); }) == ErrorKind::Input);
  }
}

TEST_CASE("decision-dependent contexts are refused") {
  BehaviouralDataset data = medai_data();
  Polytope p = build_polytope(data, parse_skeleton(kMedaiSkeleton));
  CHECK(kind_of([&] { optimize_gap(p, {{"Z", 1}}, {{"Y", 1}}, 1, 0, Direction::Min); }) == ErrorKind::Unsupported);
}

TEST_CASE("intervention witness on the medical model") {
  Scm base = medai_model();
  Scm low = intervention_witness_scm(base, "D", "Y", kZ1, kZ1, 1, 0);
  CHECK(model_gap(low, kZ1, kZ1, 1, 0) == Approx(-0.4).epsilon(1e-9));
  CHECK(reproduction_error(low, medai_data()) < 1e-12);

  Scm swapped = intervention_witness_scm(base, "D", "Y", kZ1, kZ1, 0, 1);
  CHECK(model_gap(swapped, kZ1, kZ1, 0, 1) == Approx(-0.8).epsilon(1e-9));
  CHECK(reproduction_error(swapped, medai_data()) < 1e-12);

  Scm from_oracle = feasible_scm(build_polytope(medai_data(), parse_skeleton(kMedaiSkeleton)));
  Scm w = intervention_witness_scm(from_oracle, "D", "Y", kZ1, kZ1, 1, 0);
  CHECK(model_gap(w, kZ1, kZ1, 1, 0) == Approx(-0.4).epsilon(1e-9));
  CHECK(reproduction_error(w, medai_data()) < 1e-9);

  CHECK(kind_of([&] { intervention_witness_scm(base, "D", "Y", {}, kZ1, 1, 0); }) == ErrorKind::Input);
  CHECK(kind_of([&] { intervention_witness_scm(base, "D", "Y", kZ1, {{"Y", 1}}, 1, 0); }) == ErrorKind::Input);
}

TEST_CASE("intervention witness when the shifted value is certain") {
  Variable u = Variable::numeric("U", {0, 1});
  Variable d = decision_variable(), z = binary("Z"), y = binary("Y");
  Mechanism my = tabulate("Y", {d, z}, {u}, [](const Assignment& a) { return a.at("U") == 1 || a.at("D") == 1; });
  ExoDistribution exo{{{{{"U", 0}}, 0.5, std::nullopt}, {{{"U", 1}}, 0.5, std::nullopt}}};
  Scm base({d, z, y}, {u}, {Mechanism::constant("D", 0), Mechanism::constant("Z", 1), my}, exo);
  Scm w = intervention_witness_scm(base, "D", "Y", kZ1, {}, 1, 0);
  CHECK(model_gap(w, kZ1, {}, 1, 0) == Approx(0.5).epsilon(1e-12));
  CHECK(model_gap(base, kZ1, {}, 1, 0) == Approx(0.5).epsilon(1e-12));
}

TEST_CASE("intervention witnesses attain the closed-form lower bound") {
  Gen g(707);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Scm base = random_context_model(g, g.integer(2, 3), g.integer(2, 6));
    BehaviouralDataset data = dataset_from_scm(base, "D", "Y");
    const Assignment z{{"Z", g.integer(0, 1)}};
    const Assignment choices[] = {{}, {{"X", 1}}, {{"X", 0}}, z};
    const Assignment& c = choices[g.integer(0, 3)];
    const auto ds = data.decisions();
    const int d1 = ds[0], d0 = ds.back();
    GapInterval closed;
    try {
      closed = intervention_gap_interval(data, c, z, d1, d0);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Domain);
      continue;
    }
    Scm w = intervention_witness_scm(base, "D", "Y", z, c, d1, d0);
    CHECK(reproduction_error(w, data) < 1e-12);
    CHECK(model_gap(w, z, c, d1, d0) == Approx(closed.raw_lower).epsilon(1e-9));
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("response tables reproduce the observed law") {
  const BehaviouralDataset data = medai_data();
  const DistTable& t = data.table(1);
  for (ResponseForm form : {ResponseForm::NoConstantOne, ResponseForm::NoConstantZero}) {
    ResponseTable r = response_table(t, "Z", "Y", form);
    DistTable got = joint_distribution(response_scm(r));
    CHECK(total_variation(got, t) < 1e-12);
  }
  ResponseTable r = response_table(t, "Z", "Y", ResponseForm::NoConstantOne);
  CHECK(r[0][3] == 0.0);
  CHECK(r[1][3] == 0.0);
}

TEST_CASE("unknown-shift witnesses reach both extremes") {
  BehaviouralDataset data = medai_data();
  auto y_rate = [](const Scm& m) { return joint_distribution(m).probability({{"Y", 1}}); };
  for (int d : {0, 1}) {
    const int s = 1 - d;
    ShiftWitnesses wd = unknown_shift_witnesses(response_table(data.table(d), "Z", "Y", ResponseForm::NoConstantOne));
    ShiftWitnesses ws = unknown_shift_witnesses(response_table(data.table(s), "Z", "Y", ResponseForm::NoConstantZero));
    CHECK(y_rate(wd.low) - y_rate(ws.high) == Approx(-1.0).epsilon(1e-12));
    ShiftWitnesses hd = unknown_shift_witnesses(response_table(data.table(d), "Z", "Y", ResponseForm::NoConstantZero));
    ShiftWitnesses hs = unknown_shift_witnesses(response_table(data.table(s), "Z", "Y", ResponseForm::NoConstantOne));
    CHECK(y_rate(hd.high) - y_rate(hs.low) == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("unknown-shift witnesses preserve response-type mass") {
  Gen g(808);
  for (int trial = 0; trial < 100; ++trial) {
    ResponseTable t{};
    std::vector<double> w = g.simplex(8);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 4; ++b) t[a][b] = w[static_cast<std::size_t>(a * 4 + b)];
    ShiftWitnesses s = unknown_shift_witnesses(t);
    for (int b = 0; b < 4; ++b) {
      CHECK(s.low_table[0][b] + s.low_table[1][b] == Approx(t[0][b] + t[1][b]).epsilon(1e-15));
      CHECK(s.high_table[0][b] + s.high_table[1][b] == Approx(t[0][b] + t[1][b]).epsilon(1e-15));
    }
    const double y_low = joint_distribution(s.low).probability({{"Y", 1}});
    const double y_high = joint_distribution(s.high).probability({{"Y", 1}});
    CHECK(y_low == Approx(t[0][3] + t[1][3]).epsilon(1e-12));
    CHECK(y_high == Approx(1.0 - t[0][0] - t[1][0]).epsilon(1e-12));
  }
}

TEST_CASE("unknown-shift witnesses on certain success") {
  DistTable sure = yz_table({{1, 0, 0.5}, {1, 1, 0.5}});
  ShiftWitnesses s = unknown_shift_witnesses(response_table(sure, "Z", "Y", ResponseForm::NoConstantZero));
  CHECK(joint_distribution(s.low).probability({{"Y", 1}}) == Approx(1.0).epsilon(1e-15));
  CHECK(joint_distribution(s.high).probability({{"Y", 1}}) == Approx(1.0).epsilon(1e-15));
}
