#include "doctest.h"

#include "beliefbound/core.hpp"
#include "beliefbound/lp.hpp"
#include "support/generators.hpp"

using namespace beliefbound;
using namespace beliefbound::lp;
using beliefbound::testing::Gen;
using doctest::Approx;

namespace {

Constraint row(std::vector<double> coeffs, Sense s, double rhs) { return {std::move(coeffs), s, rhs}; }

}  // namespace

TEST_CASE("textbook maximisation") {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6)
  Problem p{2, {3, 5}, {row({1, 0}, Sense::LessEqual, 4), row({0, 2}, Sense::LessEqual, 12),
                        row({3, 2}, Sense::LessEqual, 18)}, true};
  Solution s = solve(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.value == Approx(36.0));
  CHECK(s.x[0] == Approx(2.0));
  CHECK(s.x[1] == Approx(6.0));
}

TEST_CASE("minimisation with equality and lower-bound rows") {
  // min 2x + 3y, x + y = 10, x >= 3, y >= 2 -> 22 at (8, 2)
  Problem p{2, {2, 3}, {row({1, 1}, Sense::Equal, 10), row({1, 0}, Sense::GreaterEqual, 3),
                        row({0, 1}, Sense::GreaterEqual, 2)}, false};
  Solution s = solve(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.value == Approx(22.0));
  CHECK(s.x[0] == Approx(8.0));
}

TEST_CASE("negative right-hand sides are normalised") {
  // min x, -x <= -2 -> 2
  Problem p{1, {1}, {row({-1}, Sense::LessEqual, -2)}, false};
  Solution s = solve(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.value == Approx(2.0));
}

TEST_CASE("infeasible and unbounded problems") {
  Problem infeasible{2, {1, 1}, {row({1, 1}, Sense::Equal, 1), row({1, 1}, Sense::Equal, 2)}, false};
  CHECK(solve(infeasible).status == Status::Infeasible);
  Problem unbounded{2, {1, 0}, {row({1, -1}, Sense::LessEqual, 1)}, true};
  CHECK(solve(unbounded).status == Status::Unbounded);
}

TEST_CASE("redundant equality rows") {
  Problem p{3, {1, 2, 3}, {row({1, 1, 1}, Sense::Equal, 1), row({2, 2, 2}, Sense::Equal, 2),
                           row({1, 0, 0}, Sense::LessEqual, 0.5)}, true};
  Solution s = solve(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.value == Approx(3.0));
}

TEST_CASE("Beale's cycling example terminates") {
  // min -3/4 x4 + 150 x5 - 1/50 x6 + 6 x7 -> -1/20 at x4 = 1/25, x6 = 1
  Problem p{4,
            {-0.75, 150, -0.02, 6},
            {row({0.25, -60, -0.04, 9}, Sense::LessEqual, 0), row({0.5, -90, -0.02, 3}, Sense::LessEqual, 0),
             row({0, 0, 1, 0}, Sense::LessEqual, 1)},
            false};
  Solution s = solve(p);
  REQUIRE(s.status == Status::Optimal);
  CHECK(s.value == Approx(-0.05));
  CHECK(s.x[0] == Approx(0.04));
  CHECK(s.x[2] == Approx(1.0));
}

TEST_CASE("width mismatches are internal errors") {
  Problem p{2, {1}, {}, false};
  CHECK_THROWS_AS(solve(p), Error);
  Problem q{2, {1, 1}, {row({1}, Sense::Equal, 1)}, false};
  CHECK_THROWS_AS(solve(q), Error);
}

TEST_CASE("optimum over the simplex picks the best vertex") {
  Gen g(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(g.integer(2, 12));
    std::vector<double> c(n);
    for (double& v : c) v = 2.0 * g.unit() - 1.0;
    Problem p{n, c, {row(std::vector<double>(n, 1.0), Sense::Equal, 1.0)}, g.coin()};
    Solution s = solve(p);
    REQUIRE(s.status == Status::Optimal);
    double best = c[0];
    for (double v : c) best = p.maximize ? std::max(best, v) : std::min(best, v);
    CHECK(s.value == Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("random feasible boxes satisfy their constraints") {
  Gen g(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(g.integer(2, 6));
    Problem p;
    p.num_vars = n;
    for (std::size_t j = 0; j < n; ++j) p.objective.push_back(g.unit());
    p.maximize = true;
    std::vector<double> ub(n);
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> e(n, 0.0);
      e[j] = 1.0;
      ub[j] = 0.5 + g.unit();
      p.constraints.push_back(row(e, Sense::LessEqual, ub[j]));
    }
    Solution s = solve(p);
    REQUIRE(s.status == Status::Optimal);
    double expect = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(s.x[j] <= ub[j] + 1e-12);
      expect += p.objective[j] * ub[j];
    }
    CHECK(s.value == Approx(expect).epsilon(1e-12));
  }
}
