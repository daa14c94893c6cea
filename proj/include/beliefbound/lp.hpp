#pragma once

#include <cstddef>
#include <vector>

namespace beliefbound::lp {

enum class Sense { LessEqual, Equal, GreaterEqual };
enum class Status { Optimal, Infeasible, Unbounded };

struct Constraint {
  std::vector<double> coeffs;
  Sense sense = Sense::Equal;
  double rhs = 0.0;
};

// Optimise objective . x subject to the constraints and x >= 0.
struct Problem {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<Constraint> constraints;
  bool maximize = false;
};

struct Solution {
  Status status = Status::Infeasible;
  double value = 0.0;
  std::vector<double> x;
  std::size_t pivots = 0;
};

// Dense two-phase simplex with Bland's rule.
Solution solve(const Problem& problem);

}  // namespace beliefbound::lp
