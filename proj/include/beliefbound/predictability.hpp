#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace beliefbound {

// Lower bound on the gap Delta(d over d_star).
using GapLowerFn = std::function<double(int d, int d_star)>;

struct Certificate {
  int d = 0;       // the better decision
  int d_star = 0;  // the decision it rules out
  double lower = 0.0;
};

struct PredictabilityVerdict {
  std::vector<int> ruled_out;
  std::vector<int> surviving;
  std::optional<int> strong_winner;
  // The winner also beats every other decision directly, not only by elimination.
  bool pairwise_dominance = false;
  double lambda = 0.0;
  std::vector<Certificate> certificates;  // one per ruled-out decision, strongest witness
};

// d* is ruled out when some d has lower(Delta(d over d*)) > lambda. Ties, up to
// rounding noise, keep d*.
PredictabilityVerdict weak_verdict(const GapLowerFn& bound, const std::vector<int>& decisions, double lambda);

// Weak verdict plus a winner when exactly one decision survives.
PredictabilityVerdict strong_verdict(const GapLowerFn& bound, const std::vector<int>& decisions, double lambda);

}  // namespace beliefbound
