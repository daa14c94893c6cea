#include "beliefbound/predictability.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "beliefbound/core.hpp"

namespace beliefbound {

namespace {

constexpr double kTieTolerance = 1e-12;  // rounding noise counts as a tie

bool beats(double lower, double lambda) { return lower > lambda + kTieTolerance; }

struct PairTable {
  std::map<std::pair<int, int>, double> lower;
};

PairTable evaluate_pairs(const GapLowerFn& bound, const std::vector<int>& decisions) {
  PairTable t;
  for (int d : decisions)
    for (int s : decisions) {
      if (d == s) continue;
      double v;
      try {
        v = bound(d, s);
      } catch (const Error& e) {
        fail(e.kind(), "pair (" + std::to_string(d) + " over " + std::to_string(s) + "): " + e.what());
      }
      if (!std::isfinite(v))
        fail(ErrorKind::Domain, "pair (" + std::to_string(d) + " over " + std::to_string(s) + "): bound not finite");
      t.lower[{d, s}] = v;
    }
  return t;
}

void check(const std::vector<int>& decisions, double lambda) {
  if (std::set<int>(decisions.begin(), decisions.end()).size() != decisions.size())
    fail(ErrorKind::Input, "decision set repeats a value");
  if (decisions.size() < 2) fail(ErrorKind::Input, "predictability needs at least two decisions");
  if (!std::isfinite(lambda) || lambda < 0.0) fail(ErrorKind::Input, "margin must be a non-negative number");
}

PredictabilityVerdict verdict_from(const PairTable& t, const std::vector<int>& decisions, double lambda) {
  PredictabilityVerdict v;
  v.lambda = lambda;
  for (int s : decisions) {
    std::optional<Certificate> best;
    for (int d : decisions) {
      if (d == s) continue;
      double lo = t.lower.at({d, s});
      if (beats(lo, lambda) && (!best || lo > best->lower)) best = Certificate{d, s, lo};
    }
    if (best) {
      v.ruled_out.push_back(s);
      v.certificates.push_back(*best);
    } else {
      v.surviving.push_back(s);
    }
  }
  return v;
}

}  // namespace

PredictabilityVerdict weak_verdict(const GapLowerFn& bound, const std::vector<int>& decisions, double lambda) {
  check(decisions, lambda);
  return verdict_from(evaluate_pairs(bound, decisions), decisions, lambda);
}

PredictabilityVerdict strong_verdict(const GapLowerFn& bound, const std::vector<int>& decisions, double lambda) {
  check(decisions, lambda);
  PairTable t = evaluate_pairs(bound, decisions);
  PredictabilityVerdict v = verdict_from(t, decisions, lambda);
  if (v.surviving.size() == 1) {
    const int w = v.surviving.front();
    v.strong_winner = w;
    v.pairwise_dominance = std::all_of(decisions.begin(), decisions.end(),
                                       [&](int d) { return d == w || beats(t.lower.at({w, d}), lambda); });
  }
  return v;
}

}  // namespace beliefbound
