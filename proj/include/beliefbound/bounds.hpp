#pragma once

#include <map>
#include <string>
#include <vector>

#include "beliefbound/dist_table.hpp"

namespace beliefbound {

enum class GapKind { Preference, Fairness, Harm, DirectDiscrimination, CausalHarm };

const char* to_string(GapKind kind);

struct GapInterval {
  double lower = 0.0;
  double upper = 0.0;
  double raw_lower = 0.0;  // before clamping to the kind's range
  double raw_upper = 0.0;
  GapKind kind = GapKind::Preference;
  std::string source;  // which bound produced the interval
  bool tight = false;
  std::map<std::string, double> inputs;  // named quantities the formula consumed
  std::vector<std::string> warnings;

  // Short hex fingerprint of source and inputs.
  std::string digest() const;
};

// Clamps raw endpoints into the kind's range and records a warning when the
// clamp moved a value by more than rounding noise.
GapInterval make_interval(GapKind kind, std::string source, double raw_lower, double raw_upper, bool tight,
                          std::map<std::string, double> inputs);

// Atomic shift do(z) with the agent grounded in one domain.
GapInterval intervention_gap_interval(const BehaviouralDataset& data, const Assignment& c, const Assignment& z, int d,
                                      int d_star);

// Same, combining every domain the data covers (the base one first).
GapInterval multidomain_gap_interval(const BehaviouralDataset& data, const Assignment& c, const Assignment& z, int d,
                                     int d_star);

// Nothing known about which variables the shift touches.
GapInterval unknown_shift_gap_interval();

// Shift of unknown mechanism on Z, but with the shifted law of the context known.
GapInterval covariate_shift_gap_interval(const BehaviouralDataset& data, double p_sigma_c, const Assignment& c,
                                         const Assignment& z, int d, int d_star);
GapInterval covariate_shift_gap_interval(const BehaviouralDataset& data, const DistTable& p_sigma, const Assignment& c,
                                         const Assignment& z, int d, int d_star);

// Effect of flipping a binary protected attribute from z0, for decision d.
GapInterval fairness_gap_interval(const BehaviouralDataset& data, int d, const Assignment& z0, const Assignment& c);

// Probability that the baseline would have succeeded where d fails, from the
// two marginal success rates a = P(Y_d = 1), b = P(Y_d0 = 1).
GapInterval harm_gap_interval(double a, double b);
GapInterval harm_gap_interval(const BehaviouralDataset& data, int d, int d0, const Assignment& c);

GapInterval direct_discrimination_interval(const BehaviouralDataset& data, int d, const Assignment& z0,
                                           const Assignment& z1, const Assignment& c);

struct CausalHarmInputs {
  double p_y1_given_d1 = 0.0;  // P_{d1}(y1 | c)
  double p_y0_given_d0 = 0.0;  // P_{d0}(y0 | c)
  double p_d1 = 0.0;           // P(d1 | c) under the logging policy
  double p_d0 = 0.0;           // P(d0 | c)
};

GapInterval causal_harm_interval(const CausalHarmInputs& in);
// Reads the inputs from a policy-generated table that includes the decision.
GapInterval causal_harm_interval(const DistTable& p, const std::string& decision, const std::string& utility, int d1,
                                 int d0, const Assignment& c);

}  // namespace beliefbound
