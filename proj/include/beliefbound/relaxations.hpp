#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "beliefbound/bounds.hpp"
#include "beliefbound/dist_table.hpp"

namespace beliefbound {

enum class Discrepancy { TotalVariation };

// Internal tables may sit anywhere within `delta` of the observed ones.
struct GroundingBall {
  Discrepancy discrepancy = Discrepancy::TotalVariation;
  double delta = 0.0;
  std::map<int, DistTable> centre;  // per decision

  static GroundingBall around(const BehaviouralDataset& data, double delta);
  void validate() const;
};

// Exact minimum of the grounded lower bound over every pair of tables in the ball.
double approx_grounding_lower_exact(const GroundingBall& ball, const std::string& utility, const Assignment& c,
                                    const Assignment& z, int d, int d_star);

struct SamplerOptions {
  std::size_t proposals = 10000;
  std::uint64_t seed = 0;
  double concentration = 400.0;  // Dirichlet parameters are concentration * P
  std::size_t chunk = 1000;      // proposals per independently seeded stream
};

struct SampledLower {
  double value = 0.0;
  std::size_t accepted = 0;
  std::size_t proposals = 0;
};

// Accept/reject estimate: Dirichlet proposals centred on each table, kept when
// both lie inside the ball; returns the smallest grounded lower bound seen.
SampledLower approx_grounding_lower_sampled(const GroundingBall& ball, const std::string& utility, const Assignment& c,
                                            const Assignment& z, int d, int d_star, const SamplerOptions& options);

// Lower bound when Y is a proxy that agrees with the true utility with
// probability at least alpha under do(z).
double proxy_alignment_lower(const BehaviouralDataset& data, double alpha, const Assignment& z, int d, int d_star);

// Interval for E_{z,d}[Y] - E_{z,d*}[Y] when Y is unconfounded with Z given
// a binary pre-shift covariate W.
GapInterval partial_unconfoundedness_interval(const BehaviouralDataset& data, const std::string& w,
                                              const Assignment& z, int d, int d_star);

}  // namespace beliefbound
