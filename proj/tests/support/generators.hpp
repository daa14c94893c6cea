#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "beliefbound/dist_table.hpp"
#include "beliefbound/oracle.hpp"
#include "beliefbound/scm.hpp"

namespace beliefbound::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi);  // inclusive
  double unit();
  bool coin(double p = 0.5) { return unit() < p; }
  // n strictly positive weights summing to one.
  std::vector<double> simplex(std::size_t n);
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

Variable decisions_variable(int k);  // D over {d0, ..., d(k-1)}

// Random acyclic model over binary V0..V(n-1) with one exogenous U; each
// variable reads U and a random subset of earlier variables.
Scm random_scm(Gen& g, int endogenous, int exo_atoms);

// Z <- U; Y <- D, Z, U.
Scm random_shift_model(Gen& g, int decisions, int exo_atoms);

// Z <- U; X <- Z, U; Y <- D, X, Z, U. X serves as a context below the shift.
Scm random_context_model(Gen& g, int decisions, int exo_atoms);
inline const char* kContextSkeleton = "Z<-; X<-Z; Y<-D,X,Z";

// C <- U; D <- C, U; M <- C, D, U; Y <- C, D, M, U. U confounds C, M and Y.
Scm random_confounded_model(Gen& g, int exo_atoms);

// Strictly positive pi(d | c).
Policy random_policy(Gen& g, const Variable& decision, const std::vector<Variable>& context);

}  // namespace beliefbound::testing
