#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "beliefbound/dist_table.hpp"
#include "beliefbound/scm.hpp"

namespace beliefbound {

// Declared parents of each non-decision variable, listed in a topological
// order. The decision has no entry: it is always set by intervention.
struct SkeletonEntry {
  std::string name;
  std::vector<std::string> parents;
};
using Skeleton = std::vector<SkeletonEntry>;

// Parses "Z<-; Y<-D,Z" (entries separated by ';').
Skeleton parse_skeleton(const std::string& text);
std::string to_string(const Skeleton& s);

// Reads BELIEFBOUND_ATOM_LIMIT, defaulting to one million.
std::uint64_t default_atom_limit();

// Product space of per-variable response functions.
class CanonicalAtomSpace {
 public:
  CanonicalAtomSpace(std::vector<Variable> variables, Variable decision, Skeleton skeleton, std::uint64_t atom_limit);

  std::size_t size() const { return size_; }
  std::size_t response_count(const std::string& name) const;
  const Skeleton& skeleton() const { return skeleton_; }
  const Variable& decision() const { return decision_; }
  const std::vector<Variable>& variables() const { return variables_; }  // skeleton order

  // Values of every skeleton variable for one atom; `iv` must set the decision.
  Assignment evaluate(std::size_t atom, const Assignment& iv) const;

 private:
  struct Slot {
    std::size_t var;                  // index into variables_
    std::vector<std::size_t> parents; // index into variables_, or npos for the decision
    std::size_t responses = 1;
    std::size_t stride = 1;           // atom index radix for this variable
  };

  std::vector<Variable> variables_;
  Variable decision_;
  Skeleton skeleton_;
  std::vector<Slot> slots_;
  std::size_t size_ = 1;
};

// Atom probabilities constrained to reproduce every observed cell.
struct Polytope {
  CanonicalAtomSpace space;
  std::vector<std::vector<double>> rows;  // equality rows; the last is the simplex row
  std::vector<double> rhs;
  std::vector<std::string> labels;
  std::size_t data_rows = 0;
  std::string utility;
};

Polytope build_polytope(const BehaviouralDataset& data, const Skeleton& skeleton,
                        std::uint64_t atom_limit = default_atom_limit());

enum class Direction { Min, Max };

struct GapOptimum {
  double value = 0.0;
  std::vector<double> point;  // optimal atom probabilities
};

// Exact extreme of E_{z,d}[Y | c] - E_{z,d*}[Y | c] over the polytope.
GapOptimum optimize_gap(const Polytope& p, const Assignment& z, const Assignment& c, int d, int d_star,
                        Direction direction);

// A feasible atom distribution; `objective` steers which vertex is returned.
std::vector<double> feasible_point(const Polytope& p, const std::vector<double>& objective = {});

// Canonical model over a single exogenous variable R that indexes atoms.
Scm canonical_scm(const Polytope& p, const std::vector<double>& point);
Scm feasible_scm(const Polytope& p);

// Model reproducing `base` on every per-decision regime whose gap under do(z)
// given c attains the intervention lower bound for d1 over d0.
Scm intervention_witness_scm(const Scm& base, const std::string& decision, const std::string& utility,
                             const Assignment& z, const Assignment& c, int d1, int d0);

// Joint law of (r_z, r_y) for binary Z and Y, p[a][b] with a = r_z and
// r_y in {0: Y=0, 1: Y=z, 2: Y=1-z, 3: Y=1}.
using ResponseTable = std::array<std::array<double, 4>, 2>;

enum class ResponseForm {
  NoConstantOne,  // r_y = 3 unused
  NoConstantZero  // r_y = 0 unused
};

// A response table reproducing P(z, y) with one constant response type empty.
ResponseTable response_table(const DistTable& p_zy, const std::string& z, const std::string& y, ResponseForm form);

// Model over Z, Y with exogenous (RZ, RY) drawn from the table.
Scm response_scm(const ResponseTable& t);

struct ShiftWitnesses {
  ResponseTable low_table;
  ResponseTable high_table;
  Scm low;   // after the shift Y = 0 wherever possible
  Scm high;  // after the shift Y = 1 wherever possible
};

// Moves mass within each r_y row so that the shifted Z drives Y to its
// extremes while P(r_y) is untouched.
ShiftWitnesses unknown_shift_witnesses(const ResponseTable& t);

}  // namespace beliefbound
