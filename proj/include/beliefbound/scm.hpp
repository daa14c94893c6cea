#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "beliefbound/core.hpp"
#include "beliefbound/dist_table.hpp"
#include "beliefbound/rational.hpp"

namespace beliefbound {

struct Mechanism {
  std::string target;
  std::vector<std::string> parents;      // endogenous
  std::vector<std::string> exo_parents;  // exogenous
  std::map<std::vector<int>, int> table; // key: parent values then exo values

  static Mechanism constant(std::string target, int value);

  bool operator==(const Mechanism&) const = default;
};

// Builds a total table by calling `fn` on every configuration of the inputs.
Mechanism tabulate(std::string target, const std::vector<Variable>& parents, const std::vector<Variable>& exo_parents,
                   const std::function<int(const Assignment&)>& fn);

struct ExoAtom {
  Assignment values;
  double p = 0.0;
  std::optional<Rational> exact;  // set when the probability is known exactly

  bool operator==(const ExoAtom&) const = default;
};

struct ExoDistribution {
  std::vector<ExoAtom> atoms;

  bool operator==(const ExoDistribution&) const = default;
};

class Scm {
 public:
  // Validates totality, domains and normalisation, and rejects cycles.
  Scm(std::vector<Variable> endogenous, std::vector<Variable> exogenous, std::vector<Mechanism> mechanisms,
      ExoDistribution exo);

  const std::vector<Variable>& endogenous() const { return endogenous_; }
  const std::vector<Variable>& exogenous() const { return exogenous_; }
  const std::vector<Mechanism>& mechanisms() const { return mechanisms_; }  // declaration order
  const std::vector<std::size_t>& order() const { return order_; }         // topological, into mechanisms()
  const ExoDistribution& exo() const { return exo_; }

  const Variable& variable(const std::string& name) const { return find_variable(endogenous_, name); }
  const Mechanism& mechanism(const std::string& target) const;
  bool has(const std::string& name) const;

  bool operator==(const Scm& o) const {
    return endogenous_ == o.endogenous_ && exogenous_ == o.exogenous_ && mechanisms_ == o.mechanisms_ &&
           exo_ == o.exo_;
  }

 private:
  std::vector<Variable> endogenous_;
  std::vector<Variable> exogenous_;
  std::vector<Mechanism> mechanisms_;
  ExoDistribution exo_;
  std::vector<std::size_t> order_;
};

using Intervention = Assignment;

struct Shift {
  std::vector<std::string> targets;
  std::map<std::string, Mechanism> replacements;
  std::vector<Variable> new_exogenous;
  ExoDistribution new_exo;  // independent of the existing block
};

Assignment evaluate(const Scm& scm, const Assignment& u);
Scm submodel(const Scm& scm, const Intervention& iv);
Scm apply_shift(const Scm& scm, const Shift& sh);
DistTable joint_distribution(const Scm& scm);

// Exact joint law; every exogenous atom must carry an exact probability.
std::map<Assignment, Rational> joint_distribution_exact(const Scm& scm);

struct CounterfactualEvent {
  Intervention iv;
  Assignment outcome;
};

double counterfactual_probability(const Scm& scm, const std::vector<CounterfactualEvent>& events);

// Replaces the decision mechanism with a draw from `pi`. The new exogenous
// variable indexes deterministic response functions of the context.
Scm with_policy(const Scm& scm, const Policy& pi);

}  // namespace beliefbound
