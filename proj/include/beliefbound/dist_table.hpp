#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "beliefbound/core.hpp"

namespace beliefbound {

// Joint probability table over a finite scope. The scope is kept sorted by
// variable name and zero cells are dropped, so two tables describing the same
// law compare equal regardless of how they were built.
class DistTable {
 public:
  using Key = std::vector<int>;  // values in scope order

  DistTable() = default;
  DistTable(std::vector<Variable> scope, const std::map<Key, double>& entries);
  DistTable(std::vector<Variable> scope, const std::vector<std::pair<Assignment, double>>& entries);

  const std::vector<Variable>& scope() const { return scope_; }
  const std::map<Key, double>& entries() const { return entries_; }
  std::vector<std::string> names() const;
  bool has(const std::string& name) const;
  const Variable& variable(const std::string& name) const { return find_variable(scope_, name); }

  Assignment assignment(const Key& key) const;
  // Mass of the event described by a partial assignment over scope variables.
  double probability(const Assignment& event) const;
  // E[value(of) * 1{event}], the unnormalised conditional expectation.
  double weighted_mass(const std::string& of, const Assignment& event) const;
  DistTable marginal(const std::vector<std::string>& vars) const;

  bool operator==(const DistTable&) const = default;

 private:
  std::size_t position(const std::string& name) const;
  bool matches(const Key& key, const Assignment& event) const;

  std::vector<Variable> scope_;
  std::map<Key, double> entries_;
};

constexpr double kNormTolerance = 1e-12;

DistTable query(const DistTable& t, const std::vector<std::string>& target, const Assignment& given);
double expectation(const DistTable& t, const std::string& of, const Assignment& given);
double total_variation(const DistTable& p, const DistTable& q);

struct WeightedRow {
  Assignment values;
  double weight = 1.0;
};

// Empirical frequencies. Domains default to the sorted set of observed values;
// pass `domains` to keep unobserved values in scope.
DistTable estimate_from_samples(const std::vector<WeightedRow>& rows, const std::vector<Variable>& domains = {});

// pi(d | c) for each context configuration (values in `context` order).
struct Policy {
  std::string decision;
  std::vector<std::string> context;
  std::map<std::vector<int>, std::map<int, double>> table;

  double prob(const Assignment& ctx, int d) const;
  void validate() const;
};

// The policy a logged table was generated under: P(d | c).
Policy empirical_policy(const DistTable& p_pi, const std::string& decision, const std::vector<std::string>& context);

// Converts data gathered under a policy into the table for the atomic
// decision do(D=d): P_d(c, y) = P(y | d, c) P(c). Result excludes D.
DistTable policy_to_atomic(const DistTable& p_pi, const Policy& pi, int d);

struct ExperimentalDomain {
  std::string label;
  Assignment intervened;  // R = r
  std::map<int, DistTable> per_decision;
};

struct BehaviouralDataset {
  Variable decision;
  std::string utility = "Y";
  std::map<int, DistTable> per_decision;  // over V without D
  std::vector<ExperimentalDomain> domains;
  std::optional<DistTable> observational;  // policy-generated table including D, when known

  std::vector<int> decisions() const;
  const DistTable& table(int d) const;
  void validate() const;
};

}  // namespace beliefbound
