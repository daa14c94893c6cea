#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "beliefbound/dist_table.hpp"
#include "beliefbound/oracle.hpp"
#include "beliefbound/scm.hpp"

namespace beliefbound {

using Json = nlohmann::ordered_json;

Json read_json_file(const std::string& path);

Variable variable_from_json(const Json& j);
Json variable_to_json(const Variable& v);
// A value given as a label, an integer, or an integer string.
int value_from_json(const Variable& v, const Json& j);
Json value_to_json(const Variable& v, int value);

// {"variables", "exogenous", "exogenous_distribution", "mechanisms"} plus
// optional "decision" and "utility" names.
struct ScmFile {
  Scm scm;
  std::string decision = "D";
  std::string utility = "Y";
};
ScmFile scm_from_json(const Json& j);
Json scm_to_json(const Scm& scm, const std::string& decision = "D", const std::string& utility = "Y");

// {"scope": [...], "entries": [{"assignment", "p"}]}
DistTable table_from_json(const Json& j);
Json table_to_json(const DistTable& t);

// Per-decision tables, experimental domains, and optional defaults.
struct DatasetFile {
  BehaviouralDataset data;
  std::optional<Skeleton> skeleton;
  Assignment default_shift;
  Assignment default_context;
};
DatasetFile dataset_from_json(const Json& j);
Json dataset_to_json(const DatasetFile& f);

// Header of variable names plus an optional `weight` column.
struct SampleLog {
  std::vector<Variable> variables;  // domains inferred from the observed values
  std::vector<WeightedRow> rows;
};
SampleLog read_csv_log(std::istream& in);

// Atomic tables from data logged under a policy that reads only `context`.
BehaviouralDataset dataset_from_log(const SampleLog& log, const std::string& decision, const std::string& utility,
                                    const std::vector<std::string>& context);

// Interventional tables of a model for every decision, plus one domain per
// experiment (each experiment is also applied under every decision).
BehaviouralDataset dataset_from_scm(const Scm& scm, const std::string& decision, const std::string& utility,
                                    const std::vector<Assignment>& experiments = {});

// Declared endogenous parents of every non-decision variable, topologically.
Skeleton skeleton_of(const Scm& scm, const std::string& decision);

// Parses "A=1,B=x" against the variables in `vars`.
Assignment parse_assignment(const std::string& text, const std::vector<Variable>& vars);
std::string format_assignment(const Assignment& a, const std::vector<Variable>& vars);

}  // namespace beliefbound
