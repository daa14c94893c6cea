#pragma once

#include <array>
#include <tuple>
#include <vector>

#include "beliefbound/dist_table.hpp"
#include "beliefbound/scm.hpp"

namespace beliefbound::testing {

Variable decision_variable();  // D over {d0, d1}
Variable binary(const std::string& name);

// Medical-assistant model built from its structural equations. The
// alternative model agrees on every per-decision law but not under do(Z=1).
Scm medai_model(bool alternative = false);

// Rows of the printed U -> (Z_d, Y_d) mapping, transcribed by hand.
struct MappingRow {
  int u;
  std::array<int, 2> z;  // indexed by decision
  std::array<int, 2> y;
  double p;
};
const std::array<MappingRow, 5>& mapping_rows();

// Y under do(D=d, Z=z) for exogenous value u, straight from the equations.
int medai_y(int d, int z, int u, bool alternative);

// Table over (Y, Z) from (y, z, p) triples.
DistTable yz_table(const std::vector<std::tuple<int, int, double>>& cells);

BehaviouralDataset medai_data();
// Adds the do(Z=1) experiment: d1 yields Y=1 w.p. 0.8, d0 w.p. 0.2.
BehaviouralDataset medai_experiment_data();
// P_d(z, y) = 0.25 for every cell.
BehaviouralDataset uniform_data();
// MEDAI with the covariate W = 1{U in {1,2}} in every table.
Scm medai_with_covariate_model();
BehaviouralDataset medai_with_covariate_data();

}  // namespace beliefbound::testing
