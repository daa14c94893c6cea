#include "beliefbound/lp.hpp"

#include <cmath>
#include <limits>

#include "beliefbound/core.hpp"

namespace beliefbound::lp {

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kCostEps = 1e-11;
constexpr std::size_t kMaxPivots = 1000000;

// Row-major tableau; the last row holds reduced costs and the last column the
// right-hand side (negated objective value in the cost row).
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), a_((rows + 1) * (cols + 1), 0.0), basis_(rows) {}

  double& at(std::size_t i, std::size_t j) { return a_[i * (n_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, n_); }
  double& cost(std::size_t j) { return at(m_, j); }
  std::size_t& basis(std::size_t i) { return basis_[i]; }

  void set_costs(const std::vector<double>& c) {
    for (std::size_t j = 0; j <= n_; ++j) cost(j) = j < n_ ? c[j] : 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      double cb = c[basis_[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) at(m_, j) -= cb * at(i, j);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const double inv = 1.0 / at(r, c);
    for (std::size_t j = 0; j <= n_; ++j) at(r, j) *= inv;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
    }
    basis_[r] = c;
  }

  // Bland's rule: lowest-index improving column, lowest-index leaving variable
  // among ratio ties. Returns false when the objective is unbounded.
  bool optimise(std::size_t allowed_cols, std::size_t& pivots) {
    while (true) {
      std::size_t enter = n_;
      for (std::size_t j = 0; j < allowed_cols; ++j)
        if (cost(j) < -kCostEps) {
          enter = j;
          break;
        }
      if (enter == n_) return true;

      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double coef = at(i, enter);
        if (coef <= kPivotEps) continue;
        const double ratio = std::max(0.0, rhs(i)) / coef;
        if (leave == m_) {
          best = ratio;
          leave = i;
          continue;
        }
        const double tol = 1e-12 * (1.0 + std::abs(best));
        if (ratio < best - tol || (std::abs(ratio - best) <= tol && basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
      if (++pivots > kMaxPivots) fail(ErrorKind::Internal, "simplex exceeded its pivot budget");
    }
  }

  double objective() { return -rhs(m_); }

 private:
  std::size_t m_, n_;
  std::vector<double> a_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Solution solve(const Problem& problem) {
  const std::size_t n = problem.num_vars;
  const std::size_t m = problem.constraints.size();
  if (problem.objective.size() != n) fail(ErrorKind::Internal, "objective width mismatch");

  std::size_t slacks = 0, artificials = 0;
  for (const auto& c : problem.constraints) {
    if (c.coeffs.size() != n) fail(ErrorKind::Internal, "constraint width mismatch");
    Sense s = c.sense;
    if (c.rhs < 0.0) s = s == Sense::LessEqual ? Sense::GreaterEqual : s == Sense::GreaterEqual ? Sense::LessEqual : s;
    if (s != Sense::Equal) ++slacks;
    if (s != Sense::LessEqual) ++artificials;
  }
  const std::size_t first_art = n + slacks;
  const std::size_t cols = first_art + artificials;
  Tableau t(m, cols);

  double rhs_scale = 1.0;
  std::size_t next_slack = n, next_art = first_art;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = problem.constraints[i];
    const double sign = c.rhs < 0.0 ? -1.0 : 1.0;
    Sense s = c.sense;
    if (sign < 0.0) s = s == Sense::LessEqual ? Sense::GreaterEqual : s == Sense::GreaterEqual ? Sense::LessEqual : s;
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = sign * c.coeffs[j];
    t.rhs(i) = sign * c.rhs;
    rhs_scale += std::abs(c.rhs);
    if (s == Sense::LessEqual) {
      t.at(i, next_slack) = 1.0;
      t.basis(i) = next_slack++;
    } else {
      if (s == Sense::GreaterEqual) t.at(i, next_slack++) = -1.0;
      t.at(i, next_art) = 1.0;
      t.basis(i) = next_art++;
    }
  }

  Solution sol;
  std::vector<double> phase1(cols, 0.0);
  for (std::size_t j = first_art; j < cols; ++j) phase1[j] = 1.0;
  t.set_costs(phase1);
  if (!t.optimise(cols, sol.pivots)) fail(ErrorKind::Internal, "phase one unbounded");
  if (t.objective() > 1e-9 * rhs_scale) {
    sol.status = Status::Infeasible;
    return sol;
  }

  // Pivot remaining artificials out where possible; rows where that fails are
  // redundant and stay inert because artificial columns may no longer enter.
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis(i) < first_art) continue;
    for (std::size_t j = 0; j < first_art; ++j)
      if (std::abs(t.at(i, j)) > 1e-9) {
        t.pivot(i, j);
        break;
      }
  }

  std::vector<double> costs(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) costs[j] = problem.maximize ? -problem.objective[j] : problem.objective[j];
  t.set_costs(costs);
  if (!t.optimise(first_art, sol.pivots)) {
    sol.status = Status::Unbounded;
    return sol;
  }

  sol.status = Status::Optimal;
  sol.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (t.basis(i) < n) sol.x[t.basis(i)] = std::max(0.0, t.rhs(i));
  sol.value = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.value += problem.objective[j] * sol.x[j];
  return sol;
}

}  // namespace beliefbound::lp
