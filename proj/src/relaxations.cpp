#include "beliefbound/relaxations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "beliefbound/lp.hpp"

namespace beliefbound {

namespace {

// A table laid out over its full domain product with the per-cell quantities
// the grounded bound needs.
struct Cells {
  std::vector<double> p;
  std::vector<double> y;
  std::vector<char> cz;    // cell lies in c and z
  std::vector<char> notz;  // cell lies outside z
};

Cells layout(const DistTable& t, const std::string& utility, const Assignment& c, const Assignment& z) {
  const Variable& yv = t.variable(utility);
  if (yv.is_labelled()) fail(ErrorKind::Input, "utility " + utility + " must be numeric");
  for (int v : yv.domain)
    if (v < 0 || v > 1) fail(ErrorKind::Input, "utility " + utility + " must take values in [0,1]");
  const Assignment cz = merge(c, z);
  for (const auto& [name, value] : cz) t.variable(name);
  Cells out;
  for_each_config(t.scope(), [&](const std::vector<int>& key) {
    Assignment a = t.assignment(key);
    auto it = t.entries().find(key);
    out.p.push_back(it == t.entries().end() ? 0.0 : it->second);
    out.y.push_back(a.at(utility));
    out.cz.push_back(agrees(a, cz));
    out.notz.push_back(!agrees(a, z));
  });
  return out;
}

double denominator(const Cells& cells, const std::vector<double>& w) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (cells.cz[i] || cells.notz[i]) s += w[i];
  return s;
}

double term_low(const Cells& cells, const std::vector<double>& w) {
  double n = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (cells.cz[i]) n += cells.y[i] * w[i];
  return n / denominator(cells, w);
}

double term_high(const Cells& cells, const std::vector<double>& w) {
  double n = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (cells.cz[i]) n += cells.y[i] * w[i];
    if (cells.notz[i]) n += w[i];
  }
  return n / denominator(cells, w);
}

// Extreme of a term over the ball. With q = s w and the denominator pinned to
// one, the ratio becomes linear: variables are q (k), tau (k) and s.
double ball_term(const Cells& cells, double delta, bool high) {
  if (!(denominator(cells, cells.p) - delta > 1e-12))
    fail(ErrorKind::Domain, "context can lose all its mass inside the ball");
  const std::size_t k = cells.p.size();
  const std::size_t s = 2 * k;
  lp::Problem prob;
  prob.num_vars = 2 * k + 1;
  prob.maximize = high;
  prob.objective.assign(prob.num_vars, 0.0);
  for (std::size_t i = 0; i < k; ++i)
    prob.objective[i] = (cells.cz[i] ? cells.y[i] : 0.0) + (high && cells.notz[i] ? 1.0 : 0.0);

  auto row = [&] { return std::vector<double>(prob.num_vars, 0.0); };
  std::vector<double> den = row(), mass = row(), budget = row();
  for (std::size_t i = 0; i < k; ++i) {
    if (cells.cz[i] || cells.notz[i]) den[i] = 1.0;
    mass[i] = 1.0;
    budget[k + i] = 1.0;
    std::vector<double> up = row(), down = row();
    up[i] = 1.0;
    up[s] = -cells.p[i];
    up[k + i] = -1.0;
    down[i] = -1.0;
    down[s] = cells.p[i];
    down[k + i] = -1.0;
    prob.constraints.push_back({up, lp::Sense::LessEqual, 0.0});
    prob.constraints.push_back({down, lp::Sense::LessEqual, 0.0});
  }
  mass[s] = -1.0;
  budget[s] = -2.0 * delta;
  prob.constraints.push_back({den, lp::Sense::Equal, 1.0});
  prob.constraints.push_back({mass, lp::Sense::Equal, 0.0});
  prob.constraints.push_back({budget, lp::Sense::LessEqual, 0.0});
  lp::Solution sol = lp::solve(prob);
  if (sol.status != lp::Status::Optimal) fail(ErrorKind::Internal, "ball program did not solve");
  return sol.value;
}

const DistTable& centre_of(const GroundingBall& ball, int d) {
  auto it = ball.centre.find(d);
  if (it == ball.centre.end()) fail(ErrorKind::Input, "no table for decision " + std::to_string(d));
  return it->second;
}

void check_pair(int d, int d_star) {
  if (d == d_star) fail(ErrorKind::Input, "a decision cannot be compared with itself");
}

std::vector<double> dirichlet(std::mt19937_64& rng, const std::vector<double>& p, double concentration) {
  std::vector<double> w(p.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    std::gamma_distribution<double> g(concentration * p[i], 1.0);
    w[i] = g(rng);
    total += w[i];
  }
  for (double& v : w) v /= total;
  return w;
}

double tv(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return 0.5 * s;
}

}  // namespace

GroundingBall GroundingBall::around(const BehaviouralDataset& data, double delta) {
  data.validate();
  GroundingBall b;
  b.delta = delta;
  b.centre = data.per_decision;
  b.validate();
  return b;
}

void GroundingBall::validate() const {
  if (!std::isfinite(delta) || delta < 0.0 || delta > 1.0) fail(ErrorKind::Input, "ball radius must lie in [0,1]");
  if (centre.size() < 2) fail(ErrorKind::Input, "ball needs tables for at least two decisions");
}

double approx_grounding_lower_exact(const GroundingBall& ball, const std::string& utility, const Assignment& c,
                                    const Assignment& z, int d, int d_star) {
  ball.validate();
  check_pair(d, d_star);
  Cells a = layout(centre_of(ball, d), utility, c, z);
  Cells b = layout(centre_of(ball, d_star), utility, c, z);
  return ball_term(a, ball.delta, false) - ball_term(b, ball.delta, true);
}

SampledLower approx_grounding_lower_sampled(const GroundingBall& ball, const std::string& utility, const Assignment& c,
                                            const Assignment& z, int d, int d_star, const SamplerOptions& options) {
  ball.validate();
  check_pair(d, d_star);
  if (options.proposals == 0) fail(ErrorKind::Input, "proposal count must be positive");
  if (options.chunk == 0) fail(ErrorKind::Input, "chunk size must be positive");
  if (!std::isfinite(options.concentration) || options.concentration <= 0.0)
    fail(ErrorKind::Input, "concentration must be positive");
  Cells a = layout(centre_of(ball, d), utility, c, z);
  Cells b = layout(centre_of(ball, d_star), utility, c, z);

  SampledLower out;
  out.proposals = options.proposals;
  out.value = std::numeric_limits<double>::infinity();
  const std::size_t chunks = (options.proposals + options.chunk - 1) / options.chunk;
  for (std::size_t k = 0; k < chunks; ++k) {
    std::seed_seq seq{static_cast<std::uint32_t>(options.seed), static_cast<std::uint32_t>(options.seed >> 32),
                      static_cast<std::uint32_t>(k)};
    std::mt19937_64 rng(seq);
    const std::size_t n = std::min(options.chunk, options.proposals - k * options.chunk);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> wa = dirichlet(rng, a.p, options.concentration);
      std::vector<double> wb = dirichlet(rng, b.p, options.concentration);
      if (tv(wa, a.p) > ball.delta || tv(wb, b.p) > ball.delta) continue;
      if (!(denominator(a, wa) > 0.0) || !(denominator(b, wb) > 0.0)) continue;
      ++out.accepted;
      out.value = std::min(out.value, term_low(a, wa) - term_high(b, wb));
    }
  }
  if (out.accepted == 0)
    fail(ErrorKind::Sampling, "no proposal fell inside the ball; raise the proposal count or the concentration");
  return out;
}

double proxy_alignment_lower(const BehaviouralDataset& data, double alpha, const Assignment& z, int d, int d_star) {
  check_pair(d, d_star);
  if (!std::isfinite(alpha) || alpha < 0.0 || alpha > 1.0) fail(ErrorKind::Input, "alignment must lie in [0,1]");
  const DistTable& t = data.table(d);
  data.table(d_star);
  const Variable& y = t.variable(data.utility);
  if (y.domain != std::vector<int>{0, 1}) fail(ErrorKind::Input, "proxy bound needs a binary utility");
  Assignment event = z;
  event[data.utility] = 1;
  return alpha * t.probability(event) - 1.0;
}

GapInterval partial_unconfoundedness_interval(const BehaviouralDataset& data, const std::string& w,
                                              const Assignment& z, int d, int d_star) {
  check_pair(d, d_star);
  std::map<std::string, double> inputs;
  // Range of E_{z,d}[Y] as the shifted law of W moves over what the data allow.
  auto range = [&](int dec, const std::string& tag) {
    const DistTable& t = data.table(dec);
    const Variable& wv = t.variable(w);
    if (wv.domain.size() != 2) fail(ErrorKind::Input, "covariate " + w + " must be binary");
    if (z.count(w)) fail(ErrorKind::Input, "covariate must not be shifted");
    const double pz = t.probability(z);
    double m[2];
    double p_wz[2];
    for (int i = 0; i < 2; ++i) {
      Assignment e = z;
      e[w] = wv.domain[i];
      p_wz[i] = t.probability(e);
      if (!(p_wz[i] > 0.0))
        fail(ErrorKind::Domain, "no mass at " + w + "=" + wv.format(wv.domain[i]) + " within the shift");
      m[i] = t.weighted_mass(data.utility, e) / p_wz[i];
    }
    inputs[tag + ".mass_z"] = pz;
    inputs[tag + ".mass_w1z"] = p_wz[1];
    inputs[tag + ".mean_w0"] = m[0];
    inputs[tag + ".mean_w1"] = m[1];
    const double x_lo = p_wz[1], x_hi = p_wz[1] + 1.0 - pz;
    const double a = m[0] + (m[1] - m[0]) * x_lo, b = m[0] + (m[1] - m[0]) * x_hi;
    return std::pair{std::min(a, b), std::max(a, b)};
  };
  auto [ld, ud] = range(d, "d");
  auto [ls, us] = range(d_star, "d_star");
  return make_interval(GapKind::Preference, "partial-unconfoundedness", ld - us, ud - ls, false, std::move(inputs));
}

}  // namespace beliefbound
