#include <cbw/oracle.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace cbw {

std::string_view to_string(ActiveTag t) {
  switch (t) {
    case ActiveTag::Interior: return "interior";
    case ActiveTag::UpperClipped: return "upper-clipped";
    case ActiveTag::LowerClipped: return "lower-clipped";
  }
  return "unknown";
}

namespace {

// Bisect a monotone predicate on [lo, hi] until the bracket is narrower than
// rel * (1 + |lo|) or the endpoints are adjacent doubles.
// pred(lo) must be true and pred(hi) false; returns the last true point.
template <class Pred>
double bisect_last_true(double lo, double hi, Pred pred, std::size_t& steps, double rel = 0.0) {
  for (;;) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || hi - lo <= rel * (1.0 + std::abs(lo))) return lo;
    ++steps;
    (pred(mid) ? lo : hi) = mid;
  }
}

void tag_active(OracleSolution& sol, double c, double scale) {
  const double eps = 1e-12 * scale;
  sol.active_set.clear();
  double widest = 0.0;
  for (double w : sol.work_values) {
    const double d = w - sol.mean;
    widest = std::max(widest, std::abs(d));
    if (d >= c - eps) sol.active_set.push_back(ActiveTag::UpperClipped);
    else if (d <= -c + eps) sol.active_set.push_back(ActiveTag::LowerClipped);
    else sol.active_set.push_back(ActiveTag::Interior);
  }
  sol.window_excess = widest - c;
}

}  // namespace

OracleSolution oracle_extraction(const DiagonalState& rho, const HamiltonianSpec& h_final,
                                 const ThermalContext& ctx, double c, double tol) {
  if (!(c >= 0.0)) throw DomainError("fluctuation bound c must be >= 0");
  if (!(tol > 0.0)) throw DomainError("oracle tolerance must be positive");
  const double beta = ctx.beta();
  const double log_zf = log_partition_function(h_final, ctx);

  OracleSolution sol;
  sol.levels = rho.support();
  const std::size_t n = sol.levels.size();
  std::vector<double> g(n), e(n), buf(n);
  double scale = 1.0 + c;
  for (std::size_t i = 0; i < n; ++i) {
    e[i] = rho.energy(sol.levels[i]);
    g[i] = std::log(rho.prob(sol.levels[i])) / beta + e[i];
    scale = std::max(scale, std::abs(g[i]));
  }
  const auto [g_min, g_max] = std::minmax_element(g.begin(), g.end());

  auto log_constraint = [&](const std::vector<double>& w) {
    for (std::size_t i = 0; i < n; ++i) buf[i] = beta * (w[i] - e[i]);
    return log_sum_exp(buf);
  };
  auto mean_of = [&](const std::vector<double>& w) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m += rho.prob(sol.levels[i]) * w[i];
    return m;
  };
  // sum x_s (w_s - m), exact when every w_s equals m.
  auto excess_over = [&](const std::vector<double>& w, double m) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += rho.prob(sol.levels[i]) * (w[i] - m);
    return acc;
  };

  // Mean m is attainable iff the best distribution inside [m - c, m + c] meets
  // the constraint with mean >= m. Attainable means form a half-line.
  std::vector<double> w(n);
  auto attainable = [&](double m) {
    const double lo = m - c, hi = m + c;
    auto fill = [&](double kappa) {
      for (std::size_t i = 0; i < n; ++i) w[i] = std::clamp(g[i] + kappa, lo, hi);
    };
    // The constraint is nondecreasing in the shift kappa and flat outside
    // [lo - g_max, hi - g_min]; kappa plays the role of -(1/beta) log(lambda).
    auto below = [&](double kappa) {
      fill(kappa);
      return log_constraint(w) <= log_zf;
    };
    const double k_lo = lo - *g_max, k_hi = hi - *g_min;
    std::size_t inner = 0;
    if (below(k_hi)) fill(k_hi);
    else if (!below(k_lo)) return false;
    else fill(bisect_last_true(k_lo, k_hi, below, inner));
    return excess_over(w, m) >= 0.0;
  };

  double lo = -1.0, hi = 1.0;
  for (std::size_t k = 0; !attainable(lo); ++k, lo *= 2.0)
    if (k > 1000) throw ConvergenceError("oracle_extraction found no attainable mean");
  for (std::size_t k = 0; attainable(hi); ++k, hi *= 2.0)
    if (k > 1000) throw ConvergenceError("oracle_extraction found no upper bracket");
  const double m = bisect_last_true(lo, hi, attainable, sol.iterations, tol);
  if (sol.iterations > kOracleIterationCap) throw ConvergenceError("oracle_extraction cap hit");
  attainable(m);

  // The inner solution may overshoot m; capping its top values brings the mean
  // down to m without leaving the window or loosening the constraint.
  std::vector<double> top = w;
  auto cap = [&](double t) {
    for (std::size_t i = 0; i < n; ++i) w[i] = std::min(top[i], t);
    return excess_over(w, m) <= 0.0;
  };
  if (excess_over(top, m) > 0.0) {
    std::size_t steps = 0;
    cap(bisect_last_true(m - c, m + c, cap, steps));
  }

  sol.work_values = w;
  sol.mean = mean_of(w);
  sol.constraint_slack = log_zf - log_constraint(w);
  tag_active(sol, c, scale);
  return sol;
}

OracleSolution oracle_formation(const DiagonalState& target, const HamiltonianSpec& h_initial,
                                const ThermalContext& ctx, double c, double tol) {
  if (!(c >= 0.0)) throw DomainError("fluctuation bound c must be >= 0");
  if (!(tol > 0.0)) throw DomainError("oracle tolerance must be positive");
  const double beta = ctx.beta();
  const double log_z = log_partition_function(h_initial, ctx);

  OracleSolution sol;
  sol.levels = target.support();
  const std::size_t n = sol.levels.size();
  std::vector<double> x(n), a(n);
  double scale = 1.0 + c;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t s = sol.levels[i];
    x[i] = target.prob(s);
    a[i] = -(std::log(x[i]) + beta * target.energy(s) + log_z) / beta;
    scale = std::max(scale, std::abs(a[i]));
  }
  const double a_min = *std::min_element(a.begin(), a.end());

  auto capped_mean = [&](double t) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * std::min(a[i], t);
    return acc;
  };

  // Feasible means satisfy m <= a_min + c and sum x_s min(a_s, m + c) >= m.
  auto feasible = [&](double m) { return capped_mean(m + c) >= m; };
  const double m_top = a_min + c;
  double m = feasible(m_top) ? m_top
                             : bisect_last_true(a_min - c, m_top, feasible, sol.iterations, tol);

  // Spread m over the levels: w_s = min(a_s, t) with the threshold t matching m.
  auto short_of = [&](double t) { return capped_mean(t) <= m; };
  double t = m + c;
  if (!short_of(a_min)) t = a_min;
  else if (!short_of(m + c)) t = bisect_last_true(a_min, m + c, short_of, sol.iterations);

  sol.work_values.resize(n);
  double slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    sol.work_values[i] = std::max(std::min(a[i], t), m - c);
    slack = std::min(slack, beta * (a[i] - sol.work_values[i]));
  }
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += x[i] * sol.work_values[i];
  sol.mean = mean;
  sol.constraint_slack = slack;
  tag_active(sol, c, scale);
  return sol;
}

RandomInstance random_instance(std::uint64_t seed, std::size_t d_max,
                               std::pair<double, double> beta_range,
                               std::pair<double, double> c_range) {
  if (d_max < 2) throw InputError("d_max must be at least 2");
  if (!(beta_range.first > 0.0 && beta_range.first <= beta_range.second))
    throw InputError("invalid beta range");
  if (!(c_range.first >= 0.0 && c_range.first <= c_range.second))
    throw InputError("invalid c range");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> dim(2, d_max);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> energy(-2.0, 2.0);
  std::exponential_distribution<double> gamma1(1.0);  // Gamma(1) draws give a flat Dirichlet

  const std::size_t d = dim(rng);
  std::vector<double> p(d), e(d);
  for (double& v : p) v = gamma1(rng);
  for (double& v : e) v = energy(rng);
  if (unit(rng) < 0.2) p[std::uniform_int_distribution<std::size_t>(0, d - 1)(rng)] = 0.0;
  double total = 0.0;
  for (double v : p) total += v;
  for (double& v : p) v /= total;

  const double lb = std::log(beta_range.first), ub = std::log(beta_range.second);
  const double beta = std::exp(lb + (ub - lb) * unit(rng));
  const double c = c_range.first + (c_range.second - c_range.first) * unit(rng);
  return {seed, DiagonalState(std::move(p), std::move(e)), ThermalContext(beta), c};
}

}  // namespace cbw
