#include <cbw/bounded_work.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace cbw {

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::AllUnbounded: return "all-unbounded";
    case Regime::PartiallyBounded: return "partially-bounded";
    case Regime::FullyClipped: return "fully-clipped";
  }
  return "unknown";
}

namespace {

constexpr double kSlack = 1e-12;

void require_bound(double c) {
  if (!(c >= 0.0) || std::isnan(c)) throw DomainError("fluctuation bound c must be >= 0");
}

double log_sum_exp_of(std::initializer_list<double> v) {
  return log_sum_exp(std::span<const double>(v.begin(), v.size()));
}

// log(1 + e^y) without overflow.
double softplus(double y) { return y > 0.0 ? y + std::log1p(std::exp(-y)) : std::log1p(std::exp(y)); }

double log_z_over(const DiagonalState& rho, const std::vector<std::size_t>& idx,
                  const ThermalContext& ctx) {
  std::vector<double> a;
  a.reserve(idx.size());
  for (std::size_t s : idx) a.push_back(-ctx.beta() * rho.energy(s));
  return log_sum_exp(a);
}

void fill_masses(Partition& p, const DiagonalState& rho, const ThermalContext& ctx) {
  auto mass = [&](const std::vector<std::size_t>& idx) {
    double m = 0.0;
    for (std::size_t s : idx) m += rho.prob(s);
    return m;
  };
  p.x_plus = mass(p.plus);
  p.x_minus = mass(p.minus);
  p.x_u = mass(p.unbounded);
  p.z_plus = std::exp(log_z_over(rho, p.plus, ctx));
  p.z_minus = std::exp(log_z_over(rho, p.minus, ctx));
  p.f_u = 0.0;
  for (std::size_t s : p.unbounded) p.f_u += rho.prob(s) * log_weight(rho, s, ctx);
}

Regime classify(const Partition& p, double c) {
  if (!p.has_bounded()) return Regime::AllUnbounded;
  return c == 0.0 ? Regime::FullyClipped : Regime::PartiallyBounded;
}

WorkDistribution in_level_order(const DiagonalState& rho, const BetaOrder& order,
                                const std::vector<double>& w_by_rank, double mean) {
  WorkDistribution d;
  d.mean = mean;
  for (std::size_t r = 0; r < order.size(); ++r)
    d.entries.push_back({order[r], rho.prob(order[r]), w_by_rank[r]});
  std::sort(d.entries.begin(), d.entries.end(),
            [](const WorkEntry& a, const WorkEntry& b) { return a.level < b.level; });
  return d;
}

// Formation solution in beta-order: a ascends, w is the extracted work per rank.
struct FormationSolve {
  Partition partition;
  double mean = 0.0;
  std::vector<double> w;
};

FormationSolve solve_formation(const DiagonalState& target, const HamiltonianSpec& h_initial,
                               const ThermalContext& ctx, double c) {
  require_bound(c);
  const double beta = ctx.beta();
  const double log_z = log_partition_function(h_initial, ctx);

  FormationSolve out;
  Partition& p = out.partition;
  p.order = beta_order(target, ctx);
  const std::size_t n = p.order.size();

  std::vector<double> x(n), a(n);
  double scale = 1.0 + c;
  for (std::size_t r = 0; r < n; ++r) {
    x[r] = target.prob(p.order[r]);
    a[r] = -(log_weight(target, p.order[r], ctx) + log_z) / beta;
    scale = std::max(scale, std::abs(a[r]));
  }
  const double tol = kSlack * scale;

  // Largest unbounded prefix whose spread below its last level fits within c.
  std::size_t u = 1;
  while (u < n) {
    double spread = 0.0;
    for (std::size_t s = 0; s <= u; ++s) spread += x[s] * (a[u] - a[s]);
    if (spread > c + tol) break;
    ++u;
  }

  double x_u = 0.0, x_plus = 0.0, sum_a = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    if (s < u) {
      x_u += x[s];
      sum_a += x[s] * a[s];
    } else {
      x_plus += x[s];
    }
  }
  const double m_star = (sum_a + c * x_plus) / x_u;
  out.w.assign(n, 0.0);

  if (m_star <= a[0] + c + tol) {
    out.mean = m_star;
    for (std::size_t s = 0; s < n; ++s) {
      out.w[s] = s < u ? a[s] : m_star + c;
      (s < u ? p.unbounded : p.plus).push_back(p.order[s]);
    }
  } else {
    // The most negative fluctuation hits -c: the mean is pinned at a_0 + c and
    // the remaining levels are filled up to a common threshold.
    const double m = a[0] + c;
    out.mean = m;
    std::size_t j = 1;
    double below = x[0] * a[0], above = 1.0 - x[0];
    double t = a[n - 1];
    for (; j < n; ++j) {
      above = 0.0;
      for (std::size_t s = j; s < n; ++s) above += x[s];
      const double cand = (m - below) / above;
      if (cand <= a[j]) {
        t = std::max(cand, a[j - 1]);
        break;
      }
      below += x[j] * a[j];
    }
    for (std::size_t s = 0; s < n; ++s) {
      const std::size_t level = p.order[s];
      if (s < j) {
        out.w[s] = a[s];
        (a[s] <= a[0] + tol ? p.minus : p.unbounded).push_back(level);
      } else {
        out.w[s] = t;
        p.plus.push_back(level);
      }
    }
  }

  fill_masses(p, target, ctx);
  p.nu = out.mean;
  p.gamma = 1.0;
  p.log_gamma = 0.0;
  return out;
}

}  // namespace

Partition extraction_partition(const DiagonalState& rho, const HamiltonianSpec& h_final,
                               const ThermalContext& ctx, double c) {
  require_bound(c);
  (void)h_final;  // log Z' shifts every level equally and drops out of the tests
  const double beta = ctx.beta();

  Partition p;
  p.order = beta_order(rho, ctx);
  const std::size_t n = p.order.size();

  std::vector<double> x(n), g(n);
  double g_mean = 0.0, scale = 1.0 + c;
  for (std::size_t r = 0; r < n; ++r) {
    x[r] = rho.prob(p.order[r]);
    g[r] = log_weight(rho, p.order[r], ctx) / beta;
    g_mean += x[r] * g[r];
    scale = std::max(scale, std::abs(g[r]));
  }
  const double tol = kSlack * scale;

  // Trial sets: maximal prefix of mass <= 1/2 and maximal suffix of mass < 1/2.
  std::size_t k = 0;
  for (double acc = 0.0; k < n && acc + x[k] <= 0.5; ++k) acc += x[k];
  std::size_t l = n;
  for (double acc = 0.0; l > k && acc + x[l - 1] < 0.5; --l) acc += x[l - 1];

  // Shrink whichever side violates its inequality; both are re-tested every round.
  for (;;) {
    double x_u = 0.0, base = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      if (r < k) base += x[r] * (g[r] - c);
      else if (r >= l) base += x[r] * (g[r] + c);
      else x_u += x[r];
    }
    const bool plus_ok = k == 0 || x_u * (g[k - 1] - c) + base > g_mean + tol;
    const bool minus_ok = l == n || x_u * (g[l] + c) + base < g_mean - tol;
    if (plus_ok && minus_ok) break;
    if (!plus_ok) --k;
    if (!minus_ok) ++l;
  }

  for (std::size_t r = 0; r < n; ++r)
    (r < k ? p.plus : r >= l ? p.minus : p.unbounded).push_back(p.order[r]);
  fill_masses(p, rho, ctx);

  p.nu = (p.f_u / beta + c * (p.x_plus - p.x_minus)) / p.x_u;
  p.log_gamma = log_sum_exp_of({std::log(p.x_u) - beta * p.nu,
                                log_z_over(rho, p.plus, ctx) + beta * c,
                                log_z_over(rho, p.minus, ctx) - beta * c});
  p.gamma = std::exp(p.log_gamma);
  return p;
}

BoundedWorkResult c_bounded_work(const DiagonalState& rho, const HamiltonianSpec& h_final,
                                 const ThermalContext& ctx, double c) {
  BoundedWorkResult res;
  res.partition = extraction_partition(rho, h_final, ctx, c);
  res.regime = classify(res.partition, c);
  const Partition& p = res.partition;
  const double beta = ctx.beta();
  const std::size_t n = p.order.size();
  std::vector<double> w(n);

  if (c == 0.0) {
    res.value = deterministic_work(rho, h_final, ctx);
    w.assign(n, res.value);
  } else {
    res.value = (log_partition_function(h_final, ctx) - p.log_gamma) / beta;
    const std::size_t k = p.plus.size(), l = n - p.minus.size();
    for (std::size_t r = 0; r < n; ++r) {
      double theta;
      if (r < k) theta = c;
      else if (r >= l) theta = -c;
      else theta = log_weight(rho, p.order[r], ctx) / beta - p.nu;
      w[r] = res.value + theta;
    }
  }
  res.distribution = in_level_order(rho, p.order, w, res.value);
  return res;
}

double qubit_work_closed_form(double x1, double gap, double z_final, const ThermalContext& ctx,
                              double c) {
  require_bound(c);
  if (!(x1 >= 0.5 && x1 <= 1.0)) throw DomainError("x1 must lie in [1/2, 1]");
  if (!(z_final > 0.0)) throw DomainError("final partition function must be positive");
  const double beta = ctx.beta();
  const double log_zf = std::log(z_final);
  if (x1 == 1.0) return (log_zf + beta * gap) / beta;  // pure state, no fluctuations

  const DiagonalState rho({x1, 1.0 - x1}, {gap, 0.0});
  const double f = free_energy(rho, ctx);
  const double xi = std::log(1.0 - x1) / beta - f;  // unbounded fluctuation of the lower level

  if (c < xi)
    return (log_zf - beta * c - softplus(-beta * (gap + c / x1))) / beta;
  if (c < -xi)
    return (log_zf + beta * c - softplus(-beta * (gap - c / x1))) / beta;
  return log_zf / beta + f;
}

Partition formation_partition(const DiagonalState& target, const HamiltonianSpec& h_initial,
                              const ThermalContext& ctx, double c) {
  return solve_formation(target, h_initial, ctx, c).partition;
}

BoundedWorkResult c_bounded_formation(const DiagonalState& target,
                                      const HamiltonianSpec& h_initial,
                                      const ThermalContext& ctx, double c) {
  FormationSolve sol = solve_formation(target, h_initial, ctx, c);
  BoundedWorkResult res;
  res.regime = classify(sol.partition, c);
  if (c == 0.0) {
    res.value = deterministic_formation_cost(target, h_initial, ctx);
    sol.mean = -res.value;
    std::fill(sol.w.begin(), sol.w.end(), sol.mean);
  } else {
    res.value = -sol.mean;
  }
  res.distribution = in_level_order(target, sol.partition.order, sol.w, sol.mean);
  res.partition = std::move(sol.partition);
  return res;
}

std::vector<CurvePoint> work_curve(const DiagonalState& rho, const HamiltonianSpec& h_final,
                                   const ThermalContext& ctx, std::span<const double> c_grid) {
  std::vector<CurvePoint> out;
  out.reserve(c_grid.size());
  for (std::size_t i = 0; i < c_grid.size(); ++i) {
    const double c = c_grid[i];
    if (i > 0 && c < c_grid[i - 1])
      throw InputError("c grid not ascending at index " + std::to_string(i));
    try {
      out.push_back({c, c_bounded_work(rho, h_final, ctx, c).value,
                     c_bounded_formation(rho, h_final, ctx, c).value});
    } catch (const DomainError& e) {
      throw DomainError("c grid index " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace cbw
