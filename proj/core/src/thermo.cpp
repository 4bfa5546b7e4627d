#include <cbw/thermo.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cbw {

double log_sum_exp(std::span<const double> v) {
  if (v.empty()) return -std::numeric_limits<double>::infinity();
  const double m = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(m)) return m;
  double acc = 0.0;
  for (double a : v) acc += std::exp(a - m);
  return m + std::log(acc);
}

double log_partition_function(const HamiltonianSpec& h, const ThermalContext& ctx) {
  std::vector<double> a(h.dim());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = -ctx.beta() * h[i];
  return log_sum_exp(a);
}

double partition_function(const HamiltonianSpec& h, const ThermalContext& ctx) {
  const double z = std::exp(log_partition_function(h, ctx));
  if (!std::isfinite(z) || z <= 0.0) throw NumericOverflow("partition function not representable");
  return z;
}

double mean_energy(const DiagonalState& rho) {
  double u = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i) u += rho.prob(i) * rho.energy(i);
  return u;
}

double entropy(const DiagonalState& rho) {
  double s = 0.0;
  for (double p : rho.probs())
    if (p > 0.0) s -= p * std::log(p);
  return s;
}

double free_energy(const DiagonalState& rho, const ThermalContext& ctx) {
  return mean_energy(rho) - entropy(rho) / ctx.beta();
}

double deterministic_work(const DiagonalState& rho, const HamiltonianSpec& h_final,
                          const ThermalContext& ctx) {
  std::vector<double> a;
  for (std::size_t s : rho.support()) a.push_back(-ctx.beta() * rho.energy(s));
  return (log_partition_function(h_final, ctx) - log_sum_exp(a)) / ctx.beta();
}

double log_weight(const DiagonalState& rho, std::size_t s, const ThermalContext& ctx) {
  return std::log(rho.prob(s)) + ctx.beta() * rho.energy(s);
}

double deterministic_formation_cost(const DiagonalState& target, const HamiltonianSpec& h_initial,
                                    const ThermalContext& ctx) {
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t s : target.support()) top = std::max(top, log_weight(target, s, ctx));
  return (log_partition_function(h_initial, ctx) + top) / ctx.beta();
}

double unbounded_formation_cost(const DiagonalState& target, const HamiltonianSpec& h_initial,
                                const ThermalContext& ctx) {
  return free_energy(target, ctx) + log_partition_function(h_initial, ctx) / ctx.beta();
}

BetaOrder beta_order(const DiagonalState& rho, const ThermalContext& ctx) {
  BetaOrder order{rho.support()};
  std::vector<double> key(rho.dim(), 0.0);
  for (std::size_t s : order.permutation) key[s] = log_weight(rho, s, ctx);
  std::stable_sort(order.permutation.begin(), order.permutation.end(),
                   [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });
  return order;
}

std::vector<double> WorkDistribution::fluctuations() const {
  std::vector<double> t(entries.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = fluctuation(i);
  return t;
}

double WorkDistribution::max_abs_fluctuation() const {
  double m = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) m = std::max(m, std::abs(fluctuation(i)));
  return m;
}

double WorkDistribution::weighted_fluctuation() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i) acc += entries[i].prob * fluctuation(i);
  return acc;
}

double WorkDistribution::total_probability() const {
  return std::accumulate(entries.begin(), entries.end(), 0.0,
                         [](double a, const WorkEntry& e) { return a + e.prob; });
}

UnboundedWork unbounded_work(const DiagonalState& rho, const HamiltonianSpec& h_final,
                             const ThermalContext& ctx) {
  const double log_zf = log_partition_function(h_final, ctx);
  UnboundedWork out;
  out.mean = log_zf / ctx.beta() + free_energy(rho, ctx);
  out.distribution.mean = out.mean;
  for (std::size_t s : rho.support())
    out.distribution.entries.push_back(
        {s, rho.prob(s), (log_weight(rho, s, ctx) + log_zf) / ctx.beta()});
  return out;
}

}  // namespace cbw
