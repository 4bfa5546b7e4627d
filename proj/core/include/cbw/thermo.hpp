#pragma once

#include <cbw/types.hpp>

#include <cstddef>
#include <span>
#include <vector>

namespace cbw {

// Max-shifted log(sum exp(v)). Empty input gives -inf.
double log_sum_exp(std::span<const double> v);

double log_partition_function(const HamiltonianSpec& h, const ThermalContext& ctx);
// Throws NumericOverflow when Z is not representable.
double partition_function(const HamiltonianSpec& h, const ThermalContext& ctx);

double mean_energy(const DiagonalState& rho);
double entropy(const DiagonalState& rho);
double free_energy(const DiagonalState& rho, const ThermalContext& ctx);

// Fluctuation-free work content: (1/beta) log Z' - (1/beta) log Z_support.
double deterministic_work(const DiagonalState& rho, const HamiltonianSpec& h_final,
                          const ThermalContext& ctx);

// Fluctuation-free cost of forming the target from the Gibbs state of h_initial.
double deterministic_formation_cost(const DiagonalState& target, const HamiltonianSpec& h_initial,
                                    const ThermalContext& ctx);

// F(target) + (1/beta) log Z, the average cost with unbounded fluctuations.
double unbounded_formation_cost(const DiagonalState& target, const HamiltonianSpec& h_initial,
                                const ThermalContext& ctx);

BetaOrder beta_order(const DiagonalState& rho, const ThermalContext& ctx);

// log(x_s e^{beta E_s}) for a supported level.
double log_weight(const DiagonalState& rho, std::size_t s, const ThermalContext& ctx);

struct WorkEntry {
  std::size_t level;
  double prob;
  double work;
};

struct WorkDistribution {
  std::vector<WorkEntry> entries;
  double mean = 0.0;

  double fluctuation(std::size_t i) const { return entries[i].work - mean; }
  std::vector<double> fluctuations() const;
  double max_abs_fluctuation() const;
  // Sum of x_s theta_s, zero for a consistent distribution.
  double weighted_fluctuation() const;
  double total_probability() const;
};

struct UnboundedWork {
  double mean;
  WorkDistribution distribution;
};

// Average work (1/beta) log Z' + F(rho) with per-level values
// w(s) = (1/beta) log(x_s e^{beta E_s} Z'), listed in level order.
UnboundedWork unbounded_work(const DiagonalState& rho, const HamiltonianSpec& h_final,
                             const ThermalContext& ctx);

}  // namespace cbw
