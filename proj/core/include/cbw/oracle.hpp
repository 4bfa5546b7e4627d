#pragma once

#include <cbw/thermo.hpp>
#include <cbw/types.hpp>

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace cbw {

// Direct numerical solvers for the bounded-fluctuation problems. They share no
// code with the partition algorithms and serve as ground truth in tests.

enum class ActiveTag { Interior, UpperClipped, LowerClipped };

std::string_view to_string(ActiveTag t);

struct OracleSolution {
  std::vector<std::size_t> levels;  // support, ascending
  std::vector<double> work_values;  // extracted-work sign
  double mean = 0.0;
  std::vector<ActiveTag> active_set;
  std::size_t iterations = 0;
  // Log-space slack of the reversibility constraint(s); >= 0 when feasible.
  double constraint_slack = 0.0;
  // max |w - mean| - c; <= 0 when the window holds.
  double window_excess = 0.0;
};

inline constexpr double kOracleTolerance = 1e-14;
inline constexpr std::size_t kOracleIterationCap = 100000;  // bisection steps

// For a trial mean m the KKT solution w_s = clip(g_s + kappa, m - c, m + c),
// g_s = (1/beta) log(x_s e^{beta E_s}), with kappa bisected onto
// sum e^{beta(w_s - E_s)} = Z', decides whether m is attainable. The largest
// attainable m is located by bisection to relative width tol.
OracleSolution oracle_extraction(const DiagonalState& rho, const HamiltonianSpec& h_final,
                                 const ThermalContext& ctx, double c,
                                 double tol = kOracleTolerance);

// Largest mean m admitting w_s <= a_s = -(1/beta) log(x_s e^{beta E'_s} Z) with
// |w_s - m| <= c, found by bisection on m. Cost is -mean.
OracleSolution oracle_formation(const DiagonalState& target, const HamiltonianSpec& h_initial,
                                const ThermalContext& ctx, double c,
                                double tol = kOracleTolerance);

struct RandomInstance {
  std::uint64_t seed;
  DiagonalState state;
  ThermalContext ctx;
  double c;

  const HamiltonianSpec& hamiltonian() const noexcept { return state.hamiltonian(); }
};

// d uniform in [2, d_max]; flat Dirichlet probabilities with one level zeroed
// one time in five; energies uniform in [-2, 2]; beta log-uniform and c uniform
// in their ranges.
RandomInstance random_instance(std::uint64_t seed, std::size_t d_max,
                               std::pair<double, double> beta_range,
                               std::pair<double, double> c_range);

}  // namespace cbw
