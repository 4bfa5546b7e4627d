#pragma once

#include <cbw/bounded_work.hpp>
#include <cbw/thermo.hpp>
#include <cbw/types.hpp>

#include <optional>
#include <span>
#include <vector>

namespace cbw {

// Both states are diagonal, so the reversibility window below is exact.
struct TransitionSpec {
  DiagonalState initial;
  DiagonalState final_state;

  static TransitionSpec to_gibbs(DiagonalState rho, const HamiltonianSpec& h_final,
                                 const ThermalContext& ctx);
};

// Work values w(s'|s) over supported rows and columns.
struct WorkMatrix {
  std::vector<std::size_t> rows;  // initial levels
  std::vector<std::size_t> cols;  // final levels
  std::vector<double> values;     // row-major

  double operator()(std::size_t i, std::size_t j) const { return values[i * cols.size() + j]; }
};

// Either a finite width or the divergence caused by rank deficiency.
class FluctuationBound {
 public:
  static FluctuationBound infinite() noexcept { return FluctuationBound(); }
  static FluctuationBound finite(double v) { return FluctuationBound(v); }

  bool is_infinite() const noexcept { return !v_.has_value(); }
  // Throws DomainError when infinite.
  double value() const;
  bool within(double c) const noexcept { return v_.has_value() && *v_ <= c; }

 private:
  FluctuationBound() = default;
  explicit FluctuationBound(double v) : v_(v) {}
  std::optional<double> v_;
};

WorkMatrix reversible_work_values(const TransitionSpec& spec, const ThermalContext& ctx);
FluctuationBound min_reversible_c(const TransitionSpec& spec, const ThermalContext& ctx);
bool is_reversible_within(const TransitionSpec& spec, const ThermalContext& ctx, double c);

// Deterministic-work classical map. Row i acts on initial level rows[i];
// columns are all final levels.
struct ClassicalThermalMap {
  std::vector<std::size_t> rows;
  std::size_t d_out = 0;
  std::vector<double> t;  // t(s'|s), row-major
  std::vector<double> w;  // w(s'|s), row-major

  double prob(std::size_t i, std::size_t j) const { return t[i * d_out + j]; }
  double work(std::size_t i, std::size_t j) const { return w[i * d_out + j]; }
};

struct ThermalMapCheck {
  bool valid = false;
  std::vector<double> sums;  // per final level; 1 for a thermal operation
  double max_residual = 0.0;
};

inline constexpr double kThermalMapTolerance = 1e-10;

// Throws ShapeError on inconsistent dimensions, InputError on a non-stochastic t.
ThermalMapCheck validate_thermal_map(const ClassicalThermalMap& map,
                                     std::span<const double> energies,
                                     std::span<const double> energies_final,
                                     const ThermalContext& ctx);

// rho -> Gibbs(h_final): every row maps to the Gibbs distribution with work w(s).
ClassicalThermalMap extraction_map(const WorkDistribution& dist, const HamiltonianSpec& h_final,
                                   const ThermalContext& ctx);
// Gibbs(h_initial) -> target: every row maps to the target with work w(s').
ClassicalThermalMap formation_map(const WorkDistribution& dist, const DiagonalState& target,
                                  const HamiltonianSpec& h_initial);

// |sum_s (e^{-beta E_s}/Z) e^{beta w(s)} - Z'/Z| for an extraction distribution
// over levels with the given initial energies.
double jarzynski_check(const WorkDistribution& dist, std::span<const double> energies,
                       double z_initial, double z_final, const ThermalContext& ctx);

// Gibbs-start formation: |sum_s' x_s' e^{beta w(s')} - Z'/Z|.
double formation_jarzynski_check(const WorkDistribution& dist, double z_initial, double z_final,
                                 const ThermalContext& ctx);

}  // namespace cbw
