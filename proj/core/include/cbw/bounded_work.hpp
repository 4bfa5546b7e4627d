#pragma once

#include <cbw/thermo.hpp>
#include <cbw/types.hpp>

#include <span>
#include <string_view>
#include <vector>

namespace cbw {

enum class Regime { AllUnbounded, PartiallyBounded, FullyClipped };

std::string_view to_string(Regime r);

// Split of the support into positively bounded, unbounded and negatively
// bounded levels. Index sets hold original level indices in beta-order.
struct Partition {
  BetaOrder order;
  std::vector<std::size_t> plus;
  std::vector<std::size_t> unbounded;
  std::vector<std::size_t> minus;

  double x_plus = 0.0;
  double x_minus = 0.0;
  double x_u = 0.0;
  double z_plus = 0.0;
  double z_minus = 0.0;
  double f_u = 0.0;  // sum over X_u of x_s log(x_s e^{beta E_s})
  // Extraction: nu and gamma of the compact form.
  // Formation: nu is the extracted-sign mean and gamma is 1.
  double nu = 0.0;
  double gamma = 1.0;
  double log_gamma = 0.0;

  bool has_bounded() const noexcept { return !plus.empty() || !minus.empty(); }
};

struct BoundedWorkResult {
  double value = 0.0;
  WorkDistribution distribution;  // always in extracted-work sign
  Partition partition;
  Regime regime = Regime::AllUnbounded;
};

Partition extraction_partition(const DiagonalState& rho, const HamiltonianSpec& h_final,
                               const ThermalContext& ctx, double c);

// Maximal average work under |w - <w>| <= c, ending in the Gibbs state of h_final.
BoundedWorkResult c_bounded_work(const DiagonalState& rho, const HamiltonianSpec& h_final,
                                 const ThermalContext& ctx, double c);

// Two-level expression with energies (gap, 0) before and after; x1 is the
// population of the level at energy gap and must be >= 1/2.
double qubit_work_closed_form(double x1, double gap, double z_final, const ThermalContext& ctx,
                              double c);

Partition formation_partition(const DiagonalState& target, const HamiltonianSpec& h_initial,
                              const ThermalContext& ctx, double c);

// Minimal average cost (positive number) of forming target from the Gibbs
// state of h_initial under the c-bound.
BoundedWorkResult c_bounded_formation(const DiagonalState& target,
                                      const HamiltonianSpec& h_initial,
                                      const ThermalContext& ctx, double c);

struct CurvePoint {
  double c;
  double work;
  double formation;
};

// Extraction to and formation from the Gibbs state of h_final at each c.
std::vector<CurvePoint> work_curve(const DiagonalState& rho, const HamiltonianSpec& h_final,
                                   const ThermalContext& ctx, std::span<const double> c_grid);

}  // namespace cbw
