#pragma once

#include <cbw/types.hpp>

#include <span>
#include <vector>

namespace cbw {

// Qubit with levels (gap, 0) cycled between a hot and a cold bath.
struct EngineSpec {
  double gap;
  double beta_hot;
  double beta_cold;
  double c;

  // Throws DomainError unless gap > 0, 0 < beta_hot < beta_cold and c >= 0.
  void validate() const;
};

struct EngineCycleResult {
  double w1 = 0.0;  // cold-equilibrium qubit against the hot bath
  double w2 = 0.0;  // hot-equilibrium qubit against the cold bath
  double q_hot = 0.0;
  double delta_u = 0.0;  // <H>_hot - <H>_cold
  double efficiency = 0.0;
  double a = 0.0;
  double b = 0.0;
  bool a_bounded = false;  // A > c: first stroke runs clipped
  bool b_bounded = false;  // B > c: second stroke runs clipped
  // The same strokes through the general bounded-work solver.
  double w1_general = 0.0;
  double w2_general = 0.0;

  double stroke_deviation() const;
};

EngineCycleResult engine_cycle(const EngineSpec& spec);

double carnot_efficiency(double beta_hot, double beta_cold);

// 1 - gap / (2(2c + gap)) for c > 0, and 0 at c = 0.
double max_efficiency(double gap, double c);

struct EfficiencyRow {
  double t_hot;
  double carnot;
  std::vector<double> eta;  // one per c
};

struct EfficiencyTable {
  std::vector<double> c_list;
  std::vector<double> eta_max;  // one per c
  std::vector<EfficiencyRow> rows;
};

EfficiencyTable efficiency_sweep(double gap, double t_cold, std::span<const double> t_hot_grid,
                                 std::span<const double> c_list);

}  // namespace cbw
