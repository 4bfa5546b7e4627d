#include <cbw/engine.hpp>

#include <cbw/bounded_work.hpp>
#include <cbw/thermo.hpp>

#include <algorithm>
#include <cmath>

namespace cbw {

namespace {
constexpr double kThresholdSlack = 1e-12;
}

void EngineSpec::validate() const {
  if (!(gap > 0.0) || !std::isfinite(gap)) throw DomainError("engine gap must be positive");
  if (!(beta_hot > 0.0) || !std::isfinite(beta_cold) || !(beta_hot < beta_cold))
    throw DomainError("engine needs 0 < beta_hot < beta_cold");
  if (!(c >= 0.0)) throw DomainError("fluctuation bound c must be >= 0");
}

double EngineCycleResult::stroke_deviation() const {
  return std::max(std::abs(w1 - w1_general), std::abs(w2 - w2_general));
}

EngineCycleResult engine_cycle(const EngineSpec& spec) {
  spec.validate();
  const double e = spec.gap, bh = spec.beta_hot, bc = spec.beta_cold, c = spec.c;
  const double zh = 1.0 + std::exp(-bh * e);
  const double zc = 1.0 + std::exp(-bc * e);
  const double ph = std::exp(-bh * e) / zh;  // excited population, hot equilibrium
  const double pc = std::exp(-bc * e) / zc;

  EngineCycleResult r;
  r.a = (e / zc) * (bc - bh) / bh;
  r.b = (e / zh) * (bc - bh) / bc;
  r.a_bounded = r.a > c + kThresholdSlack;
  r.b_bounded = r.b > c + kThresholdSlack;

  // Unbounded strokes are free-energy differences, evaluated as relative
  // entropies so the second-order result keeps its digits near T_H = T_C.
  // Bounded ones are the clipped qubit forms (exponents are products c*beta*Z).
  const double stretch = std::expm1((bc - bh) * e);
  const double log_pc_ph = -std::log1p((1.0 - ph) * stretch);
  const double log_qc_qh = std::log1p(pc * stretch);  // ground populations, cold over hot
  const double kl_cold_hot = pc * log_pc_ph + (1.0 - pc) * log_qc_qh;
  const double kl_hot_cold = -ph * log_pc_ph - (1.0 - ph) * log_qc_qh;
  r.w1 = r.a_bounded
             ? std::log(zh * std::exp(bh * c) / (std::exp(c * bh * zc) + std::exp(-e * bh))) / bh
             : kl_cold_hot / bh;
  r.w2 = r.b_bounded
             ? std::log(zc * std::exp(-bc * c) / (std::exp(-c * bc * zh) + std::exp(-e * bc))) / bc
             : kl_hot_cold / bc;

  r.delta_u = e * (ph - pc);
  r.q_hot = r.delta_u + r.w1;
  r.efficiency = (r.w1 + r.w2) / r.q_hot;

  const HamiltonianSpec h({e, 0.0});
  const ThermalContext hot(bh), cold(bc);
  r.w1_general = c_bounded_work(DiagonalState::gibbs(h, cold), h, hot, c).value;
  r.w2_general = c_bounded_work(DiagonalState::gibbs(h, hot), h, cold, c).value;
  return r;
}

double carnot_efficiency(double beta_hot, double beta_cold) { return 1.0 - beta_hot / beta_cold; }

double max_efficiency(double gap, double c) {
  if (!(gap > 0.0)) throw DomainError("gap must be positive");
  if (!(c >= 0.0)) throw DomainError("fluctuation bound c must be >= 0");
  if (c == 0.0) return 0.0;
  return 1.0 - gap / (2.0 * (2.0 * c + gap));
}

EfficiencyTable efficiency_sweep(double gap, double t_cold, std::span<const double> t_hot_grid,
                                 std::span<const double> c_list) {
  if (t_hot_grid.empty() || c_list.empty()) throw InputError("sweep grids must be nonempty");
  const double bc = ThermalContext::from_temperature(t_cold).beta();
  EfficiencyTable table;
  table.c_list.assign(c_list.begin(), c_list.end());
  for (double c : c_list) table.eta_max.push_back(max_efficiency(gap, c));
  for (double th : t_hot_grid) {
    if (!(th > t_cold)) throw InputError("hot temperature must exceed the cold one");
    const double bh = ThermalContext::from_temperature(th).beta();
    EfficiencyRow row{th, carnot_efficiency(bh, bc), {}};
    for (double c : c_list) row.eta.push_back(engine_cycle({gap, bh, bc, c}).efficiency);
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace cbw
