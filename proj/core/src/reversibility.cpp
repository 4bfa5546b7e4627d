#include <cbw/reversibility.hpp>

#include <algorithm>
#include <cmath>

namespace cbw {

TransitionSpec TransitionSpec::to_gibbs(DiagonalState rho, const HamiltonianSpec& h_final,
                                        const ThermalContext& ctx) {
  return {std::move(rho), DiagonalState::gibbs(h_final, ctx)};
}

double FluctuationBound::value() const {
  if (!v_) throw DomainError("fluctuation bound is infinite");
  return *v_;
}

WorkMatrix reversible_work_values(const TransitionSpec& spec, const ThermalContext& ctx) {
  WorkMatrix m;
  m.rows = spec.initial.support();
  m.cols = spec.final_state.support();
  m.values.reserve(m.rows.size() * m.cols.size());
  for (std::size_t s : m.rows) {
    const double gs = log_weight(spec.initial, s, ctx);
    for (std::size_t sp : m.cols)
      m.values.push_back((gs - log_weight(spec.final_state, sp, ctx)) / ctx.beta());
  }
  return m;
}

FluctuationBound min_reversible_c(const TransitionSpec& spec, const ThermalContext& ctx) {
  if (!spec.initial.full_rank() || !spec.final_state.full_rank())
    return FluctuationBound::infinite();
  const double delta_f = free_energy(spec.initial, ctx) - free_energy(spec.final_state, ctx);
  const WorkMatrix m = reversible_work_values(spec, ctx);
  double widest = 0.0;
  for (double w : m.values) widest = std::max(widest, std::abs(w - delta_f));
  return FluctuationBound::finite(widest);
}

bool is_reversible_within(const TransitionSpec& spec, const ThermalContext& ctx, double c) {
  if (!(c >= 0.0)) throw DomainError("fluctuation bound c must be >= 0");
  return min_reversible_c(spec, ctx).within(c);
}

ThermalMapCheck validate_thermal_map(const ClassicalThermalMap& map,
                                     std::span<const double> energies,
                                     std::span<const double> energies_final,
                                     const ThermalContext& ctx) {
  const std::size_t n = map.rows.size();
  if (map.d_out != energies_final.size() || map.t.size() != n * map.d_out ||
      map.w.size() != n * map.d_out)
    throw ShapeError("thermal map dimensions do not match");
  for (std::size_t i = 0; i < n; ++i) {
    if (map.rows[i] >= energies.size()) throw ShapeError("thermal map row out of range");
    double total = 0.0;
    for (std::size_t j = 0; j < map.d_out; ++j) {
      if (map.prob(i, j) < 0.0) throw InputError("negative transition probability");
      total += map.prob(i, j);
    }
    if (std::abs(total - 1.0) > 1e-12) throw InputError("transition row does not sum to 1");
  }

  ThermalMapCheck out;
  out.sums.assign(map.d_out, 0.0);
  for (std::size_t j = 0; j < map.d_out; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double t = map.prob(i, j);
      if (t == 0.0) continue;
      acc += t * std::exp(ctx.beta() * (energies_final[j] - energies[map.rows[i]] + map.work(i, j)));
    }
    out.sums[j] = acc;
    out.max_residual = std::max(out.max_residual, std::abs(acc - 1.0));
  }
  out.valid = out.max_residual <= kThermalMapTolerance;
  return out;
}

ClassicalThermalMap extraction_map(const WorkDistribution& dist, const HamiltonianSpec& h_final,
                                   const ThermalContext& ctx) {
  const DiagonalState gibbs = DiagonalState::gibbs(h_final, ctx);
  ClassicalThermalMap m;
  m.d_out = h_final.dim();
  for (const WorkEntry& e : dist.entries) {
    m.rows.push_back(e.level);
    for (std::size_t j = 0; j < m.d_out; ++j) {
      m.t.push_back(gibbs.prob(j));
      m.w.push_back(e.work);
    }
  }
  return m;
}

ClassicalThermalMap formation_map(const WorkDistribution& dist, const DiagonalState& target,
                                  const HamiltonianSpec& h_initial) {
  std::vector<double> w_out(target.dim(), 0.0);
  for (const WorkEntry& e : dist.entries) {
    if (e.level >= target.dim()) throw ShapeError("distribution level outside target");
    w_out[e.level] = e.work;
  }
  ClassicalThermalMap m;
  m.d_out = target.dim();
  for (std::size_t s = 0; s < h_initial.dim(); ++s) {
    m.rows.push_back(s);
    m.t.insert(m.t.end(), target.probs().begin(), target.probs().end());
    m.w.insert(m.w.end(), w_out.begin(), w_out.end());
  }
  return m;
}

double jarzynski_check(const WorkDistribution& dist, std::span<const double> energies,
                       double z_initial, double z_final, const ThermalContext& ctx) {
  double acc = 0.0;
  for (const WorkEntry& e : dist.entries) {
    if (e.level >= energies.size()) throw ShapeError("distribution level outside energies");
    acc += std::exp(ctx.beta() * (e.work - energies[e.level])) / z_initial;
  }
  return std::abs(acc - z_final / z_initial);
}

double formation_jarzynski_check(const WorkDistribution& dist, double z_initial, double z_final,
                                 const ThermalContext& ctx) {
  double acc = 0.0;
  for (const WorkEntry& e : dist.entries) acc += e.prob * std::exp(ctx.beta() * e.work);
  return std::abs(acc - z_final / z_initial);
}

}  // namespace cbw
