#include <cbw/types.hpp>
#include <cbw/thermo.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace cbw {

ThermalContext::ThermalContext(double beta) : beta_(beta) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw InputError("beta must be positive and finite");
}

ThermalContext ThermalContext::from_temperature(double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature))
    throw InputError("temperature must be positive and finite");
  return ThermalContext(1.0 / temperature);
}

HamiltonianSpec::HamiltonianSpec(std::vector<double> energies) : energies_(std::move(energies)) {
  if (energies_.empty()) throw InputError("hamiltonian has no levels");
  for (double e : energies_)
    if (!std::isfinite(e)) throw InputError("energies must be finite");
}

double HamiltonianSpec::spread() const {
  auto [lo, hi] = std::minmax_element(energies_.begin(), energies_.end());
  return *hi - *lo;
}

DiagonalState::DiagonalState(std::vector<double> probs, HamiltonianSpec hamiltonian)
    : probs_(std::move(probs)), h_(std::move(hamiltonian)) {
  if (probs_.size() != h_.dim())
    throw ShapeError("probabilities and energies differ in length");
  double total = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) throw InputError("probabilities must be finite and >= 0");
    total += p;
  }
  if (std::abs(total - 1.0) > normalization_tolerance)
    throw InputError("probabilities do not sum to 1");
  for (double& p : probs_) p /= total;
}

DiagonalState::DiagonalState(std::vector<double> probs, std::vector<double> energies)
    : DiagonalState(std::move(probs), HamiltonianSpec(std::move(energies))) {}

DiagonalState DiagonalState::gibbs(const HamiltonianSpec& h, const ThermalContext& ctx) {
  const double log_z = log_partition_function(h, ctx);
  std::vector<double> p(h.dim());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::exp(-ctx.beta() * h[i] - log_z);
  // Rounding in exp can leave the sum a few ulps away from 1.
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& v : p) v /= total;
  return DiagonalState(std::move(p), h);
}

DiagonalState DiagonalState::pure(const HamiltonianSpec& h, std::size_t level) {
  if (level >= h.dim()) throw ShapeError("level index out of range");
  std::vector<double> p(h.dim(), 0.0);
  p[level] = 1.0;
  return DiagonalState(std::move(p), h);
}

std::vector<std::size_t> DiagonalState::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < probs_.size(); ++i)
    if (probs_[i] > 0.0) s.push_back(i);
  return s;
}

std::size_t DiagonalState::rank() const {
  return static_cast<std::size_t>(std::count_if(probs_.begin(), probs_.end(),
                                                [](double p) { return p > 0.0; }));
}

DiagonalState DiagonalState::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != dim()) throw ShapeError("permutation length mismatch");
  std::vector<double> p(dim()), e(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (perm[i] >= dim()) throw ShapeError("permutation index out of range");
    p[i] = probs_[perm[i]];
    e[i] = h_[perm[i]];
  }
  return DiagonalState(std::move(p), std::move(e));
}

}  // namespace cbw
