#pragma once

// Test-only reference solutions written without the library's partition code.

#include <cbw/types.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

namespace ref {

struct Extraction {
  double value;
  std::vector<double> theta;  // per supported level, ascending level order
};

// Optimal fluctuations are theta_s = clip(g_s - nu, -c, c) with g_s = (1/beta)
// log(x_s e^{beta E_s}) and nu fixed by sum x_s theta_s = 0; saturating the
// reversibility sum then gives the mean.
inline Extraction water_fill(const cbw::DiagonalState& rho, std::vector<double> final_energies,
                             double beta, double c) {
  std::vector<double> x, g, e;
  for (std::size_t s = 0; s < rho.dim(); ++s) {
    if (rho.prob(s) <= 0.0) continue;
    x.push_back(rho.prob(s));
    e.push_back(rho.energy(s));
    g.push_back(std::log(rho.prob(s)) / beta + rho.energy(s));
  }
  auto phi = [&](double nu) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * std::clamp(g[i] - nu, -c, c);
    return acc;
  };
  double lo = *std::min_element(g.begin(), g.end()) - c - 1.0;
  double hi = *std::max_element(g.begin(), g.end()) + c + 1.0;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (phi(mid) > 0.0 ? lo : hi) = mid;
  }
  const double nu = 0.5 * (lo + hi);
  Extraction out;
  double top = -INFINITY;
  std::vector<double> terms;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.theta.push_back(std::clamp(g[i] - nu, -c, c));
    terms.push_back(beta * (out.theta.back() - e[i]));
    top = std::max(top, terms.back());
  }
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - top);
  double ztop = -INFINITY;
  for (double ef : final_energies) ztop = std::max(ztop, -beta * ef);
  double zsum = 0.0;
  for (double ef : final_energies) zsum += std::exp(-beta * ef - ztop);
  out.value = ((ztop + std::log(zsum)) - (top + std::log(sum))) / beta;
  return out;
}

// Dense random full-rank state used by property tests.
inline cbw::DiagonalState random_state(std::mt19937_64& rng, std::size_t d, double e_span = 2.0) {
  std::exponential_distribution<double> ex(1.0);
  std::uniform_real_distribution<double> en(-e_span, e_span);
  std::vector<double> p(d), e(d);
  for (auto& v : p) v = ex(rng) + 1e-3;
  for (auto& v : e) v = en(rng);
  const double t = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& v : p) v /= t;
  return cbw::DiagonalState(std::move(p), std::move(e));
}

}  // namespace ref
