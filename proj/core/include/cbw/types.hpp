#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cbw {

// Error taxonomy. The CLI maps each to an exit code.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ShapeError : InputError {
  using InputError::InputError;
};
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};
struct NumericOverflow : std::overflow_error {
  using std::overflow_error::overflow_error;
};
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ThermalContext {
 public:
  explicit ThermalContext(double beta);
  static ThermalContext from_temperature(double temperature);

  double beta() const noexcept { return beta_; }
  double temperature() const noexcept { return 1.0 / beta_; }

 private:
  double beta_;
};

class HamiltonianSpec {
 public:
  explicit HamiltonianSpec(std::vector<double> energies);

  std::size_t dim() const noexcept { return energies_.size(); }
  std::span<const double> energies() const noexcept { return energies_; }
  double operator[](std::size_t i) const { return energies_[i]; }
  double spread() const;

 private:
  std::vector<double> energies_;
};

// Occupations of a state diagonal in the energy eigenbasis, paired with the
// Hamiltonian the state lives under.
class DiagonalState {
 public:
  static constexpr double normalization_tolerance = 1e-12;

  DiagonalState(std::vector<double> probs, HamiltonianSpec hamiltonian);
  DiagonalState(std::vector<double> probs, std::vector<double> energies);

  static DiagonalState gibbs(const HamiltonianSpec& h, const ThermalContext& ctx);
  static DiagonalState pure(const HamiltonianSpec& h, std::size_t level);

  std::size_t dim() const noexcept { return probs_.size(); }
  std::span<const double> probs() const noexcept { return probs_; }
  std::span<const double> energies() const noexcept { return h_.energies(); }
  const HamiltonianSpec& hamiltonian() const noexcept { return h_; }
  double prob(std::size_t i) const { return probs_[i]; }
  double energy(std::size_t i) const { return h_[i]; }

  std::vector<std::size_t> support() const;
  std::size_t rank() const;
  bool full_rank() const { return rank() == dim(); }

  // Level i of the result is level perm[i] of this state.
  DiagonalState permuted(std::span<const std::size_t> perm) const;

 private:
  std::vector<double> probs_;
  HamiltonianSpec h_;
};

// Support indices sorted by descending x_s e^{beta E_s}, stable on ties.
struct BetaOrder {
  std::vector<std::size_t> permutation;

  std::size_t size() const noexcept { return permutation.size(); }
  std::size_t operator[](std::size_t i) const { return permutation[i]; }
};

}  // namespace cbw
