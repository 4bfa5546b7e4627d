#pragma once

#include <cbw/thermo.hpp>
#include <cbw/types.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cbw::cli {

enum class Mode { Work, Form, Reversible, Engine };

std::string_view to_string(Mode m);

struct EngineParams {
  double gap = 0.0;
  double t_hot = 0.0;
  double t_cold = 0.0;
};

// Input document, e.g.
//   {"version": 1, "mode": "work", "beta": 1.0, "c": 0.7,
//    "state": {"probs": [0.9, 0.1], "energies": [0.1, 0.0]}}
// Optional: "final_energies", "final_state" (reversible), "engine" (engine).
struct ProblemDocument {
  int version = 1;
  Mode mode = Mode::Work;
  std::optional<double> beta;
  std::vector<double> probs;
  std::vector<double> energies;
  std::optional<std::vector<double>> final_energies;
  std::optional<std::vector<double>> final_probs;
  std::optional<double> c;
  std::optional<EngineParams> engine;

  ThermalContext context() const;
  DiagonalState state() const;
  HamiltonianSpec final_hamiltonian() const;
  // Throws InputError when c is absent.
  double bound() const;
};

// Throws InputError on malformed text or inconsistent fields.
ProblemDocument parse_problem(std::string_view text);
// Throws IoError when the file cannot be read.
ProblemDocument load_problem(const std::filesystem::path& path);
std::string to_json(const ProblemDocument& doc);

}  // namespace cbw::cli
