#pragma once

#include "figures.hpp"
#include "problem.hpp"

#include <cbw/bounded_work.hpp>
#include <cbw/oracle.hpp>

#include <filesystem>
#include <functional>
#include <iosfwd>

namespace cbw::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitPropertyFailure = 1,
  kExitInputError = 2,
  kExitDomainError = 3,
  kExitIoError = 4,
};

// Commands write a JSON report to out and return an exit code; library
// exceptions propagate and are mapped by run_guarded.
int cmd_work(const ProblemDocument& doc, std::ostream& out);
int cmd_form(const ProblemDocument& doc, std::ostream& out);
int cmd_partition(const ProblemDocument& doc, std::ostream& out);
int cmd_reversible(const ProblemDocument& doc, std::ostream& out);
int cmd_engine(const ProblemDocument& doc, std::ostream& out);

// Writes the CSV to out_path and the summary to log.
int cmd_figure(int n, const std::filesystem::path& out_path, const FigureOptions& opt,
               std::ostream& log);

struct ClosedForms {
  std::function<double(const DiagonalState&, const HamiltonianSpec&, const ThermalContext&,
                       double)>
      work = [](const DiagonalState& r, const HamiltonianSpec& h, const ThermalContext& ctx,
                double c) { return c_bounded_work(r, h, ctx, c).value; };
  std::function<double(const DiagonalState&, const HamiltonianSpec&, const ThermalContext&,
                       double)>
      formation = [](const DiagonalState& r, const HamiltonianSpec& h, const ThermalContext& ctx,
                     double c) { return c_bounded_formation(r, h, ctx, c).value; };
};

// Compares closed forms against the oracle on seeded random instances.
int cmd_oracle_check(std::size_t seeds, std::size_t d_max, double tol, std::ostream& out,
                     const ClosedForms& forms = {});

// Maps library exceptions to the exit-code contract, reporting to err.
int run_guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace cbw::cli
