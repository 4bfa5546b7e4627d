#pragma once

#include "csv.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cbw::cli {

struct FigureOptions {
  double x_min = 0.5;
  double x_max = 1.0;
  std::size_t x_points = 501;
};

struct FigureData {
  Table table;
  // Scalar findings printed alongside the CSV (discontinuities, thresholds).
  std::vector<std::pair<std::string, double>> summary;

  double find(const std::string& key) const;
};

// 1: qubit x|0><0| + (1-x)|1><1|, energies (0.1, 0), beta 1, c 0.7.
FigureData figure1(const FigureOptions& opt = {});
// 2: trit (0.7, 0.2, 0.1), energies (0.1, 0.2, 0), beta 1, c in [0, 2.5].
FigureData figure2();
// 3: qubit engine, gap 0.1, T_C 1, log-spaced T_H in (1, 1000].
FigureData figure3();

FigureData build_figure(int n, const FigureOptions& opt = {});

}  // namespace cbw::cli
