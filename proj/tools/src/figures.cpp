#include "figures.hpp"

#include <cbw/bounded_work.hpp>
#include <cbw/engine.hpp>
#include <cbw/reversibility.hpp>
#include <cbw/thermo.hpp>

#include <cmath>
#include <sstream>

namespace cbw::cli {

double FigureData::find(const std::string& key) const {
  for (const auto& [k, v] : summary)
    if (k == key) return v;
  throw InputError("figure summary has no key " + key);
}

namespace {

constexpr double kFig1Gap = 0.1;
constexpr double kFig1C = 0.7;

struct QubitPoint {
  double w_inf, w_c, wf_c;
};

QubitPoint fig1_point(double x, const HamiltonianSpec& h, const ThermalContext& ctx) {
  const DiagonalState rho({x, 1.0 - x}, h);
  return {unbounded_work(rho, h, ctx).mean, c_bounded_work(rho, h, ctx, kFig1C).value,
          c_bounded_formation(rho, h, ctx, kFig1C).value};
}

// First grid point from which values[i] stays within tol of target.
double settles_at(const std::vector<std::vector<double>>& rows, std::size_t col, double target,
                  double tol) {
  double at = std::nan("");
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    if (std::abs((*it)[col] - target) > tol) break;
    at = (*it)[0];
  }
  return at;
}

}  // namespace

FigureData figure1(const FigureOptions& opt) {
  if (!(0.0 <= opt.x_min && opt.x_min < opt.x_max && opt.x_max <= 1.0) || opt.x_points < 2)
    throw InputError("figure 1 x range must satisfy 0 <= x_min < x_max <= 1");
  const HamiltonianSpec h({kFig1Gap, 0.0});
  const ThermalContext ctx(1.0);

  FigureData fig;
  fig.table.columns = {"x", "W_inf", "W_c", "WF_c"};
  for (std::size_t i = 0; i < opt.x_points; ++i) {
    const double x = i + 1 == opt.x_points
                         ? opt.x_max
                         : opt.x_min + (opt.x_max - opt.x_min) * i / (opt.x_points - 1);
    const QubitPoint p = fig1_point(x, h, ctx);
    fig.table.rows.push_back({x, p.w_inf, p.w_c, p.wf_c});
  }

  // Pure endpoints: the value there differs from the limit approaching it.
  for (double end : {0.0, 1.0}) {
    if (end < opt.x_min || end > opt.x_max) continue;
    const double inner = end == 1.0 ? 1.0 - 1e-12 : 1e-12;
    const double at = fig1_point(end, h, ctx).w_c;
    const double limit = fig1_point(inner, h, ctx).w_c;
    const std::string tag = end == 1.0 ? "x1" : "x0";
    fig.summary.push_back({"discontinuity_" + tag + "_value", at});
    fig.summary.push_back({"discontinuity_" + tag + "_limit", limit});
    fig.summary.push_back({"discontinuity_" + tag + "_jump", at - limit});
  }

  const auto& rows = fig.table.rows;
  double reversible_from = std::nan(""), reversible_to = std::nan("");
  for (const auto& r : rows) {
    if (std::abs(r[2] - r[1]) <= 1e-12 * (1.0 + std::abs(r[1]))) {
      if (std::isnan(reversible_from)) reversible_from = r[0];
      reversible_to = r[0];
    }
  }
  fig.summary.push_back({"extraction_unbounded_from_x", reversible_from});
  fig.summary.push_back({"extraction_unbounded_to_x", reversible_to});
  return fig;
}

FigureData figure2() {
  const DiagonalState rho({0.7, 0.2, 0.1}, {0.1, 0.2, 0.0});
  const HamiltonianSpec& h = rho.hamiltonian();
  const ThermalContext ctx(1.0);
  std::vector<double> grid;
  for (int i = 0; i <= 250; ++i) grid.push_back(i / 100.0);

  const double w_inf = unbounded_work(rho, h, ctx).mean;
  const double wf_inf = unbounded_formation_cost(rho, h, ctx);
  FigureData fig;
  fig.table.columns = {"c", "W_c", "WF_c", "W_inf"};
  for (const CurvePoint& p : work_curve(rho, h, ctx, grid))
    fig.table.rows.push_back({p.c, p.work, p.formation, w_inf});

  const auto gibbs = DiagonalState::gibbs(h, ctx);
  fig.summary.push_back(
      {"extraction_reversible_c", min_reversible_c({rho, gibbs}, ctx).value()});
  fig.summary.push_back({"formation_reversible_c", min_reversible_c({gibbs, rho}, ctx).value()});
  fig.summary.push_back({"extraction_reaches_unbounded_at_c",
                         settles_at(fig.table.rows, 1, w_inf, 1e-12)});
  fig.summary.push_back({"formation_reaches_unbounded_at_c",
                         settles_at(fig.table.rows, 2, wf_inf, 1e-12)});
  return fig;
}

FigureData figure3() {
  const double gap = 0.1, t_cold = 1.0;
  const std::vector<double> c_list{0.01, 0.05, 0.1, 0.5, 1.0};
  std::vector<double> t_hot;
  for (int k = 1; k <= 150; ++k) t_hot.push_back(std::pow(10.0, 3.0 * k / 150.0));

  const EfficiencyTable sweep = efficiency_sweep(gap, t_cold, t_hot, c_list);
  FigureData fig;
  fig.table.columns = {"T_hot", "eta_carnot"};
  for (double c : c_list) {
    std::ostringstream name;
    name << "eta_c_" << c;
    fig.table.columns.push_back(name.str());
  }
  for (double c : c_list) {
    std::ostringstream name;
    name << "eta_max_" << c;
    fig.table.columns.push_back(name.str());
  }
  for (const EfficiencyRow& r : sweep.rows) {
    std::vector<double> row{r.t_hot, r.carnot};
    row.insert(row.end(), r.eta.begin(), r.eta.end());
    row.insert(row.end(), sweep.eta_max.begin(), sweep.eta_max.end());
    fig.table.rows.push_back(std::move(row));
  }
  return fig;
}

FigureData build_figure(int n, const FigureOptions& opt) {
  switch (n) {
    case 1: return figure1(opt);
    case 2: return figure2();
    case 3: return figure3();
    default: throw InputError("figure must be 1, 2 or 3");
  }
}

}  // namespace cbw::cli
