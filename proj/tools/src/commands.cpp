#include "commands.hpp"

#include <cbw/engine.hpp>
#include <cbw/reversibility.hpp>
#include <cbw/thermo.hpp>

#include <json.hpp>

#include <cmath>
#include <ostream>

namespace cbw::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ordered_json partition_json(const Partition& p) {
  ordered_json j;
  j["plus"] = p.plus;
  j["unbounded"] = p.unbounded;
  j["minus"] = p.minus;
  j["X_plus"] = p.x_plus;
  j["X_minus"] = p.x_minus;
  j["X_u"] = p.x_u;
  j["Z_plus"] = p.z_plus;
  j["Z_minus"] = p.z_minus;
  j["F_u"] = p.f_u;
  j["nu"] = p.nu;
  j["gamma"] = p.gamma;
  return j;
}

ordered_json levels_json(const WorkDistribution& d) {
  ordered_json arr = ordered_json::array();
  for (std::size_t i = 0; i < d.entries.size(); ++i)
    arr.push_back({{"level", d.entries[i].level},
                   {"prob", d.entries[i].prob},
                   {"work", d.entries[i].work},
                   {"fluctuation", d.fluctuation(i)}});
  return arr;
}

void emit(std::ostream& out, const ordered_json& j) { out << j.dump(2) << '\n'; }

}  // namespace

int cmd_work(const ProblemDocument& doc, std::ostream& out) {
  const auto rho = doc.state();
  const auto hf = doc.final_hamiltonian();
  const auto ctx = doc.context();
  const double c = doc.bound();
  const BoundedWorkResult r = c_bounded_work(rho, hf, ctx, c);

  ordered_json j;
  j["mode"] = "work";
  j["beta"] = ctx.beta();
  j["c"] = c;
  j["W_0"] = deterministic_work(rho, hf, ctx);
  j["W_c"] = r.value;
  j["W_inf"] = unbounded_work(rho, hf, ctx).mean;
  j["regime"] = std::string(to_string(r.regime));
  j["partition"] = partition_json(r.partition);
  j["levels"] = levels_json(r.distribution);
  emit(out, j);
  return kExitOk;
}

int cmd_form(const ProblemDocument& doc, std::ostream& out) {
  const auto target = doc.state();
  const auto hi = doc.final_hamiltonian();
  const auto ctx = doc.context();
  const double c = doc.bound();
  const BoundedWorkResult r = c_bounded_formation(target, hi, ctx, c);

  ordered_json j;
  j["mode"] = "form";
  j["beta"] = ctx.beta();
  j["c"] = c;
  j["WF_0"] = deterministic_formation_cost(target, hi, ctx);
  j["WF_c"] = r.value;
  j["WF_inf"] = unbounded_formation_cost(target, hi, ctx);
  j["regime"] = std::string(to_string(r.regime));
  j["partition"] = partition_json(r.partition);
  j["levels"] = levels_json(r.distribution);
  emit(out, j);
  return kExitOk;
}

int cmd_partition(const ProblemDocument& doc, std::ostream& out) {
  const auto rho = doc.state();
  const auto hf = doc.final_hamiltonian();
  const auto ctx = doc.context();
  const double c = doc.bound();

  ordered_json j;
  j["beta"] = ctx.beta();
  j["c"] = c;
  j["beta_order"] = beta_order(rho, ctx).permutation;
  j["extraction"] = partition_json(extraction_partition(rho, hf, ctx, c));
  j["formation"] = partition_json(formation_partition(rho, hf, ctx, c));
  emit(out, j);
  return kExitOk;
}

int cmd_reversible(const ProblemDocument& doc, std::ostream& out) {
  const auto ctx = doc.context();
  const auto rho = doc.state();
  const TransitionSpec spec =
      doc.final_probs ? TransitionSpec{rho, DiagonalState(*doc.final_probs, *doc.final_energies)}
                      : TransitionSpec::to_gibbs(rho, doc.final_hamiltonian(), ctx);
  const FluctuationBound bound = min_reversible_c(spec, ctx);
  const WorkMatrix m = reversible_work_values(spec, ctx);

  ordered_json j;
  j["beta"] = ctx.beta();
  j["delta_F"] = free_energy(spec.initial, ctx) - free_energy(spec.final_state, ctx);
  if (bound.is_infinite()) j["min_reversible_c"] = "infinity";
  else j["min_reversible_c"] = bound.value();
  if (doc.c) {
    j["c"] = *doc.c;
    j["reversible_within_c"] = is_reversible_within(spec, ctx, *doc.c);
  }
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t k = 0; k < m.cols.size(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  j["work_values"] = {{"rows", m.rows}, {"cols", m.cols}, {"values", rows}};
  emit(out, j);
  return kExitOk;
}

int cmd_engine(const ProblemDocument& doc, std::ostream& out) {
  if (!doc.engine) throw InputError("engine mode needs an engine block");
  const EngineParams& p = *doc.engine;
  const double c = doc.bound();
  const EngineSpec spec{p.gap, ThermalContext::from_temperature(p.t_hot).beta(),
                        ThermalContext::from_temperature(p.t_cold).beta(), c};
  const EngineCycleResult r = engine_cycle(spec);

  ordered_json j;
  j["gap"] = p.gap;
  j["t_hot"] = p.t_hot;
  j["t_cold"] = p.t_cold;
  j["c"] = c;
  j["A"] = r.a;
  j["B"] = r.b;
  j["A_bounded"] = r.a_bounded;
  j["B_bounded"] = r.b_bounded;
  j["W_1"] = r.w1;
  j["W_2"] = r.w2;
  j["delta_U"] = r.delta_u;
  j["Q_hot"] = r.q_hot;
  j["efficiency"] = r.efficiency;
  j["carnot"] = carnot_efficiency(spec.beta_hot, spec.beta_cold);
  j["max_efficiency"] = max_efficiency(p.gap, c);
  j["stroke_deviation"] = r.stroke_deviation();
  emit(out, j);
  return kExitOk;
}

int cmd_figure(int n, const std::filesystem::path& out_path, const FigureOptions& opt,
               std::ostream& log) {
  const FigureData fig = build_figure(n, opt);
  write_csv(fig.table, out_path);
  log << "figure " << n << ": " << fig.table.rows.size() << " rows -> " << out_path.string()
      << '\n';
  for (const auto& [k, v] : fig.summary) log << k << " = " << format_number(v) << '\n';
  return kExitOk;
}

int cmd_oracle_check(std::size_t seeds, std::size_t d_max, double tol, std::ostream& out,
                     const ClosedForms& forms) {
  if (seeds == 0) throw InputError("seed count must be at least 1");
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");

  double worst_work = 0.0, worst_form = 0.0;
  ordered_json failures = ordered_json::array();
  for (std::size_t seed = 0; seed < seeds; ++seed) {
    const RandomInstance inst = random_instance(seed, d_max, {0.1, 10.0}, {0.0, 5.0});
    const auto& h = inst.hamiltonian();

    auto check = [&](const char* kind, auto closed, auto oracle, double& worst) {
      double a = std::nan(""), b = std::nan("");
      std::string error;
      try {
        a = closed();
        b = oracle();
      } catch (const std::exception& e) {
        error = e.what();
      }
      const double dev = std::abs(a - b);
      if (error.empty() && dev <= tol) {
        worst = std::max(worst, dev);
        return;
      }
      ProblemDocument replay;
      replay.mode = std::string(kind) == "work" ? Mode::Work : Mode::Form;
      replay.beta = inst.ctx.beta();
      replay.c = inst.c;
      replay.probs.assign(inst.state.probs().begin(), inst.state.probs().end());
      replay.energies.assign(h.energies().begin(), h.energies().end());
      ordered_json f{{"seed", seed}, {"kind", kind}, {"closed_form", a}, {"oracle", b},
                     {"problem", json::parse(to_json(replay))}};
      if (!error.empty()) f["error"] = error;
      failures.push_back(f);
    };
    check(
        "work", [&] { return forms.work(inst.state, h, inst.ctx, inst.c); },
        [&] { return oracle_extraction(inst.state, h, inst.ctx, inst.c).mean; }, worst_work);
    check(
        "form", [&] { return forms.formation(inst.state, h, inst.ctx, inst.c); },
        [&] { return -oracle_formation(inst.state, h, inst.ctx, inst.c).mean; }, worst_form);
  }

  ordered_json j;
  j["instances"] = seeds;
  j["d_max"] = d_max;
  j["tol"] = tol;
  j["max_deviation_work"] = worst_work;
  j["max_deviation_formation"] = worst_form;
  j["failures"] = failures;
  emit(out, j);
  return failures.empty() ? kExitOk : kExitPropertyFailure;
}

int run_guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return kExitIoError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const NumericOverflow& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomainError;
  } catch (const ConvergenceError& e) {
    err << "property failure: " << e.what() << '\n';
    return kExitPropertyFailure;
  } catch (const json::exception& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace cbw::cli
