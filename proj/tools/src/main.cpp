#include "commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace cbw::cli;

namespace {

struct DocArgs {
  std::string input;
  std::string out;
  std::optional<double> c;
  std::optional<double> beta;
};

CLI::App* doc_command(CLI::App& app, const char* name, const char* help, DocArgs& args) {
  CLI::App* sub = app.add_subcommand(name, help);
  sub->add_option("--input", args.input, "problem document (JSON)")->required();
  sub->add_option("--out", args.out, "write the report here instead of stdout");
  sub->add_option("--c", args.c, "override the fluctuation bound");
  sub->add_option("--beta", args.beta, "override the inverse temperature");
  return sub;
}

int run_doc(const DocArgs& args, int (*cmd)(const ProblemDocument&, std::ostream&)) {
  ProblemDocument doc = load_problem(args.input);
  if (args.c) doc.c = *args.c;
  if (args.beta) doc.beta = *args.beta;
  if (args.out.empty()) return cmd(doc, std::cout);
  std::ofstream out(args.out, std::ios::binary);
  if (!out) throw cbw::IoError("cannot write " + args.out);
  const int rc = cmd(doc, out);
  out.flush();
  if (!out) throw cbw::IoError("failed writing " + args.out);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Work extraction and state formation under bounded work fluctuations"};
  app.require_subcommand(1);

  DocArgs work_args, form_args, part_args, rev_args, eng_args;
  auto* work = doc_command(app, "work", "bounded work content of a state", work_args);
  auto* form = doc_command(app, "form", "bounded work of formation of a state", form_args);
  auto* part = doc_command(app, "partition", "extraction and formation partitions", part_args);
  auto* rev = doc_command(app, "reversible", "reversibility window of a transition", rev_args);
  auto* eng = doc_command(app, "engine", "one cycle of the bounded qubit engine", eng_args);

  int figure_n = 0;
  std::string figure_out;
  FigureOptions fig_opt;
  auto* fig = app.add_subcommand("figure", "write a figure sweep as CSV");
  fig->add_option("n", figure_n, "figure number (1, 2 or 3)")->required();
  fig->add_option("--out", figure_out, "CSV output path")->required();
  fig->add_option("--x-min", fig_opt.x_min, "figure 1 lower x");
  fig->add_option("--x-max", fig_opt.x_max, "figure 1 upper x");

  std::size_t seeds = 1000, d_max = 5;
  double tol = 1e-6;
  auto* oc = app.add_subcommand("oracle-check", "compare closed forms with the oracle");
  oc->add_option("--seeds", seeds, "number of random instances");
  oc->add_option("--d-max", d_max, "largest dimension");
  oc->add_option("--tol", tol, "allowed absolute deviation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  return run_guarded(
      [&]() -> int {
        if (*work) return run_doc(work_args, cmd_work);
        if (*form) return run_doc(form_args, cmd_form);
        if (*part) return run_doc(part_args, cmd_partition);
        if (*rev) return run_doc(rev_args, cmd_reversible);
        if (*eng) return run_doc(eng_args, cmd_engine);
        if (*fig) return cmd_figure(figure_n, figure_out, fig_opt, std::cout);
        return cmd_oracle_check(seeds, d_max, tol, std::cout);
      },
      std::cerr);
}
