#include <string>

#include <CLI11.hpp>

#include "fjsig/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Optimal public signaling schemes for Friedkin-Johnsen opinion networks"};
  app.require_subcommand(1);

  fjsig::commands::Options opts;
  app.add_option("--tol", opts.tol, "tolerance for scheme-file consistency checks");
  app.add_option("--seed", opts.seed, "seed for randomized spot checks");
  app.add_flag("--quiet", opts.quiet, "suppress informational output");

  std::string instance_path, scheme_path, out_path, graph_path, method = "auto";
  int resolution = 0;

  auto* solve = app.add_subcommand("solve", "compute a signaling scheme");
  solve->add_option("instance", instance_path, "instance JSON file")->required();
  solve->add_option("--method,-m", method,
                    "auto|convex|two-state|constant-rank|combinations|monotone|bitonic|approx");
  solve->add_option("--out,-o", out_path, "write the scheme JSON here");

  auto* eval = app.add_subcommand("eval", "re-evaluate a scheme file from scratch");
  eval->add_option("instance", instance_path, "instance JSON file")->required();
  eval->add_option("scheme", scheme_path, "scheme JSON file")->required();

  auto* oracle = app.add_subcommand("oracle", "posterior-grid lower-bound oracle");
  oracle->add_option("instance", instance_path, "instance JSON file")->required();
  oracle->add_option("-R,--resolution", resolution, "grid resolution (0 = default)");

  auto* report = app.add_subcommand("report", "breakpoint CSV export for two-state instances");
  report->add_option("instance", instance_path, "instance JSON file")->required();
  report->add_option("--out,-o", out_path, "CSV output path")->required();

  auto* gen = app.add_subcommand("gen-hardness", "independent-set reduction instance");
  gen->add_option("graph", graph_path, "graph file: 'n <count>' then 'u v' edges")->required();
  gen->add_option("--out,-o", out_path, "instance JSON output path")->required();

  CLI11_PARSE(app, argc, argv);

  if (solve->parsed()) return fjsig::commands::cmd_solve(instance_path, method, out_path, opts);
  if (eval->parsed()) return fjsig::commands::cmd_eval(instance_path, scheme_path, opts);
  if (oracle->parsed()) return fjsig::commands::cmd_oracle(instance_path, resolution, opts);
  if (report->parsed()) return fjsig::commands::cmd_report(instance_path, out_path, opts);
  if (gen->parsed()) return fjsig::commands::cmd_gen_hardness(graph_path, out_path, opts);
  return 1;
}
