#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "railtac/commands.hpp"

namespace {

railtac::RevenueBasis parse_basis(const std::string& name) {
  if (name == "realized") return railtac::RevenueBasis::realized_time;
  if (name == "estimated") return railtac::RevenueBasis::estimated_time;
  throw CLI::ValidationError("--revenue-basis must be 'realized' or 'estimated'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Track-access charging toolkit for freight rail corridors"};
  app.require_subcommand(1);

  railtac::SimulateOptions sim_opts;
  std::string sim_basis = "realized";
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run the freight flow simulation and report KPIs");
  simulate->add_option("--scenario", sim_opts.scenario_file, "Scenario file")
      ->required()
      ->check(CLI::ExistingFile);
  simulate->add_option("--scheme", sim_opts.scheme_file,
                       "Charge scheme file (default: zero charges)");
  simulate->add_option("--policy", sim_opts.policy, "Policy name")->required();
  simulate->add_option("--out", sim_opts.out_dir, "Output directory")->required();
  simulate->add_flag("--trace", sim_opts.trace, "Export the event trace");
  simulate->add_option("--revenue-basis", sim_basis, "realized | estimated");

  railtac::OptimizeOptions opt_opts;
  std::string opt_basis = "realized";
  CLI::App* optimize = app.add_subcommand(
      "optimize", "Search for the revenue-optimal charge scheme");
  optimize->add_option("--scenario", opt_opts.scenario_file, "Scenario file")
      ->required()
      ->check(CLI::ExistingFile);
  optimize
      ->add_option("--scheme-kind", opt_opts.scheme_kind,
                   "proportional | path-based")
      ->check(CLI::IsMember({"proportional", "path-based"}));
  optimize->add_option("--algo", opt_opts.algo, "pattern-search | grid")
      ->check(CLI::IsMember({"pattern-search", "grid"}));
  optimize->add_option("--policy", opt_opts.policy, "Policy name")->required();
  optimize->add_option("--out", opt_opts.out_dir, "Output directory")->required();
  optimize->add_option("--grid-steps", opt_opts.grid_steps,
                       "Points of the proportional scan");
  optimize->add_option("--max-evaluations", opt_opts.max_evaluations,
                       "Pattern-search evaluation budget");
  optimize->add_option("--mesh-tolerance", opt_opts.mesh_tolerance,
                       "Pattern-search stopping mesh");
  optimize->add_flag("--parallel", opt_opts.parallel_poll,
                     "Evaluate poll points concurrently");
  optimize->add_option("--p-min", opt_opts.p_min, "Lower charge bound");
  optimize->add_option("--p-max", opt_opts.p_max, "Upper charge bound");
  optimize->add_option("--revenue-basis", opt_basis, "realized | estimated");

  railtac::SweepOptions sweep_opts;
  std::string sweep_basis = "realized";
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Evaluate the objective over a uniform grid of p");
  sweep->add_option("--scenario", sweep_opts.scenario_file, "Scenario file")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--steps", sweep_opts.steps, "Grid points");
  sweep->add_option("--policy", sweep_opts.policy, "Policy name")->required();
  sweep->add_option("--out", sweep_opts.out_dir, "Output directory")->required();
  sweep->add_option("--p-min", sweep_opts.p_min, "Lower charge bound");
  sweep->add_option("--p-max", sweep_opts.p_max, "Upper charge bound");
  sweep->add_option("--revenue-basis", sweep_basis, "realized | estimated");

  railtac::AppraiseOptions app_opts;
  CLI::App* appraise = app.add_subcommand(
      "appraise", "Benefit and benefit-cost arithmetic against a baseline");
  appraise->add_option("--kpis", app_opts.kpis_file, "kpis.json of a simulate run")
      ->required()
      ->check(CLI::ExistingFile);
  appraise->add_option("--baseline", app_opts.baseline_file, "Baseline KPIs")
      ->required()
      ->check(CLI::ExistingFile);
  appraise->add_option("--bounds", app_opts.bounds_file, "Externality cost bounds")
      ->required()
      ->check(CLI::ExistingFile);
  appraise->add_option("--plan", app_opts.plan_file, "Investment plan")
      ->required()
      ->check(CLI::ExistingFile);
  appraise->add_option("--out", app_opts.out_dir, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) {
      sim_opts.basis = parse_basis(sim_basis);
      railtac::cmd_simulate(sim_opts);
    } else if (optimize->parsed()) {
      opt_opts.basis = parse_basis(opt_basis);
      railtac::cmd_optimize(opt_opts);
    } else if (sweep->parsed()) {
      sweep_opts.basis = parse_basis(sweep_basis);
      railtac::cmd_sweep(sweep_opts);
    } else if (appraise->parsed()) {
      railtac::cmd_appraise(app_opts);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
