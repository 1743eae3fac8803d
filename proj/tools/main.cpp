#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "pointfw/error.hpp"

namespace {

using pointfw::cli::DesignFlags;

void add_design_flags(CLI::App* cmd, DesignFlags& d) {
  cmd->add_option("--K", d.K, "Number of covariates")->check(CLI::PositiveNumber);
  cmd->add_option("--rho", d.rho, "Toeplitz correlation in [0, 1)")
      ->check(CLI::Validator(
          [](std::string& s) -> std::string {
            double v = 0.0;
            try {
              v = std::stod(s);
            } catch (...) {
              return "not a number: " + s;
            }
            return v >= 0.0 && v < 1.0 ? std::string() : "value " + s + " outside [0, 1)";
          },
          "in [0, 1)"));
  cmd->add_option("--truth", d.truth, "linear | convex")->check(CLI::IsMember({"linear", "convex"}));
  cmd->add_option("--profile", d.profile, "fewlarge | manysmall | zero")
      ->check(CLI::IsMember({"fewlarge", "manysmall", "zero"}));
  cmd->add_option("--dynamics", d.dynamics, "iid | var1 (default: var1 with --hawkes, else iid)")
      ->check(CLI::IsMember({"iid", "var1"}));
  cmd->add_option("--n", d.n, "Number of jumps")->check(CLI::PositiveNumber);
  cmd->add_option("--hawkes", d.hawkes, "Hawkes truth c0,a0");
  cmd->add_flag("--no-excitation", d.no_excitation, "Drop the self-exciting term from the Hawkes truth");
  cmd->add_option("--seed", d.seed, "Random seed");
  cmd->add_option("--stream", d.stream, "Replication index (random stream)");
  cmd->add_option("--gamma-draws", d.gamma_draws, "Monte Carlo draws for the Hawkes centering")
      ->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frank-Wolfe estimation of point-process intensities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "pointfw 0.1.0");

  pointfw::cli::SimulateFlags sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate a design to events.csv, covariates.csv, manifest.json");
  add_design_flags(simulate, sim.design);
  simulate->add_option("--out", sim.out, "Output directory");

  pointfw::cli::FitFlags fit;
  auto add_fit_flags = [&fit](CLI::App* cmd) {
    cmd->add_option("--events", fit.events, "Events CSV")->required()->check(CLI::ExistingFile);
    cmd->add_option("--covariates", fit.covariates, "Covariates CSV")->required()->check(CLI::ExistingFile);
    cmd->add_option("--horizon", fit.horizon, "Sample end (default: last event or update)");
    cmd->add_option("--out", fit.out, "Output directory");
    auto* b = cmd->add_option("--B", fit.budget, "Budget")->check(CLI::PositiveNumber);
    auto* g = cmd->add_option("--grid", fit.grid, "Budget grid, comma separated")->delimiter(',');
    b->excludes(g);
    cmd->add_option("--select", fit.select, "aic | validation")->check(CLI::IsMember({"aic", "validation"}));
    cmd->add_option("--validation-fraction", fit.validation_fraction, "Share of jumps held out for validation")
        ->check(CLI::Range(0.05, 0.95));
    cmd->add_option("--iters", fit.iterations, "Frank-Wolfe iterations")->check(CLI::PositiveNumber);
    cmd->add_flag("--no-line-search", fit.no_line_search, "Use rho_j = 2/(j+1)");
    cmd->add_option("--families", fit.families, "intercept,linear,poly,trig,sigmoid,bernstein,hawkes")
        ->delimiter(',')
        ->check(CLI::IsMember({"intercept", "linear", "poly", "trig", "sigmoid", "bernstein", "hawkes"}));
    cmd->add_option("--poly-degree", fit.poly_degree, "Highest monomial power")->check(CLI::Range(1, 10));
    cmd->add_option("--trig-freq", fit.trig_frequency, "Highest trigonometric frequency")->check(CLI::Range(1, 100));
    cmd->add_option("--bernstein-order", fit.bernstein_order, "Bernstein order V")->check(CLI::Range(1, 50));
    cmd->add_option("--bernstein-alpha", fit.bernstein_alpha, "Lipschitz bound for Bernstein atoms")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--sigmoid-threshold", fit.sigmoid_threshold, "Threshold covariate (1-based)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--weights", fit.weights, "unit | l2")->check(CLI::IsMember({"unit", "l2"}));
    cmd->add_option("--f0", fit.f0, "zero | lograte")->check(CLI::IsMember({"zero", "lograte"}));
    cmd->add_option("--winsorize", fit.winsorize, "Winsorization quantile")->check(CLI::Range(0.5, 1.0));
    cmd->add_flag("--no-winsorize", fit.no_winsorize, "Use covariates as given");
    cmd->add_flag("--hawkes-fit", fit.hawkes_fit, "Estimate Hawkes baseline c and decay a jointly");
    cmd->add_option("--cycles", fit.cycles, "Alternating cycles for --hawkes-fit")->check(CLI::PositiveNumber);
    cmd->add_option("--jobs", fit.jobs, "Threads for the budget grid")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", fit.seed, "Seed");
  };
  auto* fit_cmd = app.add_subcommand("fit", "Fit a model: model.json, trace.jsonl (and report.json with --grid)");
  add_fit_flags(fit_cmd);
  auto* select_cmd = app.add_subcommand("select", "Choose the budget over --grid by AIC or validation");
  add_fit_flags(select_cmd);

  pointfw::cli::EvaluateFlags ev;
  auto* evaluate = app.add_subcommand("evaluate", "Out-of-sample test, time-rescaling KS and Loss");
  evaluate->add_option("--model", ev.model, "Model JSON")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--against", ev.against, "Competing model JSON")->check(CLI::ExistingFile);
  evaluate->add_option("--events", ev.events, "Events CSV")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--covariates", ev.covariates, "Covariates CSV")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--horizon", ev.horizon, "Sample end");
  evaluate->add_option("--from", ev.from, "Start of the evaluation window")->check(CLI::NonNegativeNumber);
  evaluate->add_option("--truth", ev.truth, "manifest.json of the simulating design (enables Loss)")
      ->check(CLI::ExistingFile);
  evaluate->add_option("--out", ev.out, "Report JSON");

  pointfw::cli::BenchmarkFlags bench;
  auto* benchmark = app.add_subcommand("benchmark", "Simulate, fit and score replications of a design");
  add_design_flags(benchmark, bench.design);
  benchmark->add_option("--estimators", bench.estimators, "lin,poly")
      ->delimiter(',')
      ->check(CLI::IsMember({"lin", "poly"}));
  benchmark->add_option("--grid", bench.grid, "Budget grid")->delimiter(',');
  benchmark->add_option("--replications", bench.replications, "Replications")->check(CLI::PositiveNumber);
  benchmark->add_option("--out-of-sample", bench.out_of_sample, "Jumps in the evaluation window")
      ->check(CLI::PositiveNumber);
  benchmark->add_option("--iters", bench.iterations, "Frank-Wolfe iterations")->check(CLI::PositiveNumber);
  benchmark->add_option("--jobs", bench.jobs, "Parallel replications")->check(CLI::PositiveNumber);
  benchmark->add_option("--out", bench.out, "Report JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*simulate) return pointfw::cli::run_simulate(sim);
    if (*fit_cmd) return pointfw::cli::run_fit(fit, false);
    if (*select_cmd) return pointfw::cli::run_fit(fit, true);
    if (*evaluate) return pointfw::cli::run_evaluate(ev);
    if (*benchmark) return pointfw::cli::run_benchmark(bench);
  } catch (const pointfw::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    if (e.code() == pointfw::ErrorCode::InvalidArgument) return 2;
    return pointfw::is_numeric(e.code()) ? 4 : 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;
}
