#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pointfw::cli {

struct DesignFlags {
  std::size_t K = 10;
  double rho = 0.0;
  std::string truth = "linear";
  std::string profile = "fewlarge";
  std::string dynamics;  // empty: iid, or var1 when --hawkes is given
  std::size_t n = 100;
  std::string hawkes;  // "c0,a0"
  bool no_excitation = false;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;
  std::size_t gamma_draws = 200000;
};

struct SimulateFlags {
  DesignFlags design;
  std::string out = ".";
};

struct FitFlags {
  std::string events;
  std::string covariates;
  std::optional<double> horizon;
  std::string out = ".";
  std::optional<double> budget;
  std::vector<double> grid;
  std::string select = "aic";
  double validation_fraction = 0.25;
  int iterations = 200;
  bool no_line_search = false;
  std::vector<std::string> families{"intercept", "linear"};
  int poly_degree = 3;
  int trig_frequency = 3;
  int bernstein_order = 4;
  double bernstein_alpha = 1e6;
  std::size_t sigmoid_threshold = 1;
  std::string weights = "l2";
  std::string f0 = "lograte";
  double winsorize = 0.95;
  bool no_winsorize = false;
  bool hawkes_fit = false;
  int cycles = 2;
  int jobs = 1;
  std::uint64_t seed = 0;
};

struct EvaluateFlags {
  std::string model;
  std::string against;
  std::string events;
  std::string covariates;
  std::optional<double> horizon;
  double from = 0.0;
  std::string truth;  // manifest.json of the simulating design
  std::string out = "report.json";
};

struct BenchmarkFlags {
  DesignFlags design;
  std::vector<std::string> estimators{"lin", "poly"};
  std::vector<double> grid{1.0, 4.0, 8.0, 16.0};
  std::size_t replications = 200;
  std::size_t out_of_sample = 1000;
  int iterations = 200;
  int jobs = 1;
  std::string out = "benchmark.json";
};

// Each returns the process exit status; errors are thrown as pointfw::Error.
int run_simulate(const SimulateFlags& flags);
int run_fit(const FitFlags& flags, bool require_grid);
int run_evaluate(const EvaluateFlags& flags);
int run_benchmark(const BenchmarkFlags& flags);

}  // namespace pointfw::cli
