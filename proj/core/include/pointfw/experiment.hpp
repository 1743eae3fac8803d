#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pointfw/fw.hpp"
#include "pointfw/hawkes.hpp"
#include "pointfw/sim.hpp"

namespace pointfw {

// Estimator families used in the simulation study: Lin uses x_k, Poly uses
// (x_k / cap)^p for p = 1, 2, 3; both add an intercept and use empirical L2 weights.
enum class EstimatorKind { Lin, Poly };

std::string to_string(EstimatorKind kind);

// Dictionary for `kind` on covariates already divided by the design cap.
DictionaryConfig estimator_dictionary(EstimatorKind kind, std::size_t dim);

struct LossExperiment {
  SimDesign design;  // design.n is the in-sample jump count; stream is the first replication index
  EstimatorKind estimator = EstimatorKind::Lin;
  std::vector<double> grid{1.0, 4.0, 8.0, 16.0};
  std::size_t out_of_sample = 1000;  // jumps in the evaluation window
  int iterations = 200;
  std::size_t replications = 200;
  int jobs = 1;
  std::size_t centering_draws = 200000;  // Hawkes designs only
  std::uint64_t centering_seed = 7;
};

struct Replication {
  std::uint64_t stream = 0;
  double loss = 0.0;
  double budget = 0.0;
  std::optional<HawkesParams> hawkes;
  std::string failure;  // nonempty when the replication was skipped
};

struct LossSummary {
  std::vector<Replication> replications;
  std::vector<double> losses;  // successful replications, in stream order
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  std::size_t failures = 0;
  Centering centering;
};

// One replication: simulate n + out_of_sample jumps, fit on (0, T_n] with the
// budget chosen by AIC over the grid, evaluate the Loss on (T_n, T_{n+S}].
Replication run_replication(const LossExperiment& experiment, const SimDesign& design);

// Replications in parallel; results are independent of `jobs`.
LossSummary run_loss_experiment(const LossExperiment& experiment);

}  // namespace pointfw
