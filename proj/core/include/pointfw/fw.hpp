#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pointfw/dictionary.hpp"
#include "pointfw/likelihood.hpp"

namespace pointfw {

enum class StepRule { LineSearch, Deterministic };
enum class StartRule { Zero, LogRate };

struct FitConfig {
  double budget = 4.0;
  int iterations = 200;
  StepRule step = StepRule::LineSearch;
  StartRule start = StartRule::LogRate;
  std::optional<double> gap_tolerance;
  std::uint64_t seed = 0;
};

struct TraceRecord {
  int iter = 0;
  double loglik = 0.0;  // after the update
  double gap = 0.0;     // at the iterate the atom was selected for
  std::string atom;
  double rho = 0.0;
};

struct FitResult {
  AdditiveModel model;
  std::vector<TraceRecord> trace;
  double loglik = 0.0;
  double gap = 0.0;  // at the returned model
};

// Maximizes the log-likelihood over {F_0 shrinkage} + L(budget) by conditional
// gradient: each step moves toward budget/w_theta * sign(D) * theta for the
// atom with the largest weighted directional derivative.
FitResult fit(const PointSet& points, const Dictionary& dictionary, const FitConfig& config);
FitResult fit(const EventTimeline& timeline, const DictionaryConfig& dict_config, const FitConfig& config);

// argmax over [0, 1] of L((1 - rho) F + rho h), with F and h given per row.
// Golden section to width 1e-8; 0 unless a step strictly improves.
double line_search_rho(std::span<const double> current, std::span<const double> candidate,
                       const PointSet& points);

// budget * max_theta |D_T(F, theta)| / w_theta - D_T(F, F); bounds
// sup_{g in L(budget)} L(g) - L(F) from above.
double duality_gap(std::span<const double> f, const PointSet& points, const Dictionary& dictionary,
                   double budget);
double duality_gap(const AdditiveModel& model, const PointSet& points, const Dictionary& dictionary);

}  // namespace pointfw
