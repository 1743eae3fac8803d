#pragma once

#include <optional>
#include <vector>

#include "pointfw/fw.hpp"
#include "pointfw/timeline.hpp"

namespace pointfw {

struct BudgetReport {
  double budget = 0.0;
  double loglik_in = 0.0;
  int active_parameters = 0;  // K_B
  double aic = 0.0;
  std::optional<double> loglik_valid;
};

struct Selected {
  double budget = 0.0;
  FitResult fit;  // at the selected budget
  std::vector<BudgetReport> reports;  // ascending budget
};

// Nonzero parameters of a fitted model: one per finite atom, the parameter
// count of each parametric atom.
int active_parameters(const AdditiveModel& model, double floor = 1e-12);

// Fits every budget in the grid, picks the largest L_T(fit_B) - K_B; ties go to
// the smaller budget. `jobs` > 1 fits grid points concurrently.
Selected aic_select(const EventTimeline& timeline, const std::vector<double>& grid,
                    const DictionaryConfig& dict_config, const FitConfig& fit_config, int jobs = 1);
Selected aic_select(const PointSet& points, const Dictionary& dictionary, const std::vector<double>& grid,
                    const FitConfig& fit_config, int jobs = 1);

// Fits on `train`, scores each budget by the likelihood on `validation`, then
// refits on train followed by validation at the selected budget.
Selected validation_select(const EventTimeline& train, const EventTimeline& validation,
                           const std::vector<double>& grid, const DictionaryConfig& dict_config,
                           const FitConfig& fit_config, int jobs = 1);

}  // namespace pointfw
