#include "pointfw/select.hpp"

#include <algorithm>
#include <cmath>

#include "pointfw/error.hpp"
#include "pointfw/parallel.hpp"

namespace pointfw {

namespace {

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "budget grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw Error(ErrorCode::InvalidArgument, "budgets must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw Error(ErrorCode::InvalidArgument, "budget grid must ascend");
  }
}

std::vector<FitResult> fit_grid(const PointSet& points, const Dictionary& dictionary,
                                const std::vector<double>& grid, const FitConfig& fit_config, int jobs) {
  std::vector<FitResult> fits(grid.size());
  parallel_for(grid.size(), jobs, [&](std::size_t i) {
    FitConfig cfg = fit_config;
    cfg.budget = grid[i];
    fits[i] = fit(points, dictionary, cfg);
  });
  return fits;
}

}  // namespace

int active_parameters(const AdditiveModel& model, double floor) {
  int count = 0;
  for (const auto& t : model.terms()) {
    if (std::abs(t.coef) >= floor) count += parameter_count(t.atom);
  }
  return count;
}

Selected aic_select(const PointSet& points, const Dictionary& dictionary, const std::vector<double>& grid,
                    const FitConfig& fit_config, int jobs) {
  check_grid(grid);
  auto fits = fit_grid(points, dictionary, grid, fit_config, jobs);
  Selected out;
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    BudgetReport r;
    r.budget = grid[i];
    r.loglik_in = fits[i].loglik;
    r.active_parameters = active_parameters(fits[i].model);
    r.aic = r.loglik_in - r.active_parameters;
    out.reports.push_back(r);
    if (out.reports[i].aic > out.reports[best].aic) best = i;
  }
  out.budget = grid[best];
  out.fit = std::move(fits[best]);
  return out;
}

Selected aic_select(const EventTimeline& timeline, const std::vector<double>& grid,
                    const DictionaryConfig& dict_config, const FitConfig& fit_config, int jobs) {
  const auto points = PointSet::from_timeline(timeline);
  const Dictionary dictionary(dict_config, points);
  return aic_select(points, dictionary, grid, fit_config, jobs);
}

Selected validation_select(const EventTimeline& train, const EventTimeline& validation,
                           const std::vector<double>& grid, const DictionaryConfig& dict_config,
                           const FitConfig& fit_config, int jobs) {
  check_grid(grid);
  if (validation.num_jumps() == 0) throw Error(ErrorCode::EmptyValidation, "validation sample has no jumps");
  const auto points = PointSet::from_timeline(train);
  const Dictionary dictionary(dict_config, points);
  auto fits = fit_grid(points, dictionary, grid, fit_config, jobs);
  const auto valid_points = PointSet::from_timeline(validation);

  Selected out;
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    BudgetReport r;
    r.budget = grid[i];
    r.loglik_in = fits[i].loglik;
    r.active_parameters = active_parameters(fits[i].model);
    r.aic = r.loglik_in - r.active_parameters;
    r.loglik_valid = log_likelihood(fits[i].model, valid_points);
    out.reports.push_back(r);
    if (*out.reports[i].loglik_valid > *out.reports[best].loglik_valid) best = i;
  }
  out.budget = grid[best];

  const auto full = train.concat(validation);
  const auto full_points = PointSet::from_timeline(full);
  const Dictionary full_dictionary(dict_config, full_points);
  FitConfig cfg = fit_config;
  cfg.budget = out.budget;
  out.fit = fit(full_points, full_dictionary, cfg);
  return out;
}

}  // namespace pointfw
