#pragma once

#include <functional>
#include <span>
#include <vector>

#include "pointfw/hawkes.hpp"
#include "pointfw/numeric.hpp"
#include "pointfw/points.hpp"

namespace pointfw {

// Out-of-sample comparison of two log-intensities over a window of length S.
struct TestResult {
  double loglr = 0.0;       // L_S(g, g')
  double statistic = 0.0;   // L_S / sqrt(S sigma_hat^2)
  double sigma_hat = 0.0;   // sqrt((1/S) sum over jumps of (g - g')^2)
  double avg_loglr = 0.0;   // L_S / S
  double std_error = 0.0;   // sigma_hat / sqrt(S)
  double p_one_sided = 1.0; // P(Z > statistic): small when g forecasts better
  double p_two_sided = 1.0;
  double S = 0.0;
  std::size_t jumps = 0;
  bool zero_variance = false;  // g = g' at every jump; test undefined
};

// Rows of `points` starting at or after `from` form the evaluation window
// (from, horizon]. Fitting on earlier data keeps both models predictable.
TestResult oos_lr_test(const FittedModel& g, const FittedModel& g_alt, const PointSet& points, double from = 0.0);
// Same test from row intensities computed on a shared segment table.
TestResult oos_lr_test(const RowIntensity& a, const RowIntensity& b, const PointSet& points, double from = 0.0);

struct RescalingResult {
  std::vector<double> residuals;  // fitted Lambda over consecutive inter-jump intervals
  KsResult ks;
};

RescalingResult time_rescaling_residuals(const FittedModel& model, const PointSet& points, double from = 0.0);

using TruthFunction = std::function<double(std::span<const double>)>;

// sum_jumps (g_0 - g)^2 / sum_jumps (g_0 - gamma_0)^2 over jumps after `from`,
// gamma_0 the jump average of g_0. Throws DegenerateDenominator when g_0 is
// constant on those jumps and NoJumps when there are none.
double loss_metric(const FittedModel& model, const TruthFunction& truth, const PointSet& points, double from = 0.0);
// Same ratio from per-row values of g and g_0.
double loss_metric(std::span<const double> g, std::span<const double> g0, const PointSet& points, double from = 0.0);

}  // namespace pointfw
