#include "pointfw/eval.hpp"

#include <cmath>

#include "pointfw/error.hpp"

namespace pointfw {

namespace {

bool in_window(const PointSet& points, std::size_t i, double from) { return points.start[i] >= from; }

}  // namespace

TestResult oos_lr_test(const FittedModel& g, const FittedModel& g_alt, const PointSet& points, double from) {
  return oos_lr_test(row_intensity(g, points), row_intensity(g_alt, points), points, from);
}

TestResult oos_lr_test(const RowIntensity& a, const RowIntensity& b, const PointSet& points, double from) {
  if (!(from >= 0.0 && from < points.horizon)) throw Error(ErrorCode::OutOfRange, "window start outside timeline");
  if (a.compensator.size() != points.size() || b.compensator.size() != points.size()) {
    throw Error(ErrorCode::DimensionMismatch, "row intensities do not match the segment table");
  }
  std::vector<double> terms;
  std::vector<double> squares;
  TestResult out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!in_window(points, i, from)) continue;
    double term = -(a.compensator[i] - b.compensator[i]);
    if (points.count[i] > 0.0) {
      const double d = a.log_intensity[i] - b.log_intensity[i];
      term += points.count[i] * d;
      squares.push_back(points.count[i] * d * d);
      out.jumps += static_cast<std::size_t>(points.count[i]);
    }
    terms.push_back(term);
  }
  out.S = points.horizon - from;
  out.loglr = pairwise_sum(terms);
  out.avg_loglr = out.loglr / out.S;
  const double ss = pairwise_sum(squares);
  out.sigma_hat = std::sqrt(ss / out.S);
  out.std_error = out.sigma_hat / std::sqrt(out.S);
  if (!(ss > 0.0)) {
    out.zero_variance = true;
    return out;
  }
  out.statistic = out.loglr / std::sqrt(ss);
  out.p_one_sided = 0.5 * std::erfc(out.statistic / std::sqrt(2.0));
  out.p_two_sided = std::erfc(std::abs(out.statistic) / std::sqrt(2.0));
  return out;
}

RescalingResult time_rescaling_residuals(const FittedModel& model, const PointSet& points, double from) {
  const auto rows = row_intensity(model, points);
  RescalingResult out;
  double acc = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!in_window(points, i, from)) continue;
    acc += rows.compensator[i];
    if (points.count[i] > 0.0) {
      out.residuals.push_back(acc);
      acc = 0.0;
    }
  }
  if (!out.residuals.empty()) out.ks = ks_exponential(out.residuals);
  return out;
}

double loss_metric(std::span<const double> g, std::span<const double> g0, const PointSet& points, double from) {
  if (g.size() != points.size() || g0.size() != points.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one value per row required");
  }
  std::vector<double> truth_at_jumps;
  std::vector<double> squared_error;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!in_window(points, i, from) || points.count[i] == 0.0) continue;
    truth_at_jumps.push_back(g0[i]);
    squared_error.push_back((g0[i] - g[i]) * (g0[i] - g[i]));
  }
  if (truth_at_jumps.empty()) throw Error(ErrorCode::NoJumps, "no jumps in the evaluation window");
  const double gamma0 = pairwise_sum(truth_at_jumps) / static_cast<double>(truth_at_jumps.size());
  std::vector<double> spread(truth_at_jumps.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < spread.size(); ++i) {
    spread[i] = (truth_at_jumps[i] - gamma0) * (truth_at_jumps[i] - gamma0);
    scale += truth_at_jumps[i] * truth_at_jumps[i];
  }
  const double denominator = pairwise_sum(spread);
  if (!(denominator > 1e-24 * std::max(1.0, scale))) {
    throw Error(ErrorCode::DegenerateDenominator, "truth is constant on the evaluation jumps");
  }
  return pairwise_sum(squared_error) / denominator;
}

double loss_metric(const FittedModel& model, const TruthFunction& truth, const PointSet& points, double from) {
  const auto g = model.model.eval(points);
  std::vector<double> g0(points.size(), 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (in_window(points, i, from) && points.count[i] > 0.0) g0[i] = truth(points.row(i));
  }
  return loss_metric(g, g0, points, from);
}

}  // namespace pointfw
