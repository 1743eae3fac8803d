#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "pointfw/error.hpp"
#include "pointfw/points.hpp"
#include "pointfw/rng.hpp"
#include "pointfw/timeline.hpp"

namespace testing {

// Error code thrown by f, or nullopt when it returns normally.
inline std::optional<pointfw::ErrorCode> error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const pointfw::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Random timeline with `updates` covariate rows in [-1, 1]^dim and `jumps` jumps.
inline pointfw::EventTimeline random_timeline(pointfw::Rng& rng, std::size_t dim, std::size_t updates,
                                              std::size_t jumps, double horizon) {
  std::vector<pointfw::CovariateUpdate> ups;
  for (std::size_t i = 0; i < updates; ++i) {
    pointfw::CovariateUpdate u;
    u.time = i == 0 ? 0.0 : rng.uniform() * horizon;
    for (std::size_t k = 0; k < dim; ++k) u.values.push_back(2.0 * rng.uniform() - 1.0);
    ups.push_back(std::move(u));
  }
  std::vector<double> js;
  for (std::size_t i = 0; i < jumps; ++i) js.push_back(rng.uniform() * horizon);
  return pointfw::EventTimeline::build(std::move(ups), std::move(js), horizon);
}

// Segment table built by hand: one row per covariate vector.
inline pointfw::PointSet rows(std::size_t dim, const std::vector<std::vector<double>>& xs,
                              const std::vector<double>& durations, const std::vector<double>& counts) {
  pointfw::PointSet p;
  p.dim = dim;
  double t = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    p.covariates.insert(p.covariates.end(), xs[i].begin(), xs[i].end());
    p.start.push_back(t);
    p.duration.push_back(durations[i]);
    p.exposure.push_back(durations[i]);
    p.count.push_back(counts[i]);
    t += durations[i];
    if (counts[i] > 0.0) p.jump_times.push_back(t);
  }
  p.horizon = t;
  return p;
}

}  // namespace testing
