#include "pointfw/points.hpp"

#include <cmath>

#include "pointfw/error.hpp"

namespace pointfw {

PointSet PointSet::from_timeline(const EventTimeline& timeline) {
  PointSet p;
  p.dim = timeline.dim();
  p.horizon = timeline.horizon();
  const auto segs = timeline.segments();
  p.covariates.reserve(segs.size() * p.dim);
  p.start.reserve(segs.size());
  p.duration.reserve(segs.size());
  p.count.reserve(segs.size());
  for (const auto& s : segs) {
    auto x = timeline.update_values(s.update);
    p.covariates.insert(p.covariates.end(), x.begin(), x.end());
    p.start.push_back(s.start);
    p.duration.push_back(s.length());
    p.count.push_back(s.jump_at_end ? 1.0 : 0.0);
  }
  p.exposure = p.duration;
  const auto jumps = timeline.jump_times();
  p.jump_times.assign(jumps.begin(), jumps.end());
  return p;
}

double PointSet::total_exposure() const {
  double s = 0.0;
  for (double e : exposure) s += e;
  return s;
}

std::vector<double> discounted_counts(const PointSet& points, double decay) {
  if (!(decay > 0.0)) throw Error(ErrorCode::InvalidArgument, "decay must be positive");
  std::vector<double> out(points.size());
  double level = 0.0;  // discounted count at time `at`
  double at = 0.0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double s = points.start[i];
    while (j < points.jump_times.size() && points.jump_times[j] <= s) {
      level = level * std::exp(-decay * (points.jump_times[j] - at)) + 1.0;
      at = points.jump_times[j];
      ++j;
    }
    out[i] = level * std::exp(-decay * (s - at));
  }
  return out;
}

}  // namespace pointfw
