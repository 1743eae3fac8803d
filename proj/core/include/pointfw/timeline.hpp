#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pointfw {

struct CovariateUpdate {
  double time = 0.0;
  std::vector<double> values;
};

// Maximal interval (start, end] on which the left-continuous covariate path
// is constant and which contains no jump in its interior. A jump, if any,
// sits exactly at `end`.
struct Segment {
  double start = 0.0;
  double end = 0.0;
  std::size_t update = 0;  // index of the covariate row in effect
  bool jump_at_end = false;

  double length() const { return end - start; }
};

// Jump times plus a piecewise-constant covariate path on [0, horizon].
//
// The value set by an update at time u is in effect on (u, next update], so
// covariate_at(u) still returns the previous value. Immutable once built.
class EventTimeline {
 public:
  // Sorts both inputs; an update at time <= 0 is moved to 0. Throws
  // Error{EmptyUpdates, NonMonotoneTimes, DimensionMismatch, OutOfRange}.
  static EventTimeline build(std::vector<CovariateUpdate> updates, std::vector<double> jumps,
                             double horizon);

  double horizon() const { return horizon_; }
  std::size_t dim() const { return dim_; }
  std::size_t num_jumps() const { return jumps_.size(); }
  std::size_t num_updates() const { return update_times_.size(); }

  std::span<const double> jump_times() const { return jumps_; }
  std::span<const double> update_times() const { return update_times_; }
  std::span<const double> update_values(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }

  // Most recent update strictly before t. Requires 0 < t <= horizon.
  std::span<const double> covariate_at(double t) const;

  // Refinement of the update grid and the jump times over (0, horizon].
  std::vector<Segment> segments() const;

  // Sub-timeline on (from, to], re-based so that `from` becomes time 0.
  EventTimeline slice(double from, double to) const;

  // `later` appended after this timeline's horizon.
  EventTimeline concat(const EventTimeline& later) const;

  // Same jumps and update times with new covariate rows (row-major).
  EventTimeline with_values(std::vector<double> values) const;

 private:
  double horizon_ = 0.0;
  std::size_t dim_ = 0;
  std::vector<double> jumps_;
  std::vector<double> update_times_;
  std::vector<double> values_;
};

// Winsorization cap and scale per coordinate: x -> clamp(x, -cap, cap) / scale.
struct PreprocessTransform {
  std::vector<double> caps;
  std::vector<double> scales;
  std::vector<bool> degenerate;

  std::vector<double> apply(std::span<const double> x) const;
  EventTimeline apply(const EventTimeline& timeline) const;
};

struct Preprocessed {
  EventTimeline timeline;
  PreprocessTransform transform;
};

// Time-weighted q-quantile of |x_k| over the covariate path.
double time_weighted_abs_quantile(const EventTimeline& timeline, std::size_t k, double q);

// Clips each coordinate at its time-weighted q-quantile of |value| and divides
// by it. A coordinate whose quantile is 0 keeps scale 1, is clipped to [-1, 1]
// and is flagged in `transform.degenerate`.
Preprocessed winsorize_standardize(const EventTimeline& timeline, double q = 0.95);

}  // namespace pointfw
