#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pointfw/timeline.hpp"

namespace pointfw {

// Flattened segment table of a timeline. Row i is one segment: its covariate
// row, its length, the compensator weight multiplying exp{F} on it
// (`exposure`, equal to `duration` for a Cox intensity) and the number of
// jumps at its right end (0 or 1). Every integral in the likelihood is a
// finite sum over rows.
struct PointSet {
  std::size_t dim = 0;
  double horizon = 0.0;
  std::vector<double> covariates;  // row-major, size() x dim
  std::vector<double> start;
  std::vector<double> duration;
  std::vector<double> exposure;
  std::vector<double> count;
  std::vector<double> jump_times;

  static PointSet from_timeline(const EventTimeline& timeline);

  std::size_t size() const { return start.size(); }
  std::span<const double> row(std::size_t i) const { return {covariates.data() + i * dim, dim}; }
  double num_jumps() const { return static_cast<double>(jump_times.size()); }
  double total_exposure() const;
};

// Exponentially discounted count of jumps at or before each row's start,
// sum_{T_j <= start_i} exp{-decay (start_i - T_j)}. This is the left-limit
// excitation at every time in the row's segment, frozen at the segment start.
std::vector<double> discounted_counts(const PointSet& points, double decay);

}  // namespace pointfw
