#include "pointfw/timeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pointfw/error.hpp"

namespace pointfw {

namespace {

void require_strictly_increasing(std::span<const double> times, const char* what) {
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw Error(ErrorCode::NonMonotoneTimes,
                  std::string(what) + " repeat at t=" + std::to_string(times[i]));
    }
  }
}

}  // namespace

EventTimeline EventTimeline::build(std::vector<CovariateUpdate> updates, std::vector<double> jumps,
                                   double horizon) {
  if (updates.empty()) throw Error(ErrorCode::EmptyUpdates, "no covariate updates");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw Error(ErrorCode::OutOfRange, "horizon must be positive and finite");
  }
  std::stable_sort(updates.begin(), updates.end(),
                   [](const CovariateUpdate& a, const CovariateUpdate& b) { return a.time < b.time; });
  std::sort(jumps.begin(), jumps.end());

  EventTimeline tl;
  tl.horizon_ = horizon;
  tl.dim_ = updates.front().values.size();
  if (tl.dim_ == 0) throw Error(ErrorCode::DimensionMismatch, "covariate vectors are empty");
  if (updates.front().time > 0.0) {
    throw Error(ErrorCode::OutOfRange, "first covariate update must be at time 0");
  }
  tl.update_times_.reserve(updates.size());
  tl.values_.reserve(updates.size() * tl.dim_);
  for (std::size_t i = 0; i < updates.size(); ++i) {
    const auto& u = updates[i];
    if (u.values.size() != tl.dim_) {
      throw Error(ErrorCode::DimensionMismatch, "update " + std::to_string(i) + " has " +
                                                    std::to_string(u.values.size()) + " values, expected " +
                                                    std::to_string(tl.dim_));
    }
    if (u.time > horizon) throw Error(ErrorCode::OutOfRange, "covariate update after horizon");
    tl.update_times_.push_back(std::max(u.time, 0.0));
    tl.values_.insert(tl.values_.end(), u.values.begin(), u.values.end());
  }
  require_strictly_increasing(tl.update_times_, "covariate update times");

  for (double t : jumps) {
    if (!(t > 0.0) || t > horizon) {
      throw Error(ErrorCode::OutOfRange, "jump at t=" + std::to_string(t) + " outside (0, horizon]");
    }
  }
  require_strictly_increasing(jumps, "jump times");
  tl.jumps_ = std::move(jumps);
  return tl;
}

std::span<const double> EventTimeline::covariate_at(double t) const {
  if (!(t > 0.0) || t > horizon_) {
    throw Error(ErrorCode::OutOfRange, "covariate_at(" + std::to_string(t) + ")");
  }
  // First update at or after t; the one before it is in effect.
  const auto it = std::lower_bound(update_times_.begin(), update_times_.end(), t);
  const auto idx = static_cast<std::size_t>(it - update_times_.begin()) - 1;
  return update_values(idx);
}

std::vector<Segment> EventTimeline::segments() const {
  std::vector<Segment> out;
  out.reserve(update_times_.size() + jumps_.size() + 1);
  std::size_t u = 0;  // update in effect
  std::size_t j = 0;  // next jump
  double t = 0.0;
  while (t < horizon_) {
    while (u + 1 < update_times_.size() && update_times_[u + 1] <= t) ++u;
    double end = horizon_;
    bool jump = false;
    if (u + 1 < update_times_.size()) end = std::min(end, update_times_[u + 1]);
    if (j < jumps_.size() && jumps_[j] <= end) {
      end = jumps_[j];
      jump = true;
      ++j;
    }
    if (end > t) out.push_back({t, end, u, jump});
    t = end;
  }
  return out;
}

EventTimeline EventTimeline::slice(double from, double to) const {
  if (!(from >= 0.0) || !(to > from) || to > horizon_) {
    throw Error(ErrorCode::OutOfRange, "slice bounds");
  }
  std::vector<CovariateUpdate> ups;
  // Row in effect just after `from`.
  const auto first = std::upper_bound(update_times_.begin(), update_times_.end(), from);
  auto idx = static_cast<std::size_t>(first - update_times_.begin()) - 1;
  auto row = update_values(idx);
  ups.push_back({0.0, {row.begin(), row.end()}});
  for (++idx; idx < update_times_.size() && update_times_[idx] < to; ++idx) {
    row = update_values(idx);
    ups.push_back({update_times_[idx] - from, {row.begin(), row.end()}});
  }
  std::vector<double> js;
  for (double t : jumps_) {
    if (t > from && t <= to) js.push_back(t - from);
  }
  return build(std::move(ups), std::move(js), to - from);
}

EventTimeline EventTimeline::concat(const EventTimeline& later) const {
  if (later.dim_ != dim_) throw Error(ErrorCode::DimensionMismatch, "concat of different dimensions");
  EventTimeline out = *this;
  for (std::size_t i = 0; i < later.update_times_.size(); ++i) {
    out.update_times_.push_back(later.update_times_[i] + horizon_);
    auto row = later.update_values(i);
    out.values_.insert(out.values_.end(), row.begin(), row.end());
  }
  for (double t : later.jumps_) out.jumps_.push_back(t + horizon_);
  out.horizon_ = horizon_ + later.horizon_;
  return out;
}

EventTimeline EventTimeline::with_values(std::vector<double> values) const {
  if (values.size() != values_.size()) throw Error(ErrorCode::DimensionMismatch, "with_values");
  EventTimeline out = *this;
  out.values_ = std::move(values);
  return out;
}

std::vector<double> PreprocessTransform::apply(std::span<const double> x) const {
  if (x.size() != caps.size()) throw Error(ErrorCode::DimensionMismatch, "transform dimension");
  std::vector<double> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    out[k] = std::clamp(x[k], -caps[k], caps[k]) / scales[k];
  }
  return out;
}

EventTimeline PreprocessTransform::apply(const EventTimeline& timeline) const {
  std::vector<double> values;
  values.reserve(timeline.num_updates() * timeline.dim());
  for (std::size_t i = 0; i < timeline.num_updates(); ++i) {
    auto row = apply(timeline.update_values(i));
    values.insert(values.end(), row.begin(), row.end());
  }
  return timeline.with_values(std::move(values));
}

double time_weighted_abs_quantile(const EventTimeline& timeline, std::size_t k, double q) {
  const auto times = timeline.update_times();
  const std::size_t m = times.size();
  std::vector<std::pair<double, double>> vw(m);  // (|value|, duration)
  for (std::size_t i = 0; i < m; ++i) {
    const double end = i + 1 < m ? times[i + 1] : timeline.horizon();
    vw[i] = {std::abs(timeline.update_values(i)[k]), end - times[i]};
  }
  std::sort(vw.begin(), vw.end());
  const double total = timeline.horizon();
  double cum = 0.0;
  for (const auto& [v, w] : vw) {
    cum += w;
    if (cum >= q * total) return v;
  }
  return vw.back().first;
}

Preprocessed winsorize_standardize(const EventTimeline& timeline, double q) {
  if (!(q > 0.0 && q <= 1.0)) throw Error(ErrorCode::InvalidArgument, "quantile must be in (0, 1]");
  PreprocessTransform tr;
  const std::size_t dim = timeline.dim();
  tr.caps.resize(dim);
  tr.scales.resize(dim);
  tr.degenerate.assign(dim, false);
  for (std::size_t k = 0; k < dim; ++k) {
    const double cap = time_weighted_abs_quantile(timeline, k, q);
    if (cap > 0.0) {
      tr.caps[k] = cap;
      tr.scales[k] = cap;
    } else {
      tr.caps[k] = 1.0;
      tr.scales[k] = 1.0;
      tr.degenerate[k] = true;
    }
  }
  return {tr.apply(timeline), std::move(tr)};
}

}  // namespace pointfw
