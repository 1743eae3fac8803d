#include "pointfw/hawkes.hpp"

#include <cmath>
#include <limits>

#include "pointfw/error.hpp"

namespace pointfw {

std::vector<double> hawkes_state(std::span<const double> jump_times, double a) {
  if (!(a > 0.0)) throw Error(ErrorCode::InvalidArgument, "decay must be positive");
  std::vector<double> z(jump_times.size() + 1);
  z[0] = 1.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < jump_times.size(); ++i) {
    z[i + 1] = z[i] * std::exp(-a * (jump_times[i] - prev)) + 1.0;
    prev = jump_times[i];
  }
  return z;
}

double compensator_increment(double c, double a, double z_prev, double r, double y) {
  return (c * r + z_prev / a * -std::expm1(-a * r)) * y;
}

double simulate_duration(double c1, double c2, double a0, double u) {
  if (!(u > 0.0 && u < 1.0)) throw Error(ErrorCode::InvalidUniform, "u must lie in (0, 1)");
  if (!(c1 > 0.0) || !(c2 >= 0.0) || !(a0 > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "need c1 > 0, c2 >= 0, a0 > 0");
  }
  const double target = -std::log(u);
  auto f = [&](double s) { return c1 * s + c2 / a0 * -std::expm1(-a0 * s) - target; };
  double lo = 0.0;
  double hi = target / c1 * (1.0 + 1e-12) + 1e-300;
  for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  double s = 0.5 * (lo + hi);
  for (int i = 0; i < 5; ++i) {
    const double step = f(s) / (c1 + c2 * std::exp(-a0 * s));
    const double next = s - step;
    if (!(next >= lo && next <= hi)) break;
    s = next;
    if (std::abs(step) < 1e-15) break;
  }
  return s;
}

HawkesRows hawkes_rows(const PointSet& points, HawkesParams params) {
  const double c = params.c;
  const double a = params.a;
  HawkesRows rows;
  rows.exposure.resize(points.size());
  rows.log_excited.resize(points.size());
  double z = 1.0;
  double t_prev = 0.0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double s = points.start[i];
    const double e = s + points.duration[i];
    while (j < points.jump_times.size() && points.jump_times[j] <= s) {
      z = z * std::exp(-a * (points.jump_times[j] - t_prev)) + 1.0;
      t_prev = points.jump_times[j];
      ++j;
    }
    const double decay_start = std::exp(-a * (s - t_prev));
    const double decay_end = std::exp(-a * (e - t_prev));
    rows.exposure[i] = c * points.duration[i] + z / a * decay_start * -std::expm1(-a * points.duration[i]);
    rows.log_excited[i] = std::log(c + z * decay_end);
  }
  return rows;
}

double hawkes_loglik_ca(double c, double a, std::span<const double> g, const PointSet& points) {
  if (!(c > 0.0) || !(a > 0.0)) throw Error(ErrorCode::InvalidArgument, "need c > 0 and a > 0");
  const auto rows = hawkes_rows(points, {c, a});
  std::vector<double> terms(points.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    terms[i] = points.count[i] * (rows.log_excited[i] + g[i]) - std::exp(g[i]) * rows.exposure[i];
  }
  return pairwise_sum(terms);
}

double hawkes_loglik_ca(double c, double a, std::span<const double> g_values, std::span<const double> jump_times) {
  if (g_values.size() != jump_times.size()) throw Error(ErrorCode::DimensionMismatch, "one g value per jump");
  PointSet p;
  p.dim = 1;
  p.horizon = jump_times.empty() ? 0.0 : jump_times.back();
  double prev = 0.0;
  for (double t : jump_times) {
    p.covariates.push_back(0.0);
    p.start.push_back(prev);
    p.duration.push_back(t - prev);
    p.count.push_back(1.0);
    prev = t;
  }
  p.exposure = p.duration;
  p.jump_times.assign(jump_times.begin(), jump_times.end());
  return hawkes_loglik_ca(c, a, g_values, p);
}

double hawkes_loglik_dc(double c, double a, std::span<const double> g, const PointSet& points) {
  const auto rows = hawkes_rows(points, {c, a});
  double d = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    d += points.count[i] / std::exp(rows.log_excited[i]) - std::exp(g[i]) * points.duration[i];
  }
  return d;
}

HawkesParams fit_hawkes_ca(std::span<const double> g, const PointSet& points, HawkesParams start, double a_lo,
                           double a_hi, const NelderMeadOptions& options) {
  auto objective = [&](std::array<double, 2> p) {
    const double c = std::exp(p[0]);
    const double a = std::exp(p[1]);
    if (!(a >= a_lo && a <= a_hi) || !(c > 0.0) || !std::isfinite(c)) {
      return -std::numeric_limits<double>::infinity();
    }
    return hawkes_loglik_ca(c, a, g, points);
  };
  const auto nm = nelder_mead_max(objective, {std::log(start.c), std::log(start.a)}, options);
  HawkesParams out{std::exp(nm.x[0]), std::exp(nm.x[1])};

  // Newton in c; the likelihood is strictly concave in c at fixed a.
  for (int it = 0; it < 50; ++it) {
    const auto rows = hawkes_rows(points, out);
    double d1 = 0.0;
    double d2 = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double level = std::exp(rows.log_excited[i]);
      d1 += points.count[i] / level - std::exp(g[i]) * points.duration[i];
      d2 -= points.count[i] / (level * level);
    }
    if (d2 >= 0.0) break;
    double step = -d1 / d2;
    while (out.c + step <= 0.0) step *= 0.5;
    out.c += step;
    if (std::abs(step) < 1e-13 * std::max(1.0, out.c)) break;
  }
  return out;
}

HawkesFit fit_hawkes_joint(const EventTimeline& timeline, const DictionaryConfig& dict_config,
                           const FitConfig& fit_config, const HawkesFitOptions& options) {
  if (timeline.num_jumps() < 2) throw Error(ErrorCode::NoJumps, "Hawkes fit needs at least two jumps");
  if (options.cycles < 1) throw Error(ErrorCode::InvalidArgument, "cycles must be >= 1");
  const auto points = PointSet::from_timeline(timeline);
  const Dictionary dictionary(dict_config, points);

  HawkesFit out;
  out.params = options.init;
  std::vector<double> g;
  for (int cycle = 0; cycle < options.cycles; ++cycle) {
    PointSet weighted = points;
    weighted.exposure = hawkes_rows(points, out.params).exposure;
    if (options.grid.empty()) {
      auto result = fit(weighted, dictionary, fit_config);
      out.model = std::move(result.model);
      out.trace = std::move(result.trace);
    } else {
      auto sel = aic_select(weighted, dictionary, options.grid, fit_config);
      out.model = std::move(sel.fit.model);
      out.trace = std::move(sel.fit.trace);
      out.reports = std::move(sel.reports);
    }
    g = out.model.eval(points);
    out.params = fit_hawkes_ca(g, points, out.params, options.a_lo, options.a_hi, options.nelder_mead);
    out.path.push_back(out.params);
  }
  out.loglik = hawkes_loglik_ca(out.params.c, out.params.a, g, points);
  if (!std::isfinite(out.loglik)) throw Error(ErrorCode::NonFiniteLikelihood, "joint Hawkes fit");
  return out;
}

RowIntensity row_intensity(const FittedModel& fitted, const PointSet& points) {
  RowIntensity out;
  const auto g = fitted.model.eval(points);
  out.log_intensity = g;
  out.compensator.resize(points.size());
  if (fitted.hawkes) {
    const auto rows = hawkes_rows(points, *fitted.hawkes);
    for (std::size_t i = 0; i < g.size(); ++i) {
      out.log_intensity[i] += rows.log_excited[i];
      out.compensator[i] = std::exp(g[i]) * rows.exposure[i];
    }
  } else {
    for (std::size_t i = 0; i < g.size(); ++i) out.compensator[i] = std::exp(g[i]) * points.duration[i];
  }
  return out;
}

}  // namespace pointfw
