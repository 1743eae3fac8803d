#include "pointfw/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pointfw/error.hpp"

namespace pointfw {

ScalarOptimum golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                                 double width) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > width) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? ScalarOptimum{c, fc} : ScalarOptimum{d, fd};
}

NelderMeadResult nelder_mead_max(const std::function<double(std::array<double, 2>)>& f,
                                 std::array<double, 2> start, const NelderMeadOptions& options) {
  using Point = std::array<double, 2>;
  std::array<Point, 3> p{start, start, start};
  p[1][0] += options.initial_step;
  p[2][1] += options.initial_step;
  std::array<double, 3> v{};
  int evals = 0;
  auto eval = [&](const Point& x) {
    ++evals;
    const double y = f(x);
    return std::isfinite(y) ? y : -std::numeric_limits<double>::infinity();
  };
  for (int i = 0; i < 3; ++i) v[i] = eval(p[i]);

  auto combine = [](const Point& a, const Point& b, double t) {
    return Point{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
  };
  while (evals < options.max_evaluations) {
    // Order best (highest) first.
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] > v[b]; });
    std::array<Point, 3> ps{p[idx[0]], p[idx[1]], p[idx[2]]};
    std::array<double, 3> vs{v[idx[0]], v[idx[1]], v[idx[2]]};
    p = ps;
    v = vs;
    const double spread = std::abs(v[0] - v[2]);
    double diam = 0.0;
    for (int i = 1; i < 3; ++i) {
      diam = std::max(diam, std::hypot(p[i][0] - p[0][0], p[i][1] - p[0][1]));
    }
    if (spread <= options.tolerance * (1.0 + std::abs(v[0])) && diam <= options.tolerance) break;

    const Point centroid{(p[0][0] + p[1][0]) / 2.0, (p[0][1] + p[1][1]) / 2.0};
    const Point reflected = combine(centroid, p[2], -1.0);
    const double fr = eval(reflected);
    if (fr > v[0]) {
      const Point expanded = combine(centroid, p[2], -2.0);
      const double fe = eval(expanded);
      if (fe > fr) {
        p[2] = expanded;
        v[2] = fe;
      } else {
        p[2] = reflected;
        v[2] = fr;
      }
    } else if (fr > v[1]) {
      p[2] = reflected;
      v[2] = fr;
    } else {
      const bool outside = fr > v[2];
      const Point contracted = outside ? combine(centroid, reflected, 0.5) : combine(centroid, p[2], 0.5);
      const double fcon = eval(contracted);
      if (fcon > std::max(fr, v[2])) {
        p[2] = contracted;
        v[2] = fcon;
      } else {
        for (int i = 1; i < 3; ++i) {
          p[i] = combine(p[0], p[i], 0.5);
          v[i] = eval(p[i]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i < 3; ++i) {
    if (v[i] > v[best]) best = i;
  }
  return {p[best], v[best], evals};
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double kolmogorov_tail(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_exponential(std::vector<double> sample) {
  if (sample.empty()) throw Error(ErrorCode::InvalidArgument, "KS test on empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double cdf = 1.0 - std::exp(-std::max(sample[i], 0.0));
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - cdf, cdf - static_cast<double>(i) / n});
  }
  const double sn = std::sqrt(n);
  return {d, kolmogorov_tail((sn + 0.12 + 0.11 / sn) * d)};
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "quantile of empty set");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 16) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace pointfw
