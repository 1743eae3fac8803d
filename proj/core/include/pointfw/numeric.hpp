#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace pointfw {

struct ScalarOptimum {
  double x = 0.0;
  double value = 0.0;
};

// Golden-section search for the maximum of a unimodal f on [lo, hi], stopping
// once the bracket is narrower than `width`.
ScalarOptimum golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                                 double width);

struct NelderMeadOptions {
  int max_evaluations = 500;
  double tolerance = 1e-8;
  double initial_step = 0.25;
};

struct NelderMeadResult {
  std::array<double, 2> x{};
  double value = 0.0;
  int evaluations = 0;
};

// Maximizes f over the plane. Stops when the spread of simplex values and the
// simplex diameter both fall below the tolerance, or on the evaluation cap.
NelderMeadResult nelder_mead_max(const std::function<double(std::array<double, 2>)>& f,
                                 std::array<double, 2> start, const NelderMeadOptions& options = {});

double normal_cdf(double z);

// Kolmogorov distribution tail P(K > lambda) by its alternating series.
double kolmogorov_tail(double lambda);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// One-sample KS test of `sample` against Exp(1), asymptotic p-value with
// the Stephens small-sample correction of the argument.
KsResult ks_exponential(std::vector<double> sample);

// Empirical quantile with linear interpolation (type 7).
double quantile(std::vector<double> values, double q);
double median(std::vector<double> values);

// Pairwise (tree) summation; order-independent of thread count.
double pairwise_sum(std::span<const double> values);

}  // namespace pointfw
