#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pointfw/fw.hpp"
#include "pointfw/numeric.hpp"
#include "pointfw/points.hpp"
#include "pointfw/select.hpp"

namespace pointfw {

// Baseline c and decay a of lambda(t) = (c + sum_{T_j < t} e^{-a (t - T_j)}) exp{g(X(t))},
// where time 0 counts as a jump (Z_0 = 1).
struct HawkesParams {
  double c = 2.0;
  double a = 1.5;
};

// Z_0 = 1 and Z_i = Z_{i-1} e^{-a (T_i - T_{i-1})} + 1 with T_0 = 0. Length n + 1.
std::vector<double> hawkes_state(std::span<const double> jump_times, double a);

// [c R + (Z_prev / a)(1 - e^{-a R})] Y
double compensator_increment(double c, double a, double z_prev, double r, double y);

// Root s of c1 s + (c2 / a0)(1 - e^{-a0 s}) = -ln u. Throws InvalidUniform.
double simulate_duration(double c1, double c2, double a0, double u);

// Excitation pieces of the likelihood on each row: the compensator weight
// int_row (c + Z e^{-a (t - T_prev)}) dt that multiplies exp{g}, and the log of
// the baseline-plus-excitation term at the row's right end (left limit).
struct HawkesRows {
  std::vector<double> exposure;
  std::vector<double> log_excited;
};

HawkesRows hawkes_rows(const PointSet& points, HawkesParams params);

// Full log-likelihood given g on every row.
double hawkes_loglik_ca(double c, double a, std::span<const double> g, const PointSet& points);
// Rows are the inter-jump intervals (T_{i-1}, T_i]; g_values[i-1] = g(X(T_{i-1})).
double hawkes_loglik_ca(double c, double a, std::span<const double> g_values, std::span<const double> jump_times);
// Partial derivative in c.
double hawkes_loglik_dc(double c, double a, std::span<const double> g, const PointSet& points);

// Maximizes over (ln c, ln a) by Nelder-Mead, then polishes c by Newton at fixed a.
HawkesParams fit_hawkes_ca(std::span<const double> g, const PointSet& points, HawkesParams start,
                           double a_lo = 1e-3, double a_hi = 1e3, const NelderMeadOptions& options = {});

struct HawkesFitOptions {
  HawkesParams init{2.0, 1.5};
  int cycles = 2;
  double a_lo = 1e-3;
  double a_hi = 1e3;
  std::vector<double> grid;  // nonempty: budget chosen by AIC in every g step
  NelderMeadOptions nelder_mead{500, 1e-8, 0.25};
};

struct HawkesFit {
  HawkesParams params;
  AdditiveModel model;
  double loglik = 0.0;
  std::vector<HawkesParams> path;  // (c, a) after each cycle
  std::vector<BudgetReport> reports;  // last g step, when a grid is used
  std::vector<TraceRecord> trace;     // last g step
};

// Alternates (i) Frank-Wolfe for g with exposure weights at fixed (c, a) and
// (ii) likelihood maximization over (c, a) at fixed g. Throws NoJumps when n < 2
// and NonFiniteLikelihood if the result is not finite.
HawkesFit fit_hawkes_joint(const EventTimeline& timeline, const DictionaryConfig& dict_config,
                           const FitConfig& fit_config, const HawkesFitOptions& options = {});

// A fitted log-intensity, optionally with Hawkes excitation.
struct FittedModel {
  AdditiveModel model;
  std::optional<HawkesParams> hawkes;
};

// Per row: log-intensity at the right end (meaningful where a jump sits) and
// the compensator increment over the row.
struct RowIntensity {
  std::vector<double> log_intensity;
  std::vector<double> compensator;
};

RowIntensity row_intensity(const FittedModel& fitted, const PointSet& points);

}  // namespace pointfw
