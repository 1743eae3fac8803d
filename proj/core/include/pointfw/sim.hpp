#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pointfw/rng.hpp"
#include "pointfw/timeline.hpp"

namespace pointfw {

enum class Truth { Linear, Convex };
// Zero (g_0 = 0) is outside the published menus and marks a design as custom.
enum class Profile { FewLarge, ManySmall, Zero };
enum class Dynamics { Iid, Var1 };

struct HawkesTruth {
  double c0 = 2.0;
  double a0 = 1.3;
  bool excitation = true;  // false drops the self-exciting term
};

struct SimDesign {
  std::size_t K = 10;
  double rho = 0.0;
  Truth truth = Truth::Linear;
  Profile profile = Profile::FewLarge;
  Dynamics dynamics = Dynamics::Iid;
  std::size_t n = 100;
  std::optional<HawkesTruth> hawkes;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;  // replication index
  double gamma = 0.0;        // centering added to g_0 (Hawkes designs)
  double cap = 2.0;          // Gaussian draws are clipped to [-cap, cap]
  double phi = 0.95;         // VAR(1) coefficient
  double explosion_ceiling = 1e6;

  // True when any field lies outside the published simulation menus.
  bool is_custom() const;
};

std::string to_string(Truth t);
std::string to_string(Profile p);
std::string to_string(Dynamics d);

// b_{0k} for k = 1..K.
std::vector<double> true_coefficients(const SimDesign& design);

// Lower Cholesky factor of the Toeplitz matrix rho^{|k-l|}. Throws CholeskyFailure.
std::vector<double> toeplitz_cholesky(std::size_t K, double rho);

// rows x K, row-major. Iid: clipped N(0, Toeplitz(rho)) draws; Var1:
// X_0 = e_0, X_i = phi X_{i-1} + e_i with clipped innovations.
std::vector<double> gen_covariates(const SimDesign& design, Rng& rng, std::size_t rows);

// gamma + sum_k g_0^{(k)}(x)
double true_g0(const SimDesign& design, std::span<const double> x);

struct Centering {
  double gamma = 0.0;
  double standard_error = 0.0;
  std::size_t draws = 0;
  std::uint64_t seed = 0;
};

// gamma = -ln E exp{sum_k g_0^{(k)}(X)} by Monte Carlo under the design's
// covariate law (stationary law for Var1).
Centering centering_gamma(const SimDesign& design, std::size_t mc_draws = 1000000, std::uint64_t seed = 0);

struct SimResult {
  EventTimeline timeline;
  // Exp(1) variables that generated each duration; they equal the true
  // compensator increments Lambda((T_{i-1}, T_i]).
  std::vector<double> residuals;
  std::vector<double> covariates;  // X(T_0..T_n), row-major
};

// Durations E_i / exp{g_0(X(T_{i-1}))}; covariates update at the jump times.
SimResult simulate_cox(const SimDesign& design);
// Inversion simulation of the Hawkes-with-covariates intensity. Throws
// ExplosionGuard when the excitation state exceeds the design ceiling.
SimResult simulate_hawkes_cov(const SimDesign& design);
SimResult simulate(const SimDesign& design);

// Cox process with intensity exp{log_intensity(x)} along a given covariate
// path (updates need not coincide with jumps).
EventTimeline simulate_cox_on_path(std::vector<CovariateUpdate> updates, double horizon,
                                   const std::function<double(std::span<const double>)>& log_intensity, Rng& rng);

}  // namespace pointfw
