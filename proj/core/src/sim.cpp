#include "pointfw/sim.hpp"

#include <algorithm>
#include <cmath>

#include "pointfw/error.hpp"
#include "pointfw/hawkes.hpp"

namespace pointfw {

bool SimDesign::is_custom() const {
  const bool menu_k = K == 10 || K == 50;
  const bool menu_rho = rho == 0.0 || rho == 0.75;
  const bool menu_hawkes = !hawkes || (hawkes->c0 == 2.0 && hawkes->a0 == 1.3 && hawkes->excitation);
  return !menu_k || !menu_rho || profile == Profile::Zero || !menu_hawkes || cap != 2.0 || phi != 0.95;
}

std::string to_string(Truth t) { return t == Truth::Linear ? "linear" : "convex"; }

std::string to_string(Profile p) {
  switch (p) {
    case Profile::FewLarge: return "fewlarge";
    case Profile::ManySmall: return "manysmall";
    case Profile::Zero: return "zero";
  }
  return "?";
}

std::string to_string(Dynamics d) { return d == Dynamics::Iid ? "iid" : "var1"; }

std::vector<double> true_coefficients(const SimDesign& design) {
  std::vector<double> b(design.K, 0.0);
  for (std::size_t k = 0; k < design.K; ++k) {
    switch (design.profile) {
      case Profile::FewLarge: b[k] = k < 3 ? 1.0 : 0.0; break;
      case Profile::ManySmall: b[k] = k < 10 ? 1.0 / std::sqrt(10.0) : 0.0; break;
      case Profile::Zero: b[k] = 0.0; break;
    }
  }
  return b;
}

std::vector<double> toeplitz_cholesky(std::size_t K, double rho) {
  std::vector<double> L(K * K, 0.0);
  auto cov = [&](std::size_t i, std::size_t j) {
    return std::pow(rho, static_cast<double>(i > j ? i - j : j - i));
  };
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = cov(i, j);
      for (std::size_t p = 0; p < j; ++p) s -= L[i * K + p] * L[j * K + p];
      if (i == j) {
        if (!(s > 1e-14)) throw Error(ErrorCode::CholeskyFailure, "Toeplitz covariance not positive definite");
        L[i * K + i] = std::sqrt(s);
      } else {
        L[i * K + j] = s / L[j * K + j];
      }
    }
  }
  return L;
}

namespace {

void validate(const SimDesign& d) {
  if (d.K == 0) throw Error(ErrorCode::InvalidArgument, "K must be positive");
  if (!(d.rho >= 0.0 && d.rho < 1.0)) throw Error(ErrorCode::CholeskyFailure, "rho must lie in [0, 1)");
  if (d.n == 0) throw Error(ErrorCode::InvalidArgument, "n must be positive");
  if (!(d.cap > 0.0)) throw Error(ErrorCode::InvalidArgument, "cap must be positive");
}

// One clipped correlated Gaussian vector.
void draw_clipped(const std::vector<double>& L, std::size_t K, double cap, Rng& rng, std::vector<double>& z,
                  double* out) {
  for (std::size_t k = 0; k < K; ++k) z[k] = rng.normal();
  for (std::size_t i = 0; i < K; ++i) {
    double s = 0.0;
    for (std::size_t p = 0; p <= i; ++p) s += L[i * K + p] * z[p];
    out[i] = std::clamp(s, -cap, cap);
  }
}

double additive_part(const SimDesign& design, const std::vector<double>& b, std::span<const double> x) {
  double g = 0.0;
  for (std::size_t k = 0; k < design.K; ++k) {
    if (b[k] == 0.0) continue;
    g += design.truth == Truth::Linear ? b[k] * x[k] : b[k] * (std::abs(x[k]) + 0.5 * x[k]);
  }
  return g;
}

EventTimeline to_timeline(const std::vector<double>& covariates, std::size_t K, const std::vector<double>& jumps) {
  std::vector<CovariateUpdate> ups;
  ups.reserve(jumps.size());
  double t = 0.0;
  for (std::size_t i = 0; i < jumps.size(); ++i) {
    ups.push_back({t, std::vector<double>(covariates.begin() + i * K, covariates.begin() + (i + 1) * K)});
    t = jumps[i];
  }
  return EventTimeline::build(std::move(ups), jumps, jumps.back());
}

}  // namespace

std::vector<double> gen_covariates(const SimDesign& design, Rng& rng, std::size_t rows) {
  validate(design);
  const std::size_t K = design.K;
  const auto L = toeplitz_cholesky(K, design.rho);
  std::vector<double> x(rows * K);
  std::vector<double> z(K);
  std::vector<double> eps(K);
  for (std::size_t r = 0; r < rows; ++r) {
    if (design.dynamics == Dynamics::Iid || r == 0) {
      draw_clipped(L, K, design.cap, rng, z, x.data() + r * K);
    } else {
      draw_clipped(L, K, design.cap, rng, z, eps.data());
      for (std::size_t k = 0; k < K; ++k) x[r * K + k] = design.phi * x[(r - 1) * K + k] + eps[k];
    }
  }
  return x;
}

double true_g0(const SimDesign& design, std::span<const double> x) {
  if (x.size() != design.K) throw Error(ErrorCode::DimensionMismatch, "g0 input dimension");
  return design.gamma + additive_part(design, true_coefficients(design), x);
}

Centering centering_gamma(const SimDesign& design, std::size_t mc_draws, std::uint64_t seed) {
  validate(design);
  if (mc_draws < 2) throw Error(ErrorCode::InvalidArgument, "need at least two draws");
  const auto b = true_coefficients(design);
  const std::size_t K = design.K;
  Rng rng(seed, 0x63656e746572ULL);  // dedicated "center" stream
  const auto L = toeplitz_cholesky(K, design.rho);
  std::vector<double> z(K), x(K), eps(K);

  // Var1 chains are run to stationarity first and their standard error uses
  // batch means.
  std::size_t burn_in = 0;
  if (design.dynamics == Dynamics::Var1) {
    burn_in = static_cast<std::size_t>(std::ceil(std::log(1e-12) / std::log(design.phi)));
    draw_clipped(L, K, design.cap, rng, z, x.data());
    for (std::size_t i = 0; i < burn_in; ++i) {
      draw_clipped(L, K, design.cap, rng, z, eps.data());
      for (std::size_t k = 0; k < K; ++k) x[k] = design.phi * x[k] + eps[k];
    }
  }
  const std::size_t batches = 50;
  const std::size_t per_batch = std::max<std::size_t>(1, mc_draws / batches);
  std::vector<double> batch_sum(batches, 0.0);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < mc_draws; ++i) {
    if (design.dynamics == Dynamics::Iid) {
      draw_clipped(L, K, design.cap, rng, z, x.data());
    } else {
      draw_clipped(L, K, design.cap, rng, z, eps.data());
      for (std::size_t k = 0; k < K; ++k) x[k] = design.phi * x[k] + eps[k];
    }
    const double v = std::exp(additive_part(design, b, x));
    sum += v;
    sum_sq += v * v;
    batch_sum[std::min(i / per_batch, batches - 1)] += v;
  }
  const double n = static_cast<double>(mc_draws);
  const double mean = sum / n;
  double se_mean = 0.0;
  if (design.dynamics == Dynamics::Iid) {
    se_mean = std::sqrt(std::max(sum_sq / n - mean * mean, 0.0) / n);
  } else {
    double ss = 0.0;
    for (std::size_t j = 0; j < batches; ++j) {
      const double count = j + 1 < batches ? per_batch : mc_draws - per_batch * (batches - 1);
      const double m = batch_sum[j] / count;
      ss += (m - mean) * (m - mean);
    }
    se_mean = std::sqrt(ss / (batches - 1) / batches);
  }
  return {-std::log(mean), se_mean / mean, mc_draws, seed};
}

SimResult simulate_cox(const SimDesign& design) {
  validate(design);
  if (design.hawkes) throw Error(ErrorCode::InvalidArgument, "design has Hawkes excitation");
  Rng rng(design.seed, design.stream);
  SimResult out;
  out.covariates = gen_covariates(design, rng, design.n + 1);
  const auto b = true_coefficients(design);
  std::vector<double> jumps(design.n);
  out.residuals.resize(design.n);
  double t = 0.0;
  for (std::size_t i = 0; i < design.n; ++i) {
    std::span<const double> x(out.covariates.data() + i * design.K, design.K);
    const double e = rng.exponential();
    out.residuals[i] = e;
    t += e / std::exp(design.gamma + additive_part(design, b, x));
    jumps[i] = t;
  }
  out.timeline = to_timeline(out.covariates, design.K, jumps);
  return out;
}

SimResult simulate_hawkes_cov(const SimDesign& design) {
  validate(design);
  if (!design.hawkes) throw Error(ErrorCode::InvalidArgument, "design has no Hawkes parameters");
  const auto& hk = *design.hawkes;
  Rng rng(design.seed, design.stream);
  SimResult out;
  out.covariates = gen_covariates(design, rng, design.n + 1);
  const auto b = true_coefficients(design);
  std::vector<double> jumps(design.n);
  out.residuals.resize(design.n);
  double t = 0.0;
  double z = 1.0;
  for (std::size_t i = 0; i < design.n; ++i) {
    std::span<const double> x(out.covariates.data() + i * design.K, design.K);
    const double y = std::exp(design.gamma + additive_part(design, b, x));
    const double u = rng.uniform();
    out.residuals[i] = -std::log(u);
    const double c2 = hk.excitation ? y * z : 0.0;
    const double r = simulate_duration(hk.c0 * y, c2, hk.a0, u);
    t += r;
    jumps[i] = t;
    z = z * std::exp(-hk.a0 * r) + 1.0;
    if (!(z <= design.explosion_ceiling)) {
      throw Error(ErrorCode::ExplosionGuard, "excitation exceeded " + std::to_string(design.explosion_ceiling));
    }
  }
  out.timeline = to_timeline(out.covariates, design.K, jumps);
  return out;
}

SimResult simulate(const SimDesign& design) {
  return design.hawkes ? simulate_hawkes_cov(design) : simulate_cox(design);
}

EventTimeline simulate_cox_on_path(std::vector<CovariateUpdate> updates, double horizon,
                                   const std::function<double(std::span<const double>)>& log_intensity, Rng& rng) {
  std::sort(updates.begin(), updates.end(),
            [](const CovariateUpdate& a, const CovariateUpdate& b) { return a.time < b.time; });
  std::vector<double> jumps;
  for (std::size_t i = 0; i < updates.size(); ++i) {
    const double start = updates[i].time;
    const double end = i + 1 < updates.size() ? updates[i + 1].time : horizon;
    const double rate = std::exp(log_intensity(updates[i].values));
    double t = start;
    for (;;) {
      t += rng.exponential() / rate;
      if (t > end) break;
      if (t > 0.0) jumps.push_back(t);
    }
  }
  return EventTimeline::build(std::move(updates), std::move(jumps), horizon);
}

}  // namespace pointfw
