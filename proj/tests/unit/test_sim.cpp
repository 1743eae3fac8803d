#include <doctest.h>

#include <cmath>

#include "common.hpp"
#include "oracle_values.hpp"
#include "pointfw/numeric.hpp"
#include "pointfw/sim.hpp"

using namespace pointfw;
using testing::error_of;

namespace {

std::vector<double> durations(const EventTimeline& tl) {
  std::vector<double> d;
  double prev = 0.0;
  for (double t : tl.jump_times()) {
    d.push_back(t - prev);
    prev = t;
  }
  return d;
}

}  // namespace

TEST_CASE("coefficient profiles") {
  SimDesign d;
  auto b = true_coefficients(d);
  CHECK(b[0] == 1.0);
  CHECK(b[2] == 1.0);
  CHECK(b[3] == 0.0);
  d.profile = Profile::ManySmall;
  d.K = 50;
  b = true_coefficients(d);
  CHECK(b[9] == doctest::Approx(1 / std::sqrt(10.0)));
  CHECK(b[10] == 0.0);
}

TEST_CASE("true_g0 examples") {
  SimDesign d;
  d.K = 1;
  d.truth = Truth::Convex;
  CHECK(true_g0(d, std::vector<double>{1.0}) == 1.5);
  CHECK(true_g0(d, std::vector<double>{-1.0}) == 0.5);

  SimDesign f;
  std::vector<double> e4(10, 0.0);
  e4[3] = 1.0;
  CHECK(true_g0(f, e4) == 0.0);

  SimDesign m;
  m.profile = Profile::ManySmall;
  CHECK(true_g0(m, std::vector<double>(10, 1.0)) == doctest::Approx(std::sqrt(10.0)));
}

TEST_CASE("Toeplitz Cholesky") {
  const auto L = toeplitz_cholesky(3, 0.75);
  // (L L^T)_{02} = sum_j L_{0j} L_{2j}; L is lower triangular, row-major.
  double c02 = 0.0;
  for (int j = 0; j < 3; ++j) c02 += L[0 * 3 + j] * L[2 * 3 + j];
  CHECK(c02 == doctest::Approx(0.5625));
  CHECK(error_of([] { (void)toeplitz_cholesky(3, 1.0); }) == ErrorCode::CholeskyFailure);
}

TEST_CASE("iid covariates are clipped and uncorrelated at rho = 0") {
  SimDesign d;
  Rng rng(1);
  const std::size_t n = 4000;
  const auto x = gen_covariates(d, rng, n);
  for (double v : x) CHECK(std::abs(v) <= 2.0);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) {
      double sab = 0, saa = 0, sbb = 0, ma = 0, mb = 0;
      for (std::size_t i = 0; i < n; ++i) {
        ma += x[i * 10 + a] / n;
        mb += x[i * 10 + b] / n;
      }
      for (std::size_t i = 0; i < n; ++i) {
        const double u = x[i * 10 + a] - ma, v = x[i * 10 + b] - mb;
        sab += u * v;
        saa += u * u;
        sbb += v * v;
      }
      CHECK(std::abs(sab / std::sqrt(saa * sbb)) < 3 / std::sqrt(double(n)));
    }
  }
}

TEST_CASE("centering gamma") {
  SimDesign zero;
  zero.profile = Profile::Zero;
  CHECK(centering_gamma(zero, 1000, 1).gamma == 0.0);

  SimDesign d;
  const auto c = centering_gamma(d, 400000, 3);
  CHECK(c.gamma > -1.5);
  CHECK(c.gamma < 0.0);
  CHECK(std::abs(c.gamma - oracle::kGammaLinearFewLarge) < 4 * c.standard_error);
  const auto c2 = centering_gamma(d, 800000, 3);
  CHECK(std::abs(c2.gamma - c.gamma) < 3 * std::hypot(c.standard_error, c2.standard_error));
}

TEST_CASE("Cox simulation with g0 = 0 has Exp(1) durations") {
  int pass = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    SimDesign d;
    d.profile = Profile::Zero;
    d.n = 1000;
    d.stream = s;
    pass += ks_exponential(durations(simulate_cox(d).timeline)).p_value > 0.01 ? 1 : 0;
  }
  MESSAGE("KS passes " << pass << "/100");
  CHECK(pass >= 95);
}

TEST_CASE("Cox simulation with g0 = ln 2 has mean duration 1/2") {
  SimDesign d;
  d.profile = Profile::Zero;
  d.gamma = std::log(2.0);
  d.n = 20000;
  const auto tl = simulate_cox(d).timeline;
  CHECK(tl.horizon() / 20000.0 == doctest::Approx(0.5).epsilon(0.03));
}

TEST_CASE("Cox residuals are the compensator increments") {
  SimDesign d;
  d.truth = Truth::Convex;
  d.n = 500;
  const auto sim = simulate_cox(d);
  const auto dur = durations(sim.timeline);
  double mean = 0.0;
  for (std::size_t i = 0; i < dur.size(); ++i) {
    const std::span<const double> x(sim.covariates.data() + i * d.K, d.K);
    const double inc = std::exp(true_g0(d, x)) * dur[i];
    CHECK(inc == doctest::Approx(sim.residuals[i]).epsilon(1e-10));
    CHECK(dur[i] > 0.0);
    mean += inc / dur.size();
  }
  CHECK(std::abs(mean - 1.0) < 3 / std::sqrt(500.0));
}

TEST_CASE("simulation is reproducible and streams differ") {
  SimDesign d;
  d.n = 50;
  const auto a = simulate(d), b = simulate(d);
  CHECK(std::equal(a.timeline.jump_times().begin(), a.timeline.jump_times().end(), b.timeline.jump_times().begin()));
  d.stream = 1;
  const auto c = simulate(d);
  CHECK(a.timeline.jump_times()[0] != c.timeline.jump_times()[0]);
}

TEST_CASE("Hawkes without excitation is Poisson(c0)") {
  SimDesign d;
  d.profile = Profile::Zero;
  d.dynamics = Dynamics::Var1;
  d.hawkes = HawkesTruth{2.0, 1.3, false};
  d.n = 2000;
  const auto tl = simulate_hawkes_cov(d).timeline;
  CHECK(2000.0 / tl.horizon() == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("Hawkes residuals pass KS") {
  int pass = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    SimDesign d;
    d.K = 50;
    d.truth = Truth::Convex;
    d.profile = Profile::ManySmall;
    d.dynamics = Dynamics::Var1;
    d.hawkes = HawkesTruth{};
    d.gamma = -1.0;
    d.n = 200;
    d.stream = s;
    pass += ks_exponential(simulate_hawkes_cov(d).residuals).p_value > 0.01 ? 1 : 0;
  }
  CHECK(pass >= 95);
}

TEST_CASE("explosion guard") {
  SimDesign d;
  d.profile = Profile::Zero;
  d.dynamics = Dynamics::Var1;
  d.hawkes = HawkesTruth{2.0, 0.01, true};
  d.gamma = 2.0;
  d.n = 5000;
  d.explosion_ceiling = 100.0;
  CHECK(error_of([&] { (void)simulate_hawkes_cov(d); }) == ErrorCode::ExplosionGuard);
}

TEST_CASE("custom designs are flagged") {
  SimDesign d;
  CHECK_FALSE(d.is_custom());
  d.profile = Profile::Zero;
  CHECK(d.is_custom());
  SimDesign e;
  e.K = 7;
  CHECK(e.is_custom());
}
