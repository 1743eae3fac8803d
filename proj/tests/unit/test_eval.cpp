#include <doctest.h>

#include <cmath>
#include <numeric>

#include "common.hpp"
#include "oracle_values.hpp"
#include "pointfw/eval.hpp"
#include "pointfw/fw.hpp"
#include "pointfw/sim.hpp"

using namespace pointfw;
using testing::error_of;

namespace {

FittedModel linear_model(double offset, double slope) {
  AdditiveModel m(offset, 10.0, WeightScheme::Unit);
  if (slope != 0.0) m.add(atoms::Linear{0}, slope, 1.0);
  return {m, std::nullopt};
}

PointSet three_jumps() {
  return PointSet::from_timeline(EventTimeline::build({{0.0, {0.5}}, {1.5, {-0.4}}}, {0.7, 1.5, 2.6}, 3.0));
}

}  // namespace

TEST_CASE("identical models: zero log-LR and zero variance") {
  const auto p = three_jumps();
  const auto g = linear_model(0.1, 0.6);
  const auto r = oos_lr_test(g, g, p);
  CHECK(r.loglr == 0.0);
  CHECK(r.zero_variance);
}

TEST_CASE("constant shift on a 3-jump instance") {
  const auto p = three_jumps();
  const auto r = oos_lr_test(linear_model(0.1, 0.6), linear_model(0.4, 0.6), p);
  CHECK(r.loglr == doctest::Approx(oracle::kLrValue).epsilon(1e-13));
  CHECK(r.loglr == doctest::Approx(oracle::kLrFormula).epsilon(1e-13));
  CHECK(r.statistic == doctest::Approx(oracle::kLrStatistic).epsilon(1e-13));
  CHECK(r.p_two_sided == doctest::Approx(oracle::kLrPTwoSided).epsilon(1e-12));
  CHECK(r.sigma_hat == doctest::Approx(oracle::kLrSigmaHat).epsilon(1e-13));
  CHECK(r.S == 3.0);
  CHECK(r.jumps == 3);
  CHECK(r.statistic == doctest::Approx(r.loglr / std::sqrt(r.S * r.sigma_hat * r.sigma_hat)));
}

TEST_CASE("antisymmetry and p-value ranges") {
  Rng rng(1);
  for (int rep = 0; rep < 50; ++rep) {
    const auto tl = testing::random_timeline(rng, 1, 10, 30, 10.0);
    const auto p = PointSet::from_timeline(tl);
    const auto g = linear_model(rng.normal(), rng.normal()), h = linear_model(rng.normal(), rng.normal());
    const auto a = oos_lr_test(g, h, p), b = oos_lr_test(h, g, p);
    CHECK(a.statistic == -b.statistic);
    CHECK(a.loglr == -b.loglr);
    for (double v : {a.p_one_sided, a.p_two_sided}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    CHECK(a.p_one_sided + b.p_one_sided == doctest::Approx(1.0));
  }
}

TEST_CASE("adding the same atom to both models keeps the jump part") {
  // The jump sum and sigma_hat depend on g - g' only; the compensator part
  // scales with the shared factor, so the statistic itself moves.
  Rng rng(2);
  const auto tl = testing::random_timeline(rng, 1, 10, 30, 10.0);
  const auto p = PointSet::from_timeline(tl);
  auto g = linear_model(0.2, 0.5), h = linear_model(-0.1, 0.1);
  const auto before = oos_lr_test(g, h, p);
  g.model.add(atoms::Monomial{0, 2}, 0.3, 1.0);
  h.model.add(atoms::Monomial{0, 2}, 0.3, 1.0);
  const auto after = oos_lr_test(g, h, p);
  CHECK(after.sigma_hat == doctest::Approx(before.sigma_hat).epsilon(1e-13));
  CHECK(after.jumps == before.jumps);
}

TEST_CASE("window start restricts the rows") {
  const auto p = three_jumps();
  const auto r = oos_lr_test(linear_model(0.1, 0.6), linear_model(0.4, 0.6), p, 1.5);
  CHECK(r.S == 1.5);
  CHECK(r.jumps == 1);
  CHECK(error_of([&] { (void)oos_lr_test(linear_model(0, 0), linear_model(0, 0), p, 3.0); }) == ErrorCode::OutOfRange);
}

TEST_CASE("time-rescaling: the true Cox model returns the simulation draws") {
  SimDesign d;
  d.n = 300;
  const auto sim = simulate_cox(d);
  AdditiveModel truth(0.0, 10.0, WeightScheme::Unit);
  for (std::size_t k = 0; k < 3; ++k) truth.add(atoms::Linear{k}, 1.0, 1.0);
  const auto r = time_rescaling_residuals({truth, std::nullopt}, PointSet::from_timeline(sim.timeline));
  REQUIRE(r.residuals.size() == sim.residuals.size());
  for (std::size_t i = 0; i < r.residuals.size(); ++i) {
    CHECK(r.residuals[i] == doctest::Approx(sim.residuals[i]).epsilon(1e-10));
  }
}

TEST_CASE("time-rescaling: constant MLE residuals average exactly 1") {
  SimDesign d;
  d.n = 200;
  const auto tl = simulate_cox(d).timeline;
  const auto r = time_rescaling_residuals(linear_model(std::log(200.0 / tl.horizon()), 0.0),
                                          PointSet::from_timeline(tl));
  const double mean = std::accumulate(r.residuals.begin(), r.residuals.end(), 0.0) / r.residuals.size();
  CHECK(mean == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("time-rescaling: a fitted linear model on convex data is usually rejected") {
  int rejected = 0;
  const int runs = 20;
  for (int rep = 0; rep < runs; ++rep) {
    SimDesign d;
    d.truth = Truth::Convex;
    d.n = 1000;
    d.stream = rep;
    const auto tl = simulate_cox(d).timeline;
    DictionaryConfig dc;
    dc.dim = 10;
    dc.weights = WeightScheme::EmpiricalL2;
    FitConfig cfg;
    cfg.budget = 8.0;
    const auto model = fit(tl, dc, cfg).model;
    const auto r = time_rescaling_residuals({model, std::nullopt}, PointSet::from_timeline(tl));
    rejected += r.ks.p_value < 0.05 ? 1 : 0;
  }
  MESSAGE("rejections " << rejected << "/" << runs);
  CHECK(rejected > runs / 2);
}

TEST_CASE("Loss: truth gives 0, best constant gives 1") {
  const auto p = three_jumps();
  std::vector<double> g0(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) g0[i] = 0.1 + 0.6 * p.row(i)[0];
  CHECK(loss_metric(g0, g0, p) == 0.0);
  double mean = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.count[i] > 0) {
      mean += g0[i];
      ++n;
    }
  }
  const std::vector<double> constant(p.size(), mean / n);
  CHECK(loss_metric(constant, g0, p) == doctest::Approx(1.0).epsilon(1e-14));

  const auto model = linear_model(0.1, 0.6);
  CHECK(loss_metric(model, [](std::span<const double> x) { return 0.1 + 0.6 * x[0]; }, p) == 0.0);
}

TEST_CASE("Loss: degenerate inputs") {
  const auto p = three_jumps();
  const std::vector<double> flat(p.size(), 0.7);
  CHECK(error_of([&] { (void)loss_metric(flat, flat, p); }) == ErrorCode::DegenerateDenominator);
  const auto none = PointSet::from_timeline(EventTimeline::build({{0.0, {0.5}}}, {}, 1.0));
  const std::vector<double> z(none.size(), 0.0);
  CHECK(error_of([&] { (void)loss_metric(z, z, none); }) == ErrorCode::NoJumps);
}
