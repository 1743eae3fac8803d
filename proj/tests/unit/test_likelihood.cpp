#include <doctest.h>

#include <cmath>

#include "common.hpp"
#include "oracle_values.hpp"
#include "pointfw/likelihood.hpp"

using namespace pointfw;
using testing::error_of;

namespace {

AdditiveModel random_model(Rng& rng, std::size_t dim) {
  AdditiveModel m(0.3 * rng.normal(), 10.0, WeightScheme::Unit);
  for (std::size_t k = 0; k < dim; ++k) m.add(atoms::Linear{k}, 0.5 * rng.normal(), 1.0);
  m.add(atoms::Monomial{0, 2}, 0.4 * rng.normal(), 1.0);
  return m;
}

}  // namespace

TEST_CASE("F = 0 gives -T") {
  Rng rng(1);
  const auto tl = testing::random_timeline(rng, 2, 6, 9, 4.5);
  const AdditiveModel zero(0.0, 1.0, WeightScheme::Unit);
  CHECK(log_likelihood(zero, tl) == doctest::Approx(-4.5).epsilon(1e-14));
}

TEST_CASE("constant model is maximized at ln(n/T)") {
  Rng rng(2);
  const auto tl = testing::random_timeline(rng, 1, 4, 13, 5.0);
  const double best = std::log(13.0 / 5.0);
  auto L = [&](double g) { return log_likelihood(AdditiveModel(g, 1.0, WeightScheme::Unit), tl); };
  CHECK(L(best) == doctest::Approx(13.0 * best - 13.0));
  CHECK(L(best) > L(best + 1e-3));
  CHECK(L(best) > L(best - 1e-3));
}

TEST_CASE("two-segment linear model matches quadrature") {
  const auto tl = EventTimeline::build({{0.0, {0.3}}, {2.0, {-0.8}}}, {0.5, 1.7, 2.2, 3.9}, 4.0);
  AdditiveModel m(0.2, 1.0, WeightScheme::Unit);
  m.add(atoms::Linear{0}, 0.7, 1.0);
  const double L = log_likelihood(m, tl);
  CHECK(testing::close_rel(L, oracle::kLikQuadrature, 1e-8));
  CHECK(testing::close_rel(L, oracle::kLikExact, 1e-13));
}

TEST_CASE("signed sample: first-order condition and F = 0") {
  Rng rng(3);
  const auto tl = testing::random_timeline(rng, 1, 5, 7, 3.0);
  const auto p = PointSet::from_timeline(tl);
  const auto ones = std::vector<double>(p.size(), 1.0);
  const auto at_mle = signed_sample(AdditiveModel(std::log(7.0 / 3.0), 1.0, WeightScheme::Unit), p);
  CHECK(std::abs(at_mle.derivative(ones)) < 1e-12);
  const auto at_zero = signed_sample(AdditiveModel(0.0, 1.0, WeightScheme::Unit), p);
  CHECK(at_zero.derivative(ones) == doctest::Approx(7.0 - 3.0));

  double jumps = 0.0;
  for (double w : at_zero.jump_weight) jumps += w;
  CHECK(jumps == 7.0);
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(at_zero.segment_weight[i] < 0.0);
}

TEST_CASE("signed sample matches central finite differences") {
  Rng rng(4);
  for (int rep = 0; rep < 20; ++rep) {
    const auto tl = testing::random_timeline(rng, 3, 8, 12, 6.0);
    const auto p = PointSet::from_timeline(tl);
    const auto m = random_model(rng, 3);
    const auto f = m.eval(p);
    const Atom theta = atoms::Linear{static_cast<std::size_t>(rep % 3)};
    const auto th = evaluate(theta, p);
    const double eps = 1e-6;
    std::vector<double> up(f), dn(f);
    for (std::size_t i = 0; i < f.size(); ++i) {
      up[i] += eps * th[i];
      dn[i] -= eps * th[i];
    }
    const double fd = (log_likelihood(up, p) - log_likelihood(dn, p)) / (2 * eps);
    const double d = signed_sample(f, p).derivative(th);
    CHECK(testing::close_rel(d, fd, 1e-6));
  }
}

TEST_CASE("derivative is linear in the direction") {
  Rng rng(5);
  const auto tl = testing::random_timeline(rng, 2, 6, 10, 4.0);
  const auto p = PointSet::from_timeline(tl);
  const auto s = signed_sample(random_model(rng, 2), p);
  const auto a = evaluate(atoms::Linear{0}, p), b = evaluate(atoms::Monomial{1, 3}, p);
  std::vector<double> mix(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) mix[i] = 2.5 * a[i] - 0.75 * b[i];
  CHECK(s.derivative(mix) == doctest::Approx(2.5 * s.derivative(a) - 0.75 * s.derivative(b)).epsilon(1e-13));
}

TEST_CASE("log-likelihood is concave along segments") {
  Rng rng(6);
  for (int rep = 0; rep < 50; ++rep) {
    const auto tl = testing::random_timeline(rng, 2, 6, 10, 4.0);
    const auto p = PointSet::from_timeline(tl);
    const auto f = random_model(rng, 2).eval(p);
    const auto h = random_model(rng, 2).eval(p);
    const double r = rng.uniform();
    std::vector<double> mix(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) mix[i] = (1 - r) * f[i] + r * h[i];
    const double lf = log_likelihood(f, p);
    CHECK(log_likelihood(mix, p) >= (1 - r) * lf + r * log_likelihood(h, p) - 1e-9 * std::abs(lf));
  }
}

TEST_CASE("predict_intensity") {
  const std::vector<double> x{0.4};
  CHECK(predict_intensity(AdditiveModel(0.0, 1.0, WeightScheme::Unit), x) == 1.0);
  CHECK(predict_intensity(AdditiveModel(std::log(2.0), 1.0, WeightScheme::Unit), x) == doctest::Approx(2.0));
}

TEST_CASE("overflow is an error") {
  const auto tl = EventTimeline::build({{0.0, {0.0}}}, {0.5}, 1.0);
  CHECK(error_of([&] { (void)log_likelihood(AdditiveModel(701.0, 1.0, WeightScheme::Unit), tl); }) ==
        ErrorCode::NumericOverflow);
}

TEST_CASE("model bookkeeping") {
  AdditiveModel m(0.5, 3.0, WeightScheme::Unit);
  m.add(atoms::Linear{0}, 1.0, 2.0);
  m.add(atoms::Linear{0}, 0.5, 2.0);
  m.add(atoms::Linear{1}, -0.25, 1.0);
  REQUIRE(m.terms().size() == 2);
  CHECK(m.l1_mass() == doctest::Approx(2.0 * 1.5 + 0.25));
  m.scale(0.5);
  CHECK(m.offset() == 0.25);
  CHECK(m.l1_mass() == doctest::Approx(0.5 * 3.25));
  m.add(atoms::Linear{1}, 0.125, 1.0);
  m.prune();
  CHECK(m.terms().size() == 1);
  const std::vector<double> x{0.5, 1.0};
  CHECK(m.eval(x) == doctest::Approx(0.25 + 0.75 * 0.5));
}

TEST_CASE("time-average predicted intensity is close to n/T for a fitted constant") {
  Rng rng(7);
  const auto tl = testing::random_timeline(rng, 1, 3, 400, 200.0);
  const AdditiveModel m(std::log(400.0 / 200.0), 1.0, WeightScheme::Unit);
  const auto p = PointSet::from_timeline(tl);
  double integral = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) integral += predict_intensity(m, p.row(i)) * p.duration[i];
  CHECK(integral / 200.0 == doctest::Approx(2.0).epsilon(0.1));
}
