#include "pointfw/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pointfw/error.hpp"
#include "pointfw/numeric.hpp"

namespace pointfw {

void AdditiveModel::add(const Atom& atom, double coef, double weight) {
  for (auto& t : terms_) {
    if (t.atom == atom) {
      t.coef += coef;
      return;
    }
  }
  terms_.push_back({atom, coef, weight});
}

void AdditiveModel::scale(double factor) {
  offset_ *= factor;
  for (auto& t : terms_) t.coef *= factor;
}

void AdditiveModel::prune(double floor) {
  std::erase_if(terms_, [floor](const Term& t) { return std::abs(t.coef) < floor; });
}

double AdditiveModel::l1_mass() const {
  double s = 0.0;
  for (const auto& t : terms_) s += t.weight * std::abs(t.coef);
  return s;
}

bool AdditiveModel::uses_excitation() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return std::holds_alternative<atoms::HawkesFeature>(t.atom); });
}

double AdditiveModel::eval(std::span<const double> x, std::optional<double> excitation) const {
  double f = offset_;
  for (const auto& t : terms_) {
    const bool hawkes = std::holds_alternative<atoms::HawkesFeature>(t.atom);
    if (hawkes && !excitation) throw Error(ErrorCode::MissingHawkesState, describe(t.atom));
    f += t.coef * eval_atom(t.atom, x, hawkes ? excitation : std::nullopt);
  }
  return f;
}

std::vector<double> AdditiveModel::eval(const PointSet& points) const {
  std::vector<double> f(points.size(), offset_);
  for (const auto& t : terms_) {
    const auto v = evaluate(t.atom, points);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] += t.coef * v[i];
  }
  return f;
}

std::vector<double> SignedSample::combined() const {
  std::vector<double> out(jump_weight.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = jump_weight[i] + segment_weight[i];
  return out;
}

double SignedSample::derivative(std::span<const double> theta) const {
  std::vector<double> terms(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) terms[i] = (jump_weight[i] + segment_weight[i]) * theta[i];
  return pairwise_sum(terms);
}

namespace {

void check_overflow(std::span<const double> f) {
  for (double v : f) {
    if (!(v <= kMaxLogIntensity)) {
      throw Error(ErrorCode::NumericOverflow, "log-intensity " + std::to_string(v) + " exceeds 700");
    }
  }
}

}  // namespace

double log_likelihood(std::span<const double> f, const PointSet& points) {
  check_overflow(f);
  std::vector<double> terms(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    terms[i] = points.count[i] * f[i] - points.exposure[i] * std::exp(f[i]);
  }
  return pairwise_sum(terms);
}

double log_likelihood(const AdditiveModel& model, const PointSet& points) {
  return log_likelihood(model.eval(points), points);
}

double log_likelihood(const AdditiveModel& model, const EventTimeline& timeline) {
  return log_likelihood(model, PointSet::from_timeline(timeline));
}

SignedSample signed_sample(std::span<const double> f, const PointSet& points) {
  check_overflow(f);
  SignedSample s;
  s.jump_weight = points.count;
  s.segment_weight.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) s.segment_weight[i] = -points.exposure[i] * std::exp(f[i]);
  return s;
}

SignedSample signed_sample(const AdditiveModel& model, const PointSet& points) {
  return signed_sample(model.eval(points), points);
}

SignedSample signed_sample(const AdditiveModel& model, const EventTimeline& timeline) {
  return signed_sample(model, PointSet::from_timeline(timeline));
}

double predict_intensity(const AdditiveModel& model, std::span<const double> x,
                         std::optional<double> excitation) {
  return std::exp(model.eval(x, excitation));
}

}  // namespace pointfw
