#include "pointfw/fw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pointfw/error.hpp"
#include "pointfw/numeric.hpp"

namespace pointfw {

double line_search_rho(std::span<const double> current, std::span<const double> candidate,
                       const PointSet& points) {
  std::vector<double> mix(current.size());
  auto objective = [&](double rho) {
    bool overflow = false;
    for (std::size_t i = 0; i < mix.size(); ++i) {
      mix[i] = (1.0 - rho) * current[i] + rho * candidate[i];
      overflow = overflow || !(mix[i] <= kMaxLogIntensity);
    }
    // Steps that would overflow exp{F} are infeasible, not errors.
    return overflow ? -std::numeric_limits<double>::infinity() : log_likelihood(mix, points);
  };
  const double at0 = objective(0.0);
  const double at1 = objective(1.0);
  const auto inner = golden_section_max(objective, 0.0, 1.0, 1e-8);
  // Gains within rounding of L(F) are not improvements; a flat objective stays at 0.
  const double noise = 1e-13 * std::max(1.0, std::abs(at0));
  double rho = 0.0;
  double best = at0 + noise;
  if (inner.value > best) {
    rho = inner.x;
    best = inner.value;
  }
  if (at1 > best) rho = 1.0;
  return rho;
}

double duality_gap(std::span<const double> f, const PointSet& points, const Dictionary& dictionary,
                   double budget) {
  const auto w = signed_sample(f, points).combined();
  const auto sel = dictionary.select(w);
  std::vector<double> terms(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) terms[i] = w[i] * f[i];
  return budget * sel.score - pairwise_sum(terms);
}

double duality_gap(const AdditiveModel& model, const PointSet& points, const Dictionary& dictionary) {
  return duality_gap(model.eval(points), points, dictionary, model.budget());
}

FitResult fit(const PointSet& points, const Dictionary& dictionary, const FitConfig& config) {
  if (config.iterations < 1) throw Error(ErrorCode::InvalidArgument, "iterations must be >= 1");
  if (!(config.budget > 0.0)) throw Error(ErrorCode::InvalidArgument, "budget must be positive");
  if (points.jump_times.empty()) throw Error(ErrorCode::NoJumps, "cannot fit without jumps");
  if (dictionary.rows() != points.size()) throw Error(ErrorCode::DimensionMismatch, "dictionary rows");

  const double offset =
      config.start == StartRule::LogRate ? std::log(points.num_jumps() / points.total_exposure()) : 0.0;
  FitResult out;
  out.model = AdditiveModel(offset, config.budget, dictionary.config().weights);
  std::vector<double> f(points.size(), offset);
  std::vector<double> h(points.size());

  for (int j = 1; j <= config.iterations; ++j) {
    const auto w = signed_sample(f, points).combined();
    const auto sel = dictionary.select(w);
    double dff = 0.0;
    {
      std::vector<double> terms(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) terms[i] = w[i] * f[i];
      dff = pairwise_sum(terms);
    }
    const double gap = config.budget * sel.score - dff;
    if (config.gap_tolerance && gap < *config.gap_tolerance) break;

    const double sign = sel.derivative >= 0.0 ? 1.0 : -1.0;
    const double b = config.budget / sel.weight * sign;
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = b * sel.values[i];
    const double rho = config.step == StepRule::LineSearch ? line_search_rho(f, h, points) : 2.0 / (j + 1.0);

    for (std::size_t i = 0; i < f.size(); ++i) f[i] = (1.0 - rho) * f[i] + rho * h[i];
    out.model.scale(1.0 - rho);
    out.model.add(sel.atom, rho * b, sel.weight);
    out.model.prune();
    out.trace.push_back({j, log_likelihood(f, points), gap, describe(sel.atom), rho});
  }
  const auto final_f = out.model.eval(points);
  out.loglik = log_likelihood(final_f, points);
  out.gap = duality_gap(final_f, points, dictionary, config.budget);
  return out;
}

FitResult fit(const EventTimeline& timeline, const DictionaryConfig& dict_config, const FitConfig& config) {
  const auto points = PointSet::from_timeline(timeline);
  const Dictionary dictionary(dict_config, points);
  return fit(points, dictionary, config);
}

}  // namespace pointfw
