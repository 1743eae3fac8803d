#include "pointfw/experiment.hpp"

#include <limits>

#include "pointfw/error.hpp"
#include "pointfw/eval.hpp"
#include "pointfw/numeric.hpp"
#include "pointfw/parallel.hpp"
#include "pointfw/select.hpp"

namespace pointfw {

std::string to_string(EstimatorKind kind) { return kind == EstimatorKind::Lin ? "lin" : "poly"; }

DictionaryConfig estimator_dictionary(EstimatorKind kind, std::size_t dim) {
  DictionaryConfig c;
  c.dim = dim;
  c.intercept = true;
  c.weights = WeightScheme::EmpiricalL2;
  if (kind == EstimatorKind::Lin) {
    c.linear = true;
  } else {
    c.linear = false;
    c.monomial_powers = {1, 2, 3};
  }
  return c;
}

Replication run_replication(const LossExperiment& ex, const SimDesign& base) {
  Replication rep;
  rep.stream = base.stream;
  SimDesign design = base;
  design.n = base.n + ex.out_of_sample;
  try {
    const auto sim = simulate(design);
    // x / cap lies in [-1, 1] for clipped designs; L2 weights make Lin invariant to it.
    PreprocessTransform scale;
    scale.caps.assign(design.K, std::numeric_limits<double>::infinity());
    scale.scales.assign(design.K, design.cap);
    scale.degenerate.assign(design.K, false);
    const auto timeline = scale.apply(sim.timeline);
    const double split = timeline.jump_times()[base.n - 1];
    const auto train = timeline.slice(0.0, split);

    const auto dict = estimator_dictionary(ex.estimator, design.K);
    FitConfig cfg;
    cfg.iterations = ex.iterations;
    cfg.start = StartRule::LogRate;
    FittedModel fitted;
    if (design.hawkes) {
      HawkesFitOptions opts;
      opts.grid = ex.grid;
      auto hf = fit_hawkes_joint(train, dict, cfg, opts);
      fitted.model = std::move(hf.model);
      fitted.hawkes = hf.params;
      rep.hawkes = hf.params;
    } else {
      auto sel = aic_select(train, ex.grid, dict, cfg);
      fitted.model = std::move(sel.fit.model);
    }
    rep.budget = fitted.model.budget();

    const auto points = PointSet::from_timeline(timeline);
    std::vector<double> raw(design.K);
    const TruthFunction truth = [&](std::span<const double> x) {
      for (std::size_t k = 0; k < raw.size(); ++k) raw[k] = x[k] * design.cap;
      return true_g0(design, raw);
    };
    rep.loss = loss_metric(fitted, truth, points, split);
  } catch (const Error& e) {
    rep.failure = e.what();
  }
  return rep;
}

LossSummary run_loss_experiment(const LossExperiment& ex) {
  if (ex.replications == 0) throw Error(ErrorCode::InvalidArgument, "need at least one replication");
  LossSummary out;
  SimDesign design = ex.design;
  if (design.hawkes) {
    out.centering = centering_gamma(design, ex.centering_draws, ex.centering_seed);
    design.gamma = out.centering.gamma;
  }
  out.replications.resize(ex.replications);
  parallel_for(ex.replications, ex.jobs, [&](std::size_t r) {
    SimDesign d = design;
    d.stream = design.stream + r;
    out.replications[r] = run_replication(ex, d);
  });
  for (const auto& r : out.replications) {
    if (r.failure.empty()) {
      out.losses.push_back(r.loss);
    } else {
      ++out.failures;
    }
  }
  if (out.losses.empty()) throw Error(ErrorCode::NonFiniteLikelihood, "every replication failed");
  out.median = median(out.losses);
  out.q25 = quantile(out.losses, 0.25);
  out.q75 = quantile(out.losses, 0.75);
  return out;
}

}  // namespace pointfw
