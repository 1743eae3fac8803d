#include "commands.hpp"

#include <cstdio>
#include <filesystem>

#include <json.hpp>

#include "pointfw/error.hpp"
#include "pointfw/eval.hpp"
#include "pointfw/experiment.hpp"
#include "pointfw/io.hpp"
#include "pointfw/numeric.hpp"
#include "pointfw/select.hpp"

namespace pointfw::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

[[noreturn]] void usage(const std::string& message) { throw Error(ErrorCode::InvalidArgument, message); }

SimDesign make_design(const DesignFlags& f) {
  SimDesign d;
  d.K = f.K;
  d.rho = f.rho;
  d.truth = f.truth == "convex" ? Truth::Convex : Truth::Linear;
  d.profile = f.profile == "manysmall" ? Profile::ManySmall : f.profile == "zero" ? Profile::Zero : Profile::FewLarge;
  d.n = f.n;
  d.seed = f.seed;
  d.stream = f.stream;
  if (!f.hawkes.empty()) {
    const auto comma = f.hawkes.find(',');
    if (comma == std::string::npos) usage("--hawkes: expected c0,a0");
    HawkesTruth h;
    try {
      h.c0 = std::stod(f.hawkes.substr(0, comma));
      h.a0 = std::stod(f.hawkes.substr(comma + 1));
    } catch (const std::exception&) {
      usage("--hawkes: expected two numbers c0,a0");
    }
    if (!(h.c0 > 0.0) || !(h.a0 > 0.0)) usage("--hawkes: c0 and a0 must be positive");
    h.excitation = !f.no_excitation;
    d.hawkes = h;
  } else if (f.no_excitation) {
    usage("--no-excitation requires --hawkes");
  }
  const std::string dyn = f.dynamics.empty() ? (d.hawkes ? "var1" : "iid") : f.dynamics;
  d.dynamics = dyn == "var1" ? Dynamics::Var1 : Dynamics::Iid;
  return d;
}

json design_json(const SimDesign& d) { return json::parse(io::manifest_to_json({d, {}})); }

PreprocessTransform identity_transform() { return {}; }

EventTimeline apply_transform(const PreprocessTransform& t, const EventTimeline& timeline) {
  if (t.caps.empty()) return timeline;
  if (t.caps.size() != timeline.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "model has " + std::to_string(t.caps.size()) +
                                                  " covariates, data has " + std::to_string(timeline.dim()));
  }
  return t.apply(timeline);
}

DictionaryConfig dictionary_from(const FitFlags& f, std::size_t dim) {
  DictionaryConfig c;
  c.dim = dim;
  c.intercept = false;
  c.linear = false;
  for (const auto& fam : f.families) {
    if (fam == "intercept") c.intercept = true;
    if (fam == "linear") c.linear = true;
    if (fam == "poly") {
      for (int p = 1; p <= f.poly_degree; ++p) c.monomial_powers.push_back(p);
    }
    if (fam == "trig") c.trig_max_frequency = f.trig_frequency;
    if (fam == "sigmoid") {
      if (f.sigmoid_threshold > dim) usage("--sigmoid-threshold: covariate index out of range");
      c.sigmoid = true;
      c.sigmoid_threshold = f.sigmoid_threshold - 1;
    }
    if (fam == "bernstein") {
      c.bernstein_order = f.bernstein_order;
      c.bernstein_alpha = f.bernstein_alpha;
    }
    if (fam == "hawkes") c.hawkes = true;
  }
  c.weights = f.weights == "unit" ? WeightScheme::Unit : WeightScheme::EmpiricalL2;
  return c;
}

json report_rows(const std::vector<BudgetReport>& reports) {
  json rows = json::array();
  for (const auto& r : reports) {
    json row = {{"budget", r.budget}, {"loglik_in", r.loglik_in}, {"K_B", r.active_parameters}, {"aic", r.aic}};
    if (r.loglik_valid) row["loglik_valid"] = *r.loglik_valid;
    rows.push_back(std::move(row));
  }
  return rows;
}

// Round-trips a model through the parser so that only schema-valid files are written.
std::string validated_model(const io::ModelFile& model) {
  const auto text = io::model_to_json(model);
  const auto back = io::model_from_json(text);
  if (io::model_to_json(back) != text) throw Error(ErrorCode::ParseError, "model JSON failed round-trip validation");
  return text;
}

// Re-parses a serialized report and checks its required top-level fields.
void validate_report(const std::string& text, std::initializer_list<const char*> keys) {
  const auto parsed = json::parse(text);
  for (const char* key : keys) {
    if (!parsed.contains(key)) throw Error(ErrorCode::ParseError, std::string("report is missing '") + key + "'");
  }
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir + ": " + ec.message());
}

}  // namespace

int run_simulate(const SimulateFlags& flags) {
  auto design = make_design(flags.design);
  io::Manifest manifest{design, {}};
  if (design.hawkes) {
    manifest.centering = centering_gamma(design, flags.design.gamma_draws, flags.design.seed);
    design.gamma = manifest.centering.gamma;
    manifest.design = design;
  }
  const auto sim = simulate(design);
  ensure_dir(flags.out);
  const fs::path dir(flags.out);
  io::write_events_csv(dir / "events.csv", sim.timeline.jump_times());
  io::write_covariates_csv(dir / "covariates.csv", sim.timeline);
  const auto text = io::manifest_to_json(manifest);
  if (io::manifest_to_json(io::manifest_from_json(text)) != text) {
    throw Error(ErrorCode::ParseError, "manifest failed round-trip validation");
  }
  io::write_file(dir / "manifest.json", text);
  std::printf("simulated %zu jumps on [0, %.6g]%s\n", sim.timeline.num_jumps(), sim.timeline.horizon(),
              design.is_custom() ? " (custom design)" : "");
  return 0;
}

int run_fit(const FitFlags& flags, bool require_grid) {
  if (require_grid && flags.grid.empty()) usage("--grid is required for select");
  for (std::size_t i = 0; i < flags.grid.size(); ++i) {
    if (!(flags.grid[i] > 0.0) || (i > 0 && !(flags.grid[i] > flags.grid[i - 1]))) {
      usage("--grid: budgets must be positive and ascending");
    }
  }
  if (flags.families.empty()) usage("--families: at least one family is required");

  const auto raw = io::load_timeline(flags.events, flags.covariates, flags.horizon);
  if (raw.num_jumps() == 0) throw Error(ErrorCode::NoJumps, "events file has no jumps");
  io::ModelFile model;
  model.dim = raw.dim();
  model.preprocessing = identity_transform();
  EventTimeline timeline = raw;
  if (!flags.no_winsorize) {
    auto pre = winsorize_standardize(raw, flags.winsorize);
    for (std::size_t k = 0; k < pre.transform.degenerate.size(); ++k) {
      if (pre.transform.degenerate[k]) std::fprintf(stderr, "warning: covariate x%zu is degenerate, left unscaled\n", k + 1);
    }
    timeline = std::move(pre.timeline);
    model.preprocessing = std::move(pre.transform);
  }

  const auto dict = dictionary_from(flags, raw.dim());
  FitConfig cfg;
  cfg.budget = flags.budget.value_or(4.0);
  cfg.iterations = flags.iterations;
  cfg.step = flags.no_line_search ? StepRule::Deterministic : StepRule::LineSearch;
  cfg.start = flags.f0 == "zero" ? StartRule::Zero : StartRule::LogRate;
  cfg.seed = flags.seed;

  std::vector<TraceRecord> trace;
  std::optional<json> report;
  if (flags.hawkes_fit) {
    if (!flags.grid.empty() && flags.select != "aic") usage("--hawkes-fit supports --select aic only");
    HawkesFitOptions opts;
    opts.cycles = flags.cycles;
    opts.grid = flags.grid;
    auto hf = fit_hawkes_joint(timeline, dict, cfg, opts);
    model.fitted.model = std::move(hf.model);
    model.fitted.hawkes = hf.params;
    trace = std::move(hf.trace);
    if (!flags.grid.empty()) {
      report = json{{"select", "aic"}, {"budget", model.fitted.model.budget()}, {"budgets", report_rows(hf.reports)}};
    }
  } else if (!flags.grid.empty()) {
    Selected sel;
    if (flags.select == "aic") {
      sel = aic_select(timeline, flags.grid, dict, cfg, flags.jobs);
    } else {
      const auto n = timeline.num_jumps();
      const auto n_train = static_cast<std::size_t>(std::floor(n * (1.0 - flags.validation_fraction)));
      if (n_train < 1 || n_train >= n) throw Error(ErrorCode::EmptyValidation, "validation split leaves an empty part");
      const double split = timeline.jump_times()[n_train - 1];
      sel = validation_select(timeline.slice(0.0, split), timeline.slice(split, timeline.horizon()), flags.grid, dict,
                              cfg, flags.jobs);
    }
    model.fitted.model = std::move(sel.fit.model);
    trace = std::move(sel.fit.trace);
    report = json{{"select", flags.select}, {"budget", sel.budget}, {"budgets", report_rows(sel.reports)}};
  } else {
    auto result = fit(timeline, dict, cfg);
    model.fitted.model = std::move(result.model);
    trace = std::move(result.trace);
  }

  ensure_dir(flags.out);
  const fs::path dir(flags.out);
  io::write_file(dir / "model.json", validated_model(model));
  io::write_file(dir / "trace.jsonl", io::trace_to_jsonl(trace));
  if (report) io::write_file(dir / "report.json", report->dump(2) + "\n");
  std::printf("fitted %zu atoms, budget %.6g, offset %.6g\n", model.fitted.model.terms().size(),
              model.fitted.model.budget(), model.fitted.model.offset());
  return 0;
}

int run_evaluate(const EvaluateFlags& flags) {
  const auto model = io::model_from_json(io::read_file(flags.model));
  const auto raw = io::load_timeline(flags.events, flags.covariates, flags.horizon);
  if (raw.dim() != model.dim) {
    throw Error(ErrorCode::DimensionMismatch, "model has K=" + std::to_string(model.dim) +
                                                  ", data has K=" + std::to_string(raw.dim()));
  }
  if (!(flags.from < raw.horizon())) usage("--from must be before the end of the data");
  const auto points = PointSet::from_timeline(apply_transform(model.preprocessing, raw));
  const auto rows = row_intensity(model.fitted, points);

  json report;
  std::size_t window_jumps = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points.start[i] >= flags.from) window_jumps += static_cast<std::size_t>(points.count[i]);
  }
  report["window"] = {{"from", flags.from}, {"S", raw.horizon() - flags.from}, {"jumps", window_jumps}};

  const auto rescaled = time_rescaling_residuals(model.fitted, points, flags.from);
  report["rescaling"] = {{"residuals", rescaled.residuals.size()},
                         {"ks_statistic", rescaled.ks.statistic},
                         {"p_value", rescaled.ks.p_value}};

  if (!flags.against.empty()) {
    const auto alt = io::model_from_json(io::read_file(flags.against));
    if (alt.dim != raw.dim()) throw Error(ErrorCode::DimensionMismatch, "competing model dimension differs from data");
    const auto alt_points = PointSet::from_timeline(apply_transform(alt.preprocessing, raw));
    const auto test = oos_lr_test(rows, row_intensity(alt.fitted, alt_points), points, flags.from);
    json cmp = {{"avg_loglr_x100", 100.0 * test.avg_loglr},
                {"se_x100", 100.0 * test.std_error},
                {"loglr", test.loglr},
                {"S", test.S},
                {"jumps", test.jumps},
                {"zero_variance", test.zero_variance}};
    if (test.zero_variance) {
      std::fprintf(stderr, "warning: ZeroVariance: the models agree at every jump; the test is undefined\n");
      cmp["p_value"] = nullptr;
      cmp["statistic"] = nullptr;
    } else {
      cmp["p_value"] = test.p_two_sided;
      cmp["p_one_sided"] = test.p_one_sided;
      cmp["statistic"] = test.statistic;
    }
    report["comparison"] = std::move(cmp);
  }

  if (!flags.truth.empty()) {
    const auto manifest = io::manifest_from_json(io::read_file(flags.truth));
    if (manifest.design.K != raw.dim()) throw Error(ErrorCode::DimensionMismatch, "manifest K differs from data");
    const auto raw_points = PointSet::from_timeline(raw);
    std::vector<double> g0(raw_points.size());
    for (std::size_t i = 0; i < g0.size(); ++i) g0[i] = true_g0(manifest.design, raw_points.row(i));
    const auto g = model.fitted.model.eval(points);
    report["loss"] = loss_metric(g, g0, points, flags.from);
  }

  const auto text = report.dump(2) + "\n";
  validate_report(text, {"window", "rescaling"});
  io::write_file(flags.out, text);
  std::printf("%s", text.c_str());
  return 0;
}

int run_benchmark(const BenchmarkFlags& flags) {
  const auto design = make_design(flags.design);
  for (std::size_t i = 0; i < flags.grid.size(); ++i) {
    if (!(flags.grid[i] > 0.0) || (i > 0 && !(flags.grid[i] > flags.grid[i - 1]))) {
      usage("--grid: budgets must be positive and ascending");
    }
  }
  json report;
  report["design"] = design_json(design);
  report["grid"] = flags.grid;
  report["replications"] = flags.replications;
  report["out_of_sample"] = flags.out_of_sample;
  report["iterations"] = flags.iterations;
  json results = json::array();
  for (const auto& name : flags.estimators) {
    LossExperiment ex;
    ex.design = design;
    ex.estimator = name == "poly" ? EstimatorKind::Poly : EstimatorKind::Lin;
    ex.grid = flags.grid;
    ex.out_of_sample = flags.out_of_sample;
    ex.iterations = flags.iterations;
    ex.replications = flags.replications;
    ex.jobs = flags.jobs;
    ex.centering_draws = flags.design.gamma_draws;
    ex.centering_seed = flags.design.seed;
    const auto s = run_loss_experiment(ex);
    json losses = json::array();
    json budgets = json::array();
    for (const auto& r : s.replications) {
      losses.push_back(r.failure.empty() ? json(100.0 * r.loss) : json(nullptr));
      budgets.push_back(r.failure.empty() ? json(r.budget) : json(nullptr));
    }
    json row = {{"estimator", name},
                {"median_x100", 100.0 * s.median},
                {"q25_x100", 100.0 * s.q25},
                {"q75_x100", 100.0 * s.q75},
                {"failures", s.failures},
                {"loss_x100", std::move(losses)},
                {"budget", std::move(budgets)}};
    if (design.hawkes) {
      row["centering"] = {{"gamma", s.centering.gamma},
                          {"standard_error", s.centering.standard_error},
                          {"draws", s.centering.draws},
                          {"seed", s.centering.seed}};
    }
    results.push_back(std::move(row));
    std::printf("%-5s median %.2f  Q25 %.2f  Q75 %.2f  (Loss x100, %zu failures)\n", name.c_str(), 100.0 * s.median,
                100.0 * s.q25, 100.0 * s.q75, s.failures);
  }
  report["results"] = std::move(results);
  const auto text = report.dump(2) + "\n";
  validate_report(text, {"design", "grid", "replications", "results"});
  io::write_file(flags.out, text);
  return 0;
}

}  // namespace pointfw::cli
