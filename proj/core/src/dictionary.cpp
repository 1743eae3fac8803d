#include "pointfw/dictionary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pointfw/error.hpp"
#include "pointfw/numeric.hpp"
#include "pointfw/simplex.hpp"

namespace pointfw {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double bernstein_basis(int order, int v, double u) {
  return binomial(order, v) * std::pow(u, v) * std::pow(1.0 - u, order - v);
}

double unit_interval(double x) { return std::clamp((x + 1.0) / 2.0, 0.0, 1.0); }

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }

std::string family_name(const Atom& atom) {
  static const char* names[] = {"intercept", "linear", "monomial", "trig", "sigmoid", "bernstein", "hawkes"};
  return names[atom.index()];
}

std::string describe(const Atom& atom) {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const atoms::Intercept&) { os << "1"; },
                 [&](const atoms::Linear& a) { os << "x" << a.k + 1; },
                 [&](const atoms::Monomial& a) { os << "x" << a.k + 1 << "^" << a.power; },
                 [&](const atoms::Trig& a) {
                   os << (a.kind == atoms::TrigKind::Sin ? "sin" : "cos") << "(2pi*" << a.frequency << "*x"
                      << a.k + 1 << ")";
                 },
                 [&](const atoms::Sigmoid& a) {
                   os << "sigmoid(x" << a.k + 1 << "|x" << a.z + 1 << ";" << a.a1 << "," << a.a2 << "," << a.c1
                      << "," << a.c2 << ")";
                 },
                 [&](const atoms::Bernstein& a) {
                   os << "bernstein(x" << a.k + 1 << ";V=" << a.coefficients.size() - 1 << ")";
                 },
                 [&](const atoms::HawkesFeature& a) { os << "hawkes(a=" << a.decay << ")"; },
             },
             atom);
  return os.str();
}

bool is_parametric(const Atom& atom) {
  return std::holds_alternative<atoms::Sigmoid>(atom) || std::holds_alternative<atoms::Bernstein>(atom) ||
         std::holds_alternative<atoms::HawkesFeature>(atom);
}

double atom_bound(const Atom& atom) {
  return std::visit(Overloaded{
                        [](const atoms::Sigmoid& a) { return std::abs(a.a1) + std::abs(a.a2); },
                        [](const atoms::Bernstein& a) {
                          double m = 0.0;
                          for (double c : a.coefficients) m = std::max(m, std::abs(c));
                          return m;
                        },
                        [](const atoms::HawkesFeature& a) { return a.ceiling; },
                        [](const auto&) { return 1.0; },
                    },
                    atom);
}

int parameter_count(const Atom& atom) {
  return std::visit(Overloaded{
                        [](const atoms::Sigmoid&) { return 4; },
                        [](const atoms::Bernstein& a) { return static_cast<int>(a.coefficients.size()); },
                        [](const atoms::HawkesFeature&) { return 1; },
                        [](const auto&) { return 1; },
                    },
                    atom);
}

double eval_atom(const Atom& atom, std::span<const double> x, std::optional<double> excitation) {
  const bool needs = std::holds_alternative<atoms::HawkesFeature>(atom);
  if (needs != excitation.has_value()) {
    throw Error(ErrorCode::MissingHawkesState,
                needs ? "hawkes atom evaluated without excitation" : "excitation given to a covariate atom");
  }
  auto coord = [&](std::size_t k) {
    if (k >= x.size()) throw Error(ErrorCode::DimensionMismatch, "atom coordinate out of range");
    return x[k];
  };
  return std::visit(
      Overloaded{
          [](const atoms::Intercept&) { return 1.0; },
          [&](const atoms::Linear& a) { return coord(a.k); },
          [&](const atoms::Monomial& a) { return std::pow(coord(a.k), a.power); },
          [&](const atoms::Trig& a) {
            const double arg = 2.0 * std::numbers::pi * a.frequency * coord(a.k);
            return a.kind == atoms::TrigKind::Sin ? std::sin(arg) : std::cos(arg);
          },
          [&](const atoms::Sigmoid& a) {
            const double xk = coord(a.k);
            return a.a1 * xk + a.a2 * xk * logistic(a.c1 * coord(a.z) - a.c2);
          },
          [&](const atoms::Bernstein& a) {
            const int order = static_cast<int>(a.coefficients.size()) - 1;
            const double u = unit_interval(coord(a.k));
            double s = 0.0;
            for (int v = 0; v <= order; ++v) s += a.coefficients[v] * bernstein_basis(order, v, u);
            return s;
          },
          [&](const atoms::HawkesFeature& a) { return std::min(*excitation, a.ceiling); },
      },
      atom);
}

std::vector<double> evaluate(const Atom& atom, const PointSet& points) {
  std::vector<double> out(points.size());
  if (const auto* h = std::get_if<atoms::HawkesFeature>(&atom)) {
    const auto exc = discounted_counts(points, h->decay);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::min(exc[i], h->ceiling);
    return out;
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = eval_atom(atom, points.row(i));
  return out;
}

std::vector<std::size_t> DictionaryConfig::active_coordinates() const {
  if (!coordinates.empty()) return coordinates;
  std::vector<std::size_t> all(dim);
  for (std::size_t k = 0; k < dim; ++k) all[k] = k;
  return all;
}

double empirical_l2_weight(const PointSet& points, const Atom& atom) {
  const auto values = evaluate(atom, points);
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += values[i] * values[i] * points.duration[i];
  const double w = std::sqrt(s / points.horizon);
  if (!(w > 0.0)) throw Error(ErrorCode::ZeroNormAtom, describe(atom));
  return w;
}

double empirical_l2_weight(const EventTimeline& timeline, const Atom& atom) {
  return empirical_l2_weight(PointSet::from_timeline(timeline), atom);
}

Dictionary::Dictionary(DictionaryConfig config, const PointSet& points)
    : config_(std::move(config)), rows_(points.size()), points_(points) {
  enumerate();
  compute_columns(points_);
  std::vector<Atom> kept;
  std::vector<std::vector<double>> kept_cols;
  for (std::size_t i = 0; i < finite_.size(); ++i) {
    double w = 1.0;
    if (config_.weights == WeightScheme::EmpiricalL2) {
      double s = 0.0;
      for (std::size_t r = 0; r < rows_; ++r) s += columns_[i][r] * columns_[i][r] * points_.duration[r];
      w = std::sqrt(s / points_.horizon);
      // Zero-norm atoms vanish on the sample and are excluded.
      if (!(w >= config_.weight_floor)) continue;
    }
    kept.push_back(std::move(finite_[i]));
    kept_cols.push_back(std::move(columns_[i]));
    weights_.push_back(w);
  }
  finite_ = std::move(kept);
  columns_ = std::move(kept_cols);
  if (empty()) throw Error(ErrorCode::EmptyDictionary, "no atoms enabled");
}

Dictionary::Dictionary(DictionaryConfig config, const PointSet& points, std::vector<double> finite_weights)
    : config_(std::move(config)), rows_(points.size()), points_(points) {
  enumerate();
  if (finite_weights.size() != finite_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one weight per finite atom expected");
  }
  for (double w : finite_weights) {
    if (!(w >= config_.weight_floor)) throw Error(ErrorCode::InvalidArgument, "weight below floor");
  }
  weights_ = std::move(finite_weights);
  compute_columns(points_);
  if (empty()) throw Error(ErrorCode::EmptyDictionary, "no atoms enabled");
}

void Dictionary::enumerate() {
  const auto coords = config_.active_coordinates();
  for (std::size_t k : coords) {
    if (k >= config_.dim) throw Error(ErrorCode::DimensionMismatch, "coordinate beyond dimension");
  }
  if (config_.intercept) finite_.emplace_back(atoms::Intercept{});
  for (std::size_t k : coords) {
    if (config_.linear) finite_.emplace_back(atoms::Linear{k});
    for (int p : config_.monomial_powers) {
      if (p < 1) throw Error(ErrorCode::InvalidArgument, "monomial power must be >= 1");
      finite_.emplace_back(atoms::Monomial{k, p});
    }
    for (int v = 1; v <= config_.trig_max_frequency; ++v) {
      finite_.emplace_back(atoms::Trig{k, atoms::TrigKind::Sin, v});
      finite_.emplace_back(atoms::Trig{k, atoms::TrigKind::Cos, v});
    }
  }
  std::sort(finite_.begin(), finite_.end());
  finite_.erase(std::unique(finite_.begin(), finite_.end()), finite_.end());
}

void Dictionary::compute_columns(const PointSet& points) {
  columns_.clear();
  columns_.reserve(finite_.size());
  for (const auto& a : finite_) columns_.push_back(evaluate(a, points));
}

bool Dictionary::has_parametric() const {
  return config_.sigmoid || config_.bernstein_order > 0 || config_.hawkes;
}

double Dictionary::weight_of(const Atom& atom) const {
  if (is_parametric(atom)) return 1.0;
  const auto it = std::lower_bound(finite_.begin(), finite_.end(), atom);
  if (it == finite_.end() || *it != atom) {
    throw Error(ErrorCode::InvalidArgument, "atom not in dictionary: " + describe(atom));
  }
  return weights_[static_cast<std::size_t>(it - finite_.begin())];
}

double Dictionary::max_bound() const {
  double m = 0.0;
  for (const auto& a : finite_) m = std::max(m, atom_bound(a));
  if (config_.sigmoid) m = std::max(m, 2.0);
  if (config_.bernstein_order > 0) m = std::max(m, 1.0);
  if (config_.hawkes) m = std::max(m, config_.hawkes_ceiling);
  return m;
}

double Dictionary::min_weight() const {
  double m = has_parametric() ? 1.0 : std::numeric_limits<double>::infinity();
  for (double w : weights_) m = std::min(m, w);
  return m;
}

void Dictionary::consider(Selection& best, bool& have, Selection&& cand) const {
  if (!have || cand.score > best.score) {
    best = std::move(cand);
    have = true;
  }
}

Selection Dictionary::select(std::span<const double> w) const {
  if (w.size() != rows_) throw Error(ErrorCode::DimensionMismatch, "signed sample size");
  Selection best{atoms::Intercept{}};
  bool have = false;
  std::size_t best_finite = finite_.size();
  for (std::size_t i = 0; i < finite_.size(); ++i) {
    const double d = dot(columns_[i], w);
    const double score = std::abs(d) / weights_[i];
    if (!have || score > best.score) {
      best.atom = finite_[i];
      best.derivative = d;
      best.weight = weights_[i];
      best.score = score;
      best_finite = i;
      have = true;
    }
  }
  if (best_finite < finite_.size()) best.values = columns_[best_finite];
  if (config_.sigmoid) consider(best, have, best_sigmoid(w));
  if (config_.bernstein_order > 0) consider(best, have, best_bernstein(w));
  if (config_.hawkes) consider(best, have, best_hawkes(w));
  if (!have) throw Error(ErrorCode::EmptyDictionary, "no atoms enabled");
  return best;
}

Selection Dictionary::best_sigmoid(std::span<const double> w) const {
  const std::size_t z = config_.sigmoid_threshold;
  if (z >= config_.dim) throw Error(ErrorCode::DimensionMismatch, "threshold coordinate");
  const int grid = std::max(config_.sigmoid_grid, 2);
  const double step = 2.0 / (grid - 1);
  Selection best{atoms::Sigmoid{}};
  bool have = false;
  std::vector<double> xw(rows_);
  for (std::size_t k : config_.active_coordinates()) {
    double d1 = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      xw[r] = points_.row(r)[k] * w[r];
      d1 += xw[r];
    }
    // D of x_k phi(c1 z - c2); the box over (a1, a2) is maximized at a vertex.
    auto d2 = [&](double c1, double c2) {
      double s = 0.0;
      for (std::size_t r = 0; r < rows_; ++r) s += xw[r] * logistic(c1 * points_.row(r)[z] - c2);
      return s;
    };
    double bc1 = -1.0, bc2 = -1.0, bscore = -1.0;
    for (int i = 0; i < grid; ++i) {
      for (int j = 0; j < grid; ++j) {
        const double c1 = -1.0 + i * step;
        const double c2 = -1.0 + j * step;
        const double s = std::abs(d1) + std::abs(d2(c1, c2));
        if (s > bscore) {
          bscore = s;
          bc1 = c1;
          bc2 = c2;
        }
      }
    }
    const double width = 1e-6;
    auto r1 = golden_section_max([&](double c1) { return std::abs(d2(c1, bc2)); }, std::max(-1.0, bc1 - step),
                                 std::min(1.0, bc1 + step), width);
    if (std::abs(d1) + r1.value > bscore) {
      bc1 = r1.x;
      bscore = std::abs(d1) + r1.value;
    }
    auto r2 = golden_section_max([&](double c2) { return std::abs(d2(bc1, c2)); }, std::max(-1.0, bc2 - step),
                                 std::min(1.0, bc2 + step), width);
    if (std::abs(d1) + r2.value > bscore) {
      bc2 = r2.x;
      bscore = std::abs(d1) + r2.value;
    }
    const double dd2 = d2(bc1, bc2);
    atoms::Sigmoid atom{k, z, d1 >= 0.0 ? 1.0 : -1.0, dd2 >= 0.0 ? 1.0 : -1.0, bc1, bc2};
    Selection cand{atom};
    cand.derivative = atom.a1 * d1 + atom.a2 * dd2;
    cand.weight = 1.0;
    cand.score = std::abs(cand.derivative);
    if (!have || cand.score > best.score) {
      best = std::move(cand);
      have = true;
    }
  }
  best.values = evaluate(best.atom, points_);
  return best;
}

Selection Dictionary::best_bernstein(std::span<const double> w) const {
  const int order = config_.bernstein_order;
  Selection best{atoms::Bernstein{}};
  bool have = false;
  for (std::size_t k : config_.active_coordinates()) {
    std::vector<double> d(order + 1, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
      const double u = unit_interval(points_.row(r)[k]);
      for (int v = 0; v <= order; ++v) d[v] += w[r] * bernstein_basis(order, v, u);
    }
    for (int sign : {1, -1}) {
      auto a = bernstein_lp_oracle(d, config_.bernstein_alpha, sign);
      double obj = 0.0;
      for (int v = 0; v <= order; ++v) obj += a[v] * d[v];
      if (!have || std::abs(obj) > best.score) {
        best.atom = atoms::Bernstein{k, std::move(a)};
        best.derivative = obj;
        best.weight = 1.0;
        best.score = std::abs(obj);
        have = true;
      }
    }
  }
  best.values = evaluate(best.atom, points_);
  return best;
}

Selection Dictionary::best_hawkes(std::span<const double> w) const {
  const double lo = std::log(config_.hawkes_decay_lo);
  const double hi = std::log(config_.hawkes_decay_hi);
  const int grid = std::max(config_.hawkes_grid, 2);
  const double ceiling = config_.hawkes_ceiling;
  auto score = [&](double log_decay) {
    const auto v = evaluate(atoms::HawkesFeature{std::exp(log_decay), ceiling}, points_);
    return dot(v, w);
  };
  int bi = 0;
  double bs = -1.0;
  for (int i = 0; i < grid; ++i) {
    const double s = std::abs(score(lo + (hi - lo) * i / (grid - 1)));
    if (s > bs) {
      bs = s;
      bi = i;
    }
  }
  const double step = (hi - lo) / (grid - 1);
  const double at = lo + step * bi;
  auto refined = golden_section_max([&](double la) { return std::abs(score(la)); }, std::max(lo, at - step),
                                    std::min(hi, at + step), 1e-6);
  const double log_decay = refined.value > bs ? refined.x : at;
  atoms::HawkesFeature atom{std::exp(log_decay), ceiling};
  Selection best{atom};
  best.values = evaluate(best.atom, points_);
  best.derivative = dot(best.values, w);
  best.weight = 1.0;
  best.score = std::abs(best.derivative);
  return best;
}

Selection select_atom(const DictionaryConfig& config, const PointSet& points,
                      std::span<const double> signed_weights, std::optional<std::vector<double>> finite_weights) {
  if (finite_weights) return Dictionary(config, points, std::move(*finite_weights)).select(signed_weights);
  return Dictionary(config, points).select(signed_weights);
}

}  // namespace pointfw
