#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pointfw/points.hpp"
#include "pointfw/timeline.hpp"

namespace pointfw {

namespace atoms {

struct Intercept {
  auto operator<=>(const Intercept&) const = default;
};

// x_k
struct Linear {
  std::size_t k = 0;
  auto operator<=>(const Linear&) const = default;
};

// x_k^power
struct Monomial {
  std::size_t k = 0;
  int power = 1;
  auto operator<=>(const Monomial&) const = default;
};

enum class TrigKind { Sin, Cos };

// sin or cos of 2 pi frequency x_k (period one).
struct Trig {
  std::size_t k = 0;
  TrigKind kind = TrigKind::Sin;
  int frequency = 1;
  auto operator<=>(const Trig&) const = default;
};

// Smooth transition a1 x_k + a2 x_k phi(c1 x_z - c2), phi logistic.
struct Sigmoid {
  std::size_t k = 0;
  std::size_t z = 0;
  double a1 = 0.0;
  double a2 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  auto operator<=>(const Sigmoid&) const = default;
};

// sum_v a_v C(V,v) u^v (1-u)^(V-v) with u = (x_k + 1) / 2 clamped to [0, 1].
struct Bernstein {
  std::size_t k = 0;
  std::vector<double> coefficients;
  auto operator<=>(const Bernstein&) const = default;
};

// min(discounted jump count with this decay, ceiling).
struct HawkesFeature {
  double decay = 1.0;
  double ceiling = 5.0;
  auto operator<=>(const HawkesFeature&) const = default;
};

}  // namespace atoms

// Variant index is the family tag order used for tie-breaking.
using Atom = std::variant<atoms::Intercept, atoms::Linear, atoms::Monomial, atoms::Trig,
                          atoms::Sigmoid, atoms::Bernstein, atoms::HawkesFeature>;

std::string family_name(const Atom& atom);
std::string describe(const Atom& atom);
bool is_parametric(const Atom& atom);

// Sup of |theta(x)| over x in [-1, 1]^K.
double atom_bound(const Atom& atom);

// Fitted parameters carried by the atom, counting the coefficient.
int parameter_count(const Atom& atom);

// Throws Error{MissingHawkesState} when the atom needs an excitation value
// and none is given, or when one is given for any other atom.
double eval_atom(const Atom& atom, std::span<const double> x,
                 std::optional<double> excitation = std::nullopt);

// Atom values on every row of `points`.
std::vector<double> evaluate(const Atom& atom, const PointSet& points);

double logistic(double u);

enum class WeightScheme { Unit, EmpiricalL2 };

struct DictionaryConfig {
  std::size_t dim = 0;
  std::vector<std::size_t> coordinates;  // empty: all
  bool intercept = true;
  bool linear = true;
  std::vector<int> monomial_powers;  // e.g. {1, 2, 3}
  int trig_max_frequency = 0;
  bool sigmoid = false;
  std::size_t sigmoid_threshold = 0;  // z coordinate
  int sigmoid_grid = 21;
  int bernstein_order = 0;  // V; 0 disables
  double bernstein_alpha = 1e6;
  bool hawkes = false;
  double hawkes_decay_lo = 0.1;
  double hawkes_decay_hi = 10.0;
  int hawkes_grid = 25;
  double hawkes_ceiling = 5.0;
  WeightScheme weights = WeightScheme::Unit;
  double weight_floor = 1e-6;

  std::vector<std::size_t> active_coordinates() const;
};

// (1/T int theta^2 dt)^{1/2} over the segment table. Throws ZeroNormAtom.
double empirical_l2_weight(const PointSet& points, const Atom& atom);
double empirical_l2_weight(const EventTimeline& timeline, const Atom& atom);

struct Selection {
  Atom atom;
  double derivative = 0.0;  // D_T(F, atom), signed
  double weight = 1.0;
  double score = 0.0;  // |derivative| / weight
  std::vector<double> values;  // atom on the bound rows
};

// Dictionary bound to a fixed set of rows. Finite families are evaluated
// once; parametric families are searched on every call to select().
class Dictionary {
 public:
  // Empirical L2 weights, when configured, are computed from `points`.
  Dictionary(DictionaryConfig config, const PointSet& points);
  // Explicit weights for the finite atoms, in finite_atoms() order.
  Dictionary(DictionaryConfig config, const PointSet& points, std::vector<double> finite_weights);

  const DictionaryConfig& config() const { return config_; }
  const std::vector<Atom>& finite_atoms() const { return finite_; }
  const std::vector<double>& finite_weights() const { return weights_; }
  const std::vector<double>& finite_values(std::size_t i) const { return columns_[i]; }
  std::size_t rows() const { return rows_; }
  bool empty() const { return finite_.empty() && !has_parametric(); }
  bool has_parametric() const;

  // Weight of any atom this dictionary can produce.
  double weight_of(const Atom& atom) const;
  double max_bound() const;
  double min_weight() const;

  // argmax over the dictionary of |sum_i w_i theta(x_i)| / w_theta. `signed_weights`
  // are the per-row weights of a signed sample.
  Selection select(std::span<const double> signed_weights) const;

 private:
  void enumerate();
  void compute_columns(const PointSet& points);
  void consider(Selection& best, bool& have, Selection&& cand) const;
  Selection best_sigmoid(std::span<const double> w) const;
  Selection best_bernstein(std::span<const double> w) const;
  Selection best_hawkes(std::span<const double> w) const;

  DictionaryConfig config_;
  std::size_t rows_ = 0;
  PointSet points_;
  std::vector<Atom> finite_;
  std::vector<double> weights_;
  std::vector<std::vector<double>> columns_;
};

// One-shot oracle: binds a dictionary to `points` and selects.
Selection select_atom(const DictionaryConfig& config, const PointSet& points,
                      std::span<const double> signed_weights,
                      std::optional<std::vector<double>> finite_weights = std::nullopt);

}  // namespace pointfw
