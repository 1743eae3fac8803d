#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pointfw/dictionary.hpp"
#include "pointfw/points.hpp"
#include "pointfw/timeline.hpp"

namespace pointfw {

struct Term {
  Atom atom;
  double coef = 0.0;
  double weight = 1.0;
};

// log-intensity F(x) = offset + sum_theta b_theta theta(x), with the weighted
// l1 mass sum_theta w_theta |b_theta| kept within `budget`. The offset is the
// shrunk starting point F_0 and does not count against the budget.
class AdditiveModel {
 public:
  AdditiveModel() = default;
  AdditiveModel(double offset, double budget, WeightScheme scheme)
      : offset_(offset), budget_(budget), scheme_(scheme) {}

  double offset() const { return offset_; }
  double budget() const { return budget_; }
  WeightScheme weight_scheme() const { return scheme_; }
  const std::vector<Term>& terms() const { return terms_; }

  void set_offset(double offset) { offset_ = offset; }
  void set_budget(double budget) { budget_ = budget; }

  // Adds coef to the atom's coefficient, merging duplicates.
  void add(const Atom& atom, double coef, double weight);
  // Multiplies the offset and every coefficient by `factor`.
  void scale(double factor);
  // Drops terms with |coef| below `floor`.
  void prune(double floor = 1e-12);

  double l1_mass() const;
  bool uses_excitation() const;

  double eval(std::span<const double> x, std::optional<double> excitation = std::nullopt) const;
  // F on every row of `points`.
  std::vector<double> eval(const PointSet& points) const;

 private:
  double offset_ = 0.0;
  double budget_ = 0.0;
  WeightScheme scheme_ = WeightScheme::Unit;
  std::vector<Term> terms_;
};

// D_T(F, theta) = sum_i w_i theta(x_i): weight +1 per jump, -exp{F} exposure per
// segment. Rows coincide with the segment table of `points`.
struct SignedSample {
  std::vector<double> jump_weight;
  std::vector<double> segment_weight;

  std::vector<double> combined() const;
  double derivative(std::span<const double> theta_values) const;
};

// Sum over jumps of F minus sum over segments of exp{F} exposure, given F per row.
// Throws NumericOverflow when any F exceeds 700.
double log_likelihood(std::span<const double> f, const PointSet& points);
double log_likelihood(const AdditiveModel& model, const PointSet& points);
double log_likelihood(const AdditiveModel& model, const EventTimeline& timeline);

SignedSample signed_sample(std::span<const double> f, const PointSet& points);
SignedSample signed_sample(const AdditiveModel& model, const PointSet& points);
SignedSample signed_sample(const AdditiveModel& model, const EventTimeline& timeline);

// exp{F(x)}
double predict_intensity(const AdditiveModel& model, std::span<const double> x,
                         std::optional<double> excitation = std::nullopt);

inline constexpr double kMaxLogIntensity = 700.0;

}  // namespace pointfw
