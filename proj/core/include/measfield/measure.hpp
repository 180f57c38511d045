#ifndef MEASFIELD_MEASURE_HPP
#define MEASFIELD_MEASURE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "measfield/borel.hpp"
#include "measfield/weight.hpp"

namespace measfield {

/// A finite measure on a finite space: one nonnegative weight per point.
class Measure {
 public:
  Measure() = default;
  Measure(BorelSpace space, std::vector<Weight> weights);

  static Measure zero(const BorelSpace& space);
  static Measure point_mass(const BorelSpace& space, const std::string& label,
                            const Weight& mass = Weight::from_int(1));
  static Measure uniform(const BorelSpace& space, const Weight& mass);

  const BorelSpace& space() const { return space_; }
  std::size_t size() const { return weights_.size(); }
  const Weight& at(std::size_t i) const { return weights_.at(i); }
  const Weight& at_label(const std::string& label) const {
    return weights_.at(space_.index_of(label));
  }
  const std::vector<Weight>& weights() const { return weights_; }

  /// Measure of a set: the sum of its members' weights.
  Weight of(const MeasurableSet& set) const;

  MeasurableSet support() const;
  bool is_zero() const;

  /// True when every weight was built through the exact path.
  bool exact() const;

  friend bool operator==(const Measure& a, const Measure& b) {
    return a.space_ == b.space_ && a.weights_ == b.weights_;
  }
  friend bool operator!=(const Measure& a, const Measure& b) {
    return !(a == b);
  }

 private:
  BorelSpace space_;
  std::vector<Weight> weights_;
};

/// A pointwise density dmu/dnu, zero off the support of the denominator.
class RNFunction {
 public:
  RNFunction() = default;
  RNFunction(BorelSpace space, std::vector<Weight> values);

  const BorelSpace& space() const { return space_; }
  const Weight& at(std::size_t i) const { return values_.at(i); }
  const std::vector<Weight>& values() const { return values_; }

 private:
  BorelSpace space_;
  std::vector<Weight> values_;
};

/// A base-indexed family of measures on a total space, each concentrated
/// on the fiber of the projection over its base point (a measure kernel).
/// Concentration is checked at construction; measurability of the weight
/// functions and uniform finiteness hold for free on finite spaces and
/// carry no data here.
///
/// Two shapes occur.  The generic shape carries an arbitrary projection
/// (disintegrations).  The product-kernel shape has total = product(left,
/// base) with the second projection; it is the shape functor weights use,
/// and the only shape kernel composition accepts.
class FiberedMeasure {
 public:
  FiberedMeasure() = default;
  FiberedMeasure(MeasurableMap projection, std::vector<Measure> family);

  /// Product-kernel constructor: weight_rows[b][l] is the mass the fiber
  /// over base point b gives to (left point l, b).
  static FiberedMeasure kernel(const BorelSpace& left, const BorelSpace& base,
                               const std::vector<std::vector<Weight>>& rows);

  /// Validates an already-built family on product(left, base) as a kernel.
  static FiberedMeasure kernel_from_family(const BorelSpace& left,
                                           const BorelSpace& base,
                                           std::vector<Measure> family);

  const BorelSpace& total() const { return projection_.source(); }
  const BorelSpace& base() const { return projection_.target(); }
  const MeasurableMap& projection() const { return projection_; }
  const Measure& fiber(std::size_t base_index) const {
    return family_.at(base_index);
  }
  const Measure& fiber_at(const std::string& base_label) const {
    return family_.at(base().index_of(base_label));
  }
  const std::vector<Measure>& family() const { return family_; }

  bool is_kernel() const { return kernel_left_.has_value(); }
  const BorelSpace& kernel_left() const;

  /// Kernel-shape accessor: mass of (left point l, base point b) in the
  /// fiber over b.
  const Weight& kernel_weight(std::size_t left_index,
                              std::size_t base_index) const;

  bool exact() const;

  friend bool operator==(const FiberedMeasure& a, const FiberedMeasure& b) {
    return a.projection_ == b.projection_ && a.family_ == b.family_;
  }
  friend bool operator!=(const FiberedMeasure& a, const FiberedMeasure& b) {
    return !(a == b);
  }

 private:
  MeasurableMap projection_;
  std::vector<Measure> family_;
  std::optional<BorelSpace> kernel_left_;
};

/// Result of fiberwise probability normalization; fibers that were zero
/// stay zero and are flagged here.
struct NormalizedFibered {
  FiberedMeasure kernel;
  MeasurableSet zero_fibers;
};

/// Result of probability normalization of a single measure.
struct NormalizedMeasure {
  Measure probability;
  RNFunction derivative;  // d(original)/d(probability)
};

/// The conditional measures kappa_{x,z} of a kernel composition: one
/// measure on the middle space per point of product(left, base).
struct ConditionalFamily {
  BorelSpace left;         // X
  BorelSpace base;         // Z
  BorelSpace fiber_space;  // Y, the middle space the measures live on
  std::vector<Measure> measures;  // indexed X-major over product(left, base)

  const Measure& at(std::size_t left_index, std::size_t base_index) const {
    return measures.at(pair_index(left, base, left_index, base_index));
  }
};

Weight total_mass(const Measure& mu);

/// Image measure along f: mass of y is the mass of f^{-1}(y).
Measure pushforward(const Measure& mu, const MeasurableMap& f);

/// True iff nu(x) = 0 implies mu(x) = 0 everywhere.
bool absolutely_continuous(const Measure& mu, const Measure& nu);

/// Pointwise density mu/nu on supp(nu), zero elsewhere.  Requires mu << nu.
RNFunction radon_nikodym(const Measure& mu, const Measure& nu);

/// Splits mu into a part absolutely continuous w.r.t. nu and a part
/// mutually singular with it; the two sum to mu pointwise.
std::pair<Measure, Measure> lebesgue_decompose(const Measure& mu,
                                               const Measure& nu);

NormalizedMeasure normalize_to_probability(const Measure& mu);

NormalizedFibered normalize_fibered(const FiberedMeasure& k);

/// Composition of product kernels: mu from X to Y, nu from Y to Z, giving
/// lambda from X to Z with lambda_z(x) = sum_y mu_y(x) nu_z(y).
FiberedMeasure compose_base(const FiberedMeasure& mu, const FiberedMeasure& nu);

/// Disintegrates m along p against the base measure lambda.  Requires
/// lambda(y) = 0 to imply m(p^{-1}(y)) = 0 (else MaharamViolation).
FiberedMeasure disintegrate(const Measure& m, const MeasurableMap& p,
                            const Measure& lambda);

/// The conditionals of a composition: kappa_{x,z}(y) = mu_y(x) nu_z(y) /
/// lambda_z(x) where positive, the zero measure otherwise.  lambda must
/// equal compose_base(mu, nu) exactly.
ConditionalFamily kappa_from_composition(const FiberedMeasure& mu,
                                         const FiberedMeasure& nu,
                                         const FiberedMeasure& lambda);

/// Product measure on product(mu.space, nu.space).
Measure product_measure(const Measure& mu, const Measure& nu);

/// Re-houses a generic fibered measure over X base Y on the graph of its
/// projection, yielding the product-kernel shape on X x Y.
FiberedMeasure graph_kernel(const FiberedMeasure& k);

}  // namespace measfield

#endif  // MEASFIELD_MEASURE_HPP
