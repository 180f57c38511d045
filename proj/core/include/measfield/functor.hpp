#ifndef MEASFIELD_FUNCTOR_HPP
#define MEASFIELD_FUNCTOR_HPP

#include <vector>

#include "measfield/dirint.hpp"

namespace measfield {

/// A functor between field categories given by its presentation: a kernel
/// field on source x target and a family of measures fibered over the
/// target.  Applying it to a field h on the source yields, at each target
/// point y, the integral of H_x tensor K_(x,y) against the fiber over y.
///
/// Functors are compared only through explicit comparison unitaries on
/// applied objects; presentations themselves are never identified.
class MeasurableFunctor {
 public:
  MeasurableFunctor() = default;
  MeasurableFunctor(BorelSpace source, BorelSpace target, HField kernel,
                    FiberedMeasure weights);

  const BorelSpace& source_space() const { return source_; }
  const BorelSpace& target_space() const { return target_; }
  const HField& kernel() const { return kernel_; }
  const FiberedMeasure& weights() const { return weights_; }

  int kernel_dim(std::size_t x, std::size_t y) const {
    return kernel_.dim(pair_index(source_, target_, x, y));
  }
  const Weight& weight(std::size_t x, std::size_t y) const {
    return weights_.kernel_weight(x, y);
  }

 private:
  BorelSpace source_;
  BorelSpace target_;
  HField kernel_;           // on product(source, target)
  FiberedMeasure weights_;  // product-kernel shape, base = target
};

/// True when the two functors carry literally the same presentation.
bool same_presentation(const MeasurableFunctor& f, const MeasurableFunctor& g);

HField apply_obj(const MeasurableFunctor& f, const HField& h);

/// The per-target-point block structure of apply_obj: X-blocks of
/// dimension dim(H_x) * dim(K_(x,y)) weighted by the fiber measure.
std::vector<WeightedHilbert> apply_obj_blocks(const MeasurableFunctor& f,
                                              const HField& h);

OperatorField apply_op(const MeasurableFunctor& f, const OperatorField& a);

MeasurableFunctor identity_functor(const BorelSpace& x);

/// The functor precomposing fields along f: Y -> X, with the graph kernel.
MeasurableFunctor pullback_functor(const MeasurableMap& f);

/// A fibered integral, re-housed on the graph of its projection.
MeasurableFunctor fibered_integral_functor(const MeasurableMap& phi,
                                           const FiberedMeasure& k);

struct FunctorComparison {
  HField probe;
  OperatorField unitary;  // apply_obj(composite, probe) -> second(first(probe))
};

/// A composition of presentations.  The weights are the kernel
/// composition, the conditionals come from disintegrating the joint
/// weights over the composite, and the composite kernel integrates the two
/// kernels against the conditionals.  comparison_at() returns the unitary
/// identifying the one-step application with the two-step one.
class ComposedFunctor {
 public:
  ComposedFunctor(MeasurableFunctor first, MeasurableFunctor second,
                  MeasurableFunctor composite, ConditionalFamily kappa);

  const MeasurableFunctor& functor() const { return composite_; }
  const MeasurableFunctor& first() const { return first_; }
  const MeasurableFunctor& second() const { return second_; }
  const ConditionalFamily& kappa() const { return kappa_; }

  OperatorField comparison_at(const HField& probe) const;

 private:
  MeasurableFunctor first_, second_, composite_;
  ConditionalFamily kappa_;
};

/// All partial line bundles on the space plus one field with mixed fiber
/// dimensions; the default probe family for composition checks.
std::vector<HField> default_probes(const BorelSpace& x);

ComposedFunctor compose(const MeasurableFunctor& f, const MeasurableFunctor& g);

/// Comparison unitaries for a list of probe objects (default_probes when
/// the caller has no preference).
std::vector<FunctorComparison> compare_on_probes(
    const ComposedFunctor& c, const std::vector<HField>& probes);

/// A natural transformation presented by an operator field between the
/// kernels, normalized per target point by the square root of the density
/// of the absolutely continuous part of the source weights against the
/// target weights.
class MeasurableNatTransf {
 public:
  MeasurableNatTransf() = default;
  MeasurableNatTransf(MeasurableFunctor source, MeasurableFunctor target,
                      OperatorField b);

  const MeasurableFunctor& source() const { return source_; }
  const MeasurableFunctor& target() const { return target_; }
  const OperatorField& b() const { return b_; }

  const Measure& mu_tilde(std::size_t y) const { return mu_tilde_.at(y); }
  const Measure& mu_hat(std::size_t y) const { return mu_hat_.at(y); }
  const RNFunction& density(std::size_t y) const { return density_.at(y); }

  /// Essential bound of the presenting field against the target weights
  /// over y.  Always finite here; kept because components only see B
  /// through it.
  double ess_norm(std::size_t y) const { return ess_norms_.at(y); }

 private:
  MeasurableFunctor source_, target_;
  OperatorField b_;
  std::vector<Measure> mu_tilde_, mu_hat_;  // per target point, on the product
  std::vector<RNFunction> density_;         // d(mu_tilde_y)/d(nu_y)
  std::vector<double> ess_norms_;
};

MeasurableNatTransf make_nat_transf(const OperatorField& b,
                                    const MeasurableFunctor& f,
                                    const MeasurableFunctor& g);

/// The component at h: an operator field on the target space from
/// apply_obj(source, h) to apply_obj(target, h).
OperatorField component(const MeasurableNatTransf& eta, const HField& h);

MeasurableNatTransf vertical_compose(const MeasurableNatTransf& eta,
                                     const MeasurableNatTransf& theta);

struct HorizontalComposite {
  ComposedFunctor source_composite;  // second.source after first.source
  ComposedFunctor target_composite;
  MeasurableNatTransf transf;
};

HorizontalComposite horizontal_compose(const MeasurableNatTransf& eta,
                                       const MeasurableNatTransf& theta);

/// Multiplication by a bounded function as an endomorphism of the
/// identity functor.
MeasurableNatTransf nat_endo_of_id(const BorelSpace& x,
                                   const std::vector<cd>& phi);

/// A transformation between two pullback functors; phi is indexed by the
/// common source of f and g and must vanish off their equalizer.
MeasurableNatTransf nat_transf_between_pullbacks(const std::vector<cd>& phi,
                                                 const MeasurableMap& f,
                                                 const MeasurableMap& g);

/// The external product of functors, acting between the product spaces.
MeasurableFunctor odot(const MeasurableFunctor& f, const MeasurableFunctor& g);

}  // namespace measfield

#endif  // MEASFIELD_FUNCTOR_HPP
