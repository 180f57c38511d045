#ifndef MEASFIELD_FIELD_HPP
#define MEASFIELD_FIELD_HPP

#include <vector>

#include "measfield/borel.hpp"
#include "measfield/hilb.hpp"
#include "measfield/measure.hpp"

namespace measfield {

/// Norm threshold below which the float path treats a value as zero.
inline constexpr double kSupportTol = 1e-12;

/// A field of Hilbert spaces: one fiber dimension per point.  Over a
/// power-set space every section is measurable, so no section module is
/// stored; the standard-basis sections serve as the fundamental family.
class HField {
 public:
  HField() = default;
  HField(BorelSpace space, std::vector<int> dims);

  static HField zero(const BorelSpace& space);
  static HField constant(const BorelSpace& space, int dim);

  const BorelSpace& space() const { return space_; }
  std::size_t points() const { return dims_.size(); }
  int dim(std::size_t i) const { return dims_.at(i); }
  HilbertSpace fiber(std::size_t i) const { return HilbertSpace(dims_.at(i)); }
  const std::vector<int>& dims() const { return dims_; }
  int total_dim() const;

  friend bool operator==(const HField& a, const HField& b) {
    return a.space_ == b.space_ && a.dims_ == b.dims_;
  }
  friend bool operator!=(const HField& a, const HField& b) { return !(a == b); }

 private:
  BorelSpace space_;
  std::vector<int> dims_;
};

/// One vector per fiber.  `exact` picks the support semantics: exact
/// nonzeroness for data built from exact input, a 1e-12 norm threshold
/// for float data.
class Section {
 public:
  Section() = default;
  Section(HField field, std::vector<Vector> values, bool exact = true);

  static Section zero(const HField& field);
  /// The k-th standard-basis section: e_k in every fiber with dim > k,
  /// zero elsewhere.
  static Section basis(const HField& field, int k);

  const HField& field() const { return field_; }
  const Vector& at(std::size_t i) const { return values_.at(i); }
  Vector& at(std::size_t i) { return values_.at(i); }
  const std::vector<Vector>& values() const { return values_; }
  bool exact() const { return exact_; }

  friend Section operator+(const Section& a, const Section& b);
  friend Section operator-(const Section& a, const Section& b);
  friend bool operator==(const Section& a, const Section& b) {
    return a.field_ == b.field_ && a.values_ == b.values_;
  }

 private:
  HField field_;
  std::vector<Vector> values_;
  bool exact_ = true;
};

/// One operator per fiber, between two fields on the same space.
class OperatorField {
 public:
  OperatorField() = default;
  OperatorField(HField source, HField target, std::vector<Operator> ops,
                bool exact = true);

  static OperatorField identity(const HField& field);
  static OperatorField zero(const HField& source, const HField& target);

  const HField& source() const { return source_; }
  const HField& target() const { return target_; }
  const BorelSpace& space() const { return source_.space(); }
  const Operator& at(std::size_t i) const { return ops_.at(i); }
  Operator& at(std::size_t i) { return ops_.at(i); }
  const std::vector<Operator>& ops() const { return ops_; }
  bool exact() const { return exact_; }

  Section apply(const Section& s) const;

  friend OperatorField operator*(const OperatorField& a,
                                 const OperatorField& b);
  friend OperatorField operator+(const OperatorField& a,
                                 const OperatorField& b);
  friend OperatorField operator*(const cd& s, const OperatorField& a);
  friend bool operator==(const OperatorField& a, const OperatorField& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ &&
           a.ops_ == b.ops_;
  }

 private:
  HField source_;
  HField target_;
  std::vector<Operator> ops_;
  bool exact_ = true;
};

OperatorField adjoint(const OperatorField& b);

struct FieldBiproduct {
  HField field;
  OperatorField inj1, inj2, proj1, proj2;
};

struct RestrictionDecomposition {
  HField on_part;   // restrict(h, A)
  HField off_part;  // restrict(h, complement A)
  FieldBiproduct sum;
  OperatorField to_sum;    // h -> sum.field, fiberwise unitary
  OperatorField from_sum;  // sum.field -> h, inverse of to_sum
};

struct SpanSplit {
  HField span_field;        // G, fiberwise span of the sections
  HField complement_field;  // G-perp
  OperatorField incl_span;        // G -> h, fiberwise isometric
  OperatorField incl_complement;  // G-perp -> h
  OperatorField proj_span;        // h -> h, orthogonal projection onto G
  OperatorField proj_complement;  // h -> h
};

struct LineSummand {
  HField bundle;            // partial line bundle with the same support
  OperatorField inclusion;  // bundle -> h, isometric
  OperatorField projection; // h -> bundle
};

MeasurableSet support(const HField& h);
MeasurableSet support(const Section& s);
MeasurableSet support(const OperatorField& b);

HField restrict(const HField& h, const MeasurableSet& a);
Section restrict(const Section& s, const MeasurableSet& a);
OperatorField restrict(const OperatorField& b, const MeasurableSet& a);

FieldBiproduct field_biproduct(const HField& h, const HField& k);

RestrictionDecomposition restriction_decomposition(const HField& h,
                                                   const MeasurableSet& a);

bool is_partial_line_bundle(const HField& h);
HField line_bundle_from_set(const MeasurableSet& a);

/// A section of norm exactly 1 on the support of h, zero elsewhere; always
/// the first standard-basis vector of each nonzero fiber.
Section xi_normal(const HField& h);

/// Pointwise multiplication by a scalar function on the space.
Section scalar_mult(const std::vector<cd>& phi, const Section& s);

/// Gram-Schmidt in every fiber, keeping list positions; a value that is
/// dependent in some fiber becomes the zero vector in that fiber.
std::vector<Section> fiberwise_gram_schmidt(const std::vector<Section>& ss,
                                            double tol);

SpanSplit span_split(const HField& h, const std::vector<Section>& ss,
                     double tol = 1e-9);

LineSummand line_summand(const HField& h);

HField tensor_fields(const HField& h, const HField& k);
OperatorField tensor_opfields(const OperatorField& a, const OperatorField& b);
HField tensor_field_space(const HField& h, const HilbertSpace& k);

/// Coherence data of the fiberwise tensor.  With the left-major Kronecker
/// convention both bracketings share one realization, so these are
/// identity matrices with the appropriately typed endpoints.
OperatorField tensor_associator(const HField& h, const HField& k,
                                const HField& l);
OperatorField tensor_left_unitor(const HField& h);
OperatorField tensor_right_unitor(const HField& h);

/// External tensor: field on product(h.space, k.space) with fiber
/// H_x tensor K_y at (x, y).
HField external_tensor(const HField& h, const HField& k);

double opfield_norm(const OperatorField& b);
double opfield_ess_norm(const OperatorField& b, const Measure& mu);

double max_residual(const OperatorField& a, const OperatorField& b);

}  // namespace measfield

#endif  // MEASFIELD_FIELD_HPP
