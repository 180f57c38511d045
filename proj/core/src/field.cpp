#include "measfield/field.hpp"

#include <algorithm>

namespace measfield {

HField::HField(BorelSpace space, std::vector<int> dims)
    : space_(std::move(space)), dims_(std::move(dims)) {
  if (dims_.size() != space_.size())
    throw InvariantViolation("one fiber dimension per point is required");
  for (int d : dims_)
    if (d < 0) throw InvariantViolation("negative fiber dimension");
}

HField HField::zero(const BorelSpace& space) {
  return HField(space, std::vector<int>(space.size(), 0));
}

HField HField::constant(const BorelSpace& space, int dim) {
  return HField(space, std::vector<int>(space.size(), dim));
}

int HField::total_dim() const {
  int sum = 0;
  for (int d : dims_) sum += d;
  return sum;
}

Section::Section(HField field, std::vector<Vector> values, bool exact)
    : field_(std::move(field)), values_(std::move(values)), exact_(exact) {
  if (values_.size() != field_.points())
    throw InvariantViolation("one value per point is required");
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i].dim() != field_.dim(i))
      throw SpaceMismatch("section value does not match fiber dimension");
}

Section Section::zero(const HField& field) {
  std::vector<Vector> values;
  values.reserve(field.points());
  for (std::size_t i = 0; i < field.points(); ++i)
    values.push_back(Vector::zero(field.dim(i)));
  return Section(field, std::move(values));
}

Section Section::basis(const HField& field, int k) {
  std::vector<Vector> values;
  values.reserve(field.points());
  for (std::size_t i = 0; i < field.points(); ++i) {
    if (field.dim(i) > k)
      values.push_back(Vector::basis(field.dim(i), k));
    else
      values.push_back(Vector::zero(field.dim(i)));
  }
  return Section(field, std::move(values));
}

Section operator+(const Section& a, const Section& b) {
  if (a.field_ != b.field_) throw SpaceMismatch("section sum across fields");
  std::vector<Vector> values;
  values.reserve(a.values_.size());
  for (std::size_t i = 0; i < a.values_.size(); ++i)
    values.push_back(a.values_[i] + b.values_[i]);
  return Section(a.field_, std::move(values), a.exact_ && b.exact_);
}

Section operator-(const Section& a, const Section& b) {
  if (a.field_ != b.field_)
    throw SpaceMismatch("section difference across fields");
  std::vector<Vector> values;
  values.reserve(a.values_.size());
  for (std::size_t i = 0; i < a.values_.size(); ++i)
    values.push_back(a.values_[i] - b.values_[i]);
  return Section(a.field_, std::move(values), a.exact_ && b.exact_);
}

OperatorField::OperatorField(HField source, HField target,
                             std::vector<Operator> ops, bool exact)
    : source_(std::move(source)),
      target_(std::move(target)),
      ops_(std::move(ops)),
      exact_(exact) {
  if (source_.space() != target_.space())
    throw SpaceMismatch("source and target fields live on different spaces");
  if (ops_.size() != source_.points())
    throw InvariantViolation("one operator per point is required");
  for (std::size_t i = 0; i < ops_.size(); ++i)
    if (ops_[i].source() != source_.fiber(i) ||
        ops_[i].target() != target_.fiber(i))
      throw SpaceMismatch("fiber operator has the wrong shape at '" +
                          source_.space().label(i) + "'");
}

OperatorField OperatorField::identity(const HField& field) {
  std::vector<Operator> ops;
  ops.reserve(field.points());
  for (std::size_t i = 0; i < field.points(); ++i)
    ops.push_back(Operator::identity(field.fiber(i)));
  return OperatorField(field, field, std::move(ops));
}

OperatorField OperatorField::zero(const HField& source, const HField& target) {
  std::vector<Operator> ops;
  ops.reserve(source.points());
  for (std::size_t i = 0; i < source.points(); ++i)
    ops.push_back(Operator::zero(source.fiber(i), target.fiber(i)));
  return OperatorField(source, target, std::move(ops));
}

Section OperatorField::apply(const Section& s) const {
  if (s.field() != source_)
    throw SpaceMismatch("operator field applied to a section of another field");
  std::vector<Vector> values;
  values.reserve(ops_.size());
  for (std::size_t i = 0; i < ops_.size(); ++i)
    values.push_back(ops_[i].apply(s.at(i)));
  return Section(target_, std::move(values), exact_ && s.exact());
}

OperatorField operator*(const OperatorField& a, const OperatorField& b) {
  if (b.target_ != a.source_)
    throw SpaceMismatch("operator field composition shapes do not match");
  std::vector<Operator> ops;
  ops.reserve(a.ops_.size());
  for (std::size_t i = 0; i < a.ops_.size(); ++i)
    ops.push_back(a.ops_[i] * b.ops_[i]);
  return OperatorField(b.source_, a.target_, std::move(ops),
                       a.exact_ && b.exact_);
}

OperatorField operator+(const OperatorField& a, const OperatorField& b) {
  if (a.source_ != b.source_ || a.target_ != b.target_)
    throw SpaceMismatch("operator field sum shapes do not match");
  std::vector<Operator> ops;
  ops.reserve(a.ops_.size());
  for (std::size_t i = 0; i < a.ops_.size(); ++i)
    ops.push_back(a.ops_[i] + b.ops_[i]);
  return OperatorField(a.source_, a.target_, std::move(ops),
                       a.exact_ && b.exact_);
}

OperatorField operator*(const cd& s, const OperatorField& a) {
  std::vector<Operator> ops;
  ops.reserve(a.ops_.size());
  for (const Operator& op : a.ops_) ops.push_back(s * op);
  return OperatorField(a.source_, a.target_, std::move(ops), a.exact_);
}

OperatorField adjoint(const OperatorField& b) {
  std::vector<Operator> ops;
  ops.reserve(b.ops().size());
  for (const Operator& op : b.ops()) ops.push_back(adjoint(op));
  return OperatorField(b.target(), b.source(), std::move(ops), b.exact());
}

MeasurableSet support(const HField& h) {
  std::vector<bool> mask(h.points());
  for (std::size_t i = 0; i < h.points(); ++i) mask[i] = h.dim(i) > 0;
  return MeasurableSet(h.space(), std::move(mask));
}

MeasurableSet support(const Section& s) {
  std::vector<bool> mask(s.values().size());
  for (std::size_t i = 0; i < s.values().size(); ++i)
    mask[i] = s.exact() ? !s.at(i).is_zero() : s.at(i).norm() > kSupportTol;
  return MeasurableSet(s.field().space(), std::move(mask));
}

MeasurableSet support(const OperatorField& b) {
  std::vector<bool> mask(b.ops().size());
  for (std::size_t i = 0; i < b.ops().size(); ++i) {
    const Operator& op = b.at(i);
    bool nonzero = false;
    if (b.exact()) {
      for (const cd& e : op.entries())
        if (e != cd(0.0, 0.0)) nonzero = true;
    } else {
      nonzero = max_abs(op) > kSupportTol;
    }
    mask[i] = nonzero;
  }
  return MeasurableSet(b.space(), std::move(mask));
}

HField restrict(const HField& h, const MeasurableSet& a) {
  if (a.space() != h.space())
    throw SpaceMismatch("restriction set on the wrong space");
  std::vector<int> dims(h.points());
  for (std::size_t i = 0; i < h.points(); ++i)
    dims[i] = a.contains(i) ? h.dim(i) : 0;
  return HField(h.space(), std::move(dims));
}

Section restrict(const Section& s, const MeasurableSet& a) {
  if (a.space() != s.field().space())
    throw SpaceMismatch("restriction set on the wrong space");
  std::vector<Vector> values;
  values.reserve(s.values().size());
  for (std::size_t i = 0; i < s.values().size(); ++i)
    values.push_back(a.contains(i) ? s.at(i) : Vector::zero(s.at(i).dim()));
  return Section(s.field(), std::move(values), s.exact());
}

OperatorField restrict(const OperatorField& b, const MeasurableSet& a) {
  if (a.space() != b.space())
    throw SpaceMismatch("restriction set on the wrong space");
  std::vector<Operator> ops;
  ops.reserve(b.ops().size());
  for (std::size_t i = 0; i < b.ops().size(); ++i)
    ops.push_back(a.contains(i)
                      ? b.at(i)
                      : Operator::zero(b.at(i).source(), b.at(i).target()));
  return OperatorField(b.source(), b.target(), std::move(ops), b.exact());
}

FieldBiproduct field_biproduct(const HField& h, const HField& k) {
  if (h.space() != k.space())
    throw SpaceMismatch("biproduct of fields on different spaces");
  std::vector<int> dims(h.points());
  for (std::size_t i = 0; i < h.points(); ++i) dims[i] = h.dim(i) + k.dim(i);
  HField sum(h.space(), std::move(dims));
  std::vector<Operator> i1, i2, p1, p2;
  for (std::size_t i = 0; i < h.points(); ++i) {
    Biproduct b = biproduct(h.fiber(i), k.fiber(i));
    i1.push_back(b.inj1);
    i2.push_back(b.inj2);
    p1.push_back(b.proj1);
    p2.push_back(b.proj2);
  }
  return {sum, OperatorField(h, sum, std::move(i1)),
          OperatorField(k, sum, std::move(i2)),
          OperatorField(sum, h, std::move(p1)),
          OperatorField(sum, k, std::move(p2))};
}

RestrictionDecomposition restriction_decomposition(const HField& h,
                                                   const MeasurableSet& a) {
  if (a.space() != h.space())
    throw SpaceMismatch("restriction set on the wrong space");
  RestrictionDecomposition out;
  out.on_part = restrict(h, a);
  out.off_part = restrict(h, a.complement());
  out.sum = field_biproduct(out.on_part, out.off_part);
  // Fiberwise the sum is H_x + 0 on A and 0 + H_x off A, so the canonical
  // unitary is the identity matrix either way.
  std::vector<Operator> fwd, bwd;
  for (std::size_t i = 0; i < h.points(); ++i) {
    fwd.push_back(Operator::identity(h.fiber(i)));
    bwd.push_back(Operator::identity(h.fiber(i)));
  }
  out.to_sum = OperatorField(h, out.sum.field, std::move(fwd));
  out.from_sum = OperatorField(out.sum.field, h, std::move(bwd));
  return out;
}

bool is_partial_line_bundle(const HField& h) {
  for (std::size_t i = 0; i < h.points(); ++i)
    if (h.dim(i) > 1) return false;
  return true;
}

HField line_bundle_from_set(const MeasurableSet& a) {
  std::vector<int> dims(a.space().size());
  for (std::size_t i = 0; i < dims.size(); ++i) dims[i] = a.contains(i) ? 1 : 0;
  return HField(a.space(), std::move(dims));
}

Section xi_normal(const HField& h) {
  std::vector<Vector> values;
  values.reserve(h.points());
  for (std::size_t i = 0; i < h.points(); ++i) {
    if (h.dim(i) > 0)
      values.push_back(Vector::basis(h.dim(i), 0));
    else
      values.push_back(Vector::zero(0));
  }
  return Section(h, std::move(values));
}

Section scalar_mult(const std::vector<cd>& phi, const Section& s) {
  if (phi.size() != s.field().points())
    throw SpaceMismatch("scalar function not defined on every point");
  std::vector<Vector> values;
  values.reserve(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i)
    values.push_back(phi[i] * s.at(i));
  return Section(s.field(), std::move(values), s.exact());
}

std::vector<Section> fiberwise_gram_schmidt(const std::vector<Section>& ss,
                                            double tol) {
  if (ss.empty()) return {};
  const HField& field = ss.front().field();
  for (const Section& s : ss)
    if (s.field() != field)
      throw SpaceMismatch("sections live in different fields");
  std::vector<std::vector<Vector>> values(ss.size());
  for (std::size_t x = 0; x < field.points(); ++x) {
    std::vector<Vector> fiber;
    fiber.reserve(ss.size());
    for (const Section& s : ss) fiber.push_back(s.at(x));
    std::vector<Vector> ortho = gram_schmidt_keep_zeros(fiber, tol);
    for (std::size_t i = 0; i < ss.size(); ++i)
      values[i].push_back(std::move(ortho[i]));
  }
  std::vector<Section> out;
  out.reserve(ss.size());
  for (auto& v : values) out.emplace_back(field, std::move(v));
  return out;
}

SpanSplit span_split(const HField& h, const std::vector<Section>& ss,
                     double tol) {
  for (const Section& s : ss)
    if (s.field() != h)
      throw SpaceMismatch("sections live in different fields");

  SpanSplit out;
  std::vector<int> span_dims(h.points()), comp_dims(h.points());
  std::vector<Operator> incl_g, incl_c, proj_g, proj_c;
  for (std::size_t x = 0; x < h.points(); ++x) {
    std::vector<Vector> fiber;
    for (const Section& s : ss) fiber.push_back(s.at(x));
    std::vector<Vector> basis = gram_schmidt(fiber, tol);
    Operator m = Operator::from_columns(h.fiber(x), basis);
    Operator c = orthonormal_complement(m);
    span_dims[x] = m.cols();
    comp_dims[x] = c.cols();
    incl_g.push_back(m);
    incl_c.push_back(c);
    proj_g.push_back(m * adjoint(m));
    proj_c.push_back(c * adjoint(c));
  }
  out.span_field = HField(h.space(), std::move(span_dims));
  out.complement_field = HField(h.space(), std::move(comp_dims));
  out.incl_span = OperatorField(out.span_field, h, std::move(incl_g));
  out.incl_complement = OperatorField(out.complement_field, h,
                                      std::move(incl_c));
  out.proj_span = OperatorField(h, h, std::move(proj_g));
  out.proj_complement = OperatorField(h, h, std::move(proj_c));
  return out;
}

LineSummand line_summand(const HField& h) {
  SpanSplit split = span_split(h, {xi_normal(h)}, 1e-9);
  LineSummand out;
  out.bundle = split.span_field;
  out.inclusion = split.incl_span;
  out.projection = adjoint(split.incl_span);
  return out;
}

HField tensor_fields(const HField& h, const HField& k) {
  if (h.space() != k.space())
    throw SpaceMismatch("tensor of fields on different spaces");
  std::vector<int> dims(h.points());
  for (std::size_t i = 0; i < h.points(); ++i) dims[i] = h.dim(i) * k.dim(i);
  return HField(h.space(), std::move(dims));
}

OperatorField tensor_opfields(const OperatorField& a, const OperatorField& b) {
  if (a.space() != b.space())
    throw SpaceMismatch("tensor of operator fields on different spaces");
  std::vector<Operator> ops;
  ops.reserve(a.ops().size());
  for (std::size_t i = 0; i < a.ops().size(); ++i)
    ops.push_back(tensor_op(a.at(i), b.at(i)));
  return OperatorField(tensor_fields(a.source(), b.source()),
                       tensor_fields(a.target(), b.target()), std::move(ops),
                       a.exact() && b.exact());
}

HField tensor_field_space(const HField& h, const HilbertSpace& k) {
  std::vector<int> dims(h.points());
  for (std::size_t i = 0; i < h.points(); ++i) dims[i] = h.dim(i) * k.dim;
  return HField(h.space(), std::move(dims));
}

OperatorField tensor_associator(const HField& h, const HField& k,
                                const HField& l) {
  HField from = tensor_fields(tensor_fields(h, k), l);
  HField to = tensor_fields(h, tensor_fields(k, l));
  std::vector<Operator> ops;
  ops.reserve(from.points());
  for (std::size_t i = 0; i < from.points(); ++i)
    ops.push_back(Operator::identity(from.fiber(i)));
  return OperatorField(from, to, std::move(ops));
}

OperatorField tensor_left_unitor(const HField& h) {
  HField unit = line_bundle_from_set(MeasurableSet::whole(h.space()));
  HField from = tensor_fields(unit, h);
  std::vector<Operator> ops;
  ops.reserve(from.points());
  for (std::size_t i = 0; i < from.points(); ++i)
    ops.push_back(Operator::identity(from.fiber(i)));
  return OperatorField(from, h, std::move(ops));
}

OperatorField tensor_right_unitor(const HField& h) {
  HField unit = line_bundle_from_set(MeasurableSet::whole(h.space()));
  HField from = tensor_fields(h, unit);
  std::vector<Operator> ops;
  ops.reserve(from.points());
  for (std::size_t i = 0; i < from.points(); ++i)
    ops.push_back(Operator::identity(from.fiber(i)));
  return OperatorField(from, h, std::move(ops));
}

HField external_tensor(const HField& h, const HField& k) {
  BorelSpace joint = product(h.space(), k.space());
  std::vector<int> dims(joint.size());
  for (std::size_t i = 0; i < h.points(); ++i)
    for (std::size_t j = 0; j < k.points(); ++j)
      dims[pair_index(h.space(), k.space(), i, j)] = h.dim(i) * k.dim(j);
  return HField(std::move(joint), std::move(dims));
}

double opfield_norm(const OperatorField& b) {
  double m = 0.0;
  for (const Operator& op : b.ops()) m = std::max(m, op_norm(op));
  return m;
}

double opfield_ess_norm(const OperatorField& b, const Measure& mu) {
  if (mu.space() != b.space())
    throw SpaceMismatch("essential norm against a measure on another space");
  double m = 0.0;
  for (std::size_t i = 0; i < b.ops().size(); ++i)
    if (mu.at(i).positive()) m = std::max(m, op_norm(b.at(i)));
  return m;
}

double max_residual(const OperatorField& a, const OperatorField& b) {
  if (a.source() != b.source() || a.target() != b.target())
    throw SpaceMismatch("residual of operator fields with different shapes");
  double m = 0.0;
  for (std::size_t i = 0; i < a.ops().size(); ++i)
    m = std::max(m, max_abs_diff(a.at(i), b.at(i)));
  return m;
}

}  // namespace measfield
