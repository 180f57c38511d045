#include "measfield/dirint.hpp"

#include <cmath>

namespace measfield {

WeightedHilbert::WeightedHilbert(BorelSpace space, std::vector<Block> blocks)
    : space_(std::move(space)), blocks_(std::move(blocks)) {
  int offset = 0;
  for (auto& b : blocks_) {
    if (!b.weight.positive())
      throw InvariantViolation("block weights must be strictly positive");
    if (b.dim < 0) throw InvariantViolation("negative block dimension");
    b.offset = offset;
    offset += b.dim;
  }
  total_dim_ = offset;
}

std::optional<std::size_t> WeightedHilbert::block_of_point(
    std::size_t point) const {
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    if (blocks_[i].point == point) return i;
  return std::nullopt;
}

bool operator==(const WeightedHilbert& a, const WeightedHilbert& b) {
  if (a.space_ != b.space_ || a.blocks_.size() != b.blocks_.size())
    return false;
  for (std::size_t i = 0; i < a.blocks_.size(); ++i) {
    const auto& x = a.blocks_[i];
    const auto& y = b.blocks_[i];
    if (x.point != y.point || x.dim != y.dim || x.weight != y.weight)
      return false;
  }
  return true;
}

BlockVector::BlockVector(WeightedHilbert space, std::vector<Vector> parts)
    : space_(std::move(space)), parts_(std::move(parts)) {
  if (parts_.size() != space_.block_count())
    throw InvariantViolation("one part per block is required");
  for (std::size_t i = 0; i < parts_.size(); ++i)
    if (parts_[i].dim() != space_.block(i).dim)
      throw SpaceMismatch("block part has the wrong dimension");
}

cd inner(const BlockVector& a, const BlockVector& b) {
  if (!(a.space_ == b.space_))
    throw SpaceMismatch("inner product across different integrals");
  cd sum(0.0, 0.0);
  for (std::size_t i = 0; i < a.parts_.size(); ++i)
    sum += a.space_.block(i).weight.to_double() *
           inner(a.parts_[i], b.parts_[i]);
  return sum;
}

double BlockVector::norm() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    double n = parts_[i].norm();
    sum += space_.block(i).weight.to_double() * n * n;
  }
  return std::sqrt(sum);
}

Vector BlockVector::to_standard() const {
  Vector out = Vector::zero(space_.total_dim());
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const auto& b = space_.block(i);
    double scale = std::sqrt(b.weight.to_double());
    for (int j = 0; j < b.dim; ++j)
      out.at(b.offset + j) = scale * parts_[i].at(j);
  }
  return out;
}

WeightedHilbert direct_integral_obj(const HField& h, const Measure& mu) {
  if (h.space() != mu.space())
    throw SpaceMismatch("field and measure live on different spaces");
  std::vector<WeightedHilbert::Block> blocks;
  for (std::size_t x = 0; x < h.points(); ++x)
    if (mu.at(x).positive())
      blocks.push_back({x, h.space().label(x), h.dim(x), mu.at(x), 0});
  return WeightedHilbert(h.space(), std::move(blocks));
}

BlockVector embed_section(const WeightedHilbert& w, const Section& s) {
  if (s.field().space() != w.space())
    throw SpaceMismatch("section lives on the wrong space");
  std::vector<Vector> parts;
  parts.reserve(w.block_count());
  for (const auto& b : w.blocks()) {
    if (s.at(b.point).dim() != b.dim)
      throw SpaceMismatch("section fiber does not match block dimension");
    parts.push_back(s.at(b.point));
  }
  return BlockVector(w, std::move(parts));
}

Operator direct_integral_op(const OperatorField& a, const Measure& mu) {
  if (a.space() != mu.space())
    throw SpaceMismatch("operator field and measure live on different spaces");
  WeightedHilbert src = direct_integral_obj(a.source(), mu);
  WeightedHilbert tgt = direct_integral_obj(a.target(), mu);
  Operator out = Operator::zero(src.standard_space(), tgt.standard_space());
  for (std::size_t i = 0; i < src.block_count(); ++i) {
    const auto& sb = src.block(i);
    const auto& tb = tgt.block(i);
    const Operator& op = a.at(sb.point);
    for (int r = 0; r < tb.dim; ++r)
      for (int c = 0; c < sb.dim; ++c)
        out.at(tb.offset + r, sb.offset + c) = op.at(r, c);
  }
  return out;
}

Operator rn_transform(const HField& h, const Measure& mu, const Measure& nu) {
  if (h.space() != mu.space() || h.space() != nu.space())
    throw SpaceMismatch("field and measures live on different spaces");
  if (!absolutely_continuous(mu, nu))
    throw NotAbsolutelyContinuous("numerator charges a nu-null set");
  RNFunction density = radon_nikodym(mu, nu);
  WeightedHilbert src = direct_integral_obj(h, nu);
  WeightedHilbert tgt = direct_integral_obj(h, mu);
  Operator out = Operator::zero(src.standard_space(), tgt.standard_space());
  for (std::size_t i = 0; i < src.block_count(); ++i) {
    const auto& sb = src.block(i);
    auto t = tgt.block_of_point(sb.point);
    if (!t) continue;  // mu-null point: those coordinates map to zero
    const auto& tb = tgt.block(*t);
    double scale = std::sqrt(density.at(sb.point).to_double());
    for (int j = 0; j < sb.dim; ++j)
      out.at(tb.offset + j, sb.offset + j) = cd(scale, 0.0);
  }
  return out;
}

std::vector<WeightedHilbert> fibered_blocks(const HField& h,
                                            const FiberedMeasure& k) {
  if (h.space() != k.total())
    throw SpaceMismatch("field does not live on the kernel's total space");
  std::vector<WeightedHilbert> out;
  out.reserve(k.base().size());
  for (std::size_t y = 0; y < k.base().size(); ++y)
    out.push_back(direct_integral_obj(h, k.fiber(y)));
  return out;
}

HField fibered_direct_integral(const HField& h, const FiberedMeasure& k) {
  std::vector<WeightedHilbert> blocks = fibered_blocks(h, k);
  std::vector<int> dims;
  dims.reserve(blocks.size());
  for (const auto& w : blocks) dims.push_back(w.total_dim());
  return HField(k.base(), std::move(dims));
}

Operator tensor_distributivity_iso(const HField& h, const HilbertSpace& k,
                                   const Measure& mu) {
  WeightedHilbert w = direct_integral_obj(h, mu);
  WeightedHilbert wk = direct_integral_obj(tensor_field_space(h, k), mu);
  HilbertSpace from = tensor(w.standard_space(), k);
  Operator out = Operator::zero(from, wk.standard_space());
  for (std::size_t b = 0; b < w.block_count(); ++b) {
    const auto& src = w.block(b);
    const auto& tgt = wk.block(b);
    for (int i = 0; i < src.dim; ++i)
      for (int j = 0; j < k.dim; ++j)
        out.at(tgt.offset + i * k.dim + j,
               (src.offset + i) * k.dim + j) = cd(1.0, 0.0);
  }
  return out;
}

HField direct_integral_in_MeasX(const BorelSpace& x, const HField& k,
                                const Measure& nu) {
  const BorelSpace& y = nu.space();
  if (k.space() != product(x, y))
    throw SpaceMismatch("field does not live on the expected product space");
  std::vector<int> dims(x.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      if (nu.at(j).positive()) dims[i] += k.dim(pair_index(x, y, i, j));
  return HField(x, std::move(dims));
}

Operator fubini_iso(const HField& h, const Measure& mu, const Measure& nu) {
  const BorelSpace& x = mu.space();
  const BorelSpace& y = nu.space();
  if (h.space() != product(x, y))
    throw SpaceMismatch("field does not live on the expected product space");
  WeightedHilbert joint = direct_integral_obj(h, product_measure(mu, nu));
  HField inner_field = direct_integral_in_MeasX(x, h, nu);
  WeightedHilbert outer = direct_integral_obj(inner_field, mu);

  Operator out = Operator::zero(joint.standard_space(),
                                outer.standard_space());
  for (std::size_t b = 0; b < joint.block_count(); ++b) {
    const auto& jb = joint.block(b);
    std::size_t i = jb.point / y.size();
    std::size_t j = jb.point % y.size();
    auto ob = outer.block_of_point(i);
    if (!ob) throw InvariantViolation("joint block without outer block");
    // offset of y-slice j inside the inner fiber at x = i
    int inner_offset = 0;
    for (std::size_t jj = 0; jj < j; ++jj)
      if (nu.at(jj).positive())
        inner_offset += h.dim(pair_index(x, y, i, jj));
    int base = outer.block(*ob).offset + inner_offset;
    for (int d = 0; d < jb.dim; ++d)
      out.at(base + d, jb.offset + d) = cd(1.0, 0.0);
  }
  return out;
}

}  // namespace measfield
