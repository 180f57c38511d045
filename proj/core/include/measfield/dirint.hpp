#ifndef MEASFIELD_DIRINT_HPP
#define MEASFIELD_DIRINT_HPP

#include <optional>
#include <string>
#include <vector>

#include "measfield/field.hpp"

namespace measfield {

/// A direct integral realized as a block-indexed space with a
/// measure-weighted inner product.  Only points of positive weight get a
/// block (sections differing on null sets are identified structurally);
/// blocks follow the space's point order.
///
/// The canonical isometry to the standard space of the same total
/// dimension multiplies block x by sqrt(weight(x)); embed() composed with
/// BlockVector::to_standard() computes it.
class WeightedHilbert {
 public:
  struct Block {
    std::size_t point;   // index into the underlying space
    std::string label;
    int dim;
    Weight weight;       // strictly positive
    int offset;          // starting coordinate in the standard space
  };

  WeightedHilbert() = default;
  WeightedHilbert(BorelSpace space, std::vector<Block> blocks);

  const BorelSpace& space() const { return space_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }
  const Block& block(std::size_t i) const { return blocks_.at(i); }
  int total_dim() const { return total_dim_; }
  HilbertSpace standard_space() const { return HilbertSpace(total_dim_); }

  /// Block index of a point, if the point carries positive weight.
  std::optional<std::size_t> block_of_point(std::size_t point) const;

  friend bool operator==(const WeightedHilbert& a, const WeightedHilbert& b);

 private:
  BorelSpace space_;
  std::vector<Block> blocks_;
  int total_dim_ = 0;
};

/// An element of a WeightedHilbert: one fiber vector per block.
class BlockVector {
 public:
  BlockVector() = default;
  BlockVector(WeightedHilbert space, std::vector<Vector> parts);

  const WeightedHilbert& space() const { return space_; }
  const Vector& part(std::size_t i) const { return parts_.at(i); }

  /// Weighted inner product: sum over blocks of weight(x) <u_x | v_x>.
  friend cd inner(const BlockVector& a, const BlockVector& b);
  double norm() const;

  /// Standard coordinates: block x scaled by sqrt(weight(x)).
  Vector to_standard() const;

 private:
  WeightedHilbert space_;
  std::vector<Vector> parts_;
};

/// The direct integral of a field against a measure.
WeightedHilbert direct_integral_obj(const HField& h, const Measure& mu);

/// Picks out the values of a section on the blocks.
BlockVector embed_section(const WeightedHilbert& w, const Section& s);

/// The direct integral of an operator field: the block-diagonal operator
/// between the standard realizations.  Functorial exactly, and blind to
/// fibers over null points.
Operator direct_integral_op(const OperatorField& a, const Measure& mu);

/// The comparison map between integrals against two measures with
/// mu << nu: block-diagonal multiplication by sqrt(dmu/dnu), from the
/// nu-integral's standard space to the mu-integral's.  Isometric on the
/// subspace of blocks with positive mu-weight; for equivalent measures the
/// two directions compose to the identity.
Operator rn_transform(const HField& h, const Measure& mu, const Measure& nu);

/// The field on the base whose fiber at y is the direct integral of h
/// against the fiber measure over y, realized as a standard fiber.
HField fibered_direct_integral(const HField& h, const FiberedMeasure& k);

/// The per-base-point block structure behind fibered_direct_integral.
std::vector<WeightedHilbert> fibered_blocks(const HField& h,
                                            const FiberedMeasure& k);

/// The unitary from (integral of h) tensor K to the integral of
/// (h tensor K), built on the spanning vectors and extended by linearity.
/// With the left-major index convention it is a permutation matrix.
Operator tensor_distributivity_iso(const HField& h, const HilbertSpace& k,
                                   const Measure& mu);

/// The field on X whose fiber at x integrates the slices K_(x,-) against
/// nu.  k must live on product(x, nu.space()).
HField direct_integral_in_MeasX(const BorelSpace& x, const HField& k,
                                const Measure& nu);

/// The unitary between the joint integral against mu x nu and the iterated
/// integral (inner over Y, outer over X).
Operator fubini_iso(const HField& h, const Measure& mu, const Measure& nu);

}  // namespace measfield

#endif  // MEASFIELD_DIRINT_HPP
