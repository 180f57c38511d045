#ifndef MEASFIELD_HILB_HPP
#define MEASFIELD_HILB_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "measfield/errors.hpp"

namespace measfield {

using cd = std::complex<double>;

/// A finite-dimensional complex Hilbert space with the standard basis.
struct HilbertSpace {
  int dim = 0;

  HilbertSpace() = default;
  explicit HilbertSpace(int d) : dim(d) {
    if (d < 0) throw InvariantViolation("negative dimension");
  }

  friend bool operator==(const HilbertSpace& a, const HilbertSpace& b) {
    return a.dim == b.dim;
  }
  friend bool operator!=(const HilbertSpace& a, const HilbertSpace& b) {
    return !(a == b);
  }
};

/// An element of a Hilbert space, as standard-basis coordinates.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::vector<cd> coords) : coords_(std::move(coords)) {}
  static Vector zero(int dim) { return Vector(std::vector<cd>(dim)); }
  static Vector basis(int dim, int k);

  HilbertSpace space() const {
    return HilbertSpace(static_cast<int>(coords_.size()));
  }
  int dim() const { return static_cast<int>(coords_.size()); }
  const cd& at(int i) const { return coords_.at(i); }
  cd& at(int i) { return coords_.at(i); }
  const std::vector<cd>& coords() const { return coords_; }

  bool is_zero() const;
  double norm() const;

  friend Vector operator+(const Vector& a, const Vector& b);
  friend Vector operator-(const Vector& a, const Vector& b);
  friend Vector operator*(const cd& s, const Vector& v);
  friend bool operator==(const Vector& a, const Vector& b) {
    return a.coords_ == b.coords_;
  }

 private:
  std::vector<cd> coords_;
};

/// Conjugate-linear in the first argument.
cd inner(const Vector& a, const Vector& b);

/// A bounded operator as a dense target-dim x source-dim matrix.
///
/// Composition is a plain triple loop with a fixed accumulation order, so
/// assembling block-diagonal operators and multiplying commutes with
/// multiplying blocks and assembling, bit for bit.  The norm and kernel
/// computations go through an SVD.
class Operator {
 public:
  Operator() = default;
  Operator(HilbertSpace source, HilbertSpace target, std::vector<cd> entries);

  static Operator zero(HilbertSpace source, HilbertSpace target);
  static Operator identity(HilbertSpace space);
  static Operator scalar(HilbertSpace space, const cd& s);
  static Operator from_columns(HilbertSpace target,
                               const std::vector<Vector>& columns);

  const HilbertSpace& source() const { return source_; }
  const HilbertSpace& target() const { return target_; }
  int rows() const { return target_.dim; }
  int cols() const { return source_.dim; }
  const cd& at(int r, int c) const { return entries_.at(index(r, c)); }
  cd& at(int r, int c) { return entries_.at(index(r, c)); }
  const std::vector<cd>& entries() const { return entries_; }

  Vector apply(const Vector& v) const;
  Vector column(int c) const;

  friend Operator operator*(const Operator& a, const Operator& b);
  friend Operator operator+(const Operator& a, const Operator& b);
  friend Operator operator-(const Operator& a, const Operator& b);
  friend Operator operator*(const cd& s, const Operator& a);
  friend bool operator==(const Operator& a, const Operator& b);

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * source_.dim + c;
  }

  HilbertSpace source_;
  HilbertSpace target_;
  std::vector<cd> entries_;  // row-major
};

struct Biproduct {
  HilbertSpace space;
  Operator inj1, inj2;   // summands into the sum
  Operator proj1, proj2; // sum onto the summands
};

/// Largest singular value.
double op_norm(const Operator& a);

/// Conjugate transpose with source and target swapped.
Operator adjoint(const Operator& a);

/// Direct sum with the block injections and projections.
Biproduct biproduct(const HilbertSpace& h, const HilbertSpace& k);

/// Isometric inclusion of the null space {v : |Av| <= tol |A| |v|}.
Operator kernel_of(const Operator& a, double tol);

HilbertSpace tensor(const HilbertSpace& h, const HilbertSpace& k);

/// Kronecker product with the left factor major, matching the pair order
/// of product() on spaces.
Operator tensor_op(const Operator& a, const Operator& b);

/// Orthonormalizes, dropping inputs whose residual norm is <= tol.
std::vector<Vector> gram_schmidt(const std::vector<Vector>& vs, double tol);

/// Orthonormalizes keeping list positions: dependents become zero vectors.
std::vector<Vector> gram_schmidt_keep_zeros(const std::vector<Vector>& vs,
                                            double tol);

/// Singular values in descending order.
std::vector<double> singular_values(const Operator& a);

/// Columns spanning the orthogonal complement of the (orthonormal) columns
/// of m inside its target space.
Operator orthonormal_complement(const Operator& m);

double max_abs_diff(const Operator& a, const Operator& b);
double max_abs(const Operator& a);

}  // namespace measfield

#endif  // MEASFIELD_HILB_HPP
