#include "measfield/hilb.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace measfield {

namespace {

using EMatrix = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic>;

EMatrix to_eigen(const Operator& a) {
  EMatrix m(a.rows(), a.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) m(r, c) = a.at(r, c);
  return m;
}

}  // namespace

Vector Vector::basis(int dim, int k) {
  Vector v = zero(dim);
  v.at(k) = cd(1.0, 0.0);
  return v;
}

bool Vector::is_zero() const {
  for (const cd& c : coords_)
    if (c != cd(0.0, 0.0)) return false;
  return true;
}

double Vector::norm() const {
  double sum = 0.0;
  for (const cd& c : coords_) sum += std::norm(c);
  return std::sqrt(sum);
}

Vector operator+(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim()) throw SpaceMismatch("vector sum of unequal dims");
  std::vector<cd> out(a.coords_);
  for (int i = 0; i < b.dim(); ++i) out[i] += b.coords_[i];
  return Vector(std::move(out));
}

Vector operator-(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim())
    throw SpaceMismatch("vector difference of unequal dims");
  std::vector<cd> out(a.coords_);
  for (int i = 0; i < b.dim(); ++i) out[i] -= b.coords_[i];
  return Vector(std::move(out));
}

Vector operator*(const cd& s, const Vector& v) {
  std::vector<cd> out(v.coords_);
  for (cd& c : out) c *= s;
  return Vector(std::move(out));
}

cd inner(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim())
    throw SpaceMismatch("inner product of unequal dims");
  cd sum(0.0, 0.0);
  for (int i = 0; i < a.dim(); ++i) sum += std::conj(a.at(i)) * b.at(i);
  return sum;
}

Operator::Operator(HilbertSpace source, HilbertSpace target,
                   std::vector<cd> entries)
    : source_(source), target_(target), entries_(std::move(entries)) {
  if (entries_.size() !=
      static_cast<std::size_t>(source_.dim) * static_cast<std::size_t>(target_.dim))
    throw InvariantViolation("matrix shape does not match source/target dims");
}

Operator Operator::zero(HilbertSpace source, HilbertSpace target) {
  return Operator(source, target,
                  std::vector<cd>(static_cast<std::size_t>(source.dim) *
                                  target.dim));
}

Operator Operator::identity(HilbertSpace space) {
  Operator a = zero(space, space);
  for (int i = 0; i < space.dim; ++i) a.at(i, i) = cd(1.0, 0.0);
  return a;
}

Operator Operator::scalar(HilbertSpace space, const cd& s) {
  Operator a = zero(space, space);
  for (int i = 0; i < space.dim; ++i) a.at(i, i) = s;
  return a;
}

Operator Operator::from_columns(HilbertSpace target,
                                const std::vector<Vector>& columns) {
  Operator a = zero(HilbertSpace(static_cast<int>(columns.size())), target);
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].dim() != target.dim)
      throw SpaceMismatch("column dimension does not match target");
    for (int r = 0; r < target.dim; ++r)
      a.at(r, static_cast<int>(c)) = columns[c].at(r);
  }
  return a;
}

Vector Operator::apply(const Vector& v) const {
  if (v.dim() != source_.dim)
    throw SpaceMismatch("operator applied to a vector of the wrong dim");
  Vector out = Vector::zero(target_.dim);
  for (int r = 0; r < target_.dim; ++r) {
    cd sum(0.0, 0.0);
    for (int c = 0; c < source_.dim; ++c) sum += at(r, c) * v.at(c);
    out.at(r) = sum;
  }
  return out;
}

Vector Operator::column(int c) const {
  Vector out = Vector::zero(target_.dim);
  for (int r = 0; r < target_.dim; ++r) out.at(r) = at(r, c);
  return out;
}

Operator operator*(const Operator& a, const Operator& b) {
  if (b.target() != a.source())
    throw SpaceMismatch("operator composition shapes do not match");
  Operator out = Operator::zero(b.source(), a.target());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c) {
      cd sum(0.0, 0.0);
      for (int k = 0; k < a.cols(); ++k) sum += a.at(r, k) * b.at(k, c);
      out.at(r, c) = sum;
    }
  return out;
}

Operator operator+(const Operator& a, const Operator& b) {
  if (a.source() != b.source() || a.target() != b.target())
    throw SpaceMismatch("operator sum shapes do not match");
  Operator out = a;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out.at(r, c) += b.at(r, c);
  return out;
}

Operator operator-(const Operator& a, const Operator& b) {
  if (a.source() != b.source() || a.target() != b.target())
    throw SpaceMismatch("operator difference shapes do not match");
  Operator out = a;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out.at(r, c) -= b.at(r, c);
  return out;
}

Operator operator*(const cd& s, const Operator& a) {
  Operator out = a;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out.at(r, c) *= s;
  return out;
}

bool operator==(const Operator& a, const Operator& b) {
  return a.source_ == b.source_ && a.target_ == b.target_ &&
         a.entries_ == b.entries_;
}

std::vector<double> singular_values(const Operator& a) {
  if (a.rows() == 0 || a.cols() == 0) return {};
  Eigen::JacobiSVD<EMatrix> svd(to_eigen(a));
  std::vector<double> out(svd.singularValues().data(),
                          svd.singularValues().data() +
                              svd.singularValues().size());
  return out;
}

double op_norm(const Operator& a) {
  std::vector<double> sv = singular_values(a);
  return sv.empty() ? 0.0 : sv.front();
}

Operator adjoint(const Operator& a) {
  Operator out = Operator::zero(a.target(), a.source());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) out.at(c, r) = std::conj(a.at(r, c));
  return out;
}

Biproduct biproduct(const HilbertSpace& h, const HilbertSpace& k) {
  Biproduct out;
  out.space = HilbertSpace(h.dim + k.dim);
  out.inj1 = Operator::zero(h, out.space);
  out.inj2 = Operator::zero(k, out.space);
  out.proj1 = Operator::zero(out.space, h);
  out.proj2 = Operator::zero(out.space, k);
  for (int i = 0; i < h.dim; ++i) {
    out.inj1.at(i, i) = cd(1.0, 0.0);
    out.proj1.at(i, i) = cd(1.0, 0.0);
  }
  for (int i = 0; i < k.dim; ++i) {
    out.inj2.at(h.dim + i, i) = cd(1.0, 0.0);
    out.proj2.at(i, h.dim + i) = cd(1.0, 0.0);
  }
  return out;
}

Operator kernel_of(const Operator& a, double tol) {
  if (tol <= 0.0) throw InvariantViolation("kernel tolerance must be positive");
  const int n = a.cols();
  if (n == 0) return Operator::zero(HilbertSpace(0), HilbertSpace(0));
  if (a.rows() == 0) return Operator::identity(a.source());
  Eigen::JacobiSVD<EMatrix> svd(to_eigen(a), Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() > 0 ? sv(0) : 0.0;
  if (smax == 0.0) return Operator::identity(a.source());
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * smax) ++rank;
  const int null_dim = n - rank;
  Operator out = Operator::zero(HilbertSpace(null_dim), a.source());
  for (int c = 0; c < null_dim; ++c)
    for (int r = 0; r < n; ++r) out.at(r, c) = svd.matrixV()(r, rank + c);
  return out;
}

HilbertSpace tensor(const HilbertSpace& h, const HilbertSpace& k) {
  return HilbertSpace(h.dim * k.dim);
}

Operator tensor_op(const Operator& a, const Operator& b) {
  HilbertSpace src = tensor(a.source(), b.source());
  HilbertSpace tgt = tensor(a.target(), b.target());
  Operator out = Operator::zero(src, tgt);
  for (int ar = 0; ar < a.rows(); ++ar)
    for (int br = 0; br < b.rows(); ++br)
      for (int ac = 0; ac < a.cols(); ++ac)
        for (int bc = 0; bc < b.cols(); ++bc)
          out.at(ar * b.rows() + br, ac * b.cols() + bc) =
              a.at(ar, ac) * b.at(br, bc);
  return out;
}

namespace {

// Shared core: orthonormalize in order, producing a zero vector wherever
// the residual after projecting out earlier outputs is <= tol.
std::vector<Vector> orthonormalize(const std::vector<Vector>& vs, double tol) {
  if (tol <= 0.0)
    throw InvariantViolation("orthonormalization tolerance must be positive");
  std::vector<Vector> out;
  out.reserve(vs.size());
  for (const Vector& v : vs) {
    if (!vs.empty() && v.dim() != vs.front().dim())
      throw SpaceMismatch("vectors live in different spaces");
    Vector r = v;
    for (const Vector& u : out) {
      if (u.is_zero()) continue;
      r = r - inner(u, r) * u;
    }
    double n = r.norm();
    if (n <= tol)
      out.push_back(Vector::zero(v.dim()));
    else
      out.push_back(cd(1.0 / n, 0.0) * r);
  }
  return out;
}

}  // namespace

std::vector<Vector> gram_schmidt(const std::vector<Vector>& vs, double tol) {
  std::vector<Vector> kept;
  for (const Vector& v : orthonormalize(vs, tol))
    if (!v.is_zero()) kept.push_back(v);
  return kept;
}

std::vector<Vector> gram_schmidt_keep_zeros(const std::vector<Vector>& vs,
                                            double tol) {
  return orthonormalize(vs, tol);
}

Operator orthonormal_complement(const Operator& m) {
  const int d = m.rows();
  const int r = m.cols();
  if (r == 0) return Operator::identity(m.target());
  if (d == 0) return Operator::zero(HilbertSpace(0), HilbertSpace(0));
  Eigen::JacobiSVD<EMatrix> svd(to_eigen(m), Eigen::ComputeFullU);
  Operator out = Operator::zero(HilbertSpace(d - r), m.target());
  for (int c = 0; c < d - r; ++c)
    for (int row = 0; row < d; ++row) out.at(row, c) = svd.matrixU()(row, r + c);
  return out;
}

double max_abs_diff(const Operator& a, const Operator& b) {
  if (a.source() != b.source() || a.target() != b.target())
    throw SpaceMismatch("residual of operators with different shapes");
  double m = 0.0;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      m = std::max(m, std::abs(a.at(r, c) - b.at(r, c)));
  return m;
}

double max_abs(const Operator& a) {
  double m = 0.0;
  for (const cd& e : a.entries()) m = std::max(m, std::abs(e));
  return m;
}

}  // namespace measfield
