#ifndef MEASFIELD_TEST_ORACLES_HPP
#define MEASFIELD_TEST_ORACLES_HPP

// Independent oracles for the test suites.  Everything here recomputes
// expected values by brute force, without going through the library code
// paths under test.

#include <cmath>
#include <complex>
#include <vector>

#include "measfield/hilb.hpp"

namespace oracle {

using measfield::cd;
using measfield::Operator;
using measfield::Vector;

// Largest singular value by power iteration on A*A; independent of the
// SVD the library uses.
inline double power_norm(const Operator& a, int iters = 400) {
  const int n = a.cols();
  if (n == 0 || a.rows() == 0) return 0.0;
  std::vector<cd> v(n, cd(1.0, 0.0));
  double lambda = 0.0;
  for (int it = 0; it < iters; ++it) {
    // w = A* (A v)
    std::vector<cd> av(a.rows(), cd(0.0, 0.0));
    for (int r = 0; r < a.rows(); ++r)
      for (int c = 0; c < n; ++c) av[r] += a.at(r, c) * v[c];
    std::vector<cd> w(n, cd(0.0, 0.0));
    for (int c = 0; c < n; ++c)
      for (int r = 0; r < a.rows(); ++r)
        w[c] += std::conj(a.at(r, c)) * av[r];
    double norm = 0.0;
    for (const cd& x : w) norm += std::norm(x);
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    lambda = norm;
    for (cd& x : w) x /= norm;
    v = std::move(w);
  }
  return std::sqrt(lambda);
}

// Plain triple-loop product, written independently of Operator::operator*.
inline Operator multiply(const Operator& a, const Operator& b) {
  Operator out = Operator::zero(b.source(), a.target());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c) {
      cd sum(0.0, 0.0);
      for (int k = 0; k < a.cols(); ++k) sum += a.at(r, k) * b.at(k, c);
      out.at(r, c) = sum;
    }
  return out;
}

}  // namespace oracle

#endif  // MEASFIELD_TEST_ORACLES_HPP
