#ifndef MEASFIELD_GENERATORS_HPP
#define MEASFIELD_GENERATORS_HPP

#include <cstdint>
#include <random>

#include "measfield/functor.hpp"

namespace measfield {

/// Deterministic instance generator for property checks.  Same seed, same
/// instances, on every platform we target (mt19937_64 plus hand-rolled
/// draws; no std::uniform_real_distribution, whose output is
/// implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  int uniform_int(int lo, int hi);  // inclusive bounds
  double uniform(double lo, double hi);
  bool chance(double p);

  /// A nonnegative rational with small numerator and denominator; zero
  /// with probability about zero_share.
  Weight rational(double zero_share = 0.3);
  Weight positive_rational();

  cd complex_entry();  // real and imaginary parts in [-1, 1]

  BorelSpace space(int min_points, int max_points,
                   const std::string& prefix = "p");
  Measure measure(const BorelSpace& s, double zero_share = 0.3);
  Measure positive_measure(const BorelSpace& s);
  MeasurableMap map(const BorelSpace& src, const BorelSpace& tgt);
  HField field(const BorelSpace& s, int max_dim, bool allow_zero = true);
  Section section(const HField& h);
  Operator matrix(const HilbertSpace& src, const HilbertSpace& tgt);
  OperatorField op_field(const HField& src, const HField& tgt);
  FiberedMeasure kernel(const BorelSpace& left, const BorelSpace& base,
                        double zero_share = 0.3);
  MeasurableFunctor functor(const BorelSpace& src, const BorelSpace& tgt,
                            int max_dim);

 private:
  std::mt19937_64 eng_;
};

}  // namespace measfield

#endif  // MEASFIELD_GENERATORS_HPP
