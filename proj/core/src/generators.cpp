#include "measfield/generators.hpp"

namespace measfield {

int Rng::uniform_int(int lo, int hi) {
  return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
}

double Rng::uniform(double lo, double hi) {
  double unit = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  return lo + unit * (hi - lo);
}

bool Rng::chance(double p) { return uniform(0.0, 1.0) < p; }

Weight Rng::rational(double zero_share) {
  if (chance(zero_share)) return Weight();
  return positive_rational();
}

Weight Rng::positive_rational() {
  return Weight::from_fraction(uniform_int(1, 9), uniform_int(1, 9));
}

cd Rng::complex_entry() { return cd(uniform(-1.0, 1.0), uniform(-1.0, 1.0)); }

BorelSpace Rng::space(int min_points, int max_points,
                      const std::string& prefix) {
  int n = uniform_int(min_points, max_points);
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < n; ++i)
    labels.push_back(prefix + std::to_string(i + 1));
  return BorelSpace(std::move(labels));
}

Measure Rng::measure(const BorelSpace& s, double zero_share) {
  std::vector<Weight> weights(s.size());
  for (auto& w : weights) w = rational(zero_share);
  return Measure(s, std::move(weights));
}

Measure Rng::positive_measure(const BorelSpace& s) {
  std::vector<Weight> weights(s.size());
  for (auto& w : weights) w = positive_rational();
  return Measure(s, std::move(weights));
}

MeasurableMap Rng::map(const BorelSpace& src, const BorelSpace& tgt) {
  std::vector<std::size_t> assignment(src.size());
  for (auto& a : assignment)
    a = static_cast<std::size_t>(uniform_int(0, static_cast<int>(tgt.size()) - 1));
  return MeasurableMap(src, tgt, std::move(assignment));
}

HField Rng::field(const BorelSpace& s, int max_dim, bool allow_zero) {
  std::vector<int> dims(s.size());
  for (auto& d : dims) d = uniform_int(allow_zero ? 0 : 1, max_dim);
  return HField(s, std::move(dims));
}

Section Rng::section(const HField& h) {
  std::vector<Vector> values;
  values.reserve(h.points());
  for (std::size_t i = 0; i < h.points(); ++i) {
    std::vector<cd> coords(h.dim(i));
    for (auto& c : coords) c = complex_entry();
    values.emplace_back(std::move(coords));
  }
  return Section(h, std::move(values), /*exact=*/false);
}

Operator Rng::matrix(const HilbertSpace& src, const HilbertSpace& tgt) {
  std::vector<cd> entries(static_cast<std::size_t>(src.dim) * tgt.dim);
  for (auto& e : entries) e = complex_entry();
  return Operator(src, tgt, std::move(entries));
}

OperatorField Rng::op_field(const HField& src, const HField& tgt) {
  if (src.space() != tgt.space())
    throw SpaceMismatch("operator field endpoints on different spaces");
  std::vector<Operator> ops;
  ops.reserve(src.points());
  for (std::size_t i = 0; i < src.points(); ++i)
    ops.push_back(matrix(src.fiber(i), tgt.fiber(i)));
  return OperatorField(src, tgt, std::move(ops), /*exact=*/false);
}

FiberedMeasure Rng::kernel(const BorelSpace& left, const BorelSpace& base,
                           double zero_share) {
  std::vector<std::vector<Weight>> rows(base.size(),
                                        std::vector<Weight>(left.size()));
  for (auto& row : rows)
    for (auto& w : row) w = rational(zero_share);
  return FiberedMeasure::kernel(left, base, rows);
}

MeasurableFunctor Rng::functor(const BorelSpace& src, const BorelSpace& tgt,
                               int max_dim) {
  HField k = field(product(src, tgt), max_dim, /*allow_zero=*/false);
  return MeasurableFunctor(src, tgt, k, kernel(src, tgt));
}

}  // namespace measfield
