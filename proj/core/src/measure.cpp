#include "measfield/measure.hpp"

namespace measfield {

Measure::Measure(BorelSpace space, std::vector<Weight> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
  if (weights_.size() != space_.size())
    throw InvariantViolation("one weight per point is required");
  for (const auto& w : weights_)
    if (w.negative())
      throw InvariantViolation("measure weights must be nonnegative");
}

Measure Measure::zero(const BorelSpace& space) {
  return Measure(space, std::vector<Weight>(space.size()));
}

Measure Measure::point_mass(const BorelSpace& space, const std::string& label,
                            const Weight& mass) {
  std::vector<Weight> weights(space.size());
  weights[space.index_of(label)] = mass;
  return Measure(space, std::move(weights));
}

Measure Measure::uniform(const BorelSpace& space, const Weight& mass) {
  return Measure(space, std::vector<Weight>(space.size(), mass));
}

Weight Measure::of(const MeasurableSet& set) const {
  if (set.space() != space_)
    throw SpaceMismatch("set lives on a different space than the measure");
  Weight sum;
  for (std::size_t i = 0; i < weights_.size(); ++i)
    if (set.contains(i)) sum = sum + weights_[i];
  return sum;
}

MeasurableSet Measure::support() const {
  std::vector<bool> mask(weights_.size());
  for (std::size_t i = 0; i < weights_.size(); ++i)
    mask[i] = weights_[i].positive();
  return MeasurableSet(space_, std::move(mask));
}

bool Measure::is_zero() const {
  for (const auto& w : weights_)
    if (!w.is_zero()) return false;
  return true;
}

bool Measure::exact() const {
  for (const auto& w : weights_)
    if (!w.exact()) return false;
  return true;
}

RNFunction::RNFunction(BorelSpace space, std::vector<Weight> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_.size())
    throw InvariantViolation("one density value per point is required");
  for (const auto& v : values_)
    if (v.negative())
      throw InvariantViolation("densities must be nonnegative");
}

FiberedMeasure::FiberedMeasure(MeasurableMap projection,
                               std::vector<Measure> family)
    : projection_(std::move(projection)), family_(std::move(family)) {
  const BorelSpace& total = projection_.source();
  const BorelSpace& base = projection_.target();
  if (family_.size() != base.size())
    throw InvariantViolation("one fiber measure per base point is required");
  for (std::size_t y = 0; y < base.size(); ++y) {
    if (family_[y].space() != total)
      throw SpaceMismatch("fiber measure lives on the wrong space");
    for (std::size_t t = 0; t < total.size(); ++t)
      if (!family_[y].at(t).is_zero() && projection_.apply(t) != y)
        throw InvariantViolation(
            "fiber over '" + base.label(y) + "' puts mass at '" +
            total.label(t) + "' outside its preimage");
  }
}

FiberedMeasure FiberedMeasure::kernel(
    const BorelSpace& left, const BorelSpace& base,
    const std::vector<std::vector<Weight>>& rows) {
  if (rows.size() != base.size())
    throw InvariantViolation("one weight row per base point is required");
  BorelSpace total = product(left, base);
  std::vector<Measure> family;
  family.reserve(base.size());
  for (std::size_t b = 0; b < base.size(); ++b) {
    if (rows[b].size() != left.size())
      throw InvariantViolation("kernel row width does not match left space");
    std::vector<Weight> weights(total.size());
    for (std::size_t l = 0; l < left.size(); ++l)
      weights[pair_index(left, base, l, b)] = rows[b][l];
    family.emplace_back(total, std::move(weights));
  }
  FiberedMeasure out(proj2(left, base), std::move(family));
  out.kernel_left_ = left;
  return out;
}

FiberedMeasure FiberedMeasure::kernel_from_family(const BorelSpace& left,
                                                  const BorelSpace& base,
                                                  std::vector<Measure> family) {
  FiberedMeasure out(proj2(left, base), std::move(family));
  out.kernel_left_ = left;
  return out;
}

const BorelSpace& FiberedMeasure::kernel_left() const {
  if (!kernel_left_)
    throw InvariantViolation("fibered measure is not in product-kernel shape");
  return *kernel_left_;
}

const Weight& FiberedMeasure::kernel_weight(std::size_t left_index,
                                            std::size_t base_index) const {
  const BorelSpace& left = kernel_left();
  return family_.at(base_index)
      .at(pair_index(left, base(), left_index, base_index));
}

bool FiberedMeasure::exact() const {
  for (const auto& m : family_)
    if (!m.exact()) return false;
  return true;
}

Weight total_mass(const Measure& mu) {
  Weight sum;
  for (const auto& w : mu.weights()) sum = sum + w;
  return sum;
}

Measure pushforward(const Measure& mu, const MeasurableMap& f) {
  if (f.source() != mu.space())
    throw SpaceMismatch("pushforward along a map with the wrong source");
  std::vector<Weight> weights(f.target().size());
  for (std::size_t i = 0; i < mu.size(); ++i)
    weights[f.apply(i)] = weights[f.apply(i)] + mu.at(i);
  return Measure(f.target(), std::move(weights));
}

bool absolutely_continuous(const Measure& mu, const Measure& nu) {
  if (mu.space() != nu.space())
    throw SpaceMismatch("absolute continuity needs a common space");
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (nu.at(i).is_zero() && !mu.at(i).is_zero()) return false;
  return true;
}

RNFunction radon_nikodym(const Measure& mu, const Measure& nu) {
  if (mu.space() != nu.space())
    throw SpaceMismatch("density needs a common space");
  if (!absolutely_continuous(mu, nu))
    throw NotAbsolutelyContinuous("numerator charges a null set");
  std::vector<Weight> values(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (nu.at(i).positive()) values[i] = mu.at(i) / nu.at(i);
  return RNFunction(mu.space(), std::move(values));
}

std::pair<Measure, Measure> lebesgue_decompose(const Measure& mu,
                                               const Measure& nu) {
  if (mu.space() != nu.space())
    throw SpaceMismatch("decomposition needs a common space");
  std::vector<Weight> ac(mu.size()), sing(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (nu.at(i).positive())
      ac[i] = mu.at(i);
    else
      sing[i] = mu.at(i);
  }
  return {Measure(mu.space(), std::move(ac)),
          Measure(mu.space(), std::move(sing))};
}

NormalizedMeasure normalize_to_probability(const Measure& mu) {
  Weight mass = total_mass(mu);
  if (!mass.positive()) throw ZeroMeasure("cannot normalize the zero measure");
  std::vector<Weight> weights(mu.size()), derivative(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    weights[i] = mu.at(i) / mass;
    if (weights[i].positive()) derivative[i] = mass;
  }
  return {Measure(mu.space(), std::move(weights)),
          RNFunction(mu.space(), std::move(derivative))};
}

NormalizedFibered normalize_fibered(const FiberedMeasure& k) {
  std::vector<Measure> family;
  family.reserve(k.family().size());
  std::vector<bool> zero_mask(k.base().size(), false);
  for (std::size_t y = 0; y < k.base().size(); ++y) {
    const Measure& fiber = k.fiber(y);
    if (fiber.is_zero()) {
      zero_mask[y] = true;
      family.push_back(fiber);
    } else {
      family.push_back(normalize_to_probability(fiber).probability);
    }
  }
  FiberedMeasure normalized =
      k.is_kernel()
          ? FiberedMeasure::kernel_from_family(k.kernel_left(), k.base(),
                                               std::move(family))
          : FiberedMeasure(k.projection(), std::move(family));
  return {std::move(normalized),
          MeasurableSet(k.base(), std::move(zero_mask))};
}

FiberedMeasure compose_base(const FiberedMeasure& mu,
                            const FiberedMeasure& nu) {
  if (!mu.is_kernel() || !nu.is_kernel())
    throw SpaceMismatch("kernel composition needs product-kernel shapes");
  const BorelSpace& left = mu.kernel_left();   // X
  const BorelSpace& mid = mu.base();           // Y
  if (nu.kernel_left() != mid)
    throw SpaceMismatch("middle spaces of the kernels do not match");
  const BorelSpace& base = nu.base();          // Z
  std::vector<std::vector<Weight>> rows(base.size(),
                                        std::vector<Weight>(left.size()));
  for (std::size_t z = 0; z < base.size(); ++z)
    for (std::size_t x = 0; x < left.size(); ++x) {
      Weight sum;
      for (std::size_t y = 0; y < mid.size(); ++y)
        sum = sum + mu.kernel_weight(x, y) * nu.kernel_weight(y, z);
      rows[z][x] = sum;
    }
  return FiberedMeasure::kernel(left, base, rows);
}

FiberedMeasure disintegrate(const Measure& m, const MeasurableMap& p,
                            const Measure& lambda) {
  if (p.source() != m.space())
    throw SpaceMismatch("projection source differs from the measure's space");
  if (p.target() != lambda.space())
    throw SpaceMismatch("base measure lives on the wrong space");
  const BorelSpace& base = lambda.space();
  for (std::size_t y = 0; y < base.size(); ++y) {
    if (!lambda.at(y).is_zero()) continue;
    for (std::size_t t = 0; t < m.size(); ++t)
      if (p.apply(t) == y && !m.at(t).is_zero())
        throw MaharamViolation("base point '" + base.label(y) +
                               "' is null but its fiber carries mass");
  }
  std::vector<Measure> family;
  family.reserve(base.size());
  for (std::size_t y = 0; y < base.size(); ++y) {
    std::vector<Weight> weights(m.size());
    if (lambda.at(y).positive())
      for (std::size_t t = 0; t < m.size(); ++t)
        if (p.apply(t) == y) weights[t] = m.at(t) / lambda.at(y);
    family.emplace_back(m.space(), std::move(weights));
  }
  return FiberedMeasure(p, std::move(family));
}

ConditionalFamily kappa_from_composition(const FiberedMeasure& mu,
                                         const FiberedMeasure& nu,
                                         const FiberedMeasure& lambda) {
  FiberedMeasure expected = compose_base(mu, nu);
  if (lambda != expected)
    throw BaseMismatch("lambda is not the composition of the two kernels");
  const BorelSpace& left = mu.kernel_left();
  const BorelSpace& mid = mu.base();
  const BorelSpace& base = nu.base();
  ConditionalFamily out;
  out.left = left;
  out.base = base;
  out.fiber_space = mid;
  out.measures.reserve(left.size() * base.size());
  for (std::size_t x = 0; x < left.size(); ++x)
    for (std::size_t z = 0; z < base.size(); ++z) {
      std::vector<Weight> weights(mid.size());
      const Weight& lam = lambda.kernel_weight(x, z);
      if (lam.positive())
        for (std::size_t y = 0; y < mid.size(); ++y)
          weights[y] = mu.kernel_weight(x, y) * nu.kernel_weight(y, z) / lam;
      out.measures.emplace_back(mid, std::move(weights));
    }
  return out;
}

Measure product_measure(const Measure& mu, const Measure& nu) {
  BorelSpace joint = product(mu.space(), nu.space());
  std::vector<Weight> weights(joint.size());
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = 0; j < nu.size(); ++j)
      weights[pair_index(mu.space(), nu.space(), i, j)] = mu.at(i) * nu.at(j);
  return Measure(std::move(joint), std::move(weights));
}

FiberedMeasure graph_kernel(const FiberedMeasure& k) {
  const BorelSpace& left = k.total();
  const BorelSpace& base = k.base();
  std::vector<std::vector<Weight>> rows(base.size(),
                                        std::vector<Weight>(left.size()));
  for (std::size_t y = 0; y < base.size(); ++y)
    for (std::size_t x = 0; x < left.size(); ++x)
      rows[y][x] = k.fiber(y).at(x);
  return FiberedMeasure::kernel(left, base, rows);
}

}  // namespace measfield
