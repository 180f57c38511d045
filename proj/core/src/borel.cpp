#include "measfield/borel.hpp"

#include <algorithm>
#include <unordered_set>

namespace measfield {

BorelSpace::BorelSpace(std::vector<std::string> points)
    : points_(std::move(points)) {
  std::unordered_set<std::string> seen;
  for (const auto& p : points_) {
    if (!seen.insert(p).second)
      throw DuplicatePoint("label '" + p + "' appears twice");
  }
}

std::size_t BorelSpace::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (points_[i] == label) return i;
  throw UnknownName("no point '" + label + "' in space");
}

bool BorelSpace::contains(const std::string& label) const {
  return std::find(points_.begin(), points_.end(), label) != points_.end();
}

MeasurableSet::MeasurableSet(BorelSpace space, std::vector<bool> members)
    : space_(std::move(space)), members_(std::move(members)) {
  if (members_.size() != space_.size())
    throw InvariantViolation("member mask does not match space size");
}

MeasurableSet MeasurableSet::whole(const BorelSpace& space) {
  return MeasurableSet(space, std::vector<bool>(space.size(), true));
}

MeasurableSet MeasurableSet::empty_set(const BorelSpace& space) {
  return MeasurableSet(space, std::vector<bool>(space.size(), false));
}

MeasurableSet MeasurableSet::of_labels(const BorelSpace& space,
                                       const std::vector<std::string>& labels) {
  std::vector<bool> mask(space.size(), false);
  for (const auto& l : labels) mask[space.index_of(l)] = true;
  return MeasurableSet(space, std::move(mask));
}

bool MeasurableSet::contains_label(const std::string& label) const {
  return members_.at(space_.index_of(label));
}

std::size_t MeasurableSet::count() const {
  return static_cast<std::size_t>(
      std::count(members_.begin(), members_.end(), true));
}

std::vector<std::string> MeasurableSet::labels() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (members_[i]) out.push_back(space_.label(i));
  return out;
}

MeasurableSet MeasurableSet::complement() const {
  std::vector<bool> mask(members_.size());
  for (std::size_t i = 0; i < members_.size(); ++i) mask[i] = !members_[i];
  return MeasurableSet(space_, std::move(mask));
}

MeasurableSet MeasurableSet::intersect(const MeasurableSet& other) const {
  if (space_ != other.space_)
    throw SpaceMismatch("intersect over different spaces");
  std::vector<bool> mask(members_.size());
  for (std::size_t i = 0; i < members_.size(); ++i)
    mask[i] = members_[i] && other.members_[i];
  return MeasurableSet(space_, std::move(mask));
}

MeasurableSet MeasurableSet::unite(const MeasurableSet& other) const {
  if (space_ != other.space_)
    throw SpaceMismatch("union over different spaces");
  std::vector<bool> mask(members_.size());
  for (std::size_t i = 0; i < members_.size(); ++i)
    mask[i] = members_[i] || other.members_[i];
  return MeasurableSet(space_, std::move(mask));
}

MeasurableMap::MeasurableMap(BorelSpace source, BorelSpace target,
                             std::vector<std::size_t> assignment)
    : source_(std::move(source)),
      target_(std::move(target)),
      assignment_(std::move(assignment)) {
  if (assignment_.size() != source_.size())
    throw InvariantViolation("assignment not total on source");
  for (std::size_t v : assignment_)
    if (v >= target_.size())
      throw InvariantViolation("assignment leaves the target space");
}

MeasurableMap MeasurableMap::identity(const BorelSpace& space) {
  std::vector<std::size_t> ids(space.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
  return MeasurableMap(space, space, std::move(ids));
}

MeasurableMap MeasurableMap::from_labels(
    const BorelSpace& source, const BorelSpace& target,
    const std::vector<std::string>& images) {
  if (images.size() != source.size())
    throw InvariantViolation("image list not total on source");
  std::vector<std::size_t> assignment(images.size());
  for (std::size_t i = 0; i < images.size(); ++i)
    assignment[i] = target.index_of(images[i]);
  return MeasurableMap(source, target, std::move(assignment));
}

MeasurableMap MeasurableMap::constant(const BorelSpace& source,
                                      const BorelSpace& target,
                                      const std::string& value) {
  std::vector<std::size_t> assignment(source.size(), target.index_of(value));
  return MeasurableMap(source, target, std::move(assignment));
}

const std::string& MeasurableMap::apply_label(const std::string& label) const {
  return target_.label(assignment_.at(source_.index_of(label)));
}

MeasurableSet MeasurableMap::preimage(const MeasurableSet& set) const {
  if (set.space() != target_)
    throw SpaceMismatch("preimage of a set on the wrong space");
  std::vector<bool> mask(source_.size());
  for (std::size_t i = 0; i < source_.size(); ++i)
    mask[i] = set.contains(assignment_[i]);
  return MeasurableSet(source_, std::move(mask));
}

MeasurableMap compose(const MeasurableMap& second, const MeasurableMap& first) {
  if (first.target() != second.source())
    throw SpaceMismatch("map composition shapes do not match");
  std::vector<std::size_t> assignment(first.source().size());
  for (std::size_t i = 0; i < assignment.size(); ++i)
    assignment[i] = second.apply(first.apply(i));
  return MeasurableMap(first.source(), second.target(), std::move(assignment));
}

BorelSpace make_space(const std::vector<std::string>& labels) {
  return BorelSpace(labels);
}

std::string pair_label(const std::string& x, const std::string& y) {
  return "(" + x + "," + y + ")";
}

BorelSpace product(const BorelSpace& x, const BorelSpace& y) {
  std::vector<std::string> labels;
  labels.reserve(x.size() * y.size());
  for (const auto& a : x.points())
    for (const auto& b : y.points()) labels.push_back(pair_label(a, b));
  return BorelSpace(std::move(labels));
}

std::size_t pair_index(const BorelSpace& x, const BorelSpace& y, std::size_t i,
                       std::size_t j) {
  if (i >= x.size() || j >= y.size())
    throw InvariantViolation("pair index out of range");
  return i * y.size() + j;
}

MeasurableMap proj1(const BorelSpace& x, const BorelSpace& y) {
  std::vector<std::size_t> assignment(x.size() * y.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      assignment[i * y.size() + j] = i;
  return MeasurableMap(product(x, y), x, std::move(assignment));
}

MeasurableMap proj2(const BorelSpace& x, const BorelSpace& y) {
  std::vector<std::size_t> assignment(x.size() * y.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      assignment[i * y.size() + j] = j;
  return MeasurableMap(product(x, y), y, std::move(assignment));
}

std::optional<MeasurableMap> is_invertible(const MeasurableMap& f) {
  if (f.source().size() != f.target().size()) return std::nullopt;
  std::vector<std::size_t> inverse(f.target().size(), SIZE_MAX);
  for (std::size_t i = 0; i < f.source().size(); ++i) {
    std::size_t v = f.apply(i);
    if (inverse[v] != SIZE_MAX) return std::nullopt;
    inverse[v] = i;
  }
  return MeasurableMap(f.target(), f.source(), std::move(inverse));
}

MeasurableSet equalizer(const MeasurableMap& f, const MeasurableMap& g) {
  if (f.source() != g.source() || f.target() != g.target())
    throw SpaceMismatch("equalizer of maps with different shapes");
  std::vector<bool> mask(f.source().size());
  for (std::size_t i = 0; i < mask.size(); ++i)
    mask[i] = f.apply(i) == g.apply(i);
  return MeasurableSet(f.source(), std::move(mask));
}

}  // namespace measfield
