#ifndef MEASFIELD_BOREL_HPP
#define MEASFIELD_BOREL_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "measfield/errors.hpp"

namespace measfield {

/// A finite point set carrying its full power set as the measurable sets.
/// The point order is fixed at construction and is the canonical index
/// order for every weight vector and fiber list built on the space.
class BorelSpace {
 public:
  BorelSpace() = default;
  explicit BorelSpace(std::vector<std::string> points);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<std::string>& points() const { return points_; }
  const std::string& label(std::size_t i) const { return points_.at(i); }

  /// Index of a label; throws UnknownName if absent.
  std::size_t index_of(const std::string& label) const;
  bool contains(const std::string& label) const;

  friend bool operator==(const BorelSpace& a, const BorelSpace& b) {
    return a.points_ == b.points_;
  }
  friend bool operator!=(const BorelSpace& a, const BorelSpace& b) {
    return !(a == b);
  }

 private:
  std::vector<std::string> points_;
};

/// A subset of a space's points.
class MeasurableSet {
 public:
  MeasurableSet() = default;
  MeasurableSet(BorelSpace space, std::vector<bool> members);

  static MeasurableSet whole(const BorelSpace& space);
  static MeasurableSet empty_set(const BorelSpace& space);
  static MeasurableSet of_labels(const BorelSpace& space,
                                 const std::vector<std::string>& labels);

  const BorelSpace& space() const { return space_; }
  bool contains(std::size_t i) const { return members_.at(i); }
  bool contains_label(const std::string& label) const;
  std::size_t count() const;
  std::vector<std::string> labels() const;

  MeasurableSet complement() const;
  MeasurableSet intersect(const MeasurableSet& other) const;
  MeasurableSet unite(const MeasurableSet& other) const;

  friend bool operator==(const MeasurableSet& a, const MeasurableSet& b) {
    return a.space_ == b.space_ && a.members_ == b.members_;
  }
  friend bool operator!=(const MeasurableSet& a, const MeasurableSet& b) {
    return !(a == b);
  }

 private:
  BorelSpace space_;
  std::vector<bool> members_;
};

/// A total map between finite spaces, stored as target indices per source
/// point.  Every map between power-set spaces is measurable.
class MeasurableMap {
 public:
  MeasurableMap() = default;
  MeasurableMap(BorelSpace source, BorelSpace target,
                std::vector<std::size_t> assignment);

  static MeasurableMap identity(const BorelSpace& space);
  static MeasurableMap from_labels(const BorelSpace& source,
                                   const BorelSpace& target,
                                   const std::vector<std::string>& images);
  static MeasurableMap constant(const BorelSpace& source,
                                const BorelSpace& target,
                                const std::string& value);

  const BorelSpace& source() const { return source_; }
  const BorelSpace& target() const { return target_; }
  std::size_t apply(std::size_t i) const { return assignment_.at(i); }
  const std::string& apply_label(const std::string& label) const;
  const std::vector<std::size_t>& assignment() const { return assignment_; }

  MeasurableSet preimage(const MeasurableSet& set) const;

  friend bool operator==(const MeasurableMap& a, const MeasurableMap& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ &&
           a.assignment_ == b.assignment_;
  }
  friend bool operator!=(const MeasurableMap& a, const MeasurableMap& b) {
    return !(a == b);
  }

 private:
  BorelSpace source_;
  BorelSpace target_;
  std::vector<std::size_t> assignment_;
};

MeasurableMap compose(const MeasurableMap& second, const MeasurableMap& first);

/// Builds a space from labels.  Throws DuplicatePoint on repeats.
BorelSpace make_space(const std::vector<std::string>& labels);

/// Cartesian product with pair labels "(x,y)" in X-major order.
BorelSpace product(const BorelSpace& x, const BorelSpace& y);

/// Position of (i, j) in product(x, y), X-major.
std::size_t pair_index(const BorelSpace& x, const BorelSpace& y,
                       std::size_t i, std::size_t j);
std::string pair_label(const std::string& x, const std::string& y);

/// First and second projection maps of a product.
MeasurableMap proj1(const BorelSpace& x, const BorelSpace& y);
MeasurableMap proj2(const BorelSpace& x, const BorelSpace& y);

/// Returns the inverse map iff f is a bijection.
std::optional<MeasurableMap> is_invertible(const MeasurableMap& f);

/// The subset {p | f(p) = g(p)} of the common source.
MeasurableSet equalizer(const MeasurableMap& f, const MeasurableMap& g);

}  // namespace measfield

#endif  // MEASFIELD_BOREL_HPP
