#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "measfield/borel.hpp"
#include "measfield/generators.hpp"

using namespace measfield;

TEST_CASE("make_space") {
  CHECK(make_space({"a", "b"}).size() == 2);
  CHECK(make_space({}).empty());
  CHECK_THROWS_AS(make_space({"a", "a"}), DuplicatePoint);
}

TEST_CASE("product cardinality and order") {
  BorelSpace x = make_space({"a", "b"});
  BorelSpace y = make_space({"u", "v", "w"});
  CHECK(product(x, y).size() == 6);
  CHECK(product(make_space({}), y).empty());

  BorelSpace xy = product(x, make_space({"u"}));
  CHECK(xy.points() == std::vector<std::string>{"(a,u)", "(b,u)"});
}

TEST_CASE("is_invertible") {
  BorelSpace ab = make_space({"a", "b"});
  BorelSpace u = make_space({"u"});

  auto id = is_invertible(MeasurableMap::identity(ab));
  REQUIRE(id.has_value());
  CHECK(*id == MeasurableMap::identity(ab));

  CHECK_FALSE(is_invertible(MeasurableMap::constant(ab, u, "u")).has_value());

  // swap composed with itself is the identity, point by point
  MeasurableMap swap = MeasurableMap::from_labels(ab, ab, {"b", "a"});
  auto inv = is_invertible(swap);
  REQUIRE(inv.has_value());
  MeasurableMap both = compose(*inv, swap);
  for (std::size_t i = 0; i < ab.size(); ++i) CHECK(both.apply(i) == i);
}

TEST_CASE("equalizer") {
  BorelSpace y = make_space({"1", "2", "3"});
  BorelSpace x = make_space({"a", "b"});
  MeasurableMap f = MeasurableMap::from_labels(y, x, {"a", "b", "a"});
  MeasurableMap g = MeasurableMap::from_labels(y, x, {"a", "a", "a"});

  CHECK(equalizer(f, f) == MeasurableSet::whole(y));

  // pointwise enumeration oracle
  std::vector<bool> expected(y.size());
  for (std::size_t i = 0; i < y.size(); ++i)
    expected[i] = f.apply(i) == g.apply(i);
  CHECK(equalizer(f, g) == MeasurableSet(y, expected));
  CHECK(equalizer(f, g) == MeasurableSet::of_labels(y, {"1", "3"}));

  // maps with disjoint images
  MeasurableMap ca = MeasurableMap::constant(y, x, "a");
  MeasurableMap cb = MeasurableMap::constant(y, x, "b");
  CHECK(equalizer(ca, cb) == MeasurableSet::empty_set(y));

  BorelSpace z = make_space({"z"});
  CHECK_THROWS_AS(equalizer(f, MeasurableMap::constant(y, z, "z")),
                  SpaceMismatch);
}

TEST_CASE("equalizer of a map with itself is the whole source") {
  Rng rng(7);
  for (int n = 0; n < 50; ++n) {
    BorelSpace y = rng.space(1, 5, "y");
    BorelSpace x = rng.space(1, 5, "x");
    MeasurableMap f = rng.map(y, x);
    CHECK(equalizer(f, f) == MeasurableSet::whole(y));
  }
}

TEST_CASE("product is associative up to the canonical relabelling") {
  Rng rng(8);
  for (int n = 0; n < 20; ++n) {
    BorelSpace x = rng.space(0, 3, "x");
    BorelSpace y = rng.space(0, 3, "y");
    BorelSpace z = rng.space(0, 3, "z");
    BorelSpace left = product(product(x, y), z);
    BorelSpace right = product(x, product(y, z));
    REQUIRE(left.size() == right.size());
    std::vector<std::size_t> ids(left.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
    auto inv = is_invertible(MeasurableMap(left, right, ids));
    CHECK(inv.has_value());
  }
}

TEST_CASE("product ordering is deterministic") {
  Rng rng(9);
  BorelSpace x = rng.space(1, 4, "x");
  BorelSpace y = rng.space(1, 4, "y");
  CHECK(product(x, y).points() == product(x, y).points());
}
