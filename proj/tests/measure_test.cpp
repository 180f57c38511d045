#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "measfield/generators.hpp"
#include "measfield/measure.hpp"

using namespace measfield;

namespace {

Weight q(long num, long den = 1) { return Weight::from_fraction(num, den); }

Measure m(const BorelSpace& s, std::vector<long> ws) {
  std::vector<Weight> weights;
  for (long w : ws) weights.push_back(q(w));
  return Measure(s, std::move(weights));
}

}  // namespace

TEST_CASE("total_mass") {
  BorelSpace s = make_space({"a", "b"});
  Measure mu = m(s, {2, 6});
  // summation oracle
  Weight sum;
  for (const Weight& w : mu.weights()) sum = sum + w;
  CHECK(total_mass(mu) == sum);
  CHECK(total_mass(mu) == q(8));
  CHECK(total_mass(Measure::zero(s)) == Weight());
  CHECK(total_mass(Measure(s, {q(1, 4), q(3, 4)})) == q(1));
}

TEST_CASE("pushforward") {
  BorelSpace s = make_space({"a", "b"});
  Measure mu = m(s, {2, 6});
  CHECK(pushforward(mu, MeasurableMap::identity(s)) == mu);

  BorelSpace pt = make_space({"u"});
  Measure image = pushforward(mu, MeasurableMap::constant(s, pt, "u"));
  CHECK(image.at(0) == total_mass(mu));

  MeasurableMap swap = MeasurableMap::from_labels(s, s, {"b", "a"});
  Measure swapped = pushforward(mu, swap);
  // permutation oracle: weight lands where the point goes
  for (std::size_t i = 0; i < s.size(); ++i)
    CHECK(swapped.at(swap.apply(i)) == mu.at(i));
  CHECK(swapped == m(s, {6, 2}));

  CHECK_THROWS_AS(pushforward(mu, MeasurableMap::identity(pt)), SpaceMismatch);
}

TEST_CASE("absolutely_continuous") {
  BorelSpace s = make_space({"a", "b"});
  Measure mu = m(s, {1, 0});
  CHECK(absolutely_continuous(mu, mu));
  CHECK_FALSE(absolutely_continuous(m(s, {1, 0}), m(s, {0, 1})));
  CHECK(absolutely_continuous(m(s, {0, 3}), m(s, {0, 1})));
}

TEST_CASE("radon_nikodym") {
  BorelSpace s = make_space({"a", "b"});

  RNFunction same = radon_nikodym(m(s, {2, 0}), m(s, {2, 0}));
  CHECK(same.at(0) == q(1));
  CHECK(same.at(1) == Weight());  // off the support

  // pointwise division oracle
  Measure mu = m(s, {2, 6}), nu = m(s, {1, 2});
  RNFunction d = radon_nikodym(mu, nu);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (nu.at(i).positive()) CHECK(d.at(i) == mu.at(i) / nu.at(i));
  CHECK(d.at(0) == q(2));
  CHECK(d.at(1) == q(3));

  RNFunction d2 = radon_nikodym(m(s, {0, 6}), nu);
  CHECK(d2.at(0) == Weight());
  CHECK(d2.at(1) == q(3));

  CHECK_THROWS_AS(radon_nikodym(m(s, {1, 1}), m(s, {0, 1})),
                  NotAbsolutelyContinuous);
}

TEST_CASE("lebesgue_decompose") {
  BorelSpace s2 = make_space({"a", "b"});
  Measure mu2 = m(s2, {3, 5});
  auto [ac0, sing0] = lebesgue_decompose(mu2, m(s2, {1, 1}));
  CHECK(ac0 == mu2);
  CHECK(sing0.is_zero());

  BorelSpace s = make_space({"a", "b", "c"});
  auto [ac, sing] = lebesgue_decompose(m(s, {1, 2, 3}), m(s, {0, 5, 0}));
  CHECK(ac == m(s, {0, 2, 0}));
  CHECK(sing == m(s, {1, 0, 3}));

  auto [zac, zsing] = lebesgue_decompose(Measure::zero(s), m(s, {0, 5, 0}));
  CHECK(zac.is_zero());
  CHECK(zsing.is_zero());
}

TEST_CASE("normalize_to_probability") {
  BorelSpace s = make_space({"a", "b"});
  auto [prob, d] = normalize_to_probability(m(s, {2, 6}));
  CHECK(prob == Measure(s, {q(1, 4), q(3, 4)}));
  CHECK(d.at(0) == q(8));
  CHECK(d.at(1) == q(8));

  Measure already(s, {q(1, 4), q(3, 4)});
  auto [prob2, d2] = normalize_to_probability(already);
  CHECK(prob2 == already);
  CHECK(d2.at(0) == q(1));

  CHECK_THROWS_AS(normalize_to_probability(Measure::zero(s)), ZeroMeasure);
}

TEST_CASE("normalize_fibered") {
  BorelSpace x = make_space({"a", "b"});
  BorelSpace y = make_space({"u", "v"});

  FiberedMeasure already = FiberedMeasure::kernel(
      x, y, {{q(1, 4), q(3, 4)}, {q(1), Weight()}});
  NormalizedFibered out = normalize_fibered(already);
  CHECK(out.kernel == already);
  CHECK(out.zero_fibers == MeasurableSet::empty_set(y));

  FiberedMeasure k =
      FiberedMeasure::kernel(x, y, {{q(2), q(6)}, {Weight(), Weight()}});
  NormalizedFibered n = normalize_fibered(k);
  CHECK(n.kernel.kernel_weight(0, 0) == q(1, 4));
  CHECK(n.kernel.kernel_weight(1, 0) == q(3, 4));
  CHECK(n.kernel.fiber(1).is_zero());
  CHECK(n.zero_fibers == MeasurableSet::of_labels(y, {"v"}));
  // each normalized fiber keeps its support
  CHECK(n.kernel.fiber(0).support() == k.fiber(0).support());
}

TEST_CASE("compose_base") {
  BorelSpace x = make_space({"x1", "x2"});
  BorelSpace y = make_space({"y1", "y2"});
  BorelSpace z = make_space({"z1"});

  SUBCASE("point-mass fiber picks out one middle measure") {
    FiberedMeasure mu =
        FiberedMeasure::kernel(x, y, {{q(1), q(5)}, {q(2), q(7)}});
    FiberedMeasure delta =
        FiberedMeasure::kernel(y, z, {{Weight(), q(1)}});  // mass at y2
    FiberedMeasure lam = compose_base(mu, delta);
    CHECK(lam.kernel_weight(0, 0) == mu.kernel_weight(0, 1));
    CHECK(lam.kernel_weight(1, 0) == mu.kernel_weight(1, 1));
  }

  SUBCASE("worked sum-product") {
    // mu_y1(x1)=1, mu_y2(x1)=2, nu_z1=(3,1): lambda_z1(x1) = 1*3 + 2*1 = 5
    FiberedMeasure mu =
        FiberedMeasure::kernel(x, y, {{q(1), Weight()}, {q(2), Weight()}});
    FiberedMeasure nu = FiberedMeasure::kernel(y, z, {{q(3), q(1)}});
    FiberedMeasure lam = compose_base(mu, nu);
    Weight expected;  // sum-product oracle
    for (std::size_t j = 0; j < y.size(); ++j)
      expected = expected + mu.kernel_weight(0, j) * nu.kernel_weight(j, 0);
    CHECK(lam.kernel_weight(0, 0) == expected);
    CHECK(lam.kernel_weight(0, 0) == q(5));
  }

  SUBCASE("zero kernel composes to zero") {
    FiberedMeasure mu = FiberedMeasure::kernel(
        x, y, {{Weight(), Weight()}, {Weight(), Weight()}});
    FiberedMeasure nu = FiberedMeasure::kernel(y, z, {{q(3), q(1)}});
    FiberedMeasure lam = compose_base(mu, nu);
    CHECK(lam.fiber(0).is_zero());
  }
}

TEST_CASE("disintegrate") {
  BorelSpace t = make_space({"t1", "t2"});
  BorelSpace b = make_space({"b"});
  Measure mass = m(t, {1, 3});
  MeasurableMap p = MeasurableMap::constant(t, b, "b");
  Measure lambda = pushforward(mass, p);

  FiberedMeasure kappa = disintegrate(mass, p, lambda);
  CHECK(kappa.fiber(0).at(0) == q(1, 4));
  CHECK(kappa.fiber(0).at(1) == q(3, 4));
  // mixture identity
  for (std::size_t i = 0; i < t.size(); ++i) {
    Weight sum;
    for (std::size_t y = 0; y < b.size(); ++y)
      sum = sum + lambda.at(y) * kappa.fiber(y).at(i);
    CHECK(sum == mass.at(i));
  }

  FiberedMeasure zero = disintegrate(Measure::zero(t), p, lambda);
  for (const Measure& f : zero.family()) CHECK(f.is_zero());

  BorelSpace b2 = make_space({"b1", "b2"});
  MeasurableMap p2 = MeasurableMap::from_labels(t, b2, {"b1", "b2"});
  Measure bad(b2, {Weight(), q(1)});
  CHECK_THROWS_WITH_AS(disintegrate(m(t, {2, 0}), p2, bad),
                       doctest::Contains("b1"), MaharamViolation);
}

TEST_CASE("kappa_from_composition") {
  BorelSpace x = make_space({"x1", "x2"});
  BorelSpace y = make_space({"y1", "y2"});
  BorelSpace z = make_space({"z1"});
  FiberedMeasure mu =
      FiberedMeasure::kernel(x, y, {{q(1), Weight()}, {q(2), Weight()}});
  FiberedMeasure nu = FiberedMeasure::kernel(y, z, {{q(3), q(1)}});
  FiberedMeasure lam = compose_base(mu, nu);

  ConditionalFamily kappa = kappa_from_composition(mu, nu, lam);
  CHECK(kappa.at(0, 0).at(0) == q(3, 5));
  CHECK(kappa.at(0, 0).at(1) == q(2, 5));

  // the conditional times the composite reproduces the joint weight
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      CHECK(lam.kernel_weight(i, 0) * kappa.at(i, 0).at(j) ==
            mu.kernel_weight(i, j) * nu.kernel_weight(j, 0));

  SUBCASE("delta middle kernel gives delta conditionals") {
    FiberedMeasure delta =
        FiberedMeasure::kernel(y, z, {{Weight(), q(1)}});
    FiberedMeasure lam2 = compose_base(mu, delta);
    ConditionalFamily k2 = kappa_from_composition(mu, delta, lam2);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (lam2.kernel_weight(i, 0).positive()) {
        CHECK(k2.at(i, 0).at(0) == Weight());
        CHECK(k2.at(i, 0).at(1) == q(1));
      }
  }

  SUBCASE("zero composite weight gives the zero conditional") {
    FiberedMeasure mu0 = FiberedMeasure::kernel(
        x, y, {{Weight(), Weight()}, {Weight(), Weight()}});
    FiberedMeasure lam0 = compose_base(mu0, nu);
    ConditionalFamily k0 = kappa_from_composition(mu0, nu, lam0);
    CHECK(k0.at(0, 0).is_zero());
  }

  CHECK_THROWS_AS(kappa_from_composition(mu, nu, mu), BaseMismatch);
}

TEST_CASE("density chain rule on random rational triples") {
  Rng rng(11);
  for (int n = 0; n < 40; ++n) {
    BorelSpace s = rng.space(1, 6, "x");
    Measure rho = rng.measure(s);
    std::vector<Weight> wn(s.size()), wm(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
      wn[i] = rho.at(i) * rng.rational();
    Measure nu(s, wn);
    for (std::size_t i = 0; i < s.size(); ++i)
      wm[i] = nu.at(i) * rng.rational();
    Measure mu(s, wm);
    RNFunction a = radon_nikodym(mu, nu);
    RNFunction b = radon_nikodym(nu, rho);
    RNFunction c = radon_nikodym(mu, rho);
    for (std::size_t i = 0; i < s.size(); ++i)
      if (rho.at(i).positive()) CHECK(a.at(i) * b.at(i) == c.at(i));
  }
}

TEST_CASE("reconstruction over every subset is exact") {
  Rng rng(12);
  for (int n = 0; n < 20; ++n) {
    BorelSpace s = rng.space(1, 6, "x");
    Measure nu = rng.measure(s);
    std::vector<Weight> wm(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
      wm[i] = nu.at(i) * rng.rational();
    Measure mu(s, wm);
    RNFunction d = radon_nikodym(mu, nu);
    for (std::size_t mask = 0; mask < (std::size_t{1} << s.size()); ++mask) {
      std::vector<bool> members(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) members[i] = (mask >> i) & 1;
      MeasurableSet a(s, members);
      Weight sum;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (a.contains(i)) sum = sum + d.at(i) * nu.at(i);
      CHECK(sum == mu.of(a));
    }
  }
}

TEST_CASE("re-mixing a disintegration returns the measure") {
  Rng rng(13);
  for (int n = 0; n < 60; ++n) {
    BorelSpace t = rng.space(1, 5, "t");
    BorelSpace b = rng.space(1, 4, "b");
    Measure mass = rng.measure(t);
    MeasurableMap p = rng.map(t, b);
    Measure lambda = pushforward(mass, p);
    FiberedMeasure kappa = disintegrate(mass, p, lambda);
    for (std::size_t i = 0; i < t.size(); ++i) {
      Weight sum;
      for (std::size_t y = 0; y < b.size(); ++y)
        sum = sum + lambda.at(y) * kappa.fiber(y).at(i);
      CHECK(sum == mass.at(i));
    }
  }
}

TEST_CASE("kernel composition is associative") {
  Rng rng(14);
  for (int n = 0; n < 30; ++n) {
    BorelSpace x = rng.space(1, 3, "x");
    BorelSpace y = rng.space(1, 3, "y");
    BorelSpace z = rng.space(1, 3, "z");
    BorelSpace w = rng.space(1, 3, "w");
    FiberedMeasure mu = rng.kernel(x, y);
    FiberedMeasure nu = rng.kernel(y, z);
    FiberedMeasure rho = rng.kernel(z, w);
    CHECK(compose_base(compose_base(mu, nu), rho) ==
          compose_base(mu, compose_base(nu, rho)));
  }
}

TEST_CASE("fibered measure validates concentration") {
  BorelSpace t = make_space({"t1", "t2"});
  BorelSpace b = make_space({"b1", "b2"});
  MeasurableMap p = MeasurableMap::from_labels(t, b, {"b1", "b2"});
  // fiber over b1 charges t2, which projects to b2
  std::vector<Measure> family{m(t, {0, 1}), Measure::zero(t)};
  CHECK_THROWS_AS(FiberedMeasure(p, family), InvariantViolation);
}
