#include "measfield/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "measfield/generators.hpp"

namespace measfield {

namespace {

constexpr std::uint64_t kSeed = 0x5eedULL;

struct LawRun {
  bool pass = true;
  double residual = 0.0;

  void exact(bool ok) {
    if (!ok) {
      pass = false;
      residual = std::max(residual, 1.0);
    }
  }
  void within(double r, double tol) {
    residual = std::max(residual, r);
    if (!(r <= tol)) pass = false;
  }
};

LawResult finish(const std::string& id, const std::string& anchor,
                 const LawRun& run, double tol) {
  return {id, anchor, run.pass, run.residual, tol};
}

double unitarity_residual(const Operator& u) {
  double r = max_abs_diff(adjoint(u) * u, Operator::identity(u.source()));
  return std::max(r,
                  max_abs_diff(u * adjoint(u), Operator::identity(u.target())));
}

double unitarity_residual(const OperatorField& u) {
  double r = 0.0;
  for (const Operator& op : u.ops())
    r = std::max(r, unitarity_residual(op));
  return r;
}

// ---------------------------------------------------------------- borel

CheckReport suite_borel(const Workspace&, double) {
  CheckReport report{"borel", {}};
  Rng rng(kSeed);

  LawRun eq;
  for (int n = 0; n < 25; ++n) {
    BorelSpace y = rng.space(1, 4, "y");
    BorelSpace x = rng.space(1, 4, "x");
    MeasurableMap f = rng.map(y, x);
    eq.exact(equalizer(f, f) == MeasurableSet::whole(y));
  }
  report.laws.push_back(finish("BOREL-EQ-SELF", "equalizer-of-equal-maps",
                               eq, 0.0));

  LawRun assoc;
  for (int n = 0; n < 10; ++n) {
    BorelSpace x = rng.space(0, 3, "x");
    BorelSpace y = rng.space(0, 3, "y");
    BorelSpace z = rng.space(0, 3, "z");
    BorelSpace left = product(product(x, y), z);
    BorelSpace right = product(x, product(y, z));
    assoc.exact(left.size() == right.size());
    // the canonical relabelling is position-preserving in this convention
    std::vector<std::size_t> ids(left.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
    MeasurableMap relabel(left, right, ids);
    auto inverse = is_invertible(relabel);
    assoc.exact(inverse.has_value());
    if (inverse) {
      assoc.exact(compose(*inverse, relabel) == MeasurableMap::identity(left));
      assoc.exact(compose(relabel, *inverse) == MeasurableMap::identity(right));
    }
  }
  report.laws.push_back(finish("BOREL-PROD-ASSOC", "product-associativity",
                               assoc, 0.0));

  LawRun det;
  for (int n = 0; n < 10; ++n) {
    BorelSpace x = rng.space(0, 4, "x");
    BorelSpace y = rng.space(0, 4, "y");
    det.exact(product(x, y) == product(x, y));
  }
  report.laws.push_back(finish("BOREL-PROD-DET", "product-determinism",
                               det, 0.0));
  return report;
}

// -------------------------------------------------------------- measure

// mu built as a pointwise multiple of nu, so mu << nu by construction
Measure dominated_by(Rng& rng, const Measure& nu) {
  std::vector<Weight> w(nu.size());
  for (std::size_t i = 0; i < nu.size(); ++i)
    w[i] = nu.at(i) * rng.rational(0.3);
  return Measure(nu.space(), std::move(w));
}

CheckReport suite_measure(const Workspace& ws, double) {
  CheckReport report{"measure", {}};
  Rng rng(kSeed + 1);

  LawRun recon;
  auto check_reconstruction = [&](const Measure& mu, const Measure& nu) {
    RNFunction d = radon_nikodym(mu, nu);
    const BorelSpace& s = mu.space();
    for (std::size_t mask = 0; mask < (std::size_t{1} << s.size()); ++mask) {
      std::vector<bool> members(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) members[i] = (mask >> i) & 1;
      MeasurableSet a(s, members);
      Weight sum;
      for (std::size_t i = 0; i < s.size(); ++i)
        if (a.contains(i)) sum = sum + d.at(i) * nu.at(i);
      recon.exact(sum == mu.of(a));
    }
  };
  for (int n = 0; n < 20; ++n) {
    BorelSpace s = rng.space(1, 6, "x");
    Measure nu = rng.measure(s);
    check_reconstruction(dominated_by(rng, nu), nu);
  }
  for (const auto& [name_a, ea] : ws.measures)
    for (const auto& [name_b, eb] : ws.measures)
      if (ea.measure.space() == eb.measure.space() &&
          ea.measure.exact() && eb.measure.exact() &&
          absolutely_continuous(ea.measure, eb.measure))
        check_reconstruction(ea.measure, eb.measure);
  report.laws.push_back(finish("MEAS-RN-RECONSTRUCT",
                               "density-reconstruction", recon, 0.0));

  LawRun chain;
  for (int n = 0; n < 20; ++n) {
    BorelSpace s = rng.space(1, 6, "x");
    Measure rho = rng.measure(s);
    Measure nu = dominated_by(rng, rho);
    Measure mu = dominated_by(rng, nu);
    RNFunction dmn = radon_nikodym(mu, nu);
    RNFunction dnr = radon_nikodym(nu, rho);
    RNFunction dmr = radon_nikodym(mu, rho);
    for (std::size_t i = 0; i < s.size(); ++i)
      if (rho.at(i).positive())
        chain.exact(dmn.at(i) * dnr.at(i) == dmr.at(i));
  }
  report.laws.push_back(finish("MEAS-RN-CHAIN", "density-chain-rule",
                               chain, 0.0));

  LawRun leb;
  for (int n = 0; n < 25; ++n) {
    BorelSpace s = rng.space(1, 6, "x");
    Measure mu = rng.measure(s);
    Measure nu = rng.measure(s);
    auto [ac, sing] = lebesgue_decompose(mu, nu);
    for (std::size_t i = 0; i < s.size(); ++i)
      leb.exact(ac.at(i) + sing.at(i) == mu.at(i));
    leb.exact(absolutely_continuous(ac, nu));
    leb.exact(sing.support().intersect(nu.support()) ==
              MeasurableSet::empty_set(s));
  }
  report.laws.push_back(finish("MEAS-LEBESGUE", "lebesgue-decomposition",
                               leb, 0.0));

  LawRun mix;
  for (int n = 0; n < 25; ++n) {
    BorelSpace t = rng.space(1, 5, "t");
    BorelSpace b = rng.space(1, 3, "b");
    Measure m = rng.measure(t);
    MeasurableMap p = rng.map(t, b);
    Measure lambda = pushforward(m, p);
    FiberedMeasure kappa = disintegrate(m, p, lambda);
    for (std::size_t i = 0; i < t.size(); ++i) {
      Weight sum;
      for (std::size_t y = 0; y < b.size(); ++y)
        sum = sum + lambda.at(y) * kappa.fiber(y).at(i);
      mix.exact(sum == m.at(i));
    }
  }
  {
    // the precondition must be enforced, naming the offending point
    BorelSpace t = make_space({"t1", "t2"});
    BorelSpace b = make_space({"b1", "b2"});
    Measure m(t, {Weight::from_int(2), Weight::from_int(1)});
    MeasurableMap p = MeasurableMap::from_labels(t, b, {"b1", "b2"});
    Measure bad(b, {Weight(), Weight::from_int(1)});
    bool threw = false;
    try {
      disintegrate(m, p, bad);
    } catch (const MaharamViolation& e) {
      threw = std::string(e.what()).find("b1") != std::string::npos;
    }
    mix.exact(threw);
  }
  report.laws.push_back(finish("MEAS-MIXTURE", "disintegration-mixture",
                               mix, 0.0));

  LawRun assoc;
  for (int n = 0; n < 20; ++n) {
    BorelSpace x = rng.space(1, 3, "x");
    BorelSpace y = rng.space(1, 3, "y");
    BorelSpace z = rng.space(1, 3, "z");
    BorelSpace w = rng.space(1, 3, "w");
    FiberedMeasure mu = rng.kernel(x, y);
    FiberedMeasure nu = rng.kernel(y, z);
    FiberedMeasure rho = rng.kernel(z, w);
    assoc.exact(compose_base(compose_base(mu, nu), rho) ==
                compose_base(mu, compose_base(nu, rho)));
  }
  report.laws.push_back(finish("MEAS-KERNEL-ASSOC",
                               "kernel-composition-associativity", assoc,
                               0.0));

  // Fiberwise integration of a function against a kernel yields a total,
  // finite function on the base.  Over a power-set space that is the whole
  // measurability-preservation statement; the law cannot fail but is still
  // run and reported.
  LawRun vac;
  for (int n = 0; n < 10; ++n) {
    BorelSpace x = rng.space(1, 4, "x");
    BorelSpace y = rng.space(1, 3, "y");
    FiberedMeasure k = rng.kernel(x, y);
    std::vector<double> f(k.total().size());
    for (auto& v : f) v = rng.uniform(-10.0, 10.0);
    for (std::size_t j = 0; j < y.size(); ++j) {
      double integral = 0.0;
      for (std::size_t t = 0; t < k.total().size(); ++t)
        integral += f[t] * k.fiber(j).at(t).to_double();
      vac.exact(std::isfinite(integral));
    }
  }
  report.laws.push_back(finish("MEAS-FIBER-INTEGRAL",
                               "fiberwise-integral-totality", vac, 0.0));
  return report;
}

// ----------------------------------------------------------------- hilb

CheckReport suite_hilb(const Workspace&, double tol) {
  CheckReport report{"hilb", {}};
  Rng rng(kSeed + 2);

  LawRun biprod;
  for (int n = 0; n < 30; ++n) {
    HilbertSpace h(rng.uniform_int(0, 3)), k(rng.uniform_int(0, 3));
    Biproduct b = biproduct(h, k);
    biprod.exact(b.proj1 * b.inj1 == Operator::identity(h));
    biprod.exact(b.proj2 * b.inj2 == Operator::identity(k));
    biprod.exact(b.proj1 * b.inj2 == Operator::zero(k, h));
    biprod.exact(b.proj2 * b.inj1 == Operator::zero(h, k));
    biprod.exact(b.inj1 * b.proj1 + b.inj2 * b.proj2 ==
                 Operator::identity(b.space));
  }
  report.laws.push_back(finish("HILB-BIPROD", "biproduct-equations",
                               biprod, 0.0));

  LawRun cstar;
  for (int n = 0; n < 50; ++n) {
    HilbertSpace h(rng.uniform_int(1, 4)), k(rng.uniform_int(1, 4));
    Operator a = rng.matrix(h, k);
    double na = op_norm(a);
    if (na == 0.0) continue;
    double r = std::abs(op_norm(adjoint(a) * a) - na * na) / (na * na);
    cstar.within(r, tol);
  }
  report.laws.push_back(finish("HILB-CSTAR", "cstar-identity", cstar, tol));

  LawRun submult;
  for (int n = 0; n < 50; ++n) {
    HilbertSpace h(rng.uniform_int(1, 4)), k(rng.uniform_int(1, 4)),
        l(rng.uniform_int(1, 4));
    Operator b = rng.matrix(h, k);
    Operator a = rng.matrix(k, l);
    double excess = op_norm(a * b) - op_norm(a) * op_norm(b);
    submult.within(std::max(excess, 0.0), tol);
  }
  report.laws.push_back(finish("HILB-SUBMULT", "norm-submultiplicativity",
                               submult, tol));

  LawRun kern;
  for (int n = 0; n < 30; ++n) {
    HilbertSpace src(rng.uniform_int(1, 4)), tgt(rng.uniform_int(1, 4));
    std::vector<cd> entries(static_cast<std::size_t>(src.dim) * tgt.dim);
    for (auto& e : entries)
      e = cd(rng.uniform_int(-2, 2), 0.0);  // integer entries, exact ranks
    Operator a(src, tgt, std::move(entries));
    Operator inc = kernel_of(a, 1e-9);
    kern.within(max_abs_diff(adjoint(inc) * inc,
                             Operator::identity(inc.source())),
                1e-12);
    std::vector<double> sv = singular_values(a);
    double smax = sv.empty() ? 0.0 : sv.front();
    int rank = 0;
    for (double s : sv)
      if (s > 1e-9 * smax) ++rank;
    kern.exact(rank + inc.cols() == src.dim);
    if (smax > 0.0) kern.within(op_norm(a * inc) / smax, 1e-9);
  }
  report.laws.push_back(finish("HILB-KERNEL", "kernel-inclusion-isometry",
                               kern, 1e-12));
  return report;
}

// ---------------------------------------------------------------- field

CheckReport suite_field(const Workspace&, double tol) {
  CheckReport report{"field", {}};
  Rng rng(kSeed + 3);

  LawRun restr;
  for (int n = 0; n < 25; ++n) {
    BorelSpace s = rng.space(1, 4, "x");
    HField h = rng.field(s, 3);
    Section sec = rng.section(h);
    std::vector<bool> members(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) members[i] = rng.chance(0.5);
    MeasurableSet a(s, members);
    restr.exact(restrict(restrict(sec, a), a.complement()) ==
                Section::zero(h));
    restr.exact(restrict(sec, a) + restrict(sec, a.complement()) == sec);
    restr.exact(restrict(restrict(sec, a), a) == restrict(sec, a));
  }
  report.laws.push_back(finish("FIELD-RESTRICT", "restriction-identities",
                               restr, 0.0));

  LawRun bundle;
  {
    BorelSpace s = rng.space(5, 5, "x");
    for (std::size_t mask = 0; mask < (std::size_t{1} << s.size()); ++mask) {
      std::vector<bool> members(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) members[i] = (mask >> i) & 1;
      MeasurableSet a(s, members);
      HField l = line_bundle_from_set(a);
      bundle.exact(is_partial_line_bundle(l));
      bundle.exact(support(l) == a);
      bundle.exact(line_bundle_from_set(support(l)) == l);
    }
  }
  report.laws.push_back(finish("FIELD-LINEBUNDLE",
                               "line-bundle-support-bijection", bundle, 0.0));

  LawRun cstar;
  for (int n = 0; n < 25; ++n) {
    BorelSpace s = rng.space(1, 3, "x");
    HField h = rng.field(s, 3), k = rng.field(s, 3), l = rng.field(s, 3);
    OperatorField a = rng.op_field(h, k);
    OperatorField b = rng.op_field(k, l);
    double excess = opfield_norm(b * a) - opfield_norm(b) * opfield_norm(a);
    cstar.within(std::max(excess, 0.0), tol);
    double na = opfield_norm(a);
    if (na > 0.0)
      cstar.within(std::abs(opfield_norm(adjoint(a) * a) - na * na) /
                       (na * na),
                   tol);
  }
  report.laws.push_back(finish("FIELD-CSTAR", "field-cstar-laws", cstar, tol));

  LawRun norms;
  for (int n = 0; n < 20; ++n) {
    BorelSpace s = rng.space(1, 4, "x");
    HField h = rng.field(s, 3), k = rng.field(s, 3);
    FieldBiproduct b = field_biproduct(h, k);
    Section sec = rng.section(h);
    Section inj = b.inj1.apply(sec);
    for (std::size_t i = 0; i < s.size(); ++i)
      norms.exact(inj.at(i).norm() == sec.at(i).norm());
    Section both = rng.section(b.field);
    Section projected = b.proj2.apply(both);
    for (std::size_t i = 0; i < s.size(); ++i)
      norms.exact(projected.at(i).norm() <= both.at(i).norm());
  }
  report.laws.push_back(finish("FIELD-BIPROD-NORM",
                               "biproduct-norm-preservation", norms, 0.0));

  LawRun split;
  for (int n = 0; n < 20; ++n) {
    BorelSpace s = rng.space(1, 3, "x");
    HField h = rng.field(s, 3);
    int count = rng.uniform_int(0, 3);
    std::vector<Section> ss;
    for (int i = 0; i < count; ++i) ss.push_back(rng.section(h));
    SpanSplit sp = span_split(h, ss);
    split.within(max_residual(sp.proj_span * sp.proj_span, sp.proj_span),
                 1e-12);
    split.within(max_residual(sp.proj_complement * sp.proj_complement,
                              sp.proj_complement),
                 1e-12);
    split.within(opfield_norm(sp.proj_span * sp.proj_complement), 1e-12);
    split.within(max_residual(sp.proj_span + sp.proj_complement,
                              OperatorField::identity(h)),
                 1e-12);
    split.within(max_residual(adjoint(sp.incl_span) * sp.incl_span,
                              OperatorField::identity(sp.span_field)),
                 1e-12);
  }
  report.laws.push_back(finish("FIELD-SPLIT", "span-split-projections",
                               split, 1e-12));
  return report;
}

// --------------------------------------------------------------- dirint

CheckReport suite_dirint(const Workspace& ws, double tol) {
  CheckReport report{"dirint", {}};
  Rng rng(kSeed + 4);

  LawRun funct;
  for (int n = 0; n < 25; ++n) {
    BorelSpace s = rng.space(1, 4, "x");
    HField h = rng.field(s, 3), k = rng.field(s, 3), l = rng.field(s, 3);
    Measure mu = rng.measure(s);
    OperatorField a = rng.op_field(h, k);
    OperatorField b = rng.op_field(k, l);
    funct.exact(direct_integral_op(b * a, mu) ==
                direct_integral_op(b, mu) * direct_integral_op(a, mu));
    funct.exact(direct_integral_op(OperatorField::identity(h), mu) ==
                Operator::identity(direct_integral_obj(h, mu).standard_space()));
  }
  report.laws.push_back(finish("DI-FUNCTORIAL", "integral-functoriality",
                               funct, 0.0));

  LawRun add;
  for (int n = 0; n < 20; ++n) {
    BorelSpace s = rng.space(1, 4, "x");
    HField h = rng.field(s, 3), k = rng.field(s, 3);
    Measure mu = rng.measure(s);
    FieldBiproduct b = field_biproduct(h, k);
    Operator i1 = direct_integral_op(b.inj1, mu);
    Operator i2 = direct_integral_op(b.inj2, mu);
    Operator p1 = direct_integral_op(b.proj1, mu);
    Operator p2 = direct_integral_op(b.proj2, mu);
    add.exact(p1 * i1 == Operator::identity(i1.source()));
    add.exact(p2 * i2 == Operator::identity(i2.source()));
    add.exact(p1 * i2 == Operator::zero(i2.source(), p1.target()));
    add.exact(p2 * i1 == Operator::zero(i1.source(), p2.target()));
    add.exact(i1 * p1 + i2 * p2 == Operator::identity(i1.target()));
  }
  report.laws.push_back(finish("DI-ADDITIVE", "integral-additivity",
                               add, 0.0));

  LawRun nullset;
  for (int n = 0; n < 20; ++n) {
    BorelSpace s = rng.space(2, 4, "x");
    HField h = rng.field(s, 3, /*allow_zero=*/false);
    HField k = rng.field(s, 3, /*allow_zero=*/false);
    std::vector<Weight> w(s.size());
    for (std::size_t i = 0; i + 1 < s.size(); ++i) w[i] = rng.rational(0.2);
    Measure mu(s, std::move(w));  // last point is null
    OperatorField a = rng.op_field(h, k);
    OperatorField b = a;
    b.at(s.size() - 1) = rng.matrix(h.fiber(s.size() - 1),
                                    k.fiber(s.size() - 1));
    nullset.exact(direct_integral_op(a, mu) == direct_integral_op(b, mu));
  }
  report.laws.push_back(finish("DI-NULLSET", "null-set-insensitivity",
                               nullset, 0.0));

  LawRun bound;
  auto check_bound = [&](const OperatorField& a, const Measure& prob) {
    double excess =
        op_norm(direct_integral_op(a, prob)) - opfield_norm(a);
    bound.within(std::max(excess, 0.0), tol);
  };
  for (int n = 0; n < 60; ++n) {
    BorelSpace s = rng.space(1, 4, "x");
    HField h = rng.field(s, 3), k = rng.field(s, 3);
    Measure prob = normalize_to_probability(rng.positive_measure(s)).probability;
    check_bound(rng.op_field(h, k), prob);
  }
  for (const auto& [mname, me] : ws.measures) {
    if (me.measure.is_zero()) continue;
    Measure prob = normalize_to_probability(me.measure).probability;
    for (const auto& [fname, fe] : ws.op_fields)
      if (fe.op_field.space() == me.measure.space())
        check_bound(fe.op_field, prob);
  }
  report.laws.push_back(finish("DI-BOUND", "probability-norm-bound",
                               bound, tol));

  LawRun coherent;
  for (int n = 0; n < 20; ++n) {
    BorelSpace s = rng.space(1, 4, "x");
    HField h = rng.field(s, 3);
    Measure rho = rng.measure(s);
    Measure nu = dominated_by(rng, rho);
    Measure mu = dominated_by(rng, nu);
    coherent.within(
        max_abs_diff(rn_transform(h, mu, nu) * rn_transform(h, nu, rho),
                     rn_transform(h, mu, rho)),
        1e-12);
    // equivalent pair: same support, different masses
    std::vector<Weight> w(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
      w[i] = nu.at(i).positive() ? nu.at(i) * rng.positive_rational()
                                 : Weight();
    Measure nu2(s, std::move(w));
    Operator fwd = rn_transform(h, nu2, nu);
    Operator bwd = rn_transform(h, nu, nu2);
    coherent.within(
        max_abs_diff(bwd * fwd,
                     Operator::identity(fwd.source())),
        1e-12);
  }
  report.laws.push_back(finish("DI-RN-COHERENT",
                               "density-transform-coherence", coherent,
                               1e-12));

  LawRun tensor;
  LawRun tensor_nat;
  for (int n = 0; n < 20; ++n) {
    BorelSpace s = rng.space(1, 3, "x");
    HField h = rng.field(s, 3);
    HilbertSpace kk(rng.uniform_int(0, 3));
    Measure mu = rng.measure(s);
    Operator u = tensor_distributivity_iso(h, kk, mu);
    tensor.within(unitarity_residual(u), 1e-12);

    HField h2 = rng.field(s, 3);
    HilbertSpace k2(rng.uniform_int(0, 3));
    OperatorField a = rng.op_field(h, h2);
    Operator b = rng.matrix(kk, k2);
    // fiberwise a_x tensor b, as an operator field
    std::vector<Operator> ops;
    for (std::size_t i = 0; i < s.size(); ++i)
      ops.push_back(tensor_op(a.at(i), b));
    OperatorField ab(tensor_field_space(h, kk), tensor_field_space(h2, k2),
                     std::move(ops), false);
    Operator u2 = tensor_distributivity_iso(h2, k2, mu);
    Operator lhs = direct_integral_op(ab, mu) * u;
    Operator rhs = u2 * tensor_op(direct_integral_op(a, mu), b);
    tensor_nat.within(max_abs_diff(lhs, rhs), tol);
  }
  report.laws.push_back(finish("DI-TENSOR", "tensor-distributivity",
                               tensor, 1e-12));
  report.laws.push_back(finish("DI-TENSOR-NAT",
                               "tensor-distributivity-naturality",
                               tensor_nat, tol));

  LawRun fubini;
  for (int n = 0; n < 20; ++n) {
    BorelSpace x = rng.space(1, 3, "x");
    BorelSpace y = rng.space(1, 3, "y");
    Measure mu = rng.measure(x);
    Measure nu = rng.measure(y);
    HField h = rng.field(product(x, y), 2);
    Operator u = fubini_iso(h, mu, nu);
    fubini.within(unitarity_residual(u), 1e-12);
    // matched sections have matching inner products
    Section s1 = rng.section(h);
    Section s2 = rng.section(h);
    WeightedHilbert joint = direct_integral_obj(h, product_measure(mu, nu));
    Vector v1 = embed_section(joint, s1).to_standard();
    Vector v2 = embed_section(joint, s2).to_standard();
    cd direct = inner(v1, v2);
    cd through = inner(u.apply(v1), u.apply(v2));
    fubini.within(std::abs(direct - through), 1e-12);
  }
  report.laws.push_back(finish("DI-FUBINI", "fubini-exchange", fubini,
                               1e-12));
  return report;
}

// -------------------------------------------------------------- functor

CheckReport suite_functor(const Workspace&, double tol) {
  CheckReport report{"functor", {}};
  Rng rng(kSeed + 5);

  LawRun laws;
  for (int n = 0; n < 15; ++n) {
    BorelSpace x = rng.space(1, 2, "x");
    BorelSpace y = rng.space(1, 2, "y");
    MeasurableFunctor f = rng.functor(x, y, 2);
    HField h = rng.field(x, 2), h2 = rng.field(x, 2), h3 = rng.field(x, 2);
    OperatorField a = rng.op_field(h, h2);
    OperatorField b = rng.op_field(h2, h3);
    laws.exact(apply_op(f, b * a) == apply_op(f, b) * apply_op(f, a));
    laws.exact(apply_op(f, OperatorField::identity(h)) ==
               OperatorField::identity(apply_obj(f, h)));
  }
  report.laws.push_back(finish("FUN-LAWS", "functor-laws", laws, 0.0));

  LawRun additive;
  for (int n = 0; n < 10; ++n) {
    BorelSpace x = rng.space(1, 2, "x");
    BorelSpace y = rng.space(1, 2, "y");
    MeasurableFunctor f = rng.functor(x, y, 2);
    HField h = rng.field(x, 2), k = rng.field(x, 2);
    FieldBiproduct b = field_biproduct(h, k);
    OperatorField fi1 = apply_op(f, b.inj1);
    OperatorField fi2 = apply_op(f, b.inj2);
    OperatorField fp1 = apply_op(f, b.proj1);
    OperatorField fp2 = apply_op(f, b.proj2);
    additive.exact(fp1 * fi1 == OperatorField::identity(apply_obj(f, h)));
    additive.exact(fp2 * fi2 == OperatorField::identity(apply_obj(f, k)));
    additive.within(opfield_norm(fp1 * fi2), 1e-12);
    additive.within(opfield_norm(fp2 * fi1), 1e-12);
    additive.within(
        max_residual(fi1 * fp1 + fi2 * fp2,
                     OperatorField::identity(apply_obj(f, b.field))),
        1e-12);
    // comparison unitary assembled from the integrated injections
    FieldBiproduct outer =
        field_biproduct(apply_obj(f, h), apply_obj(f, k));
    OperatorField v = fi1 * outer.proj1 + fi2 * outer.proj2;
    additive.within(unitarity_residual(v), 1e-12);
  }
  report.laws.push_back(finish("FUN-ADDITIVE", "functor-additivity",
                               additive, 1e-12));

  LawRun comp_unitary;
  LawRun comp_intertwine;
  for (int n = 0; n < 10; ++n) {
    BorelSpace x = rng.space(1, 2, "x");
    BorelSpace y = rng.space(1, 2, "y");
    BorelSpace z = rng.space(1, 2, "z");
    MeasurableFunctor f = rng.functor(x, y, 2);
    MeasurableFunctor g = rng.functor(y, z, 2);
    ComposedFunctor c = compose(f, g);
    for (const HField& probe : default_probes(x))
      comp_unitary.within(unitarity_residual(c.comparison_at(probe)), 1e-12);
    HField h = rng.field(x, 2), h2 = rng.field(x, 2);
    OperatorField a = rng.op_field(h, h2);
    OperatorField lhs = c.comparison_at(h2) * apply_op(c.functor(), a);
    OperatorField rhs =
        apply_op(g, apply_op(f, a)) * c.comparison_at(h);
    comp_intertwine.within(max_residual(lhs, rhs), tol);
  }
  report.laws.push_back(finish("FUN-COMPOSE-UNITARY",
                               "composition-comparison", comp_unitary,
                               1e-12));
  report.laws.push_back(finish("FUN-COMPOSE-INTERTWINE",
                               "composition-intertwining", comp_intertwine,
                               tol));

  LawRun assoc;
  for (int n = 0; n < 6; ++n) {
    BorelSpace x = rng.space(1, 2, "x");
    BorelSpace y = rng.space(1, 2, "y");
    BorelSpace z = rng.space(1, 2, "z");
    BorelSpace w = rng.space(1, 2, "w");
    MeasurableFunctor f = rng.functor(x, y, 2);
    MeasurableFunctor g = rng.functor(y, z, 2);
    MeasurableFunctor k = rng.functor(z, w, 2);
    ComposedFunctor fg = compose(f, g);
    ComposedFunctor gk = compose(g, k);
    ComposedFunctor left = compose(fg.functor(), k);
    ComposedFunctor right = compose(f, gk.functor());
    assoc.exact(left.functor().weights() == right.functor().weights());
    assoc.exact(left.functor().kernel().dims() ==
                right.functor().kernel().dims());
    for (const HField& probe : default_probes(x)) {
      // both associations compare against k(g(f(probe)))
      OperatorField u_left =
          apply_op(k, fg.comparison_at(probe)) * left.comparison_at(probe);
      OperatorField u_right = gk.comparison_at(apply_obj(f, probe)) *
                              right.comparison_at(probe);
      OperatorField v = adjoint(u_right) * u_left;
      assoc.within(unitarity_residual(v), 1e-12);
    }
  }
  report.laws.push_back(finish("FUN-ASSOC", "composition-associativity",
                               assoc, 1e-12));

  LawRun eq;
  {
    BorelSpace y = rng.space(2, 2, "y");
    BorelSpace x = rng.space(2, 2, "x");
    std::vector<MeasurableMap> maps;
    for (std::size_t a0 = 0; a0 < x.size(); ++a0)
      for (std::size_t a1 = 0; a1 < x.size(); ++a1)
        maps.push_back(MeasurableMap(y, x, {a0, a1}));
    for (const MeasurableMap& f : maps)
      for (const MeasurableMap& g : maps) {
        MeasurableSet e = equalizer(f, g);
        std::vector<cd> phi(y.size());
        for (std::size_t i = 0; i < y.size(); ++i)
          phi[i] = e.contains(i) ? rng.complex_entry() : cd(0.0, 0.0);
        MeasurableNatTransf t = nat_transf_between_pullbacks(phi, f, g);
        for (const HField& probe : default_probes(x)) {
          OperatorField comp = component(t, probe);
          for (std::size_t i = 0; i < y.size(); ++i)
            if (!e.contains(i)) eq.exact(max_abs(comp.at(i)) == 0.0);
        }
        if (e != MeasurableSet::whole(y)) {
          std::vector<cd> bad(y.size());
          for (std::size_t i = 0; i < y.size(); ++i)
            if (!e.contains(i)) bad[i] = cd(1.0, 0.0);
          bool threw = false;
          try {
            nat_transf_between_pullbacks(bad, f, g);
          } catch (const SupportViolation&) {
            threw = true;
          }
          eq.exact(threw);
        }
      }
  }
  report.laws.push_back(finish("FUN-EQ-SUPPORT", "equalizer-support", eq,
                               0.0));
  return report;
}

// ------------------------------------------------------------ workspace

CheckReport suite_workspace(const Workspace& ws, double) {
  CheckReport report{"workspace", {}};
  LawRun roundtrip;
  std::string once = serialize(ws);
  std::string twice = serialize(load_text(once));
  roundtrip.exact(once == twice);
  report.laws.push_back(finish("WS-ROUNDTRIP", "serialization-round-trip",
                               roundtrip, 0.0));
  return report;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"borel", "measure", "hilb", "field", "dirint", "functor",
          "workspace"};
}

CheckReport run_suite(const std::string& name, const Workspace& ws,
                      double tol) {
  if (name == "borel") return suite_borel(ws, tol);
  if (name == "measure") return suite_measure(ws, tol);
  if (name == "hilb") return suite_hilb(ws, tol);
  if (name == "field") return suite_field(ws, tol);
  if (name == "dirint") return suite_dirint(ws, tol);
  if (name == "functor") return suite_functor(ws, tol);
  if (name == "workspace") return suite_workspace(ws, tol);
  throw UnknownName("no check suite named '" + name + "'");
}

std::string format_reports(const std::vector<CheckReport>& reports) {
  std::ostringstream out;
  for (const CheckReport& r : reports)
    for (const LawResult& law : r.laws)
      out << "LAW " << law.id << " " << law.anchor << " "
          << (law.pass ? "PASS" : "FAIL")
          << " residual=" << format_real(law.residual)
          << " tol=" << format_real(law.tol) << "\n";
  return out.str();
}

bool all_pass(const std::vector<CheckReport>& reports) {
  for (const CheckReport& r : reports)
    for (const LawResult& law : r.laws)
      if (!law.pass) return false;
  return true;
}

}  // namespace measfield
