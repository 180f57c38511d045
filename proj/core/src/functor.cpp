#include "measfield/functor.hpp"

#include <cmath>

namespace measfield {

namespace {

/// The field on source x target with fiber H_x tensor K_(x,y).
HField argument_tensor_field(const MeasurableFunctor& f, const HField& h) {
  const BorelSpace& x = f.source_space();
  const BorelSpace& y = f.target_space();
  std::vector<int> dims(x.size() * y.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      dims[pair_index(x, y, i, j)] = h.dim(i) * f.kernel_dim(i, j);
  return HField(f.kernel().space(), std::move(dims));
}

HField total_line_bundle_on_product(const BorelSpace& x, const BorelSpace& y) {
  return HField::constant(product(x, y), 1);
}

}  // namespace

MeasurableFunctor::MeasurableFunctor(BorelSpace source, BorelSpace target,
                                     HField kernel, FiberedMeasure weights)
    : source_(std::move(source)),
      target_(std::move(target)),
      kernel_(std::move(kernel)),
      weights_(std::move(weights)) {
  if (kernel_.space() != product(source_, target_))
    throw SpaceMismatch("kernel does not live on source x target");
  if (!weights_.is_kernel() || weights_.kernel_left() != source_ ||
      weights_.base() != target_)
    throw SpaceMismatch("weights are not fibered over the target space");
}

bool same_presentation(const MeasurableFunctor& f,
                       const MeasurableFunctor& g) {
  return f.source_space() == g.source_space() &&
         f.target_space() == g.target_space() && f.kernel() == g.kernel() &&
         f.weights() == g.weights();
}

HField apply_obj(const MeasurableFunctor& f, const HField& h) {
  if (h.space() != f.source_space())
    throw SpaceMismatch("object lives on the wrong space");
  return fibered_direct_integral(argument_tensor_field(f, h), f.weights());
}

std::vector<WeightedHilbert> apply_obj_blocks(const MeasurableFunctor& f,
                                              const HField& h) {
  if (h.space() != f.source_space())
    throw SpaceMismatch("object lives on the wrong space");
  return fibered_blocks(argument_tensor_field(f, h), f.weights());
}

OperatorField apply_op(const MeasurableFunctor& f, const OperatorField& a) {
  if (a.space() != f.source_space())
    throw SpaceMismatch("arrow lives on the wrong space");
  std::vector<WeightedHilbert> src = apply_obj_blocks(f, a.source());
  std::vector<WeightedHilbert> tgt = apply_obj_blocks(f, a.target());
  HField src_field = apply_obj(f, a.source());
  HField tgt_field = apply_obj(f, a.target());
  const BorelSpace& y = f.target_space();
  std::vector<Operator> ops;
  ops.reserve(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) {
    Operator op = Operator::zero(src_field.fiber(j), tgt_field.fiber(j));
    for (std::size_t b = 0; b < src[j].block_count(); ++b) {
      const auto& sb = src[j].block(b);
      const auto& tb = tgt[j].block(b);
      std::size_t i = sb.point / y.size();  // point is (i, j) in the product
      Operator block =
          tensor_op(a.at(i), Operator::identity(HilbertSpace(
                                 f.kernel_dim(i, j))));
      for (int r = 0; r < tb.dim; ++r)
        for (int c = 0; c < sb.dim; ++c)
          op.at(tb.offset + r, sb.offset + c) = block.at(r, c);
    }
    ops.push_back(std::move(op));
  }
  return OperatorField(src_field, tgt_field, std::move(ops), a.exact());
}

MeasurableFunctor identity_functor(const BorelSpace& x) {
  std::vector<std::vector<Weight>> rows(x.size(),
                                        std::vector<Weight>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i)
    rows[i][i] = Weight::from_int(1);
  return MeasurableFunctor(x, x, total_line_bundle_on_product(x, x),
                           FiberedMeasure::kernel(x, x, rows));
}

MeasurableFunctor pullback_functor(const MeasurableMap& f) {
  const BorelSpace& y = f.source();
  const BorelSpace& x = f.target();
  std::vector<std::vector<Weight>> rows(y.size(),
                                        std::vector<Weight>(x.size()));
  for (std::size_t j = 0; j < y.size(); ++j)
    rows[j][f.apply(j)] = Weight::from_int(1);
  return MeasurableFunctor(x, y, total_line_bundle_on_product(x, y),
                           FiberedMeasure::kernel(x, y, rows));
}

MeasurableFunctor fibered_integral_functor(const MeasurableMap& phi,
                                           const FiberedMeasure& k) {
  if (k.projection() != phi)
    throw SpaceMismatch("kernel is not fibered along the given map");
  const BorelSpace& x = phi.source();
  const BorelSpace& y = phi.target();
  return MeasurableFunctor(x, y, total_line_bundle_on_product(x, y),
                           graph_kernel(k));
}

ComposedFunctor::ComposedFunctor(MeasurableFunctor first,
                                 MeasurableFunctor second,
                                 MeasurableFunctor composite,
                                 ConditionalFamily kappa)
    : first_(std::move(first)),
      second_(std::move(second)),
      composite_(std::move(composite)),
      kappa_(std::move(kappa)) {}

std::vector<HField> default_probes(const BorelSpace& x) {
  std::vector<HField> probes;
  if (x.size() <= 6) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << x.size()); ++mask) {
      std::vector<int> dims(x.size());
      for (std::size_t i = 0; i < x.size(); ++i)
        dims[i] = (mask >> i) & 1 ? 1 : 0;
      probes.emplace_back(x, std::move(dims));
    }
  } else {
    probes.push_back(HField::constant(x, 1));
  }
  std::vector<int> mixed(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    mixed[i] = static_cast<int>(i % 3);
  probes.emplace_back(x, std::move(mixed));
  return probes;
}

ComposedFunctor compose(const MeasurableFunctor& f,
                        const MeasurableFunctor& g) {
  if (f.target_space() != g.source_space())
    throw SpaceMismatch("functors are not composable");
  const BorelSpace& x = f.source_space();
  const BorelSpace& y = f.target_space();
  const BorelSpace& z = g.target_space();

  FiberedMeasure lambda = compose_base(f.weights(), g.weights());
  ConditionalFamily kappa =
      kappa_from_composition(f.weights(), g.weights(), lambda);

  std::vector<int> dims(x.size() * z.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = 0; k < z.size(); ++k) {
      int d = 0;
      const Measure& cond = kappa.at(i, k);
      for (std::size_t j = 0; j < y.size(); ++j)
        if (cond.at(j).positive())
          d += f.kernel_dim(i, j) * g.kernel_dim(j, k);
      dims[pair_index(x, z, i, k)] = d;
    }
  MeasurableFunctor composite(x, z, HField(product(x, z), std::move(dims)),
                              lambda);
  return ComposedFunctor(f, g, std::move(composite), std::move(kappa));
}

OperatorField ComposedFunctor::comparison_at(const HField& probe) const {
  const MeasurableFunctor& f = first_;
  const MeasurableFunctor& g = second_;
  const BorelSpace& x = f.source_space();
  const BorelSpace& y = f.target_space();
  const BorelSpace& z = g.target_space();

  HField h1 = apply_obj(f, probe);           // on Y
  HField one_step = apply_obj(composite_, probe);   // on Z
  HField two_step = apply_obj(g, h1);               // on Z

  // Offset of the y-block inside the composite kernel fiber at (x, z).
  auto kernel_offset = [&](std::size_t i, std::size_t k, std::size_t j) {
    int off = 0;
    const Measure& cond = kappa_.at(i, k);
    for (std::size_t jj = 0; jj < j; ++jj)
      if (cond.at(jj).positive())
        off += f.kernel_dim(i, jj) * g.kernel_dim(jj, k);
    return off;
  };
  // Offset of the x-block inside the fiber of apply_obj(f, probe) at y.
  auto h1_offset = [&](std::size_t j, std::size_t i) {
    int off = 0;
    for (std::size_t ii = 0; ii < i; ++ii)
      if (f.weight(ii, j).positive())
        off += probe.dim(ii) * f.kernel_dim(ii, j);
    return off;
  };

  std::vector<Operator> ops;
  ops.reserve(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    Operator u = Operator::zero(one_step.fiber(k), two_step.fiber(k));
    int two_off = 0;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (!g.weight(j, k).positive()) continue;
      const int dg = g.kernel_dim(j, k);
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (!f.weight(i, j).positive()) continue;
        const int dh = probe.dim(i);
        const int df = f.kernel_dim(i, j);
        if (dh == 0 || df == 0 || dg == 0) continue;
        int one_off = 0;
        for (std::size_t ii = 0; ii < i; ++ii)
          if (composite_.weight(ii, k).positive())
            one_off += probe.dim(ii) * composite_.kernel_dim(ii, k);
        const int dk = composite_.kernel_dim(i, k);
        const int koff = kernel_offset(i, k, j);
        const int hoff = h1_offset(j, i);
        for (int ih = 0; ih < dh; ++ih)
          for (int fi = 0; fi < df; ++fi)
            for (int gi = 0; gi < dg; ++gi) {
              int t = two_off + (hoff + ih * df + fi) * dg + gi;
              int s = one_off + ih * dk + koff + fi * dg + gi;
              u.at(t, s) = cd(1.0, 0.0);
            }
      }
      two_off += h1.dim(j) * dg;
    }
    ops.push_back(std::move(u));
  }
  return OperatorField(one_step, two_step, std::move(ops));
}

std::vector<FunctorComparison> compare_on_probes(
    const ComposedFunctor& c, const std::vector<HField>& probes) {
  std::vector<FunctorComparison> out;
  out.reserve(probes.size());
  for (const HField& probe : probes)
    out.push_back({probe, c.comparison_at(probe)});
  return out;
}

MeasurableNatTransf::MeasurableNatTransf(MeasurableFunctor source,
                                         MeasurableFunctor target,
                                         OperatorField b)
    : source_(std::move(source)), target_(std::move(target)), b_(std::move(b)) {
  if (source_.source_space() != target_.source_space() ||
      source_.target_space() != target_.target_space())
    throw SpaceMismatch("transformation endpoints are not parallel");
  if (b_.source() != source_.kernel() || b_.target() != target_.kernel())
    throw SpaceMismatch("operator field does not map kernel to kernel");
  const std::size_t ny = source_.target_space().size();
  mu_tilde_.reserve(ny);
  mu_hat_.reserve(ny);
  density_.reserve(ny);
  ess_norms_.reserve(ny);
  for (std::size_t j = 0; j < ny; ++j) {
    auto [ac, sing] = lebesgue_decompose(source_.weights().fiber(j),
                                         target_.weights().fiber(j));
    density_.push_back(radon_nikodym(ac, target_.weights().fiber(j)));
    mu_tilde_.push_back(std::move(ac));
    mu_hat_.push_back(std::move(sing));
    ess_norms_.push_back(opfield_ess_norm(b_, target_.weights().fiber(j)));
  }
}

MeasurableNatTransf make_nat_transf(const OperatorField& b,
                                    const MeasurableFunctor& f,
                                    const MeasurableFunctor& g) {
  return MeasurableNatTransf(f, g, b);
}

OperatorField component(const MeasurableNatTransf& eta, const HField& h) {
  const MeasurableFunctor& f = eta.source();
  const MeasurableFunctor& g = eta.target();
  if (h.space() != f.source_space())
    throw SpaceMismatch("object lives on the wrong space");
  const BorelSpace& y = f.target_space();

  HField src_field = apply_obj(f, h);
  HField tgt_field = apply_obj(g, h);
  std::vector<WeightedHilbert> src = apply_obj_blocks(f, h);
  std::vector<WeightedHilbert> tgt = apply_obj_blocks(g, h);

  std::vector<Operator> ops;
  ops.reserve(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) {
    Operator op = Operator::zero(src_field.fiber(j), tgt_field.fiber(j));
    for (std::size_t b = 0; b < src[j].block_count(); ++b) {
      const auto& sb = src[j].block(b);
      auto tb_index = tgt[j].block_of_point(sb.point);
      if (!tb_index) continue;  // singular part: maps to zero
      const auto& tb = tgt[j].block(*tb_index);
      std::size_t i = sb.point / y.size();
      double scale =
          std::sqrt(eta.density(j).at(sb.point).to_double());
      Operator block =
          cd(scale, 0.0) *
          tensor_op(Operator::identity(HilbertSpace(h.dim(i))),
                    eta.b().at(sb.point));
      for (int r = 0; r < tb.dim; ++r)
        for (int c = 0; c < sb.dim; ++c)
          op.at(tb.offset + r, sb.offset + c) = block.at(r, c);
    }
    ops.push_back(std::move(op));
  }
  return OperatorField(src_field, tgt_field, std::move(ops));
}

MeasurableNatTransf vertical_compose(const MeasurableNatTransf& eta,
                                     const MeasurableNatTransf& theta) {
  if (!same_presentation(eta.target(), theta.source()))
    throw SpaceMismatch("vertical composition endpoints do not match");
  const FiberedMeasure& mid_weights = eta.target().weights();
  const BorelSpace& y = eta.source().target_space();
  std::vector<Operator> ops;
  ops.reserve(eta.b().ops().size());
  for (std::size_t p = 0; p < eta.b().ops().size(); ++p) {
    std::size_t j = p % y.size();
    Operator op = theta.b().at(p) * eta.b().at(p);
    // passing through a null fiber of the middle weights kills the block
    if (!mid_weights.fiber(j).at(p).positive())
      op = Operator::zero(op.source(), op.target());
    ops.push_back(std::move(op));
  }
  OperatorField b(eta.source().kernel(), theta.target().kernel(),
                  std::move(ops));
  return make_nat_transf(b, eta.source(), theta.target());
}

HorizontalComposite horizontal_compose(const MeasurableNatTransf& eta,
                                       const MeasurableNatTransf& theta) {
  const MeasurableFunctor& f = eta.source();
  const MeasurableFunctor& g = eta.target();
  const MeasurableFunctor& fp = theta.source();
  const MeasurableFunctor& gp = theta.target();
  if (f.target_space() != fp.source_space())
    throw SpaceMismatch("horizontal composition spaces do not match");

  ComposedFunctor ff = compose(f, fp);
  ComposedFunctor gg = compose(g, gp);

  const BorelSpace& x = f.source_space();
  const BorelSpace& y = f.target_space();
  const BorelSpace& z = fp.target_space();

  auto kernel_offset = [&](const ComposedFunctor& c, std::size_t i,
                           std::size_t k, std::size_t j) {
    int off = 0;
    const Measure& cond = c.kappa().at(i, k);
    for (std::size_t jj = 0; jj < j; ++jj)
      if (cond.at(jj).positive())
        off += c.first().kernel_dim(i, jj) * c.second().kernel_dim(jj, k);
    return off;
  };

  std::vector<Operator> ops;
  ops.reserve(x.size() * z.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = 0; k < z.size(); ++k) {
      std::size_t p = pair_index(x, z, i, k);
      Operator op = Operator::zero(ff.functor().kernel().fiber(p),
                                   gg.functor().kernel().fiber(p));
      const Measure& cond_ff = ff.kappa().at(i, k);
      const Measure& cond_gg = gg.kappa().at(i, k);
      for (std::size_t j = 0; j < y.size(); ++j) {
        if (!cond_ff.at(j).positive() || !cond_gg.at(j).positive()) continue;
        double scale =
            std::sqrt((cond_ff.at(j) / cond_gg.at(j)).to_double());
        Operator block =
            cd(scale, 0.0) *
            tensor_op(eta.b().at(pair_index(x, y, i, j)),
                      theta.b().at(pair_index(y, z, j, k)));
        int roff = kernel_offset(gg, i, k, j);
        int coff = kernel_offset(ff, i, k, j);
        for (int r = 0; r < block.rows(); ++r)
          for (int c = 0; c < block.cols(); ++c)
            op.at(roff + r, coff + c) = block.at(r, c);
      }
      ops.push_back(std::move(op));
    }
  OperatorField b(ff.functor().kernel(), gg.functor().kernel(),
                  std::move(ops));
  MeasurableNatTransf transf =
      make_nat_transf(b, ff.functor(), gg.functor());
  return {std::move(ff), std::move(gg), std::move(transf)};
}

MeasurableNatTransf nat_endo_of_id(const BorelSpace& x,
                                   const std::vector<cd>& phi) {
  if (phi.size() != x.size())
    throw SpaceMismatch("scalar function not defined on every point");
  MeasurableFunctor id = identity_functor(x);
  std::vector<Operator> ops(x.size() * x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) {
      cd v = (i == j) ? phi[i] : cd(0.0, 0.0);
      ops[pair_index(x, x, i, j)] =
          Operator(HilbertSpace(1), HilbertSpace(1), {v});
    }
  OperatorField b(id.kernel(), id.kernel(), std::move(ops));
  return make_nat_transf(b, id, id);
}

MeasurableNatTransf nat_transf_between_pullbacks(const std::vector<cd>& phi,
                                                 const MeasurableMap& f,
                                                 const MeasurableMap& g) {
  MeasurableSet e = equalizer(f, g);
  const BorelSpace& y = f.source();
  const BorelSpace& x = f.target();
  if (phi.size() != y.size())
    throw SpaceMismatch("scalar function not defined on every point");
  for (std::size_t j = 0; j < y.size(); ++j)
    if (phi[j] != cd(0.0, 0.0) && !e.contains(j))
      throw SupportViolation("nonzero value at '" + y.label(j) +
                             "' outside the equalizer");
  MeasurableFunctor pf = pullback_functor(f);
  MeasurableFunctor pg = pullback_functor(g);
  std::vector<Operator> ops(x.size() * y.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) {
      cd v = (e.contains(j) && f.apply(j) == i) ? phi[j] : cd(0.0, 0.0);
      ops[pair_index(x, y, i, j)] =
          Operator(HilbertSpace(1), HilbertSpace(1), {v});
    }
  OperatorField b(pf.kernel(), pg.kernel(), std::move(ops));
  return make_nat_transf(b, pf, pg);
}

MeasurableFunctor odot(const MeasurableFunctor& f, const MeasurableFunctor& g) {
  const BorelSpace& x1 = f.source_space();
  const BorelSpace& x2 = g.source_space();
  const BorelSpace& y1 = f.target_space();
  const BorelSpace& y2 = g.target_space();
  BorelSpace xs = product(x1, x2);
  BorelSpace ys = product(y1, y2);

  std::vector<int> dims(xs.size() * ys.size());
  std::vector<std::vector<Weight>> rows(ys.size(),
                                        std::vector<Weight>(xs.size()));
  for (std::size_t i1 = 0; i1 < x1.size(); ++i1)
    for (std::size_t i2 = 0; i2 < x2.size(); ++i2)
      for (std::size_t j1 = 0; j1 < y1.size(); ++j1)
        for (std::size_t j2 = 0; j2 < y2.size(); ++j2) {
          std::size_t xi = pair_index(x1, x2, i1, i2);
          std::size_t yj = pair_index(y1, y2, j1, j2);
          dims[pair_index(xs, ys, xi, yj)] =
              f.kernel_dim(i1, j1) * g.kernel_dim(i2, j2);
          rows[yj][xi] = f.weight(i1, j1) * g.weight(i2, j2);
        }
  return MeasurableFunctor(xs, ys, HField(product(xs, ys), std::move(dims)),
                           FiberedMeasure::kernel(xs, ys, rows));
}

}  // namespace measfield
