#include "pac/riemann.hpp"

#include <algorithm>
#include <cmath>

#include "pac/einsum.hpp"
#include "pac/errors.hpp"

namespace pac {

namespace {

const Valence kCoefficients{{Slot::Covariant, Slot::Covariant, Slot::Contravariant}};

}  // namespace

AffineConnection::AffineConnection(TensorField coefficients, TensorField metric, std::string name)
    : gamma_(std::move(coefficients)), metric_(std::move(metric)), name_(std::move(name)) {
  if (gamma_.valence() != kCoefficients) throw UsageError(name_ + ": connection coefficients need valence (2,1)");
  if (metric_.valid()) require_same_manifold(gamma_, metric_);
}

AffineConnection levi_civita(const TensorField& g) {
  if (g.valence() != Valence::form(2)) throw UsageError("levi_civita: metric must be a symmetric 2-tensor");
  TensorField ginv = inverse_metric(g);
  TensorField gamma = derived_field("Gamma(" + g.name() + ")", kCoefficients, {g, ginv}, 1,
                                    [](EvalContext& ctx, const std::vector<const JetTensor*>& v) {
                                      const JetTensor& G = *v[0];
                                      const JetTensor& Gi = *v[1];
                                      const JetTensor dg = gradient(ctx, G);  // dg(a,b,c) = E_a g_bc
                                      const JetTensor c = structure_tensor(ctx);
                                      const JetTensor cg = einsum("abk,kc->abc", c, G);  // g([E_a,E_b],E_c)
                                      JetTensor low = ctx.zeros(3);
                                      for_each_index(ctx.dim(), 3, [&](std::span<const int> e) {
                                        const int a = e[0], b = e[1], k = e[2];
                                        low.at(e) = (dg(a, b, k) + dg(b, k, a) - dg(k, a, b) + cg(a, b, k) -
                                                     cg(b, k, a) + cg(k, a, b)) *
                                                    0.5;
                                      });
                                      return einsum("abl,lk->abk", low, Gi);
                                    });
  return AffineConnection(std::move(gamma), g, "levi-civita");
}

AffineConnection shifted(const AffineConnection& base, const TensorField& difference, std::string name) {
  if (difference.valence() != kCoefficients) throw UsageError("shifted: difference tensor needs valence (2,1)");
  TensorField gamma = linear_combination({{1.0, base.coefficients()}, {1.0, difference}}, "Gamma(" + name + ")");
  return AffineConnection(std::move(gamma), base.metric(), std::move(name));
}

TensorField covariant_derivative(const AffineConnection& c, const TensorField& t) {
  require_same_manifold(c.coefficients(), t);
  Valence v = t.valence();
  v.slots.insert(v.slots.begin(), Slot::Covariant);
  const Valence slots = t.valence();
  const TensorField gamma = c.coefficients();
  // E_a T costs one derivative of T; the connection terms need Gamma only.
  const int depth = std::max(gamma.depth(), t.depth() + 1);
  return TensorField(t.manifold_ptr(), v, depth, "nabla(" + t.name() + ")",
                       [slots, gamma, t](EvalContext& ctx) {
                         const JetTensor& G = gamma.eval(ctx);
                         const JetTensor& T = t.eval(ctx);
                         JetTensor out = gradient(ctx, T);
                         const int n = ctx.dim();
                         const int r = T.rank();
                         std::vector<int> src(r);
                         for_each_index(n, r + 1, [&](std::span<const int> e) {
                           const int a = e[0];
                           Jet acc(0.0);
                           for (int s = 0; s < r; ++s) {
                             for (int q = 0; q < r; ++q) src[q] = e[q + 1];
                             const int i = e[s + 1];
                             for (int k = 0; k < n; ++k) {
                               src[s] = k;
                               if (slots.slots[s] == Slot::Contravariant) {
                                 const Jet& gk = G(a, k, i);
                                 if (!(gk.is_exact() && gk.value() == 0.0)) acc += gk * T.at(src);
                               } else {
                                 const Jet& gk = G(a, i, k);
                                 if (!(gk.is_exact() && gk.value() == 0.0)) acc -= gk * T.at(src);
                               }
                             }
                           }
                           out.at(e) += acc;
                         });
                         return out;
                       });
}

TensorField torsion(const AffineConnection& c) {
  return derived_field("T(" + c.name() + ")", kCoefficients, {c.coefficients()}, 0,
                       [](EvalContext& ctx, const std::vector<const JetTensor*>& v) {
                         const JetTensor& G = *v[0];
                         const JetTensor cs = structure_tensor(ctx);
                         JetTensor out = ctx.zeros(3);
                         for_each_index(ctx.dim(), 3, [&](std::span<const int> e) {
                           out.at(e) = G(e[0], e[1], e[2]) - G(e[1], e[0], e[2]) - cs(e[0], e[1], e[2]);
                         });
                         return out;
                       });
}

TensorField riemann_curvature(const AffineConnection& c) {
  const Valence v{{Slot::Covariant, Slot::Covariant, Slot::Covariant, Slot::Contravariant}};
  return derived_field("R(" + c.name() + ")", v, {c.coefficients()}, 1,
                       [](EvalContext& ctx, const std::vector<const JetTensor*>& vals) {
                         const JetTensor& G = *vals[0];
                         const JetTensor dG = gradient(ctx, G);  // dG(a,b,c,m) = E_a Gamma(b,c,m)
                         const JetTensor cs = structure_tensor(ctx);
                         const JetTensor gg = einsum("bck,akm->abcm", G, G);
                         const JetTensor cG = einsum("abk,kcm->abcm", cs, G);
                         JetTensor out = ctx.zeros(4);
                         for_each_index(ctx.dim(), 4, [&](std::span<const int> e) {
                           const int a = e[0], b = e[1], cc = e[2], m = e[3];
                           out.at(e) = dG(a, b, cc, m) - dG(b, a, cc, m) + gg(a, b, cc, m) - gg(b, a, cc, m) - cG(a, b, cc, m);
                         });
                         return out;
                       });
}

TensorField lower_curvature(const TensorField& r, const TensorField& g) {
  return derived_field("R4", Valence::form(4), {r, g}, 0, [](EvalContext&, const std::vector<const JetTensor*>& v) {
    return einsum("abcm,md->abcd", *v[0], *v[1]);
  });
}

TensorField ricci(const TensorField& r) {
  return derived_field("Ric", Valence::form(2), {r}, 0, [](EvalContext&, const std::vector<const JetTensor*>& v) {
    return einsum("abca->bc", *v[0]);
  });
}

ScalarField scalar_curvature(const TensorField& ric, const TensorField& g) {
  TensorField ginv = inverse_metric(g);
  return derived_field("scal", Valence::scalar(), {ric, ginv}, 0, [](EvalContext&, const std::vector<const JetTensor*>& v) {
    return einsum("bc,bc->", *v[0], *v[1]);
  });
}

double sectional_curvature(const NumTensor& g, const NumTensor& r4, std::span<const double> x, std::span<const double> y,
                           double floor) {
  const int n = g.dim();
  auto gxy = [&](std::span<const double> u, std::span<const double> w) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += g(i, j) * u[i] * w[j];
    return s;
  };
  const double den = gxy(x, x) * gxy(y, y) - gxy(x, y) * gxy(x, y);
  if (std::abs(den) < floor) throw PlaneDegeneracyError("sectional curvature of a degenerate plane");
  double num = 0.0;
  for_each_index(n, 4, [&](std::span<const int> e) { num += r4.at(e) * x[e[0]] * y[e[1]] * y[e[2]] * x[e[3]]; });
  return num / den;
}

ScalarField codifferential(const TensorField& g, const TensorField& w) {
  if (w.valence() != Valence::form(1)) throw UsageError("codifferential: 1-form expected");
  TensorField nw = covariant_derivative(levi_civita(g), w);
  TensorField ginv = inverse_metric(g);
  return derived_field("delta" + w.name(), Valence::scalar(), {nw, ginv}, 0,
                       [](EvalContext&, const std::vector<const JetTensor*>& v) {
                         return scaled(einsum("ij,ij->", *v[0], *v[1]), -1.0);
                       });
}

}  // namespace pac
