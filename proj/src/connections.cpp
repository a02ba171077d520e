#include "pac/connections.hpp"

#include <algorithm>
#include <cmath>

#include "pac/einsum.hpp"
#include "pac/errors.hpp"

namespace pac {

namespace {

using Vals = std::vector<const JetTensor*>;

const Valence kCoefficients{{Slot::Covariant, Slot::Covariant, Slot::Contravariant}};

TensorField lowered_torsion(const AffineConnection& c, const TensorField& g) {
  return derived_field("T3(" + c.name() + ")", Valence::form(3), {torsion(c), g}, 0,
                       [](EvalContext&, const Vals& v) { return einsum("abk,kc->abc", *v[0], *v[1]); });
}

// 1/2 g^{ab} w(..., E_a, phi E_b) over the last two slots of w.
TensorField half_phi_trace(std::string name, const TensorField& w, const TensorField& g_inv, const TensorField& phi) {
  const int rank = w.rank() - 2;
  return derived_field(std::move(name), Valence::form(rank), {w, g_inv, phi}, 0, [rank](EvalContext&, const Vals& v) {
    const JetTensor wp = rank == 1 ? einsum("xac,cb->xab", *v[0], *v[2]) : einsum("xyac,cb->xyab", *v[0], *v[2]);
    return scaled(rank == 1 ? einsum("xab,ab->x", wp, *v[1]) : einsum("xyab,ab->xy", wp, *v[1]), 0.5);
  });
}

}  // namespace

TorsionConnection canonical_connection_unchecked(const PacStructure& s) {
  const auto& d = s.derived();
  TensorField W = derived_field("W~", kCoefficients, {s.eta(), s.phi(), d.nabla_xi, d.nabla_eta, s.xi()}, 0,
                                [](EvalContext&, const Vals& v) {
                                  const JetTensor& eta = *v[0];
                                  JetTensor out = einsum("a,kb->abk", eta, *v[1]);
                                  out = axpy(out, -1.0, einsum("b,ak->abk", eta, *v[2]));
                                  return axpy(out, 1.0, einsum("ab,k->abk", *v[3], *v[4]));
                                });
  AffineConnection c = shifted(d.lc, W, "canonical");
  TensorField t3 = lowered_torsion(c, s.g());
  return {std::move(c), std::move(t3), TorsionKind::Canonical};
}

TorsionConnection canonical_connection(const PacStructure& s, double tol, int points, std::uint64_t seed) {
  const FundamentalForm f = fundamental_form(s, tol, points, seed);
  if (!f.is_paracontact) {
    throw NotParacontactError(s.name() + ": F differs from d eta by " + std::to_string(f.residual) +
                              "; the canonical connection needs a paracontact metric structure");
  }
  return canonical_connection_unchecked(s);
}

ConnectionCurvature connection_curvature(const TorsionConnection& c) {
  ConnectionCurvature out;
  out.R = riemann_curvature(c.connection);
  out.Ric = ricci(out.R);
  out.W1 = scalar_curvature(out.Ric, c.connection.metric());
  return out;
}

TensorField skew_torsion(const PacStructure& s) {
  const auto& d = s.derived();
  const PhiForms forms = phi_forms(s);
  TensorField xi_n1 = interior(s.xi(), d.N1_low);
  return linear_combination({{2.0, wedge(s.eta(), d.deta)},
                             {1.0, forms.dF_phi},
                             {-1.0, d.N1_low},
                             {1.0, wedge(s.eta(), xi_n1)}},
                            "T");
}

SkewHypotheses skew_hypotheses(const PacStructure& s, int points, std::uint64_t seed) {
  SkewHypotheses h;
  const auto& d = s.derived();
  for (const Point& p : s.manifold().sample_points(points, seed)) {
    Snapshot snap(s.manifold_ptr(), p, required_order({&d.lie_xi_g, &d.N1_low}));
    h.killing = std::max(h.killing, max_abs(snap(d.lie_xi_g)));
    const NumTensor& n1 = snap(d.N1_low);
    h.skew_defect = std::max(h.skew_defect, max_abs(axpy(n1, 1.0, permuted(n1, {1, 0, 2}))));
    h.skew_defect = std::max(h.skew_defect, max_abs(axpy(n1, 1.0, permuted(n1, {0, 2, 1}))));
  }
  return h;
}

TorsionConnection skew_torsion_connection(const PacStructure& s, double tol, int points, std::uint64_t seed) {
  const SkewHypotheses h = skew_hypotheses(s, points, seed);
  if (h.killing >= tol) {
    throw NotKillingError(s.name() + ": xi is not a Killing field (max |L_xi g| = " + std::to_string(h.killing) + ")");
  }
  if (h.skew_defect >= tol) {
    throw NotSkewError(s.name() + ": N1 is not totally skew-symmetric (defect " + std::to_string(h.skew_defect) + ")");
  }
  const auto& d = s.derived();
  TensorField T = skew_torsion(s);
  TensorField W = derived_field("T/2", kCoefficients, {T, d.g_inv}, 0, [](EvalContext&, const Vals& v) {
    return scaled(einsum("abc,ck->abk", *v[0], *v[1]), 0.5);
  });
  return {shifted(d.lc, W, "skew-torsion"), std::move(T), TorsionKind::SkewTorsion};
}

PhiForms phi_forms(const PacStructure& s) {
  const auto& d = s.derived();
  PhiForms out;
  out.dF_minus = derived_field("dF-", Valence::form(3), {d.dF, s.phi()}, 0, [](EvalContext&, const Vals& v) {
    const JetTensor& dF = *v[0];
    const JetTensor& p = *v[1];
    JetTensor out = axpy(dF, 1.0, einsum("abz,ax->xbz", dF, p));
    out = axpy(out, 1.0, einsum("xbc,by,cz->xyz", dF, p, p));
    return axpy(out, 1.0, einsum("ayc,ax,cz->xyz", dF, p, p));
  });
  out.dF_phi = derived_field("d^phi F", Valence::form(3), {d.dF, s.phi()}, 0, [](EvalContext&, const Vals& v) {
    return scaled(einsum("abc,ax,by,cz->xyz", *v[0], *v[1], *v[1], *v[1]), -1.0);
  });
  return out;
}

RicciForms ricci_forms(const TorsionConnection& c, const PacStructure& s) {
  const auto& d = s.derived();
  RicciForms out;
  const TensorField R = riemann_curvature(c.connection);
  out.ric = ricci(R);
  out.rho = half_phi_trace("rho", lower_curvature(R, s.g()), d.g_inv, s.phi());
  out.t = half_phi_trace("t", c.torsion3, d.g_inv, s.phi());
  out.dT = exterior_derivative_3form(c.torsion3, 1.0);
  out.dt = half_phi_trace("dt", out.dT, d.g_inv, s.phi());
  out.nabla_t = covariant_derivative(c.connection, out.t);
  return out;
}

NumTensor basis_trace(const NumTensor& w, const std::vector<NumTensor>& basis, const NumTensor& g, const NumTensor& phi) {
  const int rank = w.rank() - 2;
  NumTensor out(w.dim(), rank, 0.0);
  for (const NumTensor& e : basis) {
    const double eps = einsum("i,ij,j->", e, g, e)[0];
    const NumTensor pe = einsum("ij,j->i", phi, e);
    // w(..., e, phi e): contract the trailing slots.
    NumTensor tail = rank == 1 ? einsum("xab,a,b->x", w, e, pe) : einsum("xyab,a,b->xy", w, e, pe);
    out = axpy(out, 0.5 / eps, tail);
  }
  return out;
}

NumTensor random_skew_form(int dim, double size, std::uint64_t seed) {
  SampleRng rng(seed);
  NumTensor t(dim, 3, 0.0);
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b)
      for (int c = b + 1; c < dim; ++c) {
        const double v = rng.uniform(-1.0, 1.0);
        t(a, b, c) = t(b, c, a) = t(c, a, b) = v;
        t(b, a, c) = t(a, c, b) = t(c, b, a) = -v;
      }
  double norm = 0.0;
  for (double v : t.data()) norm += v * v;
  return scaled(t, size / std::sqrt(norm));
}

double perturbed_parallelism(const PacStructure& s, const TorsionConnection& c, const NumTensor& delta,
                             const std::vector<Point>& points) {
  const auto& d = s.derived();
  const ManifoldPtr& m = s.manifold_ptr();
  TensorField dT = constant_field(m, Valence::form(3), delta, "dT");
  TensorField W = derived_field("dT/2", kCoefficients, {dT, d.g_inv}, 0, [](EvalContext&, const Vals& v) {
    return scaled(einsum("abc,ck->abk", *v[0], *v[1]), 0.5);
  });
  const AffineConnection perturbed = shifted(c.connection, W, "perturbed");
  const TensorField ng = covariant_derivative(perturbed, s.g());
  const TensorField neta = covariant_derivative(perturbed, s.eta());
  const TensorField nphi = covariant_derivative(perturbed, s.phi());
  double worst = 0.0;
  for (const Point& p : points) {
    Snapshot snap(m, p, required_order({&ng, &neta, &nphi}));
    worst = std::max({worst, max_abs(snap(ng)), max_abs(snap(neta)), max_abs(snap(nphi))});
  }
  return worst;
}

}  // namespace pac
