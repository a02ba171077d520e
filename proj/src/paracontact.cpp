#include "pac/paracontact.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "pac/einsum.hpp"
#include "pac/errors.hpp"

namespace pac {

namespace {

using Vals = std::vector<const JetTensor*>;

const Valence kVectorValued{{Slot::Covariant, Slot::Covariant, Slot::Contravariant}};

TensorField scalar_from(std::string name, std::vector<TensorField> deps, std::function<JetTensor(const Vals&)> f) {
  return derived_field(std::move(name), Valence::scalar(), std::move(deps), 0,
                       [f = std::move(f)](EvalContext&, const Vals& v) { return f(v); });
}

PacDerived build_derived(const TensorField& phi, const TensorField& xi, const TensorField& eta, const TensorField& g) {
  PacDerived d;
  d.g_inv = inverse_metric(g);
  d.F = derived_field("F", Valence::form(2), {g, phi}, 0,
                      [](EvalContext&, const Vals& v) { return einsum("ir,rj->ij", *v[0], *v[1]); });
  d.deta = exterior_derivative(eta);
  d.dF = exterior_derivative(d.F);

  d.N_phi = derived_field("N_phi", kVectorValued, {phi}, 1, [](EvalContext& ctx, const Vals& v) {
    const JetTensor& p = *v[0];
    const JetTensor Dp = gradient(ctx, p);  // Dp(i,k,b) = E_i phi^k_b
    const JetTensor c = structure_tensor(ctx);
    // [phi E_a, phi E_b], [phi E_a, E_b], [E_a, phi E_b]
    JetTensor pp = axpy(einsum("ia,ikb->abk", p, Dp), -1.0, einsum("ib,ika->abk", p, Dp));
    pp = axpy(pp, 1.0, einsum("ia,jb,ijk->abk", p, p, c));
    JetTensor pe = axpy(scaled(einsum("bka->abk", Dp), -1.0), 1.0, einsum("ia,ibk->abk", p, c));
    JetTensor ep = axpy(einsum("akb->abk", Dp), 1.0, einsum("jb,ajk->abk", p, c));
    const JetTensor p2 = einsum("km,mj->kj", p, p);
    JetTensor out = pp;
    out = axpy(out, -1.0, einsum("km,abm->abk", p, pe));
    out = axpy(out, -1.0, einsum("km,abm->abk", p, ep));
    return axpy(out, 1.0, einsum("km,abm->abk", p2, c));
  });
  d.N1 = derived_field("N1", kVectorValued, {d.N_phi, d.deta, xi}, 0, [](EvalContext&, const Vals& v) {
    return axpy(*v[0], -2.0, einsum("ab,k->abk", *v[1], *v[2]));
  });
  d.N1_low = derived_field("N1_low", Valence::form(3), {d.N1, g}, 0,
                           [](EvalContext&, const Vals& v) { return einsum("abk,kc->abc", *v[0], *v[1]); });
  d.N2 = derived_field("N2", Valence::form(2), {phi, eta}, 1, [](EvalContext& ctx, const Vals& v) {
    const JetTensor& p = *v[0];
    const JetTensor& e = *v[1];
    const JetTensor Dp = gradient(ctx, p);
    const JetTensor De = gradient(ctx, e);
    const JetTensor c = structure_tensor(ctx);
    // (L_{phi E_a} eta)(E_b) = phi^i_a E_i eta_b - eta([phi E_a, E_b])
    JetTensor pe = axpy(scaled(einsum("bka->abk", Dp), -1.0), 1.0, einsum("ia,ibk->abk", p, c));
    JetTensor L = axpy(einsum("ia,ib->ab", p, De), -1.0, einsum("k,abk->ab", e, pe));
    return axpy(L, -1.0, einsum("ba->ab", L));
  });
  d.N3 = lie_derivative(xi, phi);
  d.N4 = lie_derivative(xi, eta);
  d.lie_xi_g = lie_derivative(xi, g);
  d.h = linear_combination({{0.5, d.N3}}, "h");
  d.h_low = derived_field("h_low", Valence::form(2), {g, d.h}, 0,
                          [](EvalContext&, const Vals& v) { return einsum("ik,kj->ij", *v[0], *v[1]); });

  d.lc = levi_civita(g);
  d.nabla_xi = covariant_derivative(d.lc, xi);
  d.nabla_eta = covariant_derivative(d.lc, eta);
  d.nabla_phi = covariant_derivative(d.lc, phi);
  d.nabla_F = covariant_derivative(d.lc, d.F);
  d.nabla_h = covariant_derivative(d.lc, d.h);
  d.nabla2_xi = covariant_derivative(d.lc, d.nabla_xi);
  d.nabla2_eta = covariant_derivative(d.lc, d.nabla_eta);
  d.nabla2_F = covariant_derivative(d.lc, d.nabla_F);
  d.R = riemann_curvature(d.lc);
  d.R4 = lower_curvature(d.R, g);
  d.Ric = ricci(d.R);
  d.scal = scalar_curvature(d.Ric, g);
  d.nabla_ric = covariant_derivative(d.lc, d.Ric);

  d.P = derived_field("P", Valence::form(3), {d.nabla_F, eta, g}, 0, [](EvalContext&, const Vals& v) {
    JetTensor out = axpy(*v[0], -1.0, einsum("i,rs->rsi", *v[1], *v[2]));
    return axpy(out, 1.0, einsum("s,ri->rsi", *v[1], *v[2]));
  });
  d.ric_star = derived_field("Ric*", Valence::form(2), {d.R4, phi, d.g_inv}, 0, [](EvalContext&, const Vals& v) {
    const JetTensor Rp = einsum("pilk,lj->pikj", *v[0], *v[1]);
    const JetTensor Rps = einsum("pikj,ks->pijs", Rp, *v[1]);
    return einsum("pijs,ps->ij", Rps, *v[2]);
  });
  d.scal_star = scalar_from("scal*", {d.ric_star, d.g_inv}, [](const Vals& v) { return einsum("ij,ij->", *v[0], *v[1]); });

  auto norm3 = [](const JetTensor& T, const JetTensor& gi) {
    const JetTensor up = einsum("abi,ic->abc", einsum("asi,sb->abi", einsum("rsi,ra->asi", T, gi), gi), gi);
    return einsum("abc,abc->", T, up);
  };
  d.norm_h = scalar_from("|h|^2", {d.h_low, d.g_inv}, [](const Vals& v) {
    return einsum("ij,ir,js,rs->", *v[0], *v[1], *v[1], *v[0]);
  });
  d.norm_P = scalar_from("|P|^2", {d.P, d.g_inv}, [norm3](const Vals& v) { return norm3(*v[0], *v[1]); });
  d.norm_nabla_phi = scalar_from("|nabla phi|^2", {d.nabla_F, d.g_inv}, [norm3](const Vals& v) { return norm3(*v[0], *v[1]); });
  d.norm_P_xi = scalar_from("|P(xi)|^2", {d.P, d.g_inv, xi}, [](const Vals& v) {
    const JetTensor Px = einsum("rsi,i->rs", *v[0], *v[2]);
    return einsum("rs,ra,sb,ab->", Px, *v[1], *v[1], Px);
  });
  d.codiff_eta = scalar_from("delta eta", {d.nabla_eta, d.g_inv}, [](const Vals& v) {
    return scaled(einsum("ij,ij->", *v[0], *v[1]), -1.0);
  });
  return d;
}

void require_valences(const TensorField& phi, const TensorField& xi, const TensorField& eta, const TensorField& g) {
  if (phi.valence() != Valence::endomorphism()) throw UsageError("phi must be a (1,1) tensor");
  if (xi.valence() != Valence::vector()) throw UsageError("xi must be a vector field");
  if (eta.valence() != Valence::form(1)) throw UsageError("eta must be a 1-form");
  if (g.valid() && g.valence() != Valence::form(2)) throw UsageError("g must be a (0,2) tensor");
  require_same_manifold(phi, xi);
  require_same_manifold(phi, eta);
  if (g.valid()) require_same_manifold(phi, g);
}

double sym_defect(const NumTensor& a) {
  double m = 0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) + a(j, i)));
  return m;
}

}  // namespace

PacStructure::PacStructure(TensorField phi, TensorField xi, TensorField eta, TensorField g, std::string name)
    : phi_(std::move(phi)), xi_(std::move(xi)), eta_(std::move(eta)), g_(std::move(g)), name_(std::move(name)) {
  if (!g_.valid()) throw UsageError("structure without a metric");
  require_valences(phi_, xi_, eta_, g_);
  derived_ = std::make_shared<const PacDerived>(build_derived(phi_, xi_, eta_, g_));
}

double default_tolerance(const Manifold& m) {
  return m.backend() == Backend::HomogeneousFrame ? 1e-10 : 1e-7;
}

Signature signature(const NumTensor& g, double floor) {
  const int n = g.dim();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = 0.5 * (g(i, j) + g(j, i));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  Signature s;
  for (int i = 0; i < n; ++i) {
    const double l = es.eigenvalues()[i];
    if (std::abs(l) < floor) ++s.zero;
    else if (l > 0) ++s.positive;
    else ++s.negative;
  }
  return s;
}

double AxiomResiduals::max() const {
  return std::max({phi_xi, eta_phi, eta_xi, phi_squared, compatibility, g_xi});
}

AxiomResiduals validate_structure(const PacStructure& s, int points, std::uint64_t seed) {
  AxiomResiduals r;
  const int n = s.n();
  const int dim = s.manifold().dim();
  NumTensor id(dim, 2, 0.0);
  for (int i = 0; i < dim; ++i) id(i, i) = 1.0;
  for (const Point& p : s.manifold().sample_points(points, seed)) {
    Snapshot snap(s.manifold_ptr(), p, required_order({&s.phi(), &s.xi(), &s.eta(), &s.g()}));
    const NumTensor& phi = snap(s.phi());
    const NumTensor& xi = snap(s.xi());
    const NumTensor& eta = snap(s.eta());
    const NumTensor& g = snap(s.g());
    r.phi_xi = std::max(r.phi_xi, max_abs(einsum("ij,j->i", phi, xi)));
    r.eta_phi = std::max(r.eta_phi, max_abs(einsum("i,ij->j", eta, phi)));
    r.eta_xi = std::max(r.eta_xi, std::abs(einsum("i,i->", eta, xi)[0] - 1.0));
    NumTensor p2 = axpy(einsum("ik,kj->ij", phi, phi), -1.0, id);
    r.phi_squared = std::max(r.phi_squared, max_abs(axpy(p2, 1.0, einsum("i,j->ij", xi, eta))));
    NumTensor con = axpy(einsum("ai,ab,bj->ij", phi, g, phi), 1.0, g);
    r.compatibility = std::max(r.compatibility, max_abs(axpy(con, -1.0, einsum("i,j->ij", eta, eta))));
    r.g_xi = std::max(r.g_xi, max_abs(axpy(einsum("ij,j->i", g, xi), -1.0, eta)));
    const Signature sig = signature(g);
    if (sig != Signature{n + 1, n, 0}) {
      throw StructureError(s.name() + ": metric signature (" + std::to_string(sig.positive) + "," +
                           std::to_string(sig.negative) + ") at a sample, expected (" + std::to_string(n + 1) + "," +
                           std::to_string(n) + ")");
    }
  }
  return r;
}

TensorField build_compatible_metric(const TensorField& phi, const TensorField& xi, const TensorField& eta,
                                    const TensorField& G, int probe_points, std::uint64_t seed) {
  require_valences(phi, xi, eta, G);
  TensorField g = derived_field("g(" + G.name() + ")", Valence::form(2), {phi, eta, G}, 0,
                                [](EvalContext&, const Vals& v) {
                                  const JetTensor& p = *v[0];
                                  const JetTensor& e = *v[1];
                                  const JetTensor p2 = einsum("ik,kj->ij", p, p);
                                  const JetTensor ee = einsum("i,j->ij", e, e);
                                  const JetTensor Gb = axpy(einsum("ai,ab,bj->ij", p2, *v[2], p2), 1.0, ee);
                                  JetTensor out = axpy(Gb, -1.0, einsum("ai,ab,bj->ij", p, Gb, p));
                                  return scaled(axpy(out, 1.0, ee), 0.5);
                                });
  const int n = phi.manifold().half_dim();
  for (const Point& p : phi.manifold().sample_points(probe_points, seed)) {
    const NumTensor gv = evaluate(g, p);
    if (std::abs(determinant(gv)) < 1e-12) throw ConstructionError("compatible metric from " + G.name() + " is degenerate at a sample");
    if (signature(gv) != Signature{n + 1, n, 0}) {
      throw ConstructionError("compatible metric from " + G.name() + " has the wrong signature at a sample");
    }
  }
  return g;
}

double eta_wedge_fn(const NumTensor& eta, const NumTensor& F) {
  const int dim = eta.dim();
  const int n = (dim - 1) / 2;
  std::vector<int> perm(dim);
  std::iota(perm.begin(), perm.end(), 0);
  double total = 0.0;
  do {
    int inversions = 0;
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j)
        if (perm[i] > perm[j]) ++inversions;
    double term = eta[perm[0]];
    for (int k = 0; k < n; ++k) term *= F(perm[1 + 2 * k], perm[2 + 2 * k]);
    total += (inversions % 2 == 0 ? 1.0 : -1.0) * term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  // Each wedge factor is counted once per ordering of its slots.
  double norm = 1.0;
  for (int k = 0; k < n; ++k) norm *= 2.0 * (k + 1);
  return total / norm;
}

FundamentalForm fundamental_form(const PacStructure& s, double tol, int points, std::uint64_t seed) {
  FundamentalForm out;
  out.F = s.derived().F;
  out.min_volume = std::numeric_limits<double>::infinity();
  for (const Point& p : s.manifold().sample_points(points, seed)) {
    Snapshot snap(s.manifold_ptr(), p, required_order({&s.derived().F, &s.derived().deta}));
    const NumTensor& F = snap(s.derived().F);
    out.symmetric_part = std::max(out.symmetric_part, sym_defect(F));
    out.residual = std::max(out.residual, max_abs_diff(F, snap(s.derived().deta)));
    out.min_volume = std::min(out.min_volume, std::abs(eta_wedge_fn(snap(s.eta()), F)));
  }
  if (out.symmetric_part > tol) throw StructureError(s.name() + ": F = g(., phi .) is not antisymmetric");
  out.is_paracontact = out.residual < tol;
  return out;
}

NumTensor as_vector(const std::vector<double>& v) {
  NumTensor t(static_cast<int>(v.size()), 1);
  for (std::size_t i = 0; i < v.size(); ++i) t[i] = v[i];
  return t;
}

NumTensor apply(const NumTensor& t, std::initializer_list<const NumTensor*> vectors) {
  NumTensor cur = t;
  for (const NumTensor* v : vectors) {
    const std::size_t stride = cur.size() / v->size();
    NumTensor next(cur.dim(), cur.rank() - 1, 0.0);
    for (int a = 0; a < v->dim(); ++a)
      for (std::size_t i = 0; i < stride; ++i) next[i] += cur[a * stride + i] * (*v)[a];
    cur = std::move(next);
  }
  return cur;
}

NumTensor horizontal(const NumTensor& phi, const NumTensor& v) {
  return einsum("ik,kj,j->i", phi, phi, v);
}

std::vector<NumTensor> build_phi_basis(const PacStructure& s, const Point& p, std::uint64_t seed) {
  Snapshot snap(s.manifold_ptr(), p, required_order({&s.phi(), &s.xi(), &s.eta(), &s.g()}));
  const NumTensor& phi = snap(s.phi());
  const NumTensor& g = snap(s.g());
  const NumTensor& xi = snap(s.xi());
  const int n = s.n();
  auto gp = [&](const NumTensor& a, const NumTensor& b) { return einsum("i,ij,j->", a, g, b)[0]; };
  SampleRng rng(seed);
  std::vector<NumTensor> xs, phixs;
  for (int i = 0; i < n; ++i) {
    bool found = false;
    for (int attempt = 0; attempt < 32 && !found; ++attempt) {
      NumTensor v = horizontal(phi, as_vector(rng.vector(s.manifold().dim())));
      // Remove the components along the vectors already chosen.
      for (int j = 0; j < i; ++j) {
        v = axpy(v, -gp(v, xs[j]), xs[j]);
        v = axpy(v, gp(v, phixs[j]), phixs[j]);  // g(phi X_j, phi X_j) = -1
      }
      const double q = gp(v, v);
      if (std::abs(q) < 1e-6) continue;
      if (q < 0) v = einsum("ij,j->i", phi, v);
      v = scaled(v, 1.0 / std::sqrt(std::abs(q)));
      xs.push_back(v);
      phixs.push_back(einsum("ij,j->i", phi, v));
      found = true;
    }
    if (!found) throw NullPivotError(s.name() + ": no non-null pivot for the phi-basis after 32 draws");
  }
  std::vector<NumTensor> basis = xs;
  basis.insert(basis.end(), phixs.begin(), phixs.end());
  basis.push_back(xi);
  return basis;
}

NijenhuisSuite nijenhuis_suite(const PacStructure& s) {
  const auto& d = s.derived();
  return {d.N_phi, d.N1, d.N2, d.N3, d.N4};
}

std::optional<EtaEinstein> fit_eta_einstein(const PacStructure& s, double tol, int points, std::uint64_t seed) {
  std::vector<double> as, bs;
  double residual = 0.0;
  const int dim = s.manifold().dim();
  for (const Point& p : s.manifold().sample_points(points, seed)) {
    Snapshot snap(s.manifold_ptr(), p, required_order({&s.derived().Ric, &s.g(), &s.eta()}));
    const NumTensor& ric = snap(s.derived().Ric);
    const NumTensor& g = snap(s.g());
    const NumTensor ee = einsum("i,j->ij", snap(s.eta()), snap(s.eta()));
    Eigen::MatrixXd A(dim * dim, 2);
    Eigen::VectorXd b(dim * dim);
    for (int i = 0; i < dim * dim; ++i) {
      A(i, 0) = g[i];
      A(i, 1) = ee[i];
      b(i) = ric[i];
    }
    const Eigen::Vector2d x = A.colPivHouseholderQr().solve(b);
    residual = std::max(residual, (A * x - b).cwiseAbs().maxCoeff());
    as.push_back(x(0));
    bs.push_back(x(1));
  }
  auto mean = [](const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); };
  auto stdev = [&](const std::vector<double>& v) {
    const double m = mean(v);
    double acc = 0;
    for (double x : v) acc += (x - m) * (x - m);
    return std::sqrt(acc / v.size());
  };
  EtaEinstein fit{mean(as), mean(bs), residual, std::max(stdev(as), stdev(bs))};
  if (fit.residual >= tol || fit.spread >= tol) return std::nullopt;
  return fit;
}

ClassificationReport classify(const PacStructure& s, double tol, int points, std::uint64_t seed) {
  ClassificationReport r;
  const auto& d = s.derived();
  const AxiomResiduals ax = validate_structure(s, points, seed);
  r.almost_pac_metric = {ax.max() < tol, ax.max()};

  double para = 0, killing = 0, n1 = 0, n2 = 0, n3 = 0, n4 = 0, pmax = 0, integ = 0;
  const auto pts = s.manifold().sample_points(points, seed);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    Snapshot snap(s.manifold_ptr(), pts[k], required_order({&d.F, &d.deta, &d.lie_xi_g, &d.N1, &d.N2, &d.N3, &d.N4, &d.P}));
    para = std::max(para, max_abs_diff(snap(d.F), snap(d.deta)));
    killing = std::max(killing, max_abs(snap(d.lie_xi_g)));
    const NumTensor& N1 = snap(d.N1);
    n1 = std::max(n1, max_abs(N1));
    n2 = std::max(n2, max_abs(snap(d.N2)));
    n3 = std::max(n3, max_abs(snap(d.N3)));
    n4 = std::max(n4, max_abs(snap(d.N4)));
    pmax = std::max(pmax, max_abs(snap(d.P)));
    // Integrability on D-valued vectors: N1(X,Y) = 0 and
    // eta([phi X,Y] + [X,phi Y]) = -2 (d eta(phi X,Y) + d eta(X,phi Y)) = 0.
    SampleRng rng(seed, 0x1a7e, k);
    const NumTensor& phi = snap(s.phi());
    const NumTensor& deta = snap(d.deta);
    for (int t = 0; t < 4; ++t) {
      const NumTensor X = horizontal(phi, as_vector(rng.vector(s.manifold().dim())));
      const NumTensor Y = horizontal(phi, as_vector(rng.vector(s.manifold().dim())));
      const NumTensor pX = einsum("ij,j->i", phi, X), pY = einsum("ij,j->i", phi, Y);
      integ = std::max(integ, max_abs(apply(N1, {&X, &Y})));
      integ = std::max(integ, std::abs(apply(deta, {&pX, &Y})[0] + apply(deta, {&X, &pY})[0]));
    }
    if (k == 0) {
      Snapshot full(s.manifold_ptr(), pts[k], required_order({&d.norm_h, &d.norm_P, &d.norm_nabla_phi, &d.scal, &d.scal_star}));
      r.norm_h = full.scalar(d.norm_h);
      r.norm_P = full.scalar(d.norm_P);
      r.norm_nabla_phi = full.scalar(d.norm_nabla_phi);
      r.scal = full.scalar(d.scal);
      r.scal_star = full.scalar(d.scal_star);
    }
  }
  r.paracontact = {para < tol, para};
  r.K_paracontact = {para < tol && killing < tol, std::max(para, killing)};
  r.integrable = {integ < tol, integ};
  const double nmax = std::max({n1, n2, n3, n4});
  r.normal = {nmax < tol, nmax};
  r.paraSasakian = {pmax < tol, pmax};
  if (r.K_paracontact.value) r.eta_einstein = fit_eta_einstein(s, tol, points, seed);
  return r;
}

}  // namespace pac
