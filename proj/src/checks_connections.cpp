#include <algorithm>
#include <cmath>
#include <optional>

#include "check_support.hpp"
#include "pac/errors.hpp"

namespace pac::detail {

namespace {

using Vals = std::vector<const JetTensor*>;

NumTensor wedge13(const NumTensor& a, const NumTensor& b) {
  NumTensor t = axpy(einsum("x,yz->xyz", a, b), 1.0, einsum("y,zx->xyz", a, b));
  return axpy(t, 1.0, einsum("z,xy->xyz", a, b));
}

double skew_defect3(const NumTensor& t) {
  return std::max(max_abs(axpy(t, 1.0, permuted(t, {1, 0, 2}))), max_abs(axpy(t, 1.0, permuted(t, {0, 2, 1}))));
}

void canonical_checks(SuiteContext& ctx, Collector& c) {
  const PacStructure& s = ctx.s;
  const auto& d = s.derived();
  const int dim = s.manifold().dim();
  const double n = s.n();
  const NumTensor I = identity(dim);
  const bool pc = ctx.cls.paracontact.value;
  const bool ps = ctx.cls.paraSasakian.value;
  const std::string not_pc = "structure is not paracontact";

  const TorsionConnection tw = canonical_connection_unchecked(s);
  const ConnectionCurvature cc = connection_curvature(tw);
  const TensorField T = torsion(tw.connection);
  const TensorField ng = covariant_derivative(tw.connection, s.g());
  const TensorField neta = covariant_derivative(tw.connection, s.eta());
  const TensorField nxi = covariant_derivative(tw.connection, s.xi());
  const TensorField nphi = covariant_derivative(tw.connection, s.phi());
  const int order = required_order({&cc.R, &cc.W1, &nphi, &d.R});
  auto over = [&](const std::function<double(Snapshot&)>& fn) {
    return [&, fn] { return sample_max(ctx, order, fn); };
  };

  c.run_if(pc, not_pc, "canonical-nabla-g", "nabla~ g = 0", over([&](Snapshot& sn) { return max_abs(sn(ng)); }));
  c.run_if(pc, not_pc, "canonical-nabla-eta", "nabla~ eta = 0", over([&](Snapshot& sn) { return max_abs(sn(neta)); }));
  c.run_if(pc, not_pc, "canonical-nabla-xi", "nabla~ xi = 0", over([&](Snapshot& sn) { return max_abs(sn(nxi)); }));
  c.run_if(pc, not_pc, "canonical-torsion", "T~(X,Y) = eta(X) phi h Y - eta(Y) phi h X + 2g(X,phi Y) xi",
           over([&](Snapshot& sn) {
             const NumTensor ph = einsum("ik,kj->ij", sn(s.phi()), sn(d.h));
             const NumTensor& eta = sn(s.eta());
             NumTensor rhs = axpy(einsum("a,kb->abk", eta, ph), -1.0, einsum("b,ka->abk", eta, ph));
             rhs = axpy(rhs, 2.0, einsum("ab,k->abk", sn(d.F), sn(s.xi())));
             return max_abs_diff(sn(T), rhs);
           }));
  c.run_if(pc, not_pc, "canonical-nabla-phi",
           "(nabla~_X phi) Y = (nabla_X phi) Y + g(X - hX,Y) xi - eta(Y)(X - hX)", over([&](Snapshot& sn) {
             const NumTensor xh = axpy(I, -1.0, sn(d.h));  // column a is e_a - h e_a
             NumTensor rhs = axpy(sn(d.nabla_phi), 1.0, einsum("ka,kj,i->aij", xh, sn(s.g()), sn(s.xi())));
             rhs = axpy(rhs, -1.0, einsum("j,ia->aij", sn(s.eta()), xh));
             return max_abs_diff(sn(nphi), rhs);
           }));
  c.run_if(pc, not_pc, "canonical-torsion-xi-phi", "T~(xi,phi Y) = -phi T~(xi,Y)", over([&](Snapshot& sn) {
             const NumTensor tx = einsum("a,abk->bk", sn(s.xi()), sn(T));
             const NumTensor& phi = sn(s.phi());
             return max_abs(axpy(einsum("bk,bj->jk", tx, phi), 1.0, einsum("ki,ji->jk", phi, tx)));
           }));
  c.run_if(pc, not_pc, "canonical-torsion-horizontal", "T~(X,Y) = 2 d eta(X,Y) xi for X, Y in D", over([&](Snapshot& sn) {
             const NumTensor& phi = sn(s.phi());
             const NumTensor p2 = einsum("ik,kj->ij", phi, phi);
             const NumTensor lhs = einsum("abk,ax,by->xyk", sn(T), p2, p2);
             const NumTensor rhs = scaled(einsum("ab,ax,by,k->xyk", sn(d.deta), p2, p2, sn(s.xi())), 2.0);
             return max_abs_diff(lhs, rhs);
           }));

  c.run_if(pc, not_pc, "canonical-curvature",
           "R~^l_ijk = R^l_ijk + nabla_i phi^l_k eta_j - nabla_j phi^l_k eta_i + 2 phi_ij phi^l_k"
           " - phi^l_s nabla_j xi^s eta_i eta_k + phi^l_s nabla_i xi^s eta_j eta_k + xi^l nabla_i eta_s phi^s_k eta_j"
           " - xi^l nabla_j eta_s phi^s_k eta_i - xi^l R^s_ijk eta_s - eta_k R^l_ijs xi^s"
           " + nabla_j eta_k nabla_i xi^l - nabla_i eta_k nabla_j xi^l",
           over([&](Snapshot& sn) {
             const NumTensor &R = sn(d.R), &np = sn(d.nabla_phi), &nx = sn(d.nabla_xi), &ne = sn(d.nabla_eta);
             const NumTensor &phi = sn(s.phi()), &xi = sn(s.xi()), &eta = sn(s.eta()), &F = sn(d.F);
             NumTensor f = axpy(R, 1.0, einsum("ilk,j->ijkl", np, eta));
             f = axpy(f, -1.0, einsum("jlk,i->ijkl", np, eta));
             f = axpy(f, 2.0, einsum("ij,lk->ijkl", F, phi));
             f = axpy(f, -1.0, einsum("ls,js,i,k->ijkl", phi, nx, eta, eta));
             f = axpy(f, 1.0, einsum("ls,is,j,k->ijkl", phi, nx, eta, eta));
             f = axpy(f, 1.0, einsum("l,is,sk,j->ijkl", xi, ne, phi, eta));
             f = axpy(f, -1.0, einsum("l,js,sk,i->ijkl", xi, ne, phi, eta));
             f = axpy(f, -1.0, einsum("l,ijks,s->ijkl", xi, R, eta));
             f = axpy(f, -1.0, einsum("k,ijsl,s->ijkl", eta, R, xi));
             f = axpy(f, 1.0, einsum("jk,il->ijkl", ne, nx));
             f = axpy(f, -1.0, einsum("ik,jl->ijkl", ne, nx));
             return max_abs_diff(sn(cc.R), f);
           }));
  c.run_if(pc, not_pc, "canonical-ricci",
           "Ric~_jk = Ric_jk - 2g_jk + 2 eta_j eta_k - Ric_js xi^s eta_k - R_jsrk xi^s xi^r - nabla_r eta_k nabla_j xi^r",
           over([&](Snapshot& sn) {
             const NumTensor &g = sn(s.g()), &eta = sn(s.eta()), &xi = sn(s.xi()), &Ric = sn(d.Ric);
             NumTensor rhs = axpy(Ric, -2.0, g);
             rhs = axpy(rhs, 2.0, outer(eta, eta));
             rhs = axpy(rhs, -1.0, outer(mv(Ric, xi), eta));
             rhs = axpy(rhs, -1.0, einsum("jsrk,s,r->jk", sn(d.R4), xi, xi));
             rhs = axpy(rhs, -1.0, einsum("rk,jr->jk", sn(d.nabla_eta), sn(d.nabla_xi)));
             return max_abs_diff(sn(cc.Ric), rhs);
           }));
  c.run_if(pc, not_pc, "canonical-ricci-xi-xi", "Ric~_jk xi^j xi^k = 0",
           over([&](Snapshot& sn) { return std::abs(form2(sn(cc.Ric), sn(s.xi()), sn(s.xi()))); }));
  c.run_if(pc, not_pc, "canonical-w1", "W1 = g^jk Ric~_jk = scal - Ric(xi,xi) - 4n", over([&](Snapshot& sn) {
             const NumTensor& xi = sn(s.xi());
             return std::abs(sn.scalar(cc.W1) - (sn.scalar(d.scal) - form2(sn(d.Ric), xi, xi) - 4.0 * n));
           }));
  c.run_if(pc, not_pc, "canonical-torsion-lowered",
           "T~_ijk = -eta_i phi_jk + eta_j phi_ik - eta_j nabla_i eta_k + eta_i nabla_j eta_k + 2 phi_ij eta_k",
           over([&](Snapshot& sn) {
             const NumTensor &eta = sn(s.eta()), &F = sn(d.F), &ne = sn(d.nabla_eta);
             NumTensor rhs = scaled(einsum("i,jk->ijk", eta, F), -1.0);
             rhs = axpy(rhs, 1.0, einsum("j,ik->ijk", eta, F));
             rhs = axpy(rhs, -1.0, einsum("j,ik->ijk", eta, ne));
             rhs = axpy(rhs, 1.0, einsum("i,jk->ijk", eta, ne));
             rhs = axpy(rhs, 2.0, einsum("ij,k->ijk", F, eta));
             return max_abs_diff(sn(tw.torsion3), rhs);
           }));
  c.run_if(pc, not_pc, "canonical-xi-torsion", "xi^i T~_ijk = -phi_jk + nabla_j eta_k = 1/2 (nabla_j eta_k + nabla_k eta_j)",
           over([&](Snapshot& sn) {
             const NumTensor xt = einsum("i,ijk->jk", sn(s.xi()), sn(tw.torsion3));
             const NumTensor& ne = sn(d.nabla_eta);
             return std::max(max_abs_diff(xt, axpy(ne, -1.0, sn(d.F))),
                             max_abs_diff(xt, scaled(axpy(ne, 1.0, transposed(ne)), 0.5)));
           }));
  auto xi_torsion = over([&](Snapshot& sn) { return max_abs(einsum("i,ijk->jk", sn(s.xi()), sn(tw.torsion3))); });
  const std::string xt_formula = "xi^i T~_ijk = 0 exactly on paraSasakian structures";
  if (!pc) {
    c.skip("canonical-xi-torsion-parasasakian", xt_formula, not_pc);
  } else if (ps) {
    c.run("canonical-xi-torsion-parasasakian", xt_formula, xi_torsion);
  } else {
    c.witness("canonical-xi-torsion-parasasakian", xt_formula, 10.0 * ctx.tol, xi_torsion);
  }

  const std::string t13 = "nabla~ phi = 0 if and only if the structure is integrable";
  auto phi_parallel = over([&](Snapshot& sn) { return max_abs(sn(nphi)); });
  if (ctx.cls.integrable.value) {
    c.run("canonical-phi-parallel", t13, phi_parallel);
  } else {
    c.witness("canonical-phi-parallel", t13, 10.0 * ctx.tol, phi_parallel);
  }
}

void skew_checks(SuiteContext& ctx, Collector& c) {
  const PacStructure& s = ctx.s;
  const auto& d = s.derived();
  const double n = s.n();
  const bool ps = ctx.cls.paraSasakian.value;
  const std::string absent = "N1 is not skew or xi is not Killing";
  const std::string not_ps = "structure is not paraSasakian";
  const double htol = ctx.default_tol();

  // The equivalence, run in both directions.
  const std::string t10 = "a connection with nabla g = nabla eta = nabla phi = 0 and totally skew torsion exists"
                          " if and only if N1 is skew-symmetric and xi is Killing";
  std::optional<TorsionConnection> sk;
  if (ctx.skew.killing >= htol) {
    c.rejection<NotKillingError>("t10-skew-connection", t10, [&] { skew_torsion_connection(s, htol, ctx.points, ctx.seed); });
  } else if (ctx.skew.skew_defect >= htol) {
    c.rejection<NotSkewError>("t10-skew-connection", t10, [&] { skew_torsion_connection(s, htol, ctx.points, ctx.seed); });
  } else {
    c.run("t10-skew-connection", t10, [&] {
      sk = skew_torsion_connection(s, htol, ctx.points, ctx.seed);
      const TensorField ng = covariant_derivative(sk->connection, s.g());
      const TensorField ne = covariant_derivative(sk->connection, s.eta());
      const TensorField np = covariant_derivative(sk->connection, s.phi());
      return sample_max(ctx, [&](Snapshot& sn, int) {
        return std::max({max_abs(sn(ng)), max_abs(sn(ne)), max_abs(sn(np)), skew_defect3(sn(sk->torsion3))});
      });
    });
    if (!sk) sk = skew_torsion_connection(s, htol, ctx.points, ctx.seed);
  }
  const bool ok = sk.has_value();

  std::optional<RicciForms> rf;
  TensorField nT;
  int order = 0;
  if (ok) {
    rf = ricci_forms(*sk, s);
    nT = covariant_derivative(sk->connection, sk->torsion3);
    order = required_order({&rf->nabla_t, &rf->rho, &rf->dt, &nT, &d.R, &d.nabla_xi});
  }
  auto over = [&](const std::function<double(Snapshot&)>& fn) {
    return [&, fn] { return sample_max(ctx, order, fn); };
  };

  c.run_if(ok, absent, "skew-xi-torsion", "xi _| T = 2 d eta", over([&](Snapshot& sn) {
             return max_abs_diff(einsum("a,abc->bc", sn(s.xi()), sn(sk->torsion3)), scaled(sn(d.deta), 2.0));
           }));
  const TensorField dF_phi = phi_forms(s).dF_phi;
  const bool normal_closed = ok && max_abs(ctx.at(0)(d.N1)) < htol && max_abs(ctx.at(0)(d.dF)) < htol;
  c.run_if(normal_closed, "N1 or dF does not vanish", "skew-torsion-normal",
           "N1 = 0 and dF = 0 give T = 2 eta ^ d eta + d^phi F with d^phi F = 0", over([&](Snapshot& sn) {
             const NumTensor T0 = scaled(wedge13(sn(s.eta()), sn(d.deta)), 2.0);
             return std::max(max_abs_diff(sn(sk->torsion3), T0), max_abs(sn(dF_phi)));
           }));
  c.run_if(ok && ps, ok ? not_ps : absent, "skew-torsion-parasasakian", "T = 2 eta ^ d eta", over([&](Snapshot& sn) {
             return max_abs_diff(sn(sk->torsion3), scaled(wedge13(sn(s.eta()), sn(d.deta)), 2.0));
           }));
  c.run_if(ok && ps, ok ? not_ps : absent, "skew-nabla-torsion", "nablā T = 0",
           over([&](Snapshot& sn) { return max_abs(sn(nT)); }));
  const bool closed = normal_closed && max_abs(ctx.at(0)(d.deta)) < htol;
  c.run_if(closed, "d eta, dF or N1 does not vanish", "skew-levi-civita",
           "T = 0 and nablā = nabla when d eta = 0, dF = 0 and N1 = 0", over([&](Snapshot& sn) {
             return max_abs_diff(sn(sk->connection.coefficients()), sn(d.lc.coefficients()));
           }));

  const std::string uniq =
      "a skew perturbation of T of norm 1e-3 breaks nablā g = nablā eta = nablā phi = 0 by >= 1e-4";
  if (ok) {
    c.witness("skew-uniqueness", uniq, 1e-4, [&] {
      const NumTensor delta = random_skew_form(s.manifold().dim(), 1e-3, ctx.seed);
      const int count = ctx.is_frame() ? 1 : std::min(ctx.points, 8);
      return perturbed_parallelism(s, *sk, delta, std::vector<Point>(ctx.pts.begin(), ctx.pts.begin() + count));
    });
  } else {
    c.skip("skew-uniqueness", uniq, absent);
  }

  c.run_if(ok, absent, "skew-basis-trace",
           "1/2 sum_i eps_i T(X,e_i,phi e_i) and 1/2 sum_i eps_i R(X,Y,e_i,phi e_i) agree with the g^ab traces over two phi-bases",
           [&] {
             const TensorField R4 = lower_curvature(riemann_curvature(sk->connection), s.g());
             double worst = 0.0;
             const int count = ctx.is_frame() ? 2 : std::min(ctx.points, 8);
             for (int i = 0; i < count; ++i) {
               Snapshot sn(s.manifold_ptr(), ctx.pts[i], required_order({&R4, &rf->rho}));
               for (std::uint64_t b = 0; b < 2; ++b) {
                 const auto basis = build_phi_basis(s, ctx.pts[i], ctx.seed + 1000 * b + static_cast<std::uint64_t>(i));
                 worst = std::max(worst, max_abs_diff(basis_trace(sn(sk->torsion3), basis, sn(s.g()), sn(s.phi())), sn(rf->t)));
                 worst = std::max(worst, max_abs_diff(basis_trace(sn(R4), basis, sn(s.g()), sn(s.phi())), sn(rf->rho)));
               }
             }
             return worst;
           });

  c.run_if(ok, absent, "skew-rho", "rho(X,Y) = Ric̄(X,phi Y) + (nablā_X t) Y + 1/2 dt(X,Y)", over([&](Snapshot& sn) {
             NumTensor rhs = axpy(einsum("xa,ay->xy", sn(rf->ric), sn(s.phi())), 1.0, sn(rf->nabla_t));
             rhs = axpy(rhs, 0.5, sn(rf->dt));
             return max_abs_diff(sn(rf->rho), rhs);
           }));
  const bool okps = ok && ps;
  const std::string why = ok ? not_ps : absent;
  c.run_if(okps, why, "skew-rho-parasasakian", "rho(X,phi Y) = Ric̄(X,Y) + 4(n-1)(g(X,Y) - eta(X) eta(Y))",
           over([&](Snapshot& sn) {
             const NumTensor& g = sn(s.g());
             const NumTensor& eta = sn(s.eta());
             const NumTensor lhs = einsum("xk,ky->xy", sn(rf->rho), sn(s.phi()));
             const NumTensor rhs = axpy(sn(rf->ric), 4.0 * (n - 1.0), axpy(g, -1.0, outer(eta, eta)));
             return max_abs_diff(lhs, rhs);
           }));
  c.run_if(okps, why, "skew-dt", "dt = 8(n-1) F",
           over([&](Snapshot& sn) { return max_abs_diff(sn(rf->dt), scaled(sn(d.F), 8.0 * (n - 1.0))); }));
  c.run_if(okps, why, "skew-nabla-t", "nablā t = 0", over([&](Snapshot& sn) { return max_abs(sn(rf->nabla_t)); }));
  c.run_if(okps, why, "skew-torsion-square", "g^ab g^cd T(X,E_a,E_c) T(Y,E_b,E_d) = -8g(X,Y) - 8(n-1) eta(X) eta(Y)",
           over([&](Snapshot& sn) {
             const NumTensor& gi = sn(d.g_inv);
             const NumTensor& T = sn(sk->torsion3);
             const NumTensor lhs = einsum("ab,cd,xac,ybd->xy", gi, gi, T, T);
             const NumTensor rhs = axpy(scaled(sn(s.g()), -8.0), -8.0 * (n - 1.0), outer(sn(s.eta()), sn(s.eta())));
             return max_abs_diff(lhs, rhs);
           }));
  c.run_if(okps, why, "skew-ricci", "Ric = Ric̄ - 2g - 2(n-1) eta x eta", over([&](Snapshot& sn) {
             NumTensor rhs = axpy(sn(rf->ric), -2.0, sn(s.g()));
             rhs = axpy(rhs, -2.0 * (n - 1.0), outer(sn(s.eta()), sn(s.eta())));
             return max_abs_diff(sn(d.Ric), rhs);
           }));
}

void phi_form_checks(SuiteContext& ctx, Collector& c) {
  const PacStructure& s = ctx.s;
  const auto& d = s.derived();
  const PhiForms forms = phi_forms(s);
  const int dim = s.manifold().dim();
  const NumTensor I = identity(dim);

  // dF^- as printed has dF(phi X,Y,Z) where the cyclic sum of the nabla phi
  // formula produces dF(phi X,phi Y,Z).
  auto minus_form = [&](Snapshot& sn, bool literal) {
    const NumTensor &dF = sn(d.dF), &phi = sn(s.phi());
    const NumTensor first = literal ? einsum("abz,ax->xbz", dF, phi) : einsum("abz,ax,by->xyz", dF, phi, phi);
    NumTensor lhs = axpy(dF, 1.0, first);
    lhs = axpy(lhs, 1.0, einsum("xbc,by,cz->xyz", dF, phi, phi));
    lhs = axpy(lhs, 1.0, einsum("ayc,ax,cz->xyz", dF, phi, phi));
    const NumTensor t = einsum("abc,cz->abz", sn(d.N1_low), phi);  // N1(a,b,phi c)
    NumTensor rhs = scaled(t, -1.0);
    rhs = axpy(rhs, -1.0, einsum("yzx->xyz", t));
    rhs = axpy(rhs, -1.0, einsum("zxy->xyz", t));
    if (literal) return std::max(max_abs_diff(sn(forms.dF_minus), lhs), max_abs_diff(sn(forms.dF_minus), rhs));
    return max_abs_diff(lhs, rhs);
  };
  c.run("phi-forms-minus-literal",
        "dF^-(X,Y,Z) = -N1(X,Y,phi Z) - N1(Y,Z,phi X) - N1(Z,X,phi Y),"
        " dF^- = dF(phi X,Y,Z) + dF(X,phi Y,phi Z) + dF(phi X,Y,phi Z) + dF(X,Y,Z)",
        [&] { return sample_max(ctx, [&](Snapshot& sn, int) { return minus_form(sn, true); }); });
  c.run("phi-forms-minus",
        "dF(phi X,phi Y,Z) + dF(X,phi Y,phi Z) + dF(phi X,Y,phi Z) + dF(X,Y,Z)"
        " = -N1(X,Y,phi Z) - N1(Y,Z,phi X) - N1(Z,X,phi Y)",
        [&] { return sample_max(ctx, [&](Snapshot& sn, int) { return minus_form(sn, false); }); });
  c.run("n1-phi-phi", "N1(X,Y,Z) = N1(phi X,phi Y,Z) + eta(Y) N1(X,xi,Z) + eta(X) N1(xi,Y,Z)", [&] {
    return sample_max(ctx, [&](Snapshot& sn, int) {
      const NumTensor &N1 = sn(d.N1_low), &phi = sn(s.phi()), &xi = sn(s.xi()), &eta = sn(s.eta());
      NumTensor rhs = einsum("abz,ax,by->xyz", N1, phi, phi);
      rhs = axpy(rhs, 1.0, einsum("y,xz->xyz", eta, einsum("abc,b->ac", N1, xi)));
      rhs = axpy(rhs, 1.0, einsum("x,yz->xyz", eta, einsum("abc,a->bc", N1, xi)));
      return max_abs_diff(N1, rhs);
    });
  });
  c.run("n1-nabla-phi",
        "N1(X,Y) = (nabla_{phi X} phi) Y - (nabla_{phi Y} phi) X + (nabla_X phi) phi Y - (nabla_Y phi) phi X"
        " - eta(X) nabla_Y xi + eta(Y) nabla_X xi",
        [&] {
          return sample_max(ctx, [&](Snapshot& sn, int) {
            const NumTensor &np = sn(d.nabla_phi), &phi = sn(s.phi()), &eta = sn(s.eta()), &nx = sn(d.nabla_xi);
            const NumTensor a = einsum("aij,ax,jy->xyi", np, phi, I);
            const NumTensor b = einsum("aij,ax,jy->xyi", np, I, phi);
            NumTensor rhs = axpy(a, -1.0, permuted(a, {1, 0, 2}));
            rhs = axpy(rhs, 1.0, b);
            rhs = axpy(rhs, -1.0, permuted(b, {1, 0, 2}));
            rhs = axpy(rhs, -1.0, einsum("x,yk->xyk", eta, nx));
            rhs = axpy(rhs, 1.0, einsum("y,xk->xyk", eta, nx));
            return max_abs_diff(sn(d.N1), rhs);
          });
        });

  const bool skew = ctx.skew.skew_defect < ctx.default_tol();
  const std::string not_skew = "N1 is not totally skew-symmetric";
  c.run_if(skew, not_skew, "skew-n1-nabla-xi-xi", "nabla_xi xi = xi _| d eta = 0", [&] {
    return sample_max(ctx, [&](Snapshot& sn, int) {
      return std::max(max_abs(einsum("a,ak->k", sn(s.xi()), sn(d.nabla_xi))), max_abs(mv(transposed(sn(d.deta)), sn(s.xi()))));
    });
  });
  c.run_if(skew, not_skew, "skew-n1-nabla-eta",
           "(nabla_X eta) Y + (nabla_Y eta) X = -(nabla_{phi X} eta) phi Y - (nabla_{phi Y} eta) phi X", [&] {
             return sample_max(ctx, [&](Snapshot& sn, int) {
               const NumTensor& ne = sn(d.nabla_eta);
               const NumTensor pp = einsum("ab,ax,by->xy", ne, sn(s.phi()), sn(s.phi()));
               return max_abs_diff(axpy(ne, 1.0, transposed(ne)), scaled(axpy(pp, 1.0, transposed(pp)), -1.0));
             });
           });
  c.run_if(skew, not_skew, "skew-n1-xi",
           "N1(phi X,Y,xi) = N1(X,phi Y,xi) = -N2(X,Y) = dF(X,Y,xi) = dF(phi X,phi Y,xi)", [&] {
             return sample_max(ctx, [&](Snapshot& sn, int) {
               const NumTensor &N1 = sn(d.N1_low), &phi = sn(s.phi()), &xi = sn(s.xi()), &dF = sn(d.dF), &N2 = sn(d.N2);
               const NumTensor a = einsum("abc,ax,c->xb", N1, phi, xi);
               const NumTensor b = einsum("abc,by,c->ay", N1, phi, xi);
               const NumTensor f = einsum("abc,c->ab", dF, xi);
               const NumTensor fp = einsum("abc,ax,by,c->xy", dF, phi, phi, xi);
               return std::max({max_abs_diff(a, b), max_abs(axpy(b, 1.0, N2)), max_abs(axpy(N2, 1.0, f)), max_abs_diff(f, fp)});
             });
           });
}

}  // namespace

void connection_checks(SuiteContext& ctx, Collector& c) {
  canonical_checks(ctx, c);
  skew_checks(ctx, c);
  phi_form_checks(ctx, c);
}

}  // namespace pac::detail
