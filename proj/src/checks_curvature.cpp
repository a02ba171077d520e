#include <algorithm>
#include <cmath>

#include "check_support.hpp"

namespace pac::detail {

namespace {

using Vals = std::vector<const JetTensor*>;

// Pointwise values used by most identities below.
struct At {
  At(Snapshot& sn, const PacStructure& s)
      : g(sn(s.g())), gi(sn(s.derived().g_inv)), phi(sn(s.phi())), xi(sn(s.xi())), eta(sn(s.eta())),
        F(sn(s.derived().F)), deta(sn(s.derived().deta)), h(sn(s.derived().h)), hl(sn(s.derived().h_low)),
        nxi(sn(s.derived().nabla_xi)), neta(sn(s.derived().nabla_eta)), nphi(sn(s.derived().nabla_phi)),
        nF(sn(s.derived().nabla_F)), R(sn(s.derived().R)), R4(sn(s.derived().R4)), Ric(sn(s.derived().Ric)) {}
  const NumTensor &g, &gi, &phi, &xi, &eta, &F, &deta, &h, &hl, &nxi, &neta, &nphi, &nF, &R, &R4, &Ric;

  NumTensor ee() const { return outer(eta, eta); }
  NumTensor hh() const { return einsum("ir,rj->ij", hl, h); }  // h_ir h^r_j
  NumTensor nphi_xy(const NumTensor& x, const NumTensor& y) const { return einsum("aij,a,j->i", nphi, x, y); }
  NumTensor r_op(const NumTensor& x, const NumTensor& y, const NumTensor& z) const {
    return einsum("abcm,a,b,c->m", R, x, y, z);
  }
};

}  // namespace

void curvature_checks(SuiteContext& ctx, Collector& c) {
  const PacStructure& s = ctx.s;
  const auto& d = s.derived();
  const int dim = s.manifold().dim();
  const double n = s.n();
  const NumTensor I = identity(dim);

  const bool pc = ctx.cls.paracontact.value;
  const bool ps = ctx.cls.paraSasakian.value;
  const std::string not_pc = "structure is not paracontact";
  const std::string not_ps = "structure is not paraSasakian";

  const TensorField phih = derived_field("phi h", Valence::endomorphism(), {s.phi(), d.h}, 0,
                                         [](EvalContext&, const Vals& v) { return einsum("ik,kj->ij", *v[0], *v[1]); });
  const TensorField nphih = covariant_derivative(d.lc, phih);

  auto vectors = [&](const char* stream, int i) {
    return std::array<NumTensor, 4>{ctx.vector(stream, i, 0), ctx.vector(stream, i, 1), ctx.vector(stream, i, 2),
                                    ctx.vector(stream, i, 3)};
  };

  // ---------------------------------------------------------------- nabla phi
  c.run("nabla-phi-general",
        "2g((nabla_X phi)Y,Z) = -dF(X,Y,Z) - dF(X,phi Y,phi Z) - N1(Y,Z,phi X) + N2(Y,Z) eta(X)"
        " - 2 d eta(phi Z,X) eta(Y) + 2 d eta(phi Y,X) eta(Z)",
        [&] {
          return sample_max(ctx, [&](Snapshot& sn, int i) {
            const At a(sn, s);
            const auto [X, Y, Z, W] = vectors("nabla-phi-general", i);
            const NumTensor &dF = sn(d.dF), &N1 = sn(d.N1_low), &N2 = sn(d.N2);
            const NumTensor pX = mv(a.phi, X), pY = mv(a.phi, Y), pZ = mv(a.phi, Z);
            const double lhs = 2.0 * form2(a.g, a.nphi_xy(X, Y), Z);
            const double rhs = -form3(dF, X, Y, Z) - form3(dF, X, pY, pZ) - form3(N1, Y, Z, pX) +
                               form2(N2, Y, Z) * dot(a.eta, X) - 2.0 * form2(a.deta, pZ, X) * dot(a.eta, Y) +
                               2.0 * form2(a.deta, pY, X) * dot(a.eta, Z);
            return std::abs(lhs - rhs);
          });
        });
  c.run_if(pc, not_pc, "nabla-phi-paracontact",
           "2g((nabla_X phi)Y,Z) = -N1(Y,Z,phi X) - 2 d eta(phi Z,X) eta(Y) + 2 d eta(phi Y,X) eta(Z)", [&] {
             return sample_max(ctx, [&](Snapshot& sn, int i) {
               const At a(sn, s);
               const auto [X, Y, Z, W] = vectors("nabla-phi-paracontact", i);
               const NumTensor pX = mv(a.phi, X), pY = mv(a.phi, Y), pZ = mv(a.phi, Z);
               const double lhs = 2.0 * form2(a.g, a.nphi_xy(X, Y), Z);
               const double rhs = -form3(sn(d.N1_low), Y, Z, pX) - 2.0 * form2(a.deta, pZ, X) * dot(a.eta, Y) +
                                  2.0 * form2(a.deta, pY, X) * dot(a.eta, Z);
               return std::abs(lhs - rhs);
             });
           });
  c.run_if(pc, not_pc, "nabla-phi-phi",
           "(nabla_{phi X} phi) phi Y - (nabla_X phi) Y = 2g(X,Y) xi - (X - hX + eta(X) xi) eta(Y)", [&] {
             return sample_max(ctx, [&](Snapshot& sn, int i) {
               const At a(sn, s);
               const auto [X, Y, Z, W] = vectors("nabla-phi-phi", i);
               const NumTensor lhs = axpy(a.nphi_xy(mv(a.phi, X), mv(a.phi, Y)), -1.0, a.nphi_xy(X, Y));
               NumTensor u = axpy(X, -1.0, mv(a.h, X));
               u = axpy(u, dot(a.eta, X), a.xi);
               const NumTensor rhs = axpy(scaled(a.xi, 2.0 * form2(a.g, X, Y)), -dot(a.eta, Y), u);
               return max_abs_diff(lhs, rhs);
             });
           });
  c.run_if(ps, not_ps, "parasasakian-nabla-phi", "(nabla_X phi) Y = -g(X,Y) xi + eta(Y) X", [&] {
    return sample_max(ctx, [&](Snapshot& sn, int i) {
      const At a(sn, s);
      const NumTensor X = ctx.vector("parasasakian-nabla-phi", i, 0), Y = ctx.vector("parasasakian-nabla-phi", i, 1);
      NumTensor r = axpy(a.nphi_xy(X, Y), form2(a.g, X, Y), a.xi);
      return max_abs(axpy(r, -dot(a.eta, Y), X));
    });
  });
  const std::string witness_formula = "max |(nabla_X phi) Y + g(X,Y) xi - eta(Y) X| >= 0.1 off paraSasakian";
  if (ps || !pc) {
    c.skip("parasasakian-nabla-phi-witness", witness_formula, ps ? "structure is paraSasakian" : not_pc);
  } else {
    c.witness("parasasakian-nabla-phi-witness", witness_formula, 0.1, [&] {
      return sample_max(ctx, [&](Snapshot& sn, int i) {
        const At a(sn, s);
        const NumTensor X = ctx.vector("parasasakian-nabla-phi", i, 0), Y = ctx.vector("parasasakian-nabla-phi", i, 1);
        NumTensor r = axpy(a.nphi_xy(X, Y), form2(a.g, X, Y), a.xi);
        return max_abs(axpy(r, -dot(a.eta, Y), X));
      });
    });
  }

  // ------------------------------------------------------- curvature along xi
  c.run_if(pc, not_pc, "nabla-h-xi", "(nabla_xi h) X = -phi X + h^2 phi X + phi R(xi,X) xi", [&] {
    return sample_max(ctx, [&](Snapshot& sn, int i) {
      const At a(sn, s);
      const NumTensor X = ctx.vector("nabla-h-xi", i, 0);
      const NumTensor lhs = einsum("aij,a,j->i", sn(d.nabla_h), a.xi, X);
      const NumTensor pX = mv(a.phi, X);
      NumTensor rhs = scaled(pX, -1.0);
      rhs = axpy(rhs, 1.0, mv(a.h, mv(a.h, pX)));
      rhs = axpy(rhs, 1.0, mv(a.phi, a.r_op(a.xi, X, a.xi)));
      return max_abs_diff(lhs, rhs);
    });
  });
  c.run_if(pc, not_pc, "curvature-xi-phi", "R(xi,X) xi + phi R(xi,phi X) xi = 2 phi^2 X - 2 h^2 X", [&] {
    return sample_max(ctx, [&](Snapshot& sn, int i) {
      const At a(sn, s);
      const NumTensor X = ctx.vector("curvature-xi-phi", i, 0);
      NumTensor lhs = axpy(a.r_op(a.xi, X, a.xi), 1.0, mv(a.phi, a.r_op(a.xi, mv(a.phi, X), a.xi)));
      const NumTensor rhs = axpy(scaled(mv(a.phi, mv(a.phi, X)), 2.0), -2.0, mv(a.h, mv(a.h, X)));
      return max_abs_diff(lhs, rhs);
    });
  });
  c.run_if(pc, not_pc, "ricci-xi-xi", "Ric(xi,xi) = -2n + |h|^2", [&] {
    return sample_max(ctx, [&](Snapshot& sn, int) {
      const At a(sn, s);
      return std::abs(form2(a.Ric, a.xi, a.xi) - (-2.0 * n + sn.scalar(d.norm_h)));
    });
  });
  c.run_if(ps, not_ps, "curvature-xi-k", "R(X,Y) xi = eta(X) Y - eta(Y) X", [&] {
    return sample_max(ctx, [&](Snapshot& sn, int) {
      const At a(sn, s);
      const NumTensor lhs = einsum("abcm,c->abm", a.R, a.xi);
      const NumTensor rhs = axpy(einsum("a,bm->abm", a.eta, I), -1.0, einsum("b,am->abm", a.eta, I));
      return max_abs_diff(lhs, rhs);
    });
  });
  c.run_if(pc, not_pc, "curvature-xi-nabla-f",
           "R(xi,X,Y,Z) = -(nabla_X F)(Y,Z) + g(X,(nabla_Y phi h) Z) - g(X,(nabla_Z phi h) Y)", [&] {
             return sample_max(ctx, [&](Snapshot& sn, int i) {
               const At a(sn, s);
               const auto [X, Y, Z, W] = vectors("curvature-xi-nabla-f", i);
               const NumTensor& nph = sn(nphih);
               const double lhs = form4(a.R4, a.xi, X, Y, Z);
               const double rhs = -form3(a.nF, X, Y, Z) + form2(a.g, X, einsum("aij,a,j->i", nph, Y, Z)) -
                                  form2(a.g, X, einsum("aij,a,j->i", nph, Z, Y));
               return std::abs(lhs - rhs);
             });
           });
  c.run_if(pc, not_pc, "curvature-xi-phi-sum",
           "R(xi,X,Y,Z) + R(xi,X,phi Y,phi Z) - R(xi,phi X,phi Y,Z) - R(xi,phi X,Y,phi Z)"
           " = -2(nabla_{hX} F)(Y,Z) + 2g(X - hX,Z) eta(Y) - 2g(X - hX,Y) eta(Z)",
           [&] {
             return sample_max(ctx, [&](Snapshot& sn, int i) {
               const At a(sn, s);
               const auto [X, Y, Z, W] = vectors("curvature-xi-phi-sum", i);
               const NumTensor pX = mv(a.phi, X), pY = mv(a.phi, Y), pZ = mv(a.phi, Z);
               const double lhs = form4(a.R4, a.xi, X, Y, Z) + form4(a.R4, a.xi, X, pY, pZ) -
                                  form4(a.R4, a.xi, pX, pY, Z) - form4(a.R4, a.xi, pX, Y, pZ);
               const NumTensor Xh = axpy(X, -1.0, mv(a.h, X));
               const double rhs = -2.0 * form3(a.nF, mv(a.h, X), Y, Z) + 2.0 * form2(a.g, Xh, Z) * dot(a.eta, Y) -
                                  2.0 * form2(a.g, Xh, Y) * dot(a.eta, Z);
               return std::abs(lhs - rhs);
             });
           });

  // ------------------------------------------------------------- index forms
  auto index_check = [&](const std::string& id, const std::string& formula, bool ok, const std::string& reason,
                         const std::function<double(Snapshot&, const At&)>& fn) {
    c.run_if(ok, reason, id, formula, [&] { return sample_max(ctx, [&](Snapshot& sn, int) { return fn(sn, At(sn, s)); }); });
  };

  index_check("nabla-eta-skew", "nabla_i eta_j - nabla_j eta_i = 2 phi_ij", pc, not_pc, [&](Snapshot&, const At& a) {
    return max_abs(axpy(axpy(a.neta, -1.0, transposed(a.neta)), -2.0, a.F));
  });
  index_check("divergence-phi", "nabla_r phi^r_j = 2n eta_j", pc, not_pc, [&](Snapshot&, const At& a) {
    return max_abs(axpy(einsum("rrj->j", a.nphi), -2.0 * n, a.eta));
  });
  index_check("nabla-xi-phi", "xi^r nabla_r phi^i_j = 0", pc, not_pc,
              [&](Snapshot&, const At& a) { return max_abs(einsum("r,rij->ij", a.xi, a.nphi)); });
  index_check("nabla-eta-phi-phi", "nabla_r eta_s phi^r_i phi^s_j = nabla_j eta_i", pc, not_pc, [&](Snapshot&, const At& a) {
    return max_abs_diff(einsum("rs,ri,sj->ij", a.neta, a.phi, a.phi), transposed(a.neta));
  });
  index_check("nabla-eta-phi-symmetric", "nabla_r eta_i phi^r_j and nabla_i eta_r phi^r_j are symmetric in i, j", pc, not_pc,
              [&](Snapshot&, const At& a) {
                const NumTensor A = einsum("ri,rj->ij", a.neta, a.phi);
                const NumTensor B = einsum("ir,rj->ij", a.neta, a.phi);
                return std::max(max_abs_diff(A, transposed(A)), max_abs_diff(B, transposed(B)));
              });
  index_check("nabla-eta", "nabla_i eta_j = phi_ij + phi_ir h^r_j", pc, not_pc, [&](Snapshot&, const At& a) {
    return max_abs_diff(a.neta, axpy(a.F, 1.0, einsum("ir,rj->ij", a.F, a.h)));
  });
  index_check("nabla-eta-square", "nabla_r eta_i nabla^r eta_j = -g_ij + eta_i eta_j - 2h_ij - h_ir h^r_j", pc, not_pc,
              [&](Snapshot&, const At& a) {
                const NumTensor lhs = einsum("rs,ri,sj->ij", a.gi, a.neta, a.neta);
                NumTensor rhs = axpy(a.ee(), -1.0, a.g);
                rhs = axpy(rhs, -2.0, a.hl);
                rhs = axpy(rhs, -1.0, a.hh());
                return max_abs_diff(lhs, rhs);
              });
  index_check("curvature-xi-xi", "R_irsj xi^r xi^s - R_arsb xi^r xi^s phi^a_i phi^b_j = -2g_ij + 2 eta_i eta_j + 2 h_ir h^r_j",
              pc, not_pc, [&](Snapshot&, const At& a) {
                const NumTensor rx = einsum("irsj,r,s->ij", a.R4, a.xi, a.xi);
                const NumTensor lhs = axpy(rx, -1.0, einsum("ab,ai,bj->ij", rx, a.phi, a.phi));
                NumTensor rhs = axpy(scaled(a.g, -2.0), 2.0, a.ee());
                rhs = axpy(rhs, 2.0, a.hh());
                return max_abs_diff(lhs, rhs);
              });
  index_check("ricci-xi", "Ric_jr xi^r = nabla_r nabla_j xi^r = nabla_r nabla^r eta_j - 4n eta_j", pc, not_pc,
              [&](Snapshot& sn, const At& a) {
                const NumTensor r1 = mv(a.Ric, a.xi);
                const NumTensor r2 = einsum("rjr->j", sn(d.nabla2_xi));
                const NumTensor r3 = axpy(einsum("rs,rsj->j", a.gi, sn(d.nabla2_eta)), -4.0 * n, a.eta);
                return std::max(max_abs_diff(r1, r2), max_abs_diff(r2, r3));
              });
  index_check("laplacian-phi",
              "phi^s_j nabla^r nabla_r phi_ks + phi^s_k nabla^r nabla_r phi_js = 2 nabla_r phi_sj nabla^r phi^s_k"
              " - Ric_jr xi^r eta_k - Ric_kr xi^r eta_j + 2 h_jr h^r_k + 4h_jk + 2g_jk - 2(4n+1) eta_j eta_k",
              pc, not_pc, [&](Snapshot& sn, const At& a) {
                const NumTensor lap = einsum("rs,rsij->ij", a.gi, sn(d.nabla2_F));
                const NumTensor lhs = axpy(einsum("sj,ks->jk", a.phi, lap), 1.0, einsum("sk,js->jk", a.phi, lap));
                const NumTensor rx = mv(a.Ric, a.xi);
                NumTensor rhs = scaled(einsum("rsj,rt,tsk->jk", a.nF, a.gi, a.nphi), 2.0);
                rhs = axpy(rhs, -1.0, outer(rx, a.eta));
                rhs = axpy(rhs, -1.0, outer(a.eta, rx));
                rhs = axpy(rhs, 2.0, a.hh());
                rhs = axpy(rhs, 4.0, a.hl);
                rhs = axpy(rhs, 2.0, a.g);
                rhs = axpy(rhs, -2.0 * (4.0 * n + 1.0), a.ee());
                return max_abs_diff(lhs, rhs);
              });

  auto pp = [&](Snapshot& sn, const At& a) {
    const NumTensor& P = sn(d.P);
    return einsum("rsi,rsj->ij", P, einsum("rsj,ra,sb->abj", P, a.gi, a.gi));
  };
  index_check("p-square", "P_rsi P^rs_j = nabla_r phi_si nabla^r phi^s_j + 2h_ij - g_ij - (2n-1) eta_i eta_j", pc, not_pc,
              [&](Snapshot& sn, const At& a) {
                NumTensor rhs = einsum("rsi,rt,tsj->ij", a.nF, a.gi, a.nphi);
                rhs = axpy(rhs, 2.0, a.hl);
                rhs = axpy(rhs, -1.0, a.g);
                rhs = axpy(rhs, -(2.0 * n - 1.0), a.ee());
                return max_abs_diff(pp(sn, a), rhs);
              });
  index_check("star-ricci-symmetric",
              "Ric*_ij + Ric*_ji = -Ric_ij + Ric_rs phi^r_i phi^s_j - 2(2n-1) g_ij + 2(n-1) eta_i eta_j"
              " + P_rsi P^rs_j + h_ir h^r_j",
              pc, not_pc, [&](Snapshot& sn, const At& a) {
                const NumTensor& rs = sn(d.ric_star);
                const NumTensor lhs = axpy(rs, 1.0, transposed(rs));
                NumTensor rhs = axpy(einsum("rs,ri,sj->ij", a.Ric, a.phi, a.phi), -1.0, a.Ric);
                rhs = axpy(rhs, -2.0 * (2.0 * n - 1.0), a.g);
                rhs = axpy(rhs, 2.0 * (n - 1.0), a.ee());
                rhs = axpy(rhs, 1.0, pp(sn, a));
                rhs = axpy(rhs, 1.0, a.hh());
                return max_abs_diff(lhs, rhs);
              });
  index_check("p-xi-square", "|P(xi)|^2 = |h|^2", pc, not_pc, [&](Snapshot& sn, const At& a) {
    const double via_pp = form2(pp(sn, a), a.xi, a.xi);
    return std::max(std::abs(via_pp - sn.scalar(d.norm_h)), std::abs(sn.scalar(d.norm_P_xi) - sn.scalar(d.norm_h)));
  });
  index_check("scalar-star-sum", "scal + scal* + 4n^2 = |h|^2 + 1/2 |nabla phi|^2 - 2n", pc, not_pc, [&](Snapshot& sn, const At&) {
    return std::abs(sn.scalar(d.scal) + sn.scalar(d.scal_star) + 4.0 * n * n -
                    (sn.scalar(d.norm_h) + 0.5 * sn.scalar(d.norm_nabla_phi) - 2.0 * n));
  });
  index_check("p-norm", "|P|^2 = |nabla phi|^2 - 4n", pc, not_pc, [&](Snapshot& sn, const At&) {
    return std::abs(sn.scalar(d.norm_P) - (sn.scalar(d.norm_nabla_phi) - 4.0 * n));
  });
  index_check("scalar-star-parasasakian", "scal + scal* + 4n^2 = 0", ps, not_ps, [&](Snapshot& sn, const At&) {
    return std::abs(sn.scalar(d.scal) + sn.scalar(d.scal_star) + 4.0 * n * n);
  });
  index_check("nabla-eta-parasasakian", "nabla_r eta_k = phi_rk", ps, not_ps,
              [&](Snapshot&, const At& a) { return max_abs_diff(a.neta, a.F); });
  index_check("phi-nabla-phi", "phi_j^s nabla_k phi_si - eta_i nabla_k eta_j = 0", pc && ctx.cls.integrable.value,
              "structure is not an integrable paracontact structure", [&](Snapshot&, const At& a) {
                return max_abs(axpy(einsum("sj,ksi->kji", a.phi, a.nF), -1.0, einsum("i,kj->kji", a.eta, a.neta)));
              });

  // ------------------------------------------------------ paraSasakian curvature
  c.run_if(ps, not_ps, "curvature-phi-derivation",
           "R(X,Y,phi Z,W) + R(X,Y,Z,phi W) = -d eta(X,W) g(Y,Z) + d eta(X,Z) g(Y,W) - d eta(Y,Z) g(X,W) + d eta(Y,W) g(X,Z)",
           [&] {
             return sample_max(ctx, [&](Snapshot& sn, int i) {
               const At a(sn, s);
               const auto [X, Y, Z, W] = vectors("curvature-phi-derivation", i);
               const double lhs = form4(a.R4, X, Y, mv(a.phi, Z), W) + form4(a.R4, X, Y, Z, mv(a.phi, W));
               const double rhs = -form2(a.deta, X, W) * form2(a.g, Y, Z) + form2(a.deta, X, Z) * form2(a.g, Y, W) -
                                  form2(a.deta, Y, Z) * form2(a.g, X, W) + form2(a.deta, Y, W) * form2(a.g, X, Z);
               return std::abs(lhs - rhs);
             });
           });
  c.run_if(ps, not_ps, "curvature-phi-invariance",
           "R(phi X,phi Y,phi Z,phi W) = R(X,Y,Z,W) + eta(X) eta(W) g(Y,Z) + eta(Y) eta(Z) g(X,W)"
           " - eta(Y) eta(W) g(X,Z) - eta(X) eta(Z) g(Y,W)",
           [&] {
             return sample_max(ctx, [&](Snapshot& sn, int i) {
               const At a(sn, s);
               const auto [X, Y, Z, W] = vectors("curvature-phi-invariance", i);
               const double ex = dot(a.eta, X), ey = dot(a.eta, Y), ez = dot(a.eta, Z), ew = dot(a.eta, W);
               const double lhs = form4(a.R4, mv(a.phi, X), mv(a.phi, Y), mv(a.phi, Z), mv(a.phi, W));
               const double rhs = form4(a.R4, X, Y, Z, W) + ex * ew * form2(a.g, Y, Z) + ey * ez * form2(a.g, X, W) -
                                  ey * ew * form2(a.g, X, Z) - ex * ez * form2(a.g, Y, W);
               return std::abs(lhs - rhs);
             });
           });

  // The printed sectional identity, with the eta(Y)^2 g(X,X) term it needs,
  // and its restriction to horizontal vectors.
  auto sectional = [&](Snapshot& sn, int i, bool horizontal_only, double ey2_coeff) {
    const At a(sn, s);
    NumTensor X = ctx.vector("curvature-phi-sectional", i, 0), Y = ctx.vector("curvature-phi-sectional", i, 1);
    if (horizontal_only) {
      X = horizontal(a.phi, X);
      Y = horizontal(a.phi, Y);
    }
    const NumTensor pX = mv(a.phi, X), pY = mv(a.phi, Y);
    const double ex = dot(a.eta, X), ey = dot(a.eta, Y);
    const double gxy = form2(a.g, X, Y), dxy = form2(a.deta, X, Y);
    const double lhs = form4(a.R4, X, pX, Y, pY);
    const double rhs = -form4(a.R4, X, Y, X, Y) + form4(a.R4, X, pY, X, pY) + ex * ey * gxy +
                       ey2_coeff * ey * ey * form2(a.g, X, X) +
                       2.0 * (dxy * dxy - gxy * gxy + form2(a.g, X, X) * form2(a.g, Y, Y));
    return std::abs(lhs - rhs);
  };
  const std::string sectional_rhs =
      "R(X,phi X,Y,phi Y) = -R(X,Y,X,Y) + R(X,phi Y,X,phi Y) + eta(X) eta(Y) g(X,Y)"
      " + 2(d eta(X,Y)^2 - g(X,Y)^2 + g(X,X) g(Y,Y))";
  c.run_if(ps, not_ps, "curvature-phi-sectional-literal", sectional_rhs,
           [&] { return sample_max(ctx, [&](Snapshot& sn, int i) { return sectional(sn, i, false, 0.0); }); });
  c.run_if(ps, not_ps, "curvature-phi-sectional",
           "R(X,phi X,Y,phi Y) = -R(X,Y,X,Y) + R(X,phi Y,X,phi Y) + eta(X) eta(Y) g(X,Y) - eta(Y)^2 g(X,X)"
           " + 2(d eta(X,Y)^2 - g(X,Y)^2 + g(X,X) g(Y,Y))",
           [&] { return sample_max(ctx, [&](Snapshot& sn, int i) { return sectional(sn, i, false, -1.0); }); });
  c.run_if(ps, not_ps, "curvature-phi-sectional-horizontal", sectional_rhs + ", for X, Y orthogonal to xi",
           [&] { return sample_max(ctx, [&](Snapshot& sn, int i) { return sectional(sn, i, true, 0.0); }); });

  index_check("ricci-phi-skew-literal", "Ric(X,phi Y) + Ric(phi X,Y) = -d eta(X,Y)", ps, not_ps, [&](Snapshot&, const At& a) {
    NumTensor t = axpy(einsum("xk,ky->xy", a.Ric, a.phi), 1.0, einsum("ky,kx->xy", a.Ric, a.phi));
    return max_abs(axpy(t, 1.0, a.deta));
  });
  index_check("ricci-phi-skew", "Ric(X,phi Y) + Ric(phi X,Y) = 0", ps, not_ps, [&](Snapshot&, const At& a) {
    return max_abs(axpy(einsum("xk,ky->xy", a.Ric, a.phi), 1.0, einsum("ky,kx->xy", a.Ric, a.phi)));
  });
  index_check("ricci-phi-trace",
              "Ric(X,Y) = 1/2 g^ab R(X,phi Y,E_a,phi E_b) - (2n-1) g(X,Y) - eta(X) eta(Y)", ps, not_ps,
              [&](Snapshot&, const At& a) {
                const NumTensor t = einsum("ab,xkac,cb->xk", a.gi, a.R4, a.phi);
                NumTensor rhs = scaled(einsum("xk,ky->xy", t, a.phi), 0.5);
                rhs = axpy(rhs, -(2.0 * n - 1.0), a.g);
                rhs = axpy(rhs, -1.0, a.ee());
                return max_abs_diff(a.Ric, rhs);
              });
  index_check("ricci-phi-phi", "Ric(phi X,phi Y) = -Ric(X,Y) - 2n eta(X) eta(Y)", ps, not_ps, [&](Snapshot&, const At& a) {
    NumTensor t = axpy(einsum("ab,ax,by->xy", a.Ric, a.phi, a.phi), 1.0, a.Ric);
    return max_abs(axpy(t, 2.0 * n, a.ee()));
  });
  c.run_if(ps, not_ps, "nabla-ricci-cyclic",
           "(nabla_Z Ric)(X,Y) = (nabla_X Ric)(Y,Z) - (nabla_{phi Y} Ric)(phi X,Z) - eta(X) Ric(phi Y,Z)"
           " - 2 eta(Y) Ric(phi X,Z) - 2n eta(X) g(phi Y,Z) - 4n eta(Y) g(phi X,Z)",
           [&] {
             return sample_max(ctx, [&](Snapshot& sn, int i) {
               const At a(sn, s);
               const auto [X, Y, Z, W] = vectors("nabla-ricci-cyclic", i);
               const NumTensor& nr = sn(d.nabla_ric);
               const NumTensor pX = mv(a.phi, X), pY = mv(a.phi, Y);
               const double ex = dot(a.eta, X), ey = dot(a.eta, Y);
               const double rhs = form3(nr, X, Y, Z) - form3(nr, pY, pX, Z) - ex * form2(a.Ric, pY, Z) -
                                  2.0 * ey * form2(a.Ric, pX, Z) - 2.0 * n * ex * form2(a.g, pY, Z) -
                                  4.0 * n * ey * form2(a.g, pX, Z);
               return std::abs(form3(nr, Z, X, Y) - rhs);
             });
           });

  // ------------------------------------------------------------- Riemann basics
  index_check("curvature-symmetries", "R(X,Y,Z,W) = -R(Y,X,Z,W) = -R(X,Y,W,Z) = R(Z,W,X,Y)", true, "",
              [&](Snapshot&, const At& a) {
                return std::max({max_abs(axpy(a.R4, 1.0, permuted(a.R4, {1, 0, 2, 3}))),
                                 max_abs(axpy(a.R4, 1.0, permuted(a.R4, {0, 1, 3, 2}))),
                                 max_abs_diff(a.R4, permuted(a.R4, {2, 3, 0, 1}))});
              });
  index_check("bianchi-first", "R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0", true, "", [&](Snapshot&, const At& a) {
    NumTensor t = axpy(a.R, 1.0, permuted(a.R, {1, 2, 0, 3}));
    return max_abs(axpy(t, 1.0, permuted(a.R, {2, 0, 1, 3})));
  });
  {
    const TensorField nR = covariant_derivative(d.lc, d.R4);
    index_check("bianchi-second", "(nabla_X R)(Y,Z) + (nabla_Y R)(Z,X) + (nabla_Z R)(X,Y) = 0", true, "",
                [&, nR](Snapshot& sn, const At&) {
                  const NumTensor& t = sn(nR);  // t(e,a,b,c,d) = nabla_e R(a,b,c,d)
                  NumTensor sum = axpy(t, 1.0, permuted(t, {1, 2, 0, 3, 4}));
                  return max_abs(axpy(sum, 1.0, permuted(t, {2, 0, 1, 3, 4})));
                });
  }
}

}  // namespace pac::detail
