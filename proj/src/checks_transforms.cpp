#include <cmath>
#include <sstream>

#include "check_support.hpp"
#include "pac/errors.hpp"
#include "pac/transforms.hpp"

namespace pac::detail {

namespace {

constexpr double kEps = 0.05;
constexpr int kLawPoints = 32;

std::string tag(double alpha) {
  std::ostringstream os;
  os << alpha;
  return "@" + os.str();
}

double structure_distance(Snapshot& sn, const PacStructure& a, const PacStructure& b) {
  return std::max({max_abs_diff(sn(a.g()), sn(b.g())), max_abs_diff(sn(a.phi()), sn(b.phi())),
                   max_abs_diff(sn(a.xi()), sn(b.xi())), max_abs_diff(sn(a.eta()), sn(b.eta()))});
}

// f = (first y-coordinate)^2, the test function of the Laplacian law.
ScalarField y_squared(const ManifoldPtr& m) {
  const int dim = m->dim();
  const int y = m->half_dim();
  return chart_field(m, Valence::scalar(), "y^2", [dim, y](std::span<const Jet> x) {
    JetTensor t(dim, 0, Jet(0.0));
    t[0] = x[y] * x[y];
    return t;
  });
}

void gauge_checks(SuiteContext& ctx, Collector& c) {
  const PacStructure& s = ctx.s;
  const auto& d = s.derived();
  const ManifoldPtr& m = s.manifold_ptr();
  const bool pc = ctx.cls.paracontact.value;
  const bool chart = !ctx.is_frame();
  const std::string not_pc = "structure is not paracontact";

  // A varying gauge needs coordinates; on a frame only constants are available.
  const ScalarField sigma = sigma_preset(m, chart ? "exp-bump" : "constant", kEps);
  const ScalarField sigma_inv =
      chart ? sigma_preset(m, "exp-bump", -kEps) : constant_scalar(m, 1.0 / (1.0 + kEps), "1/sigma");

  std::optional<PacStructure> st;
  std::string st_error;
  if (pc) {
    try {
      st = gauge_transform(s, sigma, ctx.points, ctx.seed);
    } catch (const std::exception& e) {
      st_error = e.what();
    }
  }
  auto need = [&] {
    if (!st) throw PositivityError(st_error);
    return *st;
  };
  const GaugeData gd = gauge_data(s, sigma);
  int order = 0;
  if (st) {
    const auto& dt = st->derived();
    order = required_order({&dt.F, &dt.deta, &dt.g_inv, &d.F, &gd.zeta, &gd.dsigma});
  }
  auto over = [&](const std::function<double(Snapshot&)>& fn) {
    return [&, fn] {
      need();
      return sample_max(ctx, order, fn);
    };
  };

  c.run_if(pc, not_pc, "gauge-axioms", "the gauge transformed (phi~, xi~, sigma eta, g~) satisfies the structure axioms",
           [&] { return validate_structure(need(), ctx.points, ctx.seed).max(); });
  c.run_if(pc, not_pc, "gauge-paracontact", "F~ = d eta~ for eta~ = sigma eta", over([&](Snapshot& sn) {
             return max_abs_diff(sn(st->derived().F), sn(st->derived().deta));
           }));
  c.run_if(pc, not_pc, "gauge-phi-on-d", "phi~ X = phi X for X in D", over([&](Snapshot& sn) {
             const NumTensor& phi = sn(s.phi());
             const NumTensor p2 = einsum("ik,kj->ij", phi, phi);
             return max_abs(einsum("ik,kj->ij", axpy(sn(st->phi()), -1.0, phi), p2));
           }));
  c.run_if(pc, not_pc, "gauge-fundamental-form", "2 phi~_ij = sigma_i eta_j - sigma_j eta_i + 2 sigma phi_ij",
           over([&](Snapshot& sn) {
             const NumTensor& ds = sn(gd.dsigma);
             const NumTensor& eta = sn(s.eta());
             NumTensor rhs = axpy(outer(ds, eta), -1.0, outer(eta, ds));
             rhs = axpy(rhs, 2.0 * sn.scalar(sigma), sn(d.F));
             return max_abs_diff(scaled(sn(st->derived().F), 2.0), rhs);
           }));
  c.run_if(pc, not_pc, "gauge-xi", "xi~^k = (1/sigma) xi^k - (1/2 sigma^2) phi^k_j sigma^j = (xi^k + zeta^k)/sigma",
           over([&](Snapshot& sn) {
             const double sg = sn.scalar(sigma);
             const NumTensor up = mv(sn(d.g_inv), sn(gd.dsigma));
             const NumTensor lit = axpy(scaled(sn(s.xi()), 1.0 / sg), -0.5 / (sg * sg), mv(sn(s.phi()), up));
             const NumTensor viaz = scaled(axpy(sn(s.xi()), 1.0, sn(gd.zeta)), 1.0 / sg);
             return std::max(max_abs_diff(sn(st->xi()), lit), max_abs_diff(sn(st->xi()), viaz));
           }));
  c.run_if(pc, not_pc, "gauge-phi-raised", "phi~^jk = (1/sigma) phi^jk", over([&](Snapshot& sn) {
             const NumTensor& gti = sn(st->derived().g_inv);
             const NumTensor& gi = sn(d.g_inv);
             const NumTensor lhs = einsum("ja,kb,ab->jk", gti, gti, sn(st->derived().F));
             const NumTensor rhs = scaled(einsum("ja,kb,ab->jk", gi, gi, sn(d.F)), 1.0 / sn.scalar(sigma));
             return max_abs_diff(lhs, rhs);
           }));
  c.run_if(pc, not_pc, "gauge-inverse-metric", "sigma (g~^jk - xi~^j xi~^k) = g^jk - xi^j xi^k", over([&](Snapshot& sn) {
             const NumTensor& xt = sn(st->xi());
             const NumTensor lhs = scaled(axpy(sn(st->derived().g_inv), -1.0, outer(xt, xt)), sn.scalar(sigma));
             const NumTensor& xi = sn(s.xi());
             return max_abs_diff(lhs, axpy(sn(d.g_inv), -1.0, outer(xi, xi)));
           }));
  c.run_if(pc, not_pc, "gauge-xi-sigma", "xi~ sigma = (1/sigma) xi sigma", over([&](Snapshot& sn) {
             const NumTensor& ds = sn(gd.dsigma);
             return std::abs(dot(sn(st->xi()), ds) - dot(sn(s.xi()), ds) / sn.scalar(sigma));
           }));
  c.run_if(pc, not_pc, "gauge-zeta-horizontal", "eta(zeta) = 0",
           over([&](Snapshot& sn) { return std::abs(dot(sn(s.eta()), sn(gd.zeta))); }));

  const double rt_tol = 2.0 * ctx.tol;
  const std::string rt = "gauging by sigma and then by 1/sigma gives back (phi, xi, eta, g)";
  if (pc) {
    c.run_tol("gauge-round-trip", rt, rt_tol, [&] {
      const PacStructure back = gauge_transform(need(), sigma_inv, ctx.points, ctx.seed);
      return sample_max(ctx, required_order({&back.g(), &back.phi(), &back.xi()}),
                        [&](Snapshot& sn) { return structure_distance(sn, back, s); });
    });
  } else {
    c.skip("gauge-round-trip", rt, not_pc);
  }

  c.run_if(pc, not_pc, "gauge-constant-homothety", "a constant gauge sigma = alpha is the D-homothety with the same alpha", [&] {
    const double alpha = 1.0 + kEps;
    const PacStructure a = gauge_transform(s, constant_scalar(m, alpha, "alpha"), ctx.points, ctx.seed);
    const PacStructure b = d_homothetic(s, alpha);
    return sample_max(ctx, required_order({&a.g(), &a.phi(), &a.xi(), &b.g()}),
                      [&](Snapshot& sn) { return structure_distance(sn, a, b); });
  });

  c.run_if(pc, not_pc, "f61-w1-law",
           "sigma W1~ = W1 - (2(n+1)/sigma) Lap_D sigma - ((n+1)(n-2)/sigma^2) |d sigma|^2_D",
           [&] { return verify_w1_law(s, sigma, kLawPoints, ctx.seed).residual; }, kLawPoints);

  const bool lap_ok = pc && chart;
  const std::string lap_why = pc ? "a test function needs a coordinate chart" : not_pc;
  const ScalarField f = chart ? y_squared(m) : ScalarField();
  c.run_if(lap_ok, lap_why, "gauge-laplacian-law", "Lap~_D f = (1/sigma) Lap_D f + (n/sigma^2)(d sigma; df)_D, f = y^2",
           [&] { return verify_laplacian_law(s, sigma, f, kLawPoints, ctx.seed).residual; }, kLawPoints);
  c.run_if(chart, "a test function needs a coordinate chart", "d-inner-norm", "|df|^2_D = |df|^2 - (xi f)^2, f = y^2", [&] {
    const ScalarField norm = d_inner(s, f, f);
    const TensorField df = exterior_derivative(f);
    return sample_max(ctx, required_order({&norm, &df, &d.g_inv}), [&](Snapshot& sn) {
      const NumTensor& w = sn(df);
      const double xf = dot(sn(s.xi()), w);
      return std::abs(sn.scalar(norm) - (form2(sn(d.g_inv), w, w) - xf * xf));
    });
  });
}

void homothety_checks(SuiteContext& ctx, Collector& c, double alpha) {
  const PacStructure& s = ctx.s;
  const auto& d = s.derived();
  const double n = s.n();
  const double beta = alpha * (alpha - 1.0);
  const bool pc = ctx.cls.paracontact.value;
  const bool kpc = ctx.cls.K_paracontact.value;
  const std::string t = tag(alpha);
  const std::string not_pc = "structure is not paracontact";
  const std::string not_k = "structure is not K-paracontact";

  const PacStructure sb = d_homothetic(s, alpha);
  const auto& db = sb.derived();
  const int order = required_order({&db.R, &db.Ric, &db.scal, &d.R, &d.nabla_phi});
  auto over = [&](const std::function<double(Snapshot&)>& fn) {
    return [&, fn] { return sample_max(ctx, order, fn); };
  };

  c.run_if(pc, not_pc, "dhom-paracontact" + t, "the D-homothetic structure is paracontact: F = d eta", over([&](Snapshot& sn) {
             return max_abs_diff(sn(db.F), sn(db.deta));
           }));
  c.run_if(pc, not_pc, "dhom-flags" + t, "D-homothety preserves the K-paracontact and paraSasakian properties", [&] {
    const ClassificationReport cb = classify(sb, ctx.default_tol(), ctx.points, ctx.seed);
    return cb.K_paracontact.value == kpc && cb.paraSasakian.value == ctx.cls.paraSasakian.value ? 0.0 : 1.0;
  });
  c.run_if(pc, not_pc, "dhom-inverse-metric" + t, "gb^ij = (1/alpha) g^ij - beta/(alpha(alpha+beta)) xi^i xi^j",
           over([&](Snapshot& sn) {
             const NumTensor& xi = sn(s.xi());
             const NumTensor rhs = axpy(scaled(sn(d.g_inv), 1.0 / alpha), -beta / (alpha * (alpha + beta)), outer(xi, xi));
             return max_abs_diff(sn(db.g_inv), rhs);
           }));
  // Difference of the Levi-Civita connections; `sign` is that of the xi term,
  // printed as minus, plus when derived from the Koszul formula.
  auto connection = [&](Snapshot& sn, double sign) {
    const NumTensor W = axpy(sn(db.lc.coefficients()), -1.0, sn(d.lc.coefficients()));
    const NumTensor &phi = sn(s.phi()), &eta = sn(s.eta()), &ne = sn(d.nabla_eta);
    NumTensor rhs = scaled(axpy(einsum("ij,k->jki", phi, eta), 1.0, einsum("ik,j->jki", phi, eta)), -beta / alpha);
    rhs = axpy(rhs, sign * beta / (2.0 * (alpha + beta)), einsum("i,jk->jki", sn(s.xi()), axpy(ne, 1.0, transposed(ne))));
    return max_abs_diff(W, rhs);
  };
  c.run_if(pc, not_pc, "dhom-connection-literal" + t,
           "W^i_jk = -(beta/alpha)(phi^i_j eta_k + phi^i_k eta_j) - beta/(2(alpha+beta)) xi^i (nabla_j eta_k + nabla_k eta_j)",
           over([&](Snapshot& sn) { return connection(sn, -1.0); }));
  c.run_if(pc, not_pc, "dhom-connection" + t,
           "W^i_jk = -(beta/alpha)(phi^i_j eta_k + phi^i_k eta_j) + beta/(2(alpha+beta)) xi^i (nabla_j eta_k + nabla_k eta_j)",
           over([&](Snapshot& sn) { return connection(sn, 1.0); }));

  // Curvature of the deformed metric, with the phi-phi block as printed and as
  // it comes out of substituting W into the difference formula.
  auto curvature = [&](Snapshot& sn, double sign) {
    const NumTensor &phi = sn(s.phi()), &F = sn(d.F), &eta = sn(s.eta()), &np = sn(d.nabla_phi);
    const NumTensor I = identity(s.manifold().dim());
    NumTensor pp = scaled(einsum("lk,ij->ijkl", phi, F), 2.0);
    pp = axpy(pp, -sign, einsum("lj,ik->ijkl", phi, F));
    pp = axpy(pp, sign, einsum("li,jk->ijkl", phi, F));
    NumTensor rhs = axpy(sn(d.R), -beta / alpha, pp);
    NumTensor dp = einsum("jli,k->ijkl", np, eta);
    dp = axpy(dp, 1.0, einsum("jlk,i->ijkl", np, eta));
    dp = axpy(dp, -1.0, einsum("ilj,k->ijkl", np, eta));
    dp = axpy(dp, -1.0, einsum("ilk,j->ijkl", np, eta));
    rhs = axpy(rhs, beta / alpha, dp);
    NumTensor ee = axpy(einsum("lj,i,k->ijkl", I, eta, eta), -1.0, einsum("li,j,k->ijkl", I, eta, eta));
    rhs = axpy(rhs, beta * beta / (alpha * alpha), ee);
    return max_abs_diff(sn(db.R), rhs);
  };
  c.run_if(kpc, not_k, "dhom-curvature-literal" + t,
           "Rb^l_ijk = R^l_ijk - (beta/alpha)(2 phi^l_k phi_ij - phi^l_j phi_ik + phi^l_i phi_jk)"
           " + (beta/alpha)(nabla_j phi^l_i eta_k + nabla_j phi^l_k eta_i - nabla_i phi^l_j eta_k - nabla_i phi^l_k eta_j)"
           " + (beta^2/alpha^2)(delta^l_j eta_i eta_k - delta^l_i eta_j eta_k)",
           over([&](Snapshot& sn) { return curvature(sn, 1.0); }));
  c.run_if(kpc, not_k, "dhom-curvature" + t,
           "Rb^l_ijk = R^l_ijk - (beta/alpha)(2 phi^l_k phi_ij + phi^l_j phi_ik - phi^l_i phi_jk)"
           " + (beta/alpha)(nabla_j phi^l_i eta_k + nabla_j phi^l_k eta_i - nabla_i phi^l_j eta_k - nabla_i phi^l_k eta_j)"
           " + (beta^2/alpha^2)(delta^l_j eta_i eta_k - delta^l_i eta_j eta_k)",
           over([&](Snapshot& sn) { return curvature(sn, -1.0); }));
  c.run_if(kpc, not_k, "dhom-ricci" + t,
           "Ricb_jk = Ric_jk + 2(beta/alpha) g_jk - 2(beta/alpha^2)((2n+1) alpha + n beta) eta_j eta_k",
           over([&](Snapshot& sn) {
             NumTensor rhs = axpy(sn(d.Ric), 2.0 * beta / alpha, sn(s.g()));
             rhs = axpy(rhs, -2.0 * beta / (alpha * alpha) * ((2.0 * n + 1.0) * alpha + n * beta),
                        outer(sn(s.eta()), sn(s.eta())));
             return max_abs_diff(sn(db.Ric), rhs);
           }));
  c.run_if(kpc, not_k, "dhom-scalar-law" + t, "scalb = (1/alpha) scal + 2n beta/alpha^2", over([&](Snapshot& sn) {
             return std::abs(sn.scalar(db.scal) - (sn.scalar(d.scal) / alpha + 2.0 * n * beta / (alpha * alpha)));
           }));

  const bool ee = ctx.cls.paraSasakian.value && ctx.cls.eta_einstein.has_value();
  c.run_if(ee, "structure is not eta-Einstein paraSasakian", "dhom-eta-einstein" + t,
           "Ricb = (scalb/2n + 1) gb - (2n + 1 + scalb/2n) etab x etab", over([&](Snapshot& sn) {
             const double sc = sn.scalar(db.scal);
             const NumTensor& eb = sn(sb.eta());
             const NumTensor rhs = axpy(scaled(sn(sb.g()), sc / (2.0 * n) + 1.0), -(2.0 * n + 1.0 + sc / (2.0 * n)), outer(eb, eb));
             return max_abs_diff(sn(db.Ric), rhs);
           }));
}

void einstein_checks(SuiteContext& ctx, Collector& c) {
  const PacStructure& s = ctx.s;
  const double n = s.n();
  const bool kpc = ctx.cls.K_paracontact.value;
  const bool ps = ctx.cls.paraSasakian.value;
  const std::string not_k = "structure is not K-paracontact";
  const std::string no_fit = "Ricci tensor is not of the form a g + b eta x eta";

  const EtaEinsteinReport fit = eta_einstein_check(s, ctx.default_tol(), ctx.points, ctx.seed);
  const bool has = fit.fit.has_value();
  const std::string why = kpc ? no_fit : not_k;
  c.run_if(has, why, "eta-einstein-sum", "a + b = -2n", [&] { return fit.sum_defect; });
  c.run_if(has, why, "eta-einstein-closed-form", "Ric = (scal/2n + 1) g - (2n + 1 + scal/2n) eta x eta",
           [&] { return fit.closed_form_defect; });
  c.run_if(has && ps, has ? "structure is not paraSasakian" : why, "eta-einstein-constant",
           "a, b and scal are constant on an eta-Einstein paraSasakian manifold", [&] { return fit.fit->spread; });

  const std::string formula = "alpha = (2n - scal)/(4n^2 + 4n) gives scalb = -2n(2n+1) and Ricb = -2n gb";
  if (!(has && ps)) {
    c.skip("einsteinize", formula, has ? "structure is not paraSasakian" : why);
    c.skip("einsteinize-rho", "rhob = 0 for the skew torsion connection of the Einstein structure, n = 1",
           has ? "structure is not paraSasakian" : why);
    return;
  }
  if (std::abs(fit.scal - 2.0 * n) <= 1e-6) {
    c.rejection<DegenerateScaleError>("einsteinize", formula,
                                      [&] { einsteinize(s, ctx.default_tol(), ctx.points, ctx.seed); });
    c.skip("einsteinize-rho", "rhob = 0 for the skew torsion connection of the Einstein structure, n = 1",
           "scal = 2n, no Einstein D-homothetic structure");
    return;
  }
  std::optional<Einsteinized> ez;
  c.run("einsteinize", formula, [&] {
    ez = einsteinize(s, ctx.default_tol(), ctx.points, ctx.seed);
    const auto& de = ez->structure.derived();
    return sample_max(ctx, required_order({&de.Ric, &de.scal}), [&](Snapshot& sn) {
      return std::max(std::abs(sn.scalar(de.scal) + 2.0 * n * (2.0 * n + 1.0)),
                      max_abs(axpy(sn(de.Ric), 2.0 * n, sn(ez->structure.g()))));
    });
  });
  c.run_if(ez.has_value() && s.n() == 1, ez ? "n > 1" : "einsteinize failed", "einsteinize-rho",
           "rhob = 0 for the skew torsion connection of the Einstein structure, n = 1", [&] {
             const TorsionConnection sk = skew_torsion_connection(ez->structure, ctx.default_tol(), ctx.points, ctx.seed);
             const RicciForms rf = ricci_forms(sk, ez->structure);
             return sample_max(ctx, required_order({&rf.rho}), [&](Snapshot& sn) { return max_abs(sn(rf.rho)); });
           });
}

}  // namespace

void transform_checks(SuiteContext& ctx, Collector& c) {
  gauge_checks(ctx, c);
  for (double alpha : {0.5, 2.0, 3.0}) homothety_checks(ctx, c, alpha);
  c.run("dhom-composition", "D-homothety by alpha and then alpha' equals D-homothety by alpha alpha'", [&] {
    const PacStructure a = d_homothetic(d_homothetic(ctx.s, 2.0), 3.0);
    const PacStructure b = d_homothetic(ctx.s, 6.0);
    return sample_max(ctx, required_order({&a.g(), &b.g()}), [&](Snapshot& sn) { return structure_distance(sn, a, b); });
  });
  einstein_checks(ctx, c);
}

}  // namespace pac::detail
