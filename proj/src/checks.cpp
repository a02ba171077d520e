#include "pac/checks.hpp"

#include <algorithm>
#include <cmath>

#include "check_support.hpp"
#include "pac/errors.hpp"

namespace pac {

namespace detail {

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

int structure_order(const PacStructure& s) {
  const auto& d = s.derived();
  return required_order({&d.nabla_ric, &d.nabla2_F, &d.nabla2_xi, &d.nabla2_eta, &d.nabla_h, &d.ric_star, &d.P});
}

}  // namespace

SuiteContext::SuiteContext(const ZooEntry& e, const RunOptions& o)
    : entry(e),
      s(e.structure),
      points(o.points),
      seed(o.seed),
      tol(o.tol.value_or(default_tolerance(e.structure.manifold()))),
      pts(e.structure.manifold().sample_points(o.points, o.seed)),
      cls(classify(e.structure, default_tolerance(e.structure.manifold()), o.points, o.seed)),
      skew(skew_hypotheses(e.structure, o.points, o.seed)),
      order_(structure_order(e.structure)) {
  snaps_.resize(is_frame() ? 1 : pts.size());
}

Snapshot& SuiteContext::at(int i) {
  const std::size_t k = is_frame() ? 0 : static_cast<std::size_t>(i);
  if (!snaps_[k]) snaps_[k] = std::make_unique<Snapshot>(s.manifold_ptr(), pts[k], order_);
  return *snaps_[k];
}

NumTensor SuiteContext::vector(std::string_view stream, int i, int k) const {
  SampleRng rng(seed, fnv1a(stream), static_cast<std::uint64_t>(i) * 16 + static_cast<std::uint64_t>(k));
  return as_vector(rng.vector(s.manifold().dim()));
}

double sample_max(SuiteContext& ctx, const std::function<double(Snapshot&, int)>& fn) {
  double worst = 0.0;
  for (int i = 0; i < ctx.points; ++i) {
    const double r = fn(ctx.at(i), i);
    if (!std::isfinite(r)) return r;
    worst = std::max(worst, r);
  }
  return worst;
}

double sample_max(SuiteContext& ctx, int order, const std::function<double(Snapshot&)>& fn) {
  double worst = 0.0;
  const int count = ctx.is_frame() ? 1 : ctx.points;
  for (int i = 0; i < count; ++i) {
    Snapshot sn(ctx.s.manifold_ptr(), ctx.pts[i], order);
    const double r = fn(sn);
    if (!std::isfinite(r)) return r;
    worst = std::max(worst, r);
  }
  return worst;
}

CheckReport Collector::base(const std::string& id, const std::string& formula, int points) const {
  CheckReport r;
  r.check_id = id;
  r.paper_ref = formula;
  r.manifold = ctx_.entry.id;
  r.tolerance = ctx_.tol;
  r.points = points < 0 ? ctx_.points : points;
  r.seed = ctx_.seed;
  return r;
}

void Collector::run(const std::string& id, const std::string& formula, const std::function<double()>& residual, int points) {
  run_tol(id, formula, ctx_.tol, residual, points);
}

void Collector::run_tol(const std::string& id, const std::string& formula, double tol,
                        const std::function<double()>& residual, int points) {
  CheckReport r = base(id, formula, points);
  r.tolerance = tol;
  try {
    const double v = residual();
    if (std::isfinite(v)) r.max_abs_residual = v;
    r.pass = std::isfinite(v) && v < tol;
    if (!std::isfinite(v)) r.note = "non-finite residual";
  } catch (const std::exception& e) {
    r.pass = false;
    r.note = e.what();
  }
  out_.push_back(std::move(r));
}

void Collector::run_if(bool ok, const std::string& reason, const std::string& id, const std::string& formula,
                       const std::function<double()>& residual, int points) {
  if (ok) {
    run(id, formula, residual, points);
  } else {
    skip(id, formula, reason);
  }
}

void Collector::skip(const std::string& id, const std::string& formula, const std::string& reason) {
  CheckReport r = base(id, formula, 0);
  r.points = 0;
  r.note = "skipped: " + reason;
  out_.push_back(std::move(r));
}

void Collector::witness(const std::string& id, const std::string& formula, double bound,
                        const std::function<double()>& observed, int points) {
  CheckReport r = base(id, formula, points);
  try {
    const double v = observed();
    r.max_abs_residual = std::max(0.0, bound - v);
    r.pass = *r.max_abs_residual < ctx_.tol;
    r.note = "observed " + std::to_string(v) + ", bound " + std::to_string(bound);
  } catch (const std::exception& e) {
    r.pass = false;
    r.note = e.what();
  }
  out_.push_back(std::move(r));
}

NumTensor identity(int dim) {
  NumTensor t(dim, 2, 0.0);
  for (int i = 0; i < dim; ++i) t(i, i) = 1.0;
  return t;
}

NumTensor transposed(const NumTensor& m) { return permuted(m, {1, 0}); }

NumTensor combine(std::initializer_list<std::pair<double, const NumTensor*>> terms) {
  NumTensor out;
  bool first = true;
  for (const auto& [c, t] : terms) {
    if (first) {
      out = scaled(*t, c);
      first = false;
    } else {
      out = axpy(out, c, *t);
    }
  }
  return out;
}

namespace {

std::string flag_text(const std::string& name) { return name + " flag of classify equals the registered expectation"; }

void flag_check(Collector& c, const std::string& id, const std::string& name, const Flag& got, bool expected) {
  c.run(id, flag_text(name), [&] { return got.value == expected ? 0.0 : 1.0; });
  c.reports().back().note = "classify " + std::string(got.value ? "true" : "false") + " (residual " +
                            std::to_string(got.residual) + "), expected " + (expected ? "true" : "false");
}

// Chart tensors at p rewritten in the Heisenberg frame: covariant slots
// contract with E, the contravariant slot of h with E^{-1}.
NumTensor to_frame(const NumTensor& t, const NumTensor& E) {
  switch (t.rank()) {
    case 0: return t;
    case 2: return einsum("ai,bj,ij->ab", E, E, t);
    case 3: {
      const NumTensor u = einsum("ai,ijk->ajk", E, t);
      return einsum("bj,ck,ajk->abc", E, E, u);
    }
    default: throw UsageError("to_frame: unsupported rank");
  }
}

NumTensor inverse(const NumTensor& m) {
  return values(invert(m.map([](double v) { return Jet(v); })));
}

void backend_equivalence(SuiteContext& ctx, Collector& c) {
  const std::string formula = "chart and frame realizations agree on g, F, h, P, Ric, scal, W1 at matched points";
  const bool heis = ctx.entry.id == "heis-para" || ctx.entry.id == "heis-para-frame";
  if (!heis) {
    c.skip("backend-equivalence", formula, "entry has no second backend");
    return;
  }
  constexpr int kPoints = 16;
  c.run("backend-equivalence", formula, [&] {
    const PacStructure& chart = get_entry("heis-para").structure;
    const PacStructure& frame = get_entry("heis-para-frame").structure;
    const ScalarField w1c = connection_curvature(canonical_connection_unchecked(chart)).W1;
    const ScalarField w1f = connection_curvature(canonical_connection_unchecked(frame)).W1;
    const auto& dc = chart.derived();
    const auto& df = frame.derived();
    const int order = required_order({&dc.P, &dc.Ric, &w1c});
    Snapshot sf(frame.manifold_ptr(), frame.manifold().basepoint(), required_order({&df.P, &df.Ric, &w1f}));
    double worst = 0.0;
    for (const Point& p : chart.manifold().sample_points(kPoints, ctx.seed)) {
      Snapshot sc(chart.manifold_ptr(), p, order);
      const NumTensor E = heisenberg_frame_matrix(1, p);
      const NumTensor Einv = inverse(E);
      for (auto [fc, ff] : {std::pair{&chart.g(), &frame.g()}, {&dc.F, &df.F}, {&dc.P, &df.P}, {&dc.Ric, &df.Ric},
                            {&dc.scal, &df.scal}, {&w1c, &w1f}}) {
        worst = std::max(worst, max_abs_diff(to_frame(sc(*fc), E), sf(*ff)));
      }
      const NumTensor h = einsum("ia,ij,bj->ab", Einv, sc(dc.h), E);
      worst = std::max(worst, max_abs_diff(h, sf(df.h)));
    }
    return worst;
  }, kPoints);
}

}  // namespace

void axiom_checks(SuiteContext& ctx, Collector& c) {
  const PacStructure& s = ctx.s;
  const auto& d = s.derived();
  const int dim = s.manifold().dim();

  std::optional<AxiomResiduals> ax;
  std::string ax_error;
  try {
    ax = validate_structure(s, ctx.points, ctx.seed);
  } catch (const StructureError& e) {
    ax_error = e.what();
  }
  auto axiom = [&](const std::string& id, const std::string& formula, double AxiomResiduals::*field) {
    c.run(id, formula, [&] {
      if (!ax) throw StructureError(ax_error);
      return (*ax).*field;
    });
  };
  c.run("axiom-signature", "g has signature (n+1, n) at every sample", [&] {
    if (!ax) throw StructureError(ax_error);
    return 0.0;
  });
  axiom("axiom-phi-xi", "phi xi = 0", &AxiomResiduals::phi_xi);
  axiom("axiom-eta-phi", "eta o phi = 0", &AxiomResiduals::eta_phi);
  axiom("axiom-eta-xi", "eta(xi) = 1", &AxiomResiduals::eta_xi);
  axiom("axiom-phi-squared", "phi^2 = id - eta x xi", &AxiomResiduals::phi_squared);
  axiom("axiom-compatible-metric", "g(phi X, phi Y) = -g(X,Y) + eta(X) eta(Y)", &AxiomResiduals::compatibility);
  axiom("axiom-g-xi", "g(X, xi) = eta(X)", &AxiomResiduals::g_xi);

  const ExpectedFlags& ex = ctx.entry.expected;
  flag_check(c, "flag-almost-pac-metric", "almost paracontact metric", ctx.cls.almost_pac_metric, ex.almost_pac_metric);
  flag_check(c, "flag-paracontact", "paracontact", ctx.cls.paracontact, ex.paracontact);
  flag_check(c, "flag-k-paracontact", "K-paracontact", ctx.cls.K_paracontact, ex.K_paracontact);
  flag_check(c, "flag-integrable", "integrable", ctx.cls.integrable, ex.integrable);
  flag_check(c, "flag-normal", "normal", ctx.cls.normal, ex.normal);
  flag_check(c, "flag-parasasakian", "paraSasakian", ctx.cls.paraSasakian, ex.paraSasakian);

  c.run("compatible-metric-fixed-point",
        "g = 1/2 (Gb(X,Y) - Gb(phi X, phi Y) + eta(X) eta(Y)), Gb(X,Y) = G(phi^2 X, phi^2 Y) + eta(X) eta(Y), with G = g",
        [&] {
          const TensorField rebuilt = build_compatible_metric(s.phi(), s.xi(), s.eta(), s.g(), 4, ctx.seed);
          return sample_max(ctx, [&](Snapshot& sn, int) { return max_abs_diff(sn(rebuilt), sn(s.g())); });
        });

  c.run("phi-basis-gram", "g(X_i,X_j) = delta_ij, g(phi X_i, phi X_j) = -delta_ij, g(xi,xi) = 1, cross terms 0", [&] {
    double worst = 0.0;
    const int nn = s.n();
    for (int i = 0; i < ctx.points; ++i) {
      const auto basis = build_phi_basis(s, ctx.pts[i], ctx.seed + static_cast<std::uint64_t>(i));
      const NumTensor& g = ctx.at(i)(s.g());
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
          const double want = a != b ? 0.0 : (a >= nn && a < 2 * nn ? -1.0 : 1.0);
          worst = std::max(worst, std::abs(form2(g, basis[a], basis[b]) - want));
        }
    }
    return worst;
  });

  c.run("fundamental-form-skew", "F(X,Y) = g(X, phi Y) is skew-symmetric", [&] {
    return sample_max(ctx, [&](Snapshot& sn, int) {
      const NumTensor& F = sn(d.F);
      return max_abs(axpy(F, 1.0, transposed(F)));
    });
  });
  c.witness("contact-volume", "eta ^ F^n != 0", 1e-3, [&] {
    return fundamental_form(s, ctx.default_tol(), ctx.points, ctx.seed).min_volume;
  });

  const bool pc = ctx.cls.paracontact.value;
  const std::string not_pc = "structure is not paracontact";

  c.run_if(max_abs(ctx.at(0)(d.N1)) < ctx.default_tol(), "N1 does not vanish", "nijenhuis-chain",
           "N1 = 0 implies N2 = N3 = N4 = 0", [&] {
             return sample_max(ctx, [&](Snapshot& sn, int) {
               return std::max({max_abs(sn(d.N1)), max_abs(sn(d.N2)), max_abs(sn(d.N3)), max_abs(sn(d.N4))});
             });
           });
  c.run_if(pc, not_pc, "nijenhuis-paracontact", "N2 = 0 and N4 = 0 on a paracontact metric manifold", [&] {
    return sample_max(ctx, [&](Snapshot& sn, int) { return std::max(max_abs(sn(d.N2)), max_abs(sn(d.N4))); });
  });
  c.run_if(pc, not_pc, "nijenhuis-killing", "N3 = 0 if and only if xi is Killing", [&] {
    double n3 = 0.0, lg = 0.0;
    for (int i = 0; i < ctx.points; ++i) {
      n3 = std::max(n3, max_abs(ctx.at(i)(d.N3)));
      lg = std::max(lg, max_abs(ctx.at(i)(d.lie_xi_g)));
    }
    return (n3 < ctx.default_tol()) == (lg < ctx.default_tol()) ? 0.0 : 1.0;
  });

  c.run_if(pc, not_pc, "h-symmetric", "g(hX, Y) = g(X, hY)", [&] {
    return sample_max(ctx, [&](Snapshot& sn, int) {
      const NumTensor& hl = sn(d.h_low);
      return max_abs(axpy(hl, -1.0, transposed(hl)));
    });
  });
  c.run_if(pc, not_pc, "h-anticommutes-phi", "h phi + phi h = 0", [&] {
    return sample_max(ctx, [&](Snapshot& sn, int) {
      const NumTensor& h = sn(d.h);
      const NumTensor& phi = sn(s.phi());
      return max_abs(axpy(einsum("ik,kj->ij", h, phi), 1.0, einsum("ik,kj->ij", phi, h)));
    });
  });
  c.run_if(pc, not_pc, "h-trace", "tr h = 0", [&] {
    return sample_max(ctx, [&](Snapshot& sn, int) { return std::abs(einsum("ii->", sn(d.h))[0]); });
  });
  c.run_if(pc, not_pc, "h-xi", "h xi = 0", [&] {
    return sample_max(ctx, [&](Snapshot& sn, int) { return max_abs(mv(sn(d.h), sn(s.xi()))); });
  });
  c.run_if(pc, not_pc, "nabla-xi", "nabla_X xi = -phi X + phi h X", [&] {
    return sample_max(ctx, [&](Snapshot& sn, int) {
      const NumTensor& phi = sn(s.phi());
      const NumTensor rhs = axpy(einsum("ik,kj->ij", phi, sn(d.h)), -1.0, phi);
      return max_abs_diff(transposed(sn(d.nabla_xi)), rhs);
    });
  });
  c.run_if(pc, not_pc, "codifferential-eta", "delta eta = 0", [&] {
    return sample_max(ctx, [&](Snapshot& sn, int) { return std::abs(sn.scalar(d.codiff_eta)); });
  });

  backend_equivalence(ctx, c);
}

}  // namespace detail

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"axioms", "curvature", "connections", "transforms", "all"};
  return names;
}

std::vector<CheckReport> run_suite(const std::string& manifold, const std::string& suite, const RunOptions& options) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) throw UsageError("unknown suite '" + suite + "'");
  if (options.points <= 0) throw UsageError("--points must be positive");
  if (options.tol && !(*options.tol > 0.0)) throw UsageError("--tol must be positive");
  const ZooEntry& entry = get_entry(manifold);
  detail::SuiteContext ctx(entry, options);
  detail::Collector c(ctx);
  const bool all = suite == "all";
  if (all || suite == "axioms") detail::axiom_checks(ctx, c);
  if (all || suite == "curvature") detail::curvature_checks(ctx, c);
  if (all || suite == "connections") detail::connection_checks(ctx, c);
  if (all || suite == "transforms") detail::transform_checks(ctx, c);
  std::vector<CheckReport> out = std::move(c.reports());
  std::stable_sort(out.begin(), out.end(), [](const CheckReport& a, const CheckReport& b) { return a.check_id < b.check_id; });
  return out;
}

int exit_code(const std::vector<CheckReport>& reports) {
  for (const CheckReport& r : reports) {
    if (r.pass.has_value() && !*r.pass) return 1;
  }
  return 0;
}

}  // namespace pac
