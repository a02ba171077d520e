#include "pac/transforms.hpp"

#include <cmath>
#include <sstream>

#include "pac/einsum.hpp"
#include "pac/errors.hpp"

namespace pac {

namespace {

using Vals = std::vector<const JetTensor*>;

JetTensor scalar_jet(int dim, Jet v) {
  JetTensor t(dim, 0, Jet(0.0));
  t[0] = std::move(v);
  return t;
}

// (g^{ij} - xi^i xi^j) as a (2,0) field.
TensorField horizontal_inverse(const PacStructure& s) {
  return derived_field("g^-1_D", Valence::bivector(), {s.derived().g_inv, s.xi()}, 0,
                       [](EvalContext&, const Vals& v) { return axpy(*v[0], -1.0, einsum("i,j->ij", *v[1], *v[1])); });
}

std::string format_alpha(double alpha) {
  std::ostringstream os;
  os << alpha;
  return os.str();
}

}  // namespace

GaugeData gauge_data(const PacStructure& s, const ScalarField& sigma) {
  if (sigma.valence() != Valence::scalar()) throw UsageError("gauge function must be a scalar field");
  require_same_manifold(s.phi(), sigma);
  GaugeData d;
  d.sigma = sigma;
  d.dsigma = exterior_derivative(sigma);
  d.zeta = derived_field("zeta", Valence::vector(), {sigma, d.dsigma, s.derived().g_inv, s.phi()}, 0,
                         [](EvalContext&, const Vals& v) {
                           const Jet& sg = (*v[0])[0];
                           const JetTensor up = einsum("jk,k->j", *v[2], *v[1]);
                           JetTensor z = einsum("kj,j->k", *v[3], up);
                           const Jet f = reciprocal(sg) * -0.5;
                           for (auto& c : z.data()) c = c * f;
                           return z;
                         });
  return d;
}

PacStructure gauge_transform(const PacStructure& s, const ScalarField& sigma, int points, std::uint64_t seed) {
  const GaugeData gd = gauge_data(s, sigma);
  for (const Point& p : s.manifold().sample_points(points, seed)) {
    const double v = evaluate_scalar(sigma, p);
    if (!(v > 0.0)) throw PositivityError("gauge function " + sigma.name() + " is not positive at a sample (" + std::to_string(v) + ")");
  }
  const auto& d = s.derived();
  TensorField xi = derived_field("xi~", Valence::vector(), {sigma, s.xi(), gd.zeta}, 0, [](EvalContext&, const Vals& v) {
    JetTensor out = axpy(*v[1], 1.0, *v[2]);
    const Jet inv = reciprocal((*v[0])[0]);
    for (auto& c : out.data()) c = c * inv;
    return out;
  });
  TensorField phi = derived_field("phi~", Valence::endomorphism(), {sigma, gd.dsigma, d.g_inv, s.phi(), s.xi(), s.eta()}, 0,
                                  [](EvalContext&, const Vals& v) {
                                    const Jet half_inv = reciprocal((*v[0])[0]) * 0.5;
                                    const JetTensor& xi = *v[4];
                                    JetTensor u = einsum("ik,k->i", *v[2], *v[1]);
                                    const Jet xs = einsum("i,i->", xi, *v[1])[0];
                                    for (int i = 0; i < u.dim(); ++i) u[i] = (u[i] - xs * xi[i]) * half_inv;
                                    return axpy(*v[3], 1.0, einsum("i,j->ij", u, *v[5]));
                                  });
  TensorField eta = scalar_multiple(sigma, s.eta(), "eta~");
  TensorField g = derived_field("g~", Valence::form(2), {sigma, s.g(), s.eta(), gd.zeta}, 0, [](EvalContext&, const Vals& v) {
    const Jet& sg = (*v[0])[0];
    const JetTensor& g = *v[1];
    const JetTensor& eta = *v[2];
    const JetTensor zl = einsum("ij,j->i", g, *v[3]);
    const Jet z2 = einsum("i,i->", zl, *v[3])[0];
    JetTensor out = axpy(g, -1.0, einsum("i,j->ij", eta, zl));
    out = axpy(out, -1.0, einsum("i,j->ij", zl, eta));
    const JetTensor ee = einsum("i,j->ij", eta, eta);
    const Jet c = sg - 1.0 + z2;
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = sg * (out[k] + c * ee[k]);
    return out;
  });
  return PacStructure(phi, xi, eta, g, s.name() + " [gauge " + sigma.name() + "]");
}

ScalarField d_laplacian(const PacStructure& s, const ScalarField& f) {
  TensorField hess = covariant_derivative(s.derived().lc, exterior_derivative(f));
  return derived_field("Lap_D " + f.name(), Valence::scalar(), {hess, horizontal_inverse(s)}, 0,
                       [](EvalContext&, const Vals& v) { return einsum("ij,ij->", *v[0], *v[1]); });
}

ScalarField d_inner(const PacStructure& s, const ScalarField& f, const ScalarField& f2) {
  return derived_field("(d" + f.name() + ";d" + f2.name() + ")_D", Valence::scalar(),
                       {exterior_derivative(f), exterior_derivative(f2), horizontal_inverse(s)}, 0,
                       [](EvalContext&, const Vals& v) { return einsum("i,j,ij->", *v[0], *v[1], *v[2]); });
}

LawResidual verify_w1_law(const PacStructure& s, const ScalarField& sigma, int points, std::uint64_t seed) {
  if (!fundamental_form(s, default_tolerance(s.manifold()), points, seed).is_paracontact) {
    throw NotParacontactError("W1 law needs a paracontact structure: " + s.name());
  }
  const PacStructure st = gauge_transform(s, sigma, points, seed);
  const ScalarField w1t = connection_curvature(canonical_connection_unchecked(st)).W1;
  const ScalarField w1 = connection_curvature(canonical_connection_unchecked(s)).W1;
  const ScalarField lap = d_laplacian(s, sigma);
  const ScalarField grad2 = d_inner(s, sigma, sigma);
  const double n = s.n();
  LawResidual r;
  for (const Point& p : s.manifold().sample_points(points, seed)) {
    Snapshot snap(s.manifold_ptr(), p, required_order({&w1t, &w1, &lap, &grad2}));
    const double sg = snap.scalar(sigma);
    const double lhs = sg * snap.scalar(w1t);
    const double rhs = snap.scalar(w1) - 2.0 * (n + 1.0) / sg * snap.scalar(lap) -
                       (n + 1.0) * (n - 2.0) / (sg * sg) * snap.scalar(grad2);
    r.residual = std::max(r.residual, std::abs(lhs - rhs));
    ++r.points;
  }
  return r;
}

LawResidual verify_laplacian_law(const PacStructure& s, const ScalarField& sigma, const ScalarField& f, int points,
                                 std::uint64_t seed) {
  const PacStructure st = gauge_transform(s, sigma, points, seed);
  const ScalarField lap_t = d_laplacian(st, f);
  const ScalarField lap = d_laplacian(s, f);
  const ScalarField cross = d_inner(s, sigma, f);
  const double n = s.n();
  LawResidual r;
  for (const Point& p : s.manifold().sample_points(points, seed)) {
    Snapshot snap(s.manifold_ptr(), p, required_order({&lap_t, &lap, &cross}));
    const double sg = snap.scalar(sigma);
    const double rhs = snap.scalar(lap) / sg + n / (sg * sg) * snap.scalar(cross);
    r.residual = std::max(r.residual, std::abs(snap.scalar(lap_t) - rhs));
    ++r.points;
  }
  return r;
}

PacStructure d_homothetic(const PacStructure& s, double alpha) {
  if (alpha == 0.0) throw ParameterError("D-homothety needs alpha != 0");
  const double beta = alpha * (alpha - 1.0);
  const std::string tag = " [alpha=" + format_alpha(alpha) + "]";
  TensorField ee = derived_field("eta x eta", Valence::form(2), {s.eta()}, 0,
                                 [](EvalContext&, const Vals& v) { return einsum("i,j->ij", *v[0], *v[0]); });
  TensorField g = linear_combination({{alpha, s.g()}, {beta, ee}}, "g" + tag);
  TensorField xi = linear_combination({{1.0 / alpha, s.xi()}}, "xi" + tag);
  TensorField eta = linear_combination({{alpha, s.eta()}}, "eta" + tag);
  return PacStructure(s.phi(), xi, eta, g, s.name() + tag);
}

EtaEinsteinReport eta_einstein_check(const PacStructure& s, double tol, int points, std::uint64_t seed) {
  EtaEinsteinReport r;
  const ClassificationReport c = classify(s, tol, points, seed);
  if (!c.K_paracontact.value) return r;
  r.fit = c.eta_einstein;
  if (!r.fit) return r;
  const double n = s.n();
  const double a = r.fit->a, b = r.fit->b;
  r.scal = (2.0 * n + 1.0) * a + b;
  r.sum_defect = std::abs(a + b + 2.0 * n);
  r.closed_form_defect = std::max(std::abs(a - (r.scal / (2.0 * n) + 1.0)), std::abs(b + 2.0 * n + 1.0 + r.scal / (2.0 * n)));
  return r;
}

Einsteinized einsteinize(const PacStructure& s, double tol, int points, std::uint64_t seed) {
  const ClassificationReport c = classify(s, tol, points, seed);
  if (!c.paraSasakian.value || !c.eta_einstein) {
    throw PreconditionError(s.name() + ": einsteinize needs an eta-Einstein paraSasakian structure");
  }
  const double n = s.n();
  const double scal = (2.0 * n + 1.0) * c.eta_einstein->a + c.eta_einstein->b;
  if (std::abs(scal - 2.0 * n) <= 1e-6) {
    throw DegenerateScaleError(s.name() + ": scal = 2n, no D-homothety reaches an Einstein structure");
  }
  const double alpha = (2.0 * n - scal) / (4.0 * n * n + 4.0 * n);
  return {alpha, scal, d_homothetic(s, alpha)};
}

const std::vector<std::string>& sigma_preset_names() {
  static const std::vector<std::string> names{"constant", "exp-bump", "radial"};
  return names;
}

ScalarField sigma_preset(const ManifoldPtr& m, const std::string& name, double eps) {
  if (name == "constant") return constant_scalar(m, 1.0 + eps, "sigma=" + format_alpha(1.0 + eps));
  if (name != "exp-bump" && name != "radial") throw UsageError("unknown sigma preset '" + name + "'");
  if (m->backend() != Backend::CoordinateChart) {
    throw UsageError("sigma preset '" + name + "' varies over the manifold and needs a coordinate chart");
  }
  const int dim = m->dim();
  const int y = m->half_dim();
  if (name == "exp-bump") {
    return chart_field(m, Valence::scalar(), "exp(" + format_alpha(eps) + " sin x cos y)", [dim, y, eps](std::span<const Jet> x) {
      return scalar_jet(dim, exp(sin(x[0]) * cos(x[y]) * eps));
    });
  }
  return chart_field(m, Valence::scalar(), "1+" + format_alpha(eps) + " exp(-|p|^2)", [dim, eps](std::span<const Jet> x) {
    Jet r2(0.0);
    for (const Jet& c : x) r2 += c * c;
    return scalar_jet(dim, exp(-r2) * eps + 1.0);
  });
}

}  // namespace pac
