#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pac/connections.hpp"
#include "pac/paracontact.hpp"

namespace pac {

/// sigma with its differential and zeta^k = -(1/2 sigma) phi^k_j sigma^j,
/// sigma^j = g^{jk} d sigma_k.
struct GaugeData {
  ScalarField sigma;
  TensorField dsigma;
  TensorField zeta;
};
GaugeData gauge_data(const PacStructure& s, const ScalarField& sigma);

/// Rescales eta to sigma eta and adjusts the structure so that phi keeps its
/// action on D:
///   xi~ = (xi + zeta) / sigma
///   phi~ = phi + (1/2 sigma)(sigma^i - (xi sigma) xi^i) eta_j
///   g~ = sigma (g - eta x zeta - zeta x eta) + sigma (sigma - 1 + |zeta|^2) eta x eta
/// Throws PositivityError if sigma <= 0 at a sample.
PacStructure gauge_transform(const PacStructure& s, const ScalarField& sigma, int points = 64, std::uint64_t seed = 42);

/// (g^{ij} - xi^i xi^j) nabla_i nabla_j f.
ScalarField d_laplacian(const PacStructure& s, const ScalarField& f);
/// (g^{ij} - xi^i xi^j) df_i df'_j.
ScalarField d_inner(const PacStructure& s, const ScalarField& f, const ScalarField& f2);

struct LawResidual {
  double residual = 0;
  int points = 0;
};

/// sigma W1~ against W1 - (2(n+1)/sigma) Lap_D sigma - ((n+1)(n-2)/sigma^2) |d sigma|^2_D,
/// with W1~ computed on the transformed structure. Throws NotParacontactError
/// unless `s` is paracontact.
LawResidual verify_w1_law(const PacStructure& s, const ScalarField& sigma, int points = 32, std::uint64_t seed = 42);

/// Lap~_D f against (1/sigma) Lap_D f + (n/sigma^2)(d sigma; df)_D.
LawResidual verify_laplacian_law(const PacStructure& s, const ScalarField& sigma, const ScalarField& f, int points = 32,
                                 std::uint64_t seed = 42);

/// phī = phi, xī = xi / alpha, etā = alpha eta, ḡ = alpha g + alpha(alpha - 1) eta x eta.
/// Throws ParameterError for alpha = 0.
PacStructure d_homothetic(const PacStructure& s, double alpha);

struct EtaEinsteinReport {
  std::optional<EtaEinstein> fit;
  double scal = 0;               // (2n+1) a + b from the fit
  double sum_defect = 0;         // |a + b + 2n|
  double closed_form_defect = 0; // max of |a - (scal/2n + 1)|, |b + 2n + 1 + scal/2n|
};

/// Least-squares eta-Einstein fit with the constraints that hold on
/// K-paracontact manifolds. The fit is absent when the structure is not
/// K-paracontact or the fit is poor.
EtaEinsteinReport eta_einstein_check(const PacStructure& s, double tol, int points = 64, std::uint64_t seed = 42);

struct Einsteinized {
  double alpha = 0;
  double scal = 0;  // input scalar curvature
  PacStructure structure;
};

/// D-homothety with alpha = (2n - scal) / (4n^2 + 4n), which takes an
/// eta-Einstein paraSasakian structure to an Einstein one with Ric = -2n g.
/// Throws PreconditionError if the input is not eta-Einstein paraSasakian and
/// DegenerateScaleError if |scal - 2n| <= 1e-6.
Einsteinized einsteinize(const PacStructure& s, double tol, int points = 64, std::uint64_t seed = 42);

/// Named gauge functions:
///   constant   sigma = 1 + eps
///   exp-bump   sigma = exp(eps sin x cos y)
///   radial     sigma = 1 + eps exp(-|p|^2)
/// where x is the first coordinate and y the first y-coordinate (index n).
/// Non-constant presets need a coordinate chart.
ScalarField sigma_preset(const ManifoldPtr& m, const std::string& name, double eps = 0.05);
const std::vector<std::string>& sigma_preset_names();

}  // namespace pac
