#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pac/field.hpp"
#include "pac/riemann.hpp"

namespace pac {

/// Tensors derived from a structure. Index layouts (first index is the
/// differentiating one for nabla):
///   F(i,j) = g(e_i, phi e_j)          N1(a,b,k), N1_low(a,b,c) = g(N1(a,b), c)
///   h(i,j) = h^i_j, h_low = g h       nabla_phi(a,i,j) = (nabla_a phi)^i_j
///   P(r,s,i)                          R(a,b,c,m), R4(a,b,c,d)
struct PacDerived {
  TensorField g_inv, F, deta, dF;
  TensorField N_phi, N1, N1_low, N2, N3, N4, lie_xi_g;
  TensorField h, h_low;
  AffineConnection lc;
  TensorField nabla_xi, nabla_eta, nabla_phi, nabla_F, nabla_h;
  TensorField nabla2_xi, nabla2_eta, nabla2_F;
  TensorField R, R4, Ric, scal, nabla_ric;
  TensorField P, ric_star, scal_star;
  TensorField norm_h, norm_P, norm_P_xi, norm_nabla_phi;
  TensorField codiff_eta;
};

/// An almost paracontact metric structure (phi, xi, eta, g) on one manifold.
/// The derived-tensor graph is built once at construction; evaluation stays
/// lazy and per point.
class PacStructure {
 public:
  PacStructure(TensorField phi, TensorField xi, TensorField eta, TensorField g, std::string name = "");

  const TensorField& phi() const { return phi_; }
  const TensorField& xi() const { return xi_; }
  const TensorField& eta() const { return eta_; }
  const TensorField& g() const { return g_; }
  const std::string& name() const { return name_; }
  int n() const { return phi_.manifold().half_dim(); }
  const ManifoldPtr& manifold_ptr() const { return phi_.manifold_ptr(); }
  const Manifold& manifold() const { return phi_.manifold(); }
  const PacDerived& derived() const { return *derived_; }

 private:
  TensorField phi_, xi_, eta_, g_;
  std::string name_;
  std::shared_ptr<const PacDerived> derived_;
};

// ---------------------------------------------------------------------------
// Axioms and constructions

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  bool operator==(const Signature&) const = default;
};

/// Inertia of a symmetric matrix; eigenvalues with |lambda| < `floor` count
/// as zero.
Signature signature(const NumTensor& g, double floor = 1e-12);

struct AxiomResiduals {
  double phi_xi = 0;        // |phi xi|
  double eta_phi = 0;       // |eta o phi|
  double eta_xi = 0;        // |eta(xi) - 1|
  double phi_squared = 0;   // |phi^2 - id + eta x xi|
  double compatibility = 0; // |g(phi.,phi.) + g - eta x eta|
  double g_xi = 0;          // |g(., xi) - eta|
  double max() const;
};

/// Max residual of each axiom over `points` samples. Throws StructureError if
/// g does not have signature (n+1, n) at some sample.
AxiomResiduals validate_structure(const PacStructure& s, int points = 64, std::uint64_t seed = 42);

/// g(X,Y) = 1/2 (Gb(X,Y) - Gb(phi X, phi Y) + eta(X) eta(Y)) with
/// Gb(X,Y) = G(phi^2 X, phi^2 Y) + eta(X) eta(Y). Probes the result at
/// `probe_points` samples and throws ConstructionError if it is degenerate
/// or of the wrong signature there.
TensorField build_compatible_metric(const TensorField& phi, const TensorField& xi, const TensorField& eta,
                                    const TensorField& G, int probe_points = 16, std::uint64_t seed = 7);

struct FundamentalForm {
  TensorField F;
  double symmetric_part = 0;  // max |F + F^T|
  double residual = 0;        // max |F - d eta|
  double min_volume = 0;      // min |(eta ^ F^n)(E_1, ..., E_2n+1)|
  bool is_paracontact = false;
};

/// Throws StructureError if F has a symmetric part above `tol`.
FundamentalForm fundamental_form(const PacStructure& s, double tol, int points = 64, std::uint64_t seed = 42);

/// (eta ^ F^n) on the basis, summed over permutations with the convention
/// that makes (eta ^ F)(E_0,E_1,E_2) = eta_0 F_12 + eta_1 F_20 + eta_2 F_01.
double eta_wedge_fn(const NumTensor& eta, const NumTensor& F);

/// Pseudo-orthonormal basis (X_1..X_n, phi X_1..phi X_n, xi) at p, built by
/// projecting random vectors into D. Rows of the result are the vectors.
/// Throws NullPivotError if no candidate with |g(v,v)| >= 1e-6 appears
/// within 32 draws.
std::vector<NumTensor> build_phi_basis(const PacStructure& s, const Point& p, std::uint64_t seed);

struct NijenhuisSuite {
  TensorField N_phi, N1, N2, N3, N4;
};
NijenhuisSuite nijenhuis_suite(const PacStructure& s);

// ---------------------------------------------------------------------------
// Classification

struct Flag {
  bool value = false;
  double residual = 0;
};

struct EtaEinstein {
  double a = 0;
  double b = 0;
  double residual = 0;  // max |Ric - a g - b eta x eta| over samples
  double spread = 0;    // max stdev of the pointwise (a, b) fits
};

struct ClassificationReport {
  Flag almost_pac_metric, paracontact, K_paracontact, integrable, normal, paraSasakian;
  std::optional<EtaEinstein> eta_einstein;
  double norm_h = 0, norm_P = 0, norm_nabla_phi = 0, scal = 0, scal_star = 0;
};

/// Pointwise least-squares fit of Ric = a g + b eta x eta. Returns nothing
/// when the fit residual or the spread of (a, b) exceeds `tol`.
std::optional<EtaEinstein> fit_eta_einstein(const PacStructure& s, double tol, int points = 64, std::uint64_t seed = 42);

ClassificationReport classify(const PacStructure& s, double tol, int points = 64, std::uint64_t seed = 42);

/// Default comparison tolerance for the manifold's backend.
double default_tolerance(const Manifold& m);

// ---------------------------------------------------------------------------
// Numeric helpers for pointwise identity checks

/// Rank-1 tensor from a coordinate vector.
NumTensor as_vector(const std::vector<double>& v);
/// Contracts the leading slots of `t` with the given vectors, in order.
NumTensor apply(const NumTensor& t, std::initializer_list<const NumTensor*> vectors);
/// phi^2 applied to v: the projection of v onto D along xi.
NumTensor horizontal(const NumTensor& phi, const NumTensor& v);

}  // namespace pac
