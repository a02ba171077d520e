#pragma once

#include <cstdint>

#include "pac/paracontact.hpp"

namespace pac {

enum class TorsionKind { Canonical, SkewTorsion };

/// A metric connection with torsion, together with its torsion lowered to a
/// (0,3) tensor T(X,Y,Z) = g(T(X,Y),Z).
struct TorsionConnection {
  AffineConnection connection;
  TensorField torsion3;
  TorsionKind kind;
};

/// nabla~_X Y = nabla_X Y + eta(X) phi Y - eta(Y) nabla_X xi + (nabla_X eta)(Y) xi.
/// Throws NotParacontactError unless F = d eta within `tol` at every sample.
TorsionConnection canonical_connection(const PacStructure& s, double tol, int points = 64, std::uint64_t seed = 42);

/// The same coefficients with no paracontact check, for probing structures
/// outside the connection's natural domain.
TorsionConnection canonical_connection_unchecked(const PacStructure& s);

struct ConnectionCurvature {
  TensorField R;    // R(a,b,c,m), computed from the connection's own coefficients
  TensorField Ric;  // Ric(b,c) = R(a,b,c,a)
  ScalarField W1;   // g^{jk} Ric_jk
};
ConnectionCurvature connection_curvature(const TorsionConnection& c);

/// T = 2 eta^d eta + d^phi F - N1 + eta ^ (xi _| N1), lowered N1 throughout.
TensorField skew_torsion(const PacStructure& s);

struct SkewHypotheses {
  double killing = 0;    // max |L_xi g|
  double skew_defect = 0;  // max |N1(a,b,c) + N1(b,a,c)|, |N1(a,b,c) + N1(a,c,b)|
};
SkewHypotheses skew_hypotheses(const PacStructure& s, int points = 64, std::uint64_t seed = 42);

/// g(nablā_X Y, Z) = g(nabla_X Y, Z) + 1/2 T(X,Y,Z). Throws NotKillingError
/// when xi is not Killing and NotSkewError when N1 is not totally
/// skew-symmetric (the Killing test runs first).
TorsionConnection skew_torsion_connection(const PacStructure& s, double tol, int points = 64, std::uint64_t seed = 42);

struct PhiForms {
  TensorField dF_minus;  // dF(phi X,Y,Z) + dF(X,phi Y,phi Z) + dF(phi X,Y,phi Z) + dF(X,Y,Z)
  TensorField dF_phi;    // -dF(phi X, phi Y, phi Z)
};
PhiForms phi_forms(const PacStructure& s);

/// Ricci-type forms of a skew-torsion connection. Sums over an adapted basis
/// are signed traces, e.g. t(X) = 1/2 g^{ab} T(X, E_a, phi E_b).
struct RicciForms {
  TensorField ric;    // Ricci tensor of the connection
  TensorField rho;    // 1/2 g^{ab} R(X,Y,E_a,phi E_b)
  TensorField t;      // 1/2 g^{ab} T(X,E_a,phi E_b)
  TensorField dT;     // exterior derivative of the torsion 3-form
  TensorField dt;     // 1/2 g^{ab} dT(X,Y,E_a,phi E_b)
  TensorField nabla_t;
};
RicciForms ricci_forms(const TorsionConnection& c, const PacStructure& s);

/// 1/2 sum_i eps_i w(..., e_i, phi e_i) over an explicit phi-basis at one
/// point, eps_i = g(e_i, e_i). Matches the g^{ab} traces of RicciForms.
NumTensor basis_trace(const NumTensor& w, const std::vector<NumTensor>& basis, const NumTensor& g, const NumTensor& phi);

/// Largest defect of nabla' g, nabla' eta, nabla' phi for the connection with
/// the skew torsion perturbed by `delta` (a 3-form, constant components).
double perturbed_parallelism(const PacStructure& s, const TorsionConnection& c, const NumTensor& delta,
                             const std::vector<Point>& points);

/// Random totally skew 3-form with Frobenius norm `size`.
NumTensor random_skew_form(int dim, double size, std::uint64_t seed);

}  // namespace pac
