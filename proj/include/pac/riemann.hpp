#pragma once

#include <span>
#include <string>

#include "pac/field.hpp"

namespace pac {

/// A linear connection given by its coefficients Gamma(a, b, k), meaning
/// nabla_{E_a} E_b = Gamma^k_ab E_k in the manifold's basis. `metric` is the
/// metric the connection is meant to preserve, when there is one.
class AffineConnection {
 public:
  AffineConnection() = default;
  AffineConnection(TensorField coefficients, TensorField metric, std::string name);

  const TensorField& coefficients() const { return gamma_; }
  const TensorField& metric() const { return metric_; }
  bool has_metric() const { return metric_.valid(); }
  const std::string& name() const { return name_; }
  const ManifoldPtr& manifold_ptr() const { return gamma_.manifold_ptr(); }

 private:
  TensorField gamma_;
  TensorField metric_;
  std::string name_;
};

/// Koszul formula with structure constants:
/// 2 g(nabla_a E_b, E_c) = E_a g_bc + E_b g_ca - E_c g_ab
///                         + g([E_a,E_b],E_c) - g([E_b,E_c],E_a) + g([E_c,E_a],E_b).
AffineConnection levi_civita(const TensorField& g);

/// nabla' = nabla + W, with W(a, b, k) added to the coefficients.
AffineConnection shifted(const AffineConnection& base, const TensorField& difference, std::string name);

/// nabla T with the differentiating slot first (covariant).
TensorField covariant_derivative(const AffineConnection& c, const TensorField& t);

/// T(E_a, E_b) = T(a, b, k) E_k = nabla_a E_b - nabla_b E_a - [E_a, E_b].
TensorField torsion(const AffineConnection& c);

/// R(E_a, E_b) E_c = R(a, b, c, m) E_m for
/// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.
TensorField riemann_curvature(const AffineConnection& c);

/// R(X,Y,Z,W) = g(R(X,Y)Z, W).
TensorField lower_curvature(const TensorField& r, const TensorField& g);

/// Ric(Y,Z) = trace of X -> R(X,Y)Z.
TensorField ricci(const TensorField& r);

/// g^{ab} Ric_ab.
ScalarField scalar_curvature(const TensorField& ric, const TensorField& g);

/// K(X,Y) = R(X,Y,Y,X) / (g(X,X) g(Y,Y) - g(X,Y)^2). Throws
/// PlaneDegeneracyError when the denominator is below `floor`.
double sectional_curvature(const NumTensor& g, const NumTensor& r4, std::span<const double> x, std::span<const double> y,
                           double floor = 1e-12);

/// delta w = -g^{ij} (nabla_i w)_j for a 1-form w.
ScalarField codifferential(const TensorField& g, const TensorField& w);

}  // namespace pac
