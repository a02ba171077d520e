#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "pac/manifold.hpp"
#include "pac/tensor.hpp"

namespace pac {

/// A smooth tensor field of fixed valence, evaluated pointwise as jets in the
/// manifold's basis (coordinate basis d/dx^i on a chart, the frame E_a on a
/// homogeneous frame).
///
/// `depth` is the number of derivatives between this field and the
/// primitive data it is built from; evaluating it needs a context of at
/// least that jet order. Fields are immutable and cheap to copy; evaluation
/// results are memoized per EvalContext.
class TensorField {
 public:
  using Evaluator = std::function<JetTensor(EvalContext&)>;

  TensorField() = default;
  TensorField(ManifoldPtr manifold, Valence valence, int depth, std::string name, Evaluator evaluator);

  bool valid() const { return node_ != nullptr; }
  const Manifold& manifold() const { return *node_->manifold; }
  const ManifoldPtr& manifold_ptr() const { return node_->manifold; }
  const Valence& valence() const { return node_->valence; }
  int rank() const { return node_->valence.rank(); }
  int depth() const { return node_->depth; }
  const std::string& name() const { return node_->name; }
  std::uint64_t id() const { return node_->id; }

  const JetTensor& eval(EvalContext& ctx) const;

 private:
  struct Node {
    std::uint64_t id;
    ManifoldPtr manifold;
    Valence valence;
    int depth;
    std::string name;
    Evaluator evaluator;
  };
  std::shared_ptr<const Node> node_;
};

/// Scalar fields are rank-0 tensor fields.
using ScalarField = TensorField;

/// Jet order needed to evaluate every field in `fields` on their manifold.
int required_order(std::initializer_list<const TensorField*> fields);

// ---------------------------------------------------------------------------
// Construction

TensorField constant_field(ManifoldPtr m, Valence v, NumTensor value, std::string name);
TensorField constant_scalar(ManifoldPtr m, double value, std::string name);

/// Field given by a function of the coordinate jets (chart backend only).
using ChartFunction = std::function<JetTensor(std::span<const Jet>)>;
TensorField chart_field(ManifoldPtr m, Valence v, std::string name, ChartFunction f);

/// Pointwise affine combination sum_i w_i t_i of fields of equal valence.
TensorField linear_combination(std::vector<std::pair<double, TensorField>> terms, std::string name);
/// Pointwise product f * t of a scalar field and a tensor field.
TensorField scalar_multiple(const ScalarField& f, const TensorField& t, std::string name);

// ---------------------------------------------------------------------------
// Evaluation

/// Components at p in the active basis. Throws DomainError outside the chart.
NumTensor evaluate(const TensorField& t, const Point& p);
double evaluate_scalar(const ScalarField& f, const Point& p);

// ---------------------------------------------------------------------------
// Calculus

/// [X, Y]^k = X^a E_a(Y^k) - Y^a E_a(X^k) + c^k_ab X^a Y^b.
TensorField lie_bracket(const TensorField& x, const TensorField& y);

/// d of a 0-, 1- or 2-form. 1-forms use the half-weighted formula
/// d w(X,Y) = 1/2 (X w(Y) - Y w(X) - w([X,Y])); 2-forms use the six-term
/// cyclic formula with no prefactor. Higher degrees raise UnsupportedError.
TensorField exterior_derivative(const TensorField& form);

/// Exterior derivative of a 3-form, scaled by `prefactor` times the
/// unnormalized alternating sum (prefactor 1 continues the 2-form rule).
TensorField exterior_derivative_3form(const TensorField& form, double prefactor = 1.0);

/// Lie derivative of a tensor of total rank <= 2 along a vector field.
TensorField lie_derivative(const TensorField& x, const TensorField& t);

// ---------------------------------------------------------------------------
// Metric algebra

/// g^{ij} by partial-pivoting elimination on jets. Throws DegeneracyError
/// if |det g| < 1e-12 at the evaluated point.
TensorField inverse_metric(const TensorField& g);

struct IndexAction {
  enum class Kind { Raise, Lower, Trace };
  Kind kind;
  int slot;
  int other = -1;  // second slot for Trace

  static IndexAction raise(int slot) { return {Kind::Raise, slot}; }
  static IndexAction lower(int slot) { return {Kind::Lower, slot}; }
  static IndexAction trace(int a, int b) { return {Kind::Trace, a, b}; }
};

/// Applies raise/lower/trace actions in order; slot numbers refer to the
/// tensor as left by the previous action. Traces of two slots of the same
/// kind go through the metric.
TensorField metric_contract(const TensorField& t, const TensorField& g, std::vector<IndexAction> actions);

/// (a ^ b)(X,Y,Z) = a(X)b(Y,Z) + a(Y)b(Z,X) + a(Z)b(X,Y) for a 1-form a and
/// 2-form b.
TensorField wedge(const TensorField& a, const TensorField& b);

/// (X _| w)(Y,...) = w(X,Y,...) for a 2- or 3-form w.
TensorField interior(const TensorField& x, const TensorField& form);

// ---------------------------------------------------------------------------
// Pointwise jet helpers shared by the geometry modules

/// Inverse of a rank-2 jet tensor. Throws DegeneracyError when the value
/// matrix has |det| < `det_floor`.
JetTensor invert(const JetTensor& m, double det_floor = 1e-12);
double determinant(const NumTensor& m);

void require_same_manifold(const TensorField& a, const TensorField& b);

/// D(a, ...) = E_a T(...), new slot first.
JetTensor gradient(const EvalContext& ctx, const JetTensor& t);
/// c(a, b, k) = c^k_ab as exact jets (zero on a chart).
JetTensor structure_tensor(const EvalContext& ctx);

/// Field computed pointwise from the values of `deps`. Its depth is the
/// deepest dependency plus `extra_depth` (the derivatives `fn` itself takes).
using DerivedFunction = std::function<JetTensor(EvalContext&, const std::vector<const JetTensor*>&)>;
TensorField derived_field(std::string name, Valence v, std::vector<TensorField> deps, int extra_depth, DerivedFunction fn);

/// Numeric values of many fields at one point, sharing one jet context.
class Snapshot {
 public:
  Snapshot(const ManifoldPtr& m, const Point& p, int order) : ctx_(*m, p, order) {}
  const NumTensor& operator()(const TensorField& t);
  double scalar(const TensorField& t) { return (*this)(t)[0]; }
  int order() const { return ctx_.order(); }

 private:
  EvalContext ctx_;
  std::unordered_map<std::uint64_t, NumTensor> values_;
};

}  // namespace pac
