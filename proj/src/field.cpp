#include "pac/field.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <utility>

#include "pac/errors.hpp"

namespace pac {

namespace {

std::uint64_t next_node_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

int chart_depth(const ManifoldPtr& m, int depth) {
  return m->backend() == Backend::HomogeneousFrame ? 0 : depth;
}

void require_valence(const TensorField& t, const Valence& v, const char* what) {
  if (t.valence() != v) throw UsageError(std::string(what) + ": expected valence " + v.str() + ", got " + t.valence().str() + " for " + t.name());
}

bool is_covariant(const TensorField& t) {
  return std::all_of(t.valence().slots.begin(), t.valence().slots.end(),
                     [](Slot s) { return s == Slot::Covariant; });
}

/// out(..i..) = sum_k m(i, k) t(..k..) on slot `slot`, or with m transposed.
JetTensor apply_on_slot(const JetTensor& t, int slot, const JetTensor& m, bool transpose) {
  const int dim = t.dim();
  JetTensor out(dim, t.rank(), Jet(0.0));
  std::vector<int> src(t.rank());
  for_each_index(dim, t.rank(), [&](std::span<const int> idx) {
    std::copy(idx.begin(), idx.end(), src.begin());
    Jet acc(0.0);
    for (int k = 0; k < dim; ++k) {
      src[slot] = k;
      const Jet& coeff = transpose ? m(k, idx[slot]) : m(idx[slot], k);
      if (coeff.is_exact() && coeff.value() == 0.0) continue;
      acc += coeff * t.at(src);
    }
    out.at(idx) = std::move(acc);
  });
  return out;
}

/// Removes slots a < b after summing t(..k..l..) w(k, l); w == nullptr means
/// the identity pairing.
JetTensor trace_slots(const JetTensor& t, int a, int b, const JetTensor* w) {
  if (a > b) std::swap(a, b);
  const int dim = t.dim();
  const int rank = t.rank() - 2;
  JetTensor out(dim, rank, Jet(0.0));
  std::vector<int> src(t.rank());
  for_each_index(dim, rank, [&](std::span<const int> idx) {
    for (int s = 0, r = 0; s < t.rank(); ++s) {
      if (s == a || s == b) continue;
      src[s] = idx[r++];
    }
    Jet acc(0.0);
    for (int k = 0; k < dim; ++k) {
      src[a] = k;
      if (w == nullptr) {
        src[b] = k;
        acc += t.at(src);
        continue;
      }
      for (int l = 0; l < dim; ++l) {
        const Jet& coeff = (*w)(k, l);
        if (coeff.is_exact() && coeff.value() == 0.0) continue;
        src[b] = l;
        acc += coeff * t.at(src);
      }
    }
    out.at(idx) = std::move(acc);
  });
  return out;
}

}  // namespace

TensorField::TensorField(ManifoldPtr manifold, Valence valence, int depth, std::string name, Evaluator evaluator) {
  if (!manifold) throw UsageError("tensor field without a manifold");
  const int d = chart_depth(manifold, depth);
  node_ = std::make_shared<const Node>(
      Node{next_node_id(), std::move(manifold), std::move(valence), d, std::move(name), std::move(evaluator)});
}

const JetTensor& TensorField::eval(EvalContext& ctx) const {
  if (!node_) throw UsageError("evaluating an empty tensor field");
  if (&ctx.manifold() != node_->manifold.get()) throw UsageError(node_->name + ": evaluated on a foreign manifold");
  if (const JetTensor* hit = ctx.lookup(node_->id)) return *hit;
  if (node_->depth > ctx.order()) {
    throw DerivativeDepthError(node_->name + " needs jet order " + std::to_string(node_->depth) + ", context has " +
                               std::to_string(ctx.order()));
  }
  JetTensor value = node_->evaluator(ctx);
  if (value.rank() != rank() || value.dim() != ctx.dim()) {
    throw UsageError(node_->name + ": evaluator returned a tensor of the wrong shape");
  }
  return ctx.store(node_->id, std::move(value));
}

int required_order(std::initializer_list<const TensorField*> fields) {
  int order = 0;
  for (const auto* f : fields) order = std::max(order, f->depth());
  return order;
}

void require_same_manifold(const TensorField& a, const TensorField& b) {
  if (a.manifold_ptr() != b.manifold_ptr()) throw UsageError("fields " + a.name() + " and " + b.name() + " live on different manifolds");
}

JetTensor gradient(const EvalContext& ctx, const JetTensor& t) {
  const int n = ctx.dim();
  JetTensor out(n, t.rank() + 1, Jet(0.0));
  if (ctx.manifold().backend() == Backend::HomogeneousFrame) return out;
  const std::size_t stride = t.size();
  for (int a = 0; a < n; ++a)
    for (std::size_t i = 0; i < stride; ++i) out[a * stride + i] = ctx.derive(t[i], a);
  return out;
}

JetTensor structure_tensor(const EvalContext& ctx) {
  const int n = ctx.dim();
  JetTensor out(n, 3, Jet(0.0));
  if (ctx.manifold().backend() == Backend::CoordinateChart) return out;
  for_each_index(n, 3, [&](std::span<const int> e) { out.at(e) = Jet(ctx.structure_constant(e[0], e[1], e[2])); });
  return out;
}

TensorField derived_field(std::string name, Valence v, std::vector<TensorField> deps, int extra_depth, DerivedFunction fn) {
  if (deps.empty()) throw UsageError(name + ": derived field without dependencies");
  int depth = 0;
  for (const auto& d : deps) {
    require_same_manifold(deps.front(), d);
    depth = std::max(depth, d.depth());
  }
  ManifoldPtr m = deps.front().manifold_ptr();
  return TensorField(std::move(m), std::move(v), depth + extra_depth, std::move(name),
                     [deps = std::move(deps), fn = std::move(fn)](EvalContext& ctx) {
                       std::vector<const JetTensor*> vals;
                       vals.reserve(deps.size());
                       for (const auto& d : deps) vals.push_back(&d.eval(ctx));
                       return fn(ctx, vals);
                     });
}

const NumTensor& Snapshot::operator()(const TensorField& t) {
  auto it = values_.find(t.id());
  if (it != values_.end()) return it->second;
  return values_.emplace(t.id(), values(t.eval(ctx_))).first->second;
}

TensorField constant_field(ManifoldPtr m, Valence v, NumTensor value, std::string name) {
  if (value.rank() != v.rank() || value.dim() != m->dim()) throw UsageError(name + ": constant has the wrong shape");
  JetTensor jets = value.map([](double x) { return Jet(x); });
  return TensorField(std::move(m), std::move(v), 0, std::move(name), [jets](EvalContext&) { return jets; });
}

TensorField constant_scalar(ManifoldPtr m, double value, std::string name) {
  NumTensor t(m->dim(), 0, value);
  return constant_field(std::move(m), Valence::scalar(), std::move(t), std::move(name));
}

TensorField chart_field(ManifoldPtr m, Valence v, std::string name, ChartFunction f) {
  if (m->backend() != Backend::CoordinateChart) throw UsageError(name + ": coordinate formula on a frame manifold");
  return TensorField(std::move(m), std::move(v), 0, std::move(name),
                     [f = std::move(f)](EvalContext& ctx) { return f(ctx.coordinates()); });
}

TensorField linear_combination(std::vector<std::pair<double, TensorField>> terms, std::string name) {
  if (terms.empty()) throw UsageError("empty linear combination");
  int depth = 0;
  for (const auto& [w, t] : terms) {
    require_same_manifold(terms.front().second, t);
    require_valence(t, terms.front().second.valence(), "linear_combination");
    depth = std::max(depth, t.depth());
  }
  const auto& first = terms.front().second;
  return TensorField(first.manifold_ptr(), first.valence(), depth, std::move(name),
                     [terms = std::move(terms)](EvalContext& ctx) {
                       JetTensor out = ctx.zeros(terms.front().second.rank());
                       for (const auto& [w, t] : terms) {
                         const JetTensor& v = t.eval(ctx);
                         for (std::size_t i = 0; i < out.size(); ++i) out[i] += v[i] * w;
                       }
                       return out;
                     });
}

TensorField scalar_multiple(const ScalarField& f, const TensorField& t, std::string name) {
  require_same_manifold(f, t);
  if (f.rank() != 0) throw UsageError("scalar_multiple: first factor must be a scalar field");
  return TensorField(t.manifold_ptr(), t.valence(), std::max(f.depth(), t.depth()), std::move(name),
                     [f, t](EvalContext& ctx) {
                       const Jet s = f.eval(ctx)[0];
                       JetTensor out = t.eval(ctx);
                       for (auto& x : out.data()) x = s * x;
                       return out;
                     });
}

NumTensor evaluate(const TensorField& t, const Point& p) {
  EvalContext ctx(t.manifold(), p, t.depth());
  return values(t.eval(ctx));
}

double evaluate_scalar(const ScalarField& f, const Point& p) {
  if (f.rank() != 0) throw UsageError(f.name() + " is not a scalar field");
  return evaluate(f, p)[0];
}

TensorField lie_bracket(const TensorField& x, const TensorField& y) {
  require_same_manifold(x, y);
  require_valence(x, Valence::vector(), "lie_bracket");
  require_valence(y, Valence::vector(), "lie_bracket");
  return TensorField(x.manifold_ptr(), Valence::vector(), std::max(x.depth(), y.depth()) + 1,
                     "[" + x.name() + "," + y.name() + "]", [x, y](EvalContext& ctx) {
                       const JetTensor& X = x.eval(ctx);
                       const JetTensor& Y = y.eval(ctx);
                       const int n = ctx.dim();
                       JetTensor out = ctx.zeros(1);
                       for (int k = 0; k < n; ++k) {
                         Jet acc(0.0);
                         for (int a = 0; a < n; ++a) {
                           acc += X[a] * ctx.derive(Y[k], a) - Y[a] * ctx.derive(X[k], a);
                           for (int b = 0; b < n; ++b) {
                             const double c = ctx.structure_constant(a, b, k);
                             if (c != 0.0) acc += (X[a] * Y[b]) * c;
                           }
                         }
                         out[k] = std::move(acc);
                       }
                       return out;
                     });
}

TensorField exterior_derivative(const TensorField& form) {
  if (!is_covariant(form)) throw UsageError("exterior_derivative: " + form.name() + " is not a form");
  const int p = form.rank();
  if (p > 2) throw UnsupportedError("exterior_derivative: degree " + std::to_string(p) + " forms are not supported");
  const std::string name = "d" + form.name();
  const int depth = form.depth() + 1;
  if (p == 0) {
    return TensorField(form.manifold_ptr(), Valence::form(1), depth, name, [form](EvalContext& ctx) {
      const Jet& f = form.eval(ctx)[0];
      JetTensor out = ctx.zeros(1);
      for (int a = 0; a < ctx.dim(); ++a) out[a] = ctx.derive(f, a);
      return out;
    });
  }
  if (p == 1) {
    return TensorField(form.manifold_ptr(), Valence::form(2), depth, name, [form](EvalContext& ctx) {
      const JetTensor& w = form.eval(ctx);
      const int n = ctx.dim();
      JetTensor out = ctx.zeros(2);
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
          Jet acc = ctx.derive(w[b], a) - ctx.derive(w[a], b);
          for (int k = 0; k < n; ++k) {
            const double c = ctx.structure_constant(a, b, k);
            if (c != 0.0) acc -= w[k] * c;
          }
          acc *= 0.5;
          out(b, a) = -acc;
          out(a, b) = std::move(acc);
        }
      return out;
    });
  }
  return TensorField(form.manifold_ptr(), Valence::form(3), depth, name, [form](EvalContext& ctx) {
    const JetTensor& w = form.eval(ctx);
    const int n = ctx.dim();
    JetTensor out = ctx.zeros(3);
    // Each unordered triple is computed once and spread by antisymmetry.
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c) {
          Jet acc = ctx.derive(w(b, c), a) + ctx.derive(w(c, a), b) + ctx.derive(w(a, b), c);
          for (int k = 0; k < n; ++k) {
            const double cab = ctx.structure_constant(a, b, k);
            const double cbc = ctx.structure_constant(b, c, k);
            const double cca = ctx.structure_constant(c, a, k);
            if (cab != 0.0) acc -= w(k, c) * cab;
            if (cbc != 0.0) acc -= w(k, a) * cbc;
            if (cca != 0.0) acc -= w(k, b) * cca;
          }
          out(a, b, c) = acc;
          out(b, c, a) = acc;
          out(c, a, b) = acc;
          out(b, a, c) = -acc;
          out(a, c, b) = -acc;
          out(c, b, a) = -acc;
        }
    return out;
  });
}

TensorField exterior_derivative_3form(const TensorField& form, double prefactor) {
  if (!is_covariant(form) || form.rank() != 3) throw UsageError("exterior_derivative_3form: " + form.name() + " is not a 3-form");
  return TensorField(form.manifold_ptr(), Valence::form(4), form.depth() + 1, "d" + form.name(),
                     [form, prefactor](EvalContext& ctx) {
                       const JetTensor& w = form.eval(ctx);
                       const int n = ctx.dim();
                       JetTensor out = ctx.zeros(4);
                       // dw(X0..X3) = sum_i (-1)^i X_i w(..^i..)
                       //            + sum_{i<j} (-1)^(i+j) w([X_i,X_j], ..^i..^j..)
                       for_each_index(n, 4, [&](std::span<const int> e) {
                         Jet acc(0.0);
                         for (int i = 0; i < 4; ++i) {
                           int rest[3];
                           for (int s = 0, r = 0; s < 4; ++s)
                             if (s != i) rest[r++] = e[s];
                           const Jet term = ctx.derive(w(rest[0], rest[1], rest[2]), e[i]);
                           if (i % 2 == 0) acc += term; else acc -= term;
                         }
                         for (int i = 0; i < 4; ++i)
                           for (int j = i + 1; j < 4; ++j) {
                             int rest[2];
                             for (int s = 0, r = 0; s < 4; ++s)
                               if (s != i && s != j) rest[r++] = e[s];
                             for (int k = 0; k < n; ++k) {
                               const double c = ctx.structure_constant(e[i], e[j], k);
                               if (c == 0.0) continue;
                               const Jet term = w(k, rest[0], rest[1]) * c;
                               if ((i + j) % 2 == 0) acc += term; else acc -= term;
                             }
                           }
                         out.at(e) = acc * prefactor;
                       });
                       return out;
                     });
}

TensorField lie_derivative(const TensorField& x, const TensorField& t) {
  require_same_manifold(x, t);
  require_valence(x, Valence::vector(), "lie_derivative");
  return TensorField(
      x.manifold_ptr(), t.valence(), std::max(x.depth(), t.depth()) + 1, "L_" + x.name() + t.name(),
      [x, t](EvalContext& ctx) {
        const JetTensor& X = x.eval(ctx);
        const JetTensor& T = t.eval(ctx);
        const int n = ctx.dim();
        // [X, E_b] = M^k_b E_k
        JetTensor M = ctx.zeros(2);
        for (int k = 0; k < n; ++k)
          for (int b = 0; b < n; ++b) {
            Jet acc = -ctx.derive(X[k], b);
            for (int a = 0; a < n; ++a) {
              const double c = ctx.structure_constant(a, b, k);
              if (c != 0.0) acc += X[a] * c;
            }
            M(k, b) = std::move(acc);
          }
        JetTensor out = ctx.zeros(T.rank());
        for (std::size_t i = 0; i < T.size(); ++i) {
          Jet acc(0.0);
          for (int a = 0; a < n; ++a) acc += X[a] * ctx.derive(T[i], a);
          out[i] = std::move(acc);
        }
        const auto& slots = t.valence().slots;
        for (int s = 0; s < T.rank(); ++s) {
          if (slots[s] == Slot::Covariant) {
            const JetTensor term = apply_on_slot(T, s, M, true);
            for (std::size_t i = 0; i < out.size(); ++i) out[i] -= term[i];
          } else {
            const JetTensor term = apply_on_slot(T, s, M, false);
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += term[i];
          }
        }
        return out;
      });
}

double determinant(const NumTensor& m) {
  const int n = m.dim();
  std::vector<double> a(m.data());
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    if (a[piv * n + c] == 0.0) return 0.0;
    if (piv != c) {
      for (int k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
      det = -det;
    }
    det *= a[c * n + c];
    for (int r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / a[c * n + c];
      for (int k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
    }
  }
  return det;
}

JetTensor invert(const JetTensor& m, double det_floor) {
  if (m.rank() != 2) throw UsageError("invert: rank-2 tensor expected");
  const int n = m.dim();
  if (std::abs(determinant(values(m))) < det_floor) throw DegeneracyError("metric is degenerate (|det| below floor)");
  // Gauss-Jordan with pivots chosen on the values.
  std::vector<Jet> a(m.data());
  std::vector<Jet> inv(static_cast<std::size_t>(n) * n, Jet(0.0));
  for (int i = 0; i < n; ++i) inv[i * n + i] = Jet(1.0);
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c].value()) > std::abs(a[piv * n + c].value())) piv = r;
    if (piv != c) {
      for (int k = 0; k < n; ++k) {
        std::swap(a[c * n + k], a[piv * n + k]);
        std::swap(inv[c * n + k], inv[piv * n + k]);
      }
    }
    const Jet r = reciprocal(a[c * n + c]);
    for (int k = 0; k < n; ++k) {
      a[c * n + k] = a[c * n + k] * r;
      inv[c * n + k] = inv[c * n + k] * r;
    }
    for (int row = 0; row < n; ++row) {
      if (row == c) continue;
      const Jet f = a[row * n + c];
      if (f.is_exact() && f.value() == 0.0) continue;
      for (int k = 0; k < n; ++k) {
        a[row * n + k] -= f * a[c * n + k];
        inv[row * n + k] -= f * inv[c * n + k];
      }
    }
  }
  JetTensor out(n, 2);
  out.data() = std::move(inv);
  return out;
}

TensorField inverse_metric(const TensorField& g) {
  require_valence(g, Valence::form(2), "inverse_metric");
  return TensorField(g.manifold_ptr(), Valence::bivector(), g.depth(), g.name() + "^-1",
                     [g](EvalContext& ctx) { return invert(g.eval(ctx)); });
}

TensorField metric_contract(const TensorField& t, const TensorField& g, std::vector<IndexAction> actions) {
  require_same_manifold(t, g);
  require_valence(g, Valence::form(2), "metric_contract");
  Valence v = t.valence();
  bool needs_inverse = false;
  for (const auto& act : actions) {
    auto check_slot = [&](int s) {
      if (s < 0 || s >= v.rank()) throw UsageError("metric_contract: slot out of range");
    };
    check_slot(act.slot);
    switch (act.kind) {
      case IndexAction::Kind::Raise:
        if (v.slots[act.slot] != Slot::Covariant) throw UsageError("metric_contract: raising a contravariant slot");
        v.slots[act.slot] = Slot::Contravariant;
        needs_inverse = true;
        break;
      case IndexAction::Kind::Lower:
        if (v.slots[act.slot] != Slot::Contravariant) throw UsageError("metric_contract: lowering a covariant slot");
        v.slots[act.slot] = Slot::Covariant;
        break;
      case IndexAction::Kind::Trace: {
        check_slot(act.other);
        if (act.other == act.slot) throw UsageError("metric_contract: tracing a slot with itself");
        if (v.slots[act.slot] == Slot::Covariant && v.slots[act.other] == Slot::Covariant) needs_inverse = true;
        const int hi = std::max(act.slot, act.other), lo = std::min(act.slot, act.other);
        v.slots.erase(v.slots.begin() + hi);
        v.slots.erase(v.slots.begin() + lo);
        break;
      }
    }
  }
  TensorField ginv = needs_inverse ? inverse_metric(g) : TensorField();
  const Valence in = t.valence();
  return TensorField(
      t.manifold_ptr(), v, std::max(t.depth(), g.depth()), "contract(" + t.name() + ")",
      [t, g, ginv, in, actions = std::move(actions)](EvalContext& ctx) {
        JetTensor cur = t.eval(ctx);
        std::vector<Slot> slots = in.slots;
        for (const auto& act : actions) {
          switch (act.kind) {
            case IndexAction::Kind::Raise:
              cur = apply_on_slot(cur, act.slot, ginv.eval(ctx), false);
              slots[act.slot] = Slot::Contravariant;
              break;
            case IndexAction::Kind::Lower:
              cur = apply_on_slot(cur, act.slot, g.eval(ctx), false);
              slots[act.slot] = Slot::Covariant;
              break;
            case IndexAction::Kind::Trace: {
              const Slot sa = slots[act.slot], sb = slots[act.other];
              const JetTensor* w = nullptr;
              if (sa == sb) w = sa == Slot::Covariant ? &ginv.eval(ctx) : &g.eval(ctx);
              cur = trace_slots(cur, act.slot, act.other, w);
              const int hi = std::max(act.slot, act.other), lo = std::min(act.slot, act.other);
              slots.erase(slots.begin() + hi);
              slots.erase(slots.begin() + lo);
              break;
            }
          }
        }
        return cur;
      });
}

TensorField wedge(const TensorField& a, const TensorField& b) {
  require_same_manifold(a, b);
  if (a.valence() != Valence::form(1) || b.valence() != Valence::form(2)) {
    throw UsageError("wedge: only a 1-form wedge a 2-form is supported");
  }
  return TensorField(a.manifold_ptr(), Valence::form(3), std::max(a.depth(), b.depth()),
                     a.name() + "^" + b.name(), [a, b](EvalContext& ctx) {
                       const JetTensor& A = a.eval(ctx);
                       const JetTensor& B = b.eval(ctx);
                       JetTensor out = ctx.zeros(3);
                       for_each_index(ctx.dim(), 3, [&](std::span<const int> e) {
                         out.at(e) = A[e[0]] * B(e[1], e[2]) + A[e[1]] * B(e[2], e[0]) + A[e[2]] * B(e[0], e[1]);
                       });
                       return out;
                     });
}

TensorField interior(const TensorField& x, const TensorField& form) {
  require_same_manifold(x, form);
  require_valence(x, Valence::vector(), "interior");
  if (!is_covariant(form) || (form.rank() != 2 && form.rank() != 3)) {
    throw UsageError("interior: only 2- and 3-forms are supported");
  }
  return TensorField(x.manifold_ptr(), Valence::form(form.rank() - 1), std::max(x.depth(), form.depth()),
                     x.name() + "_|" + form.name(), [x, form](EvalContext& ctx) {
                       const JetTensor& X = x.eval(ctx);
                       const JetTensor& W = form.eval(ctx);
                       JetTensor out = ctx.zeros(W.rank() - 1);
                       const std::size_t stride = out.size();
                       for (std::size_t i = 0; i < stride; ++i) {
                         Jet acc(0.0);
                         for (int a = 0; a < ctx.dim(); ++a) acc += X[a] * W[a * stride + i];
                         out[i] = std::move(acc);
                       }
                       return out;
                     });
}

}  // namespace pac
