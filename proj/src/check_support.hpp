#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pac/checks.hpp"
#include "pac/connections.hpp"
#include "pac/einsum.hpp"
#include "pac/zoo.hpp"

namespace pac::detail {

/// Shared state of one suite run on one entry: the sample points, one
/// snapshot per point (a single one on a frame, where all points coincide)
/// and the classification used to gate hypotheses.
class SuiteContext {
 public:
  SuiteContext(const ZooEntry& entry, const RunOptions& options);

  const ZooEntry& entry;
  const PacStructure& s;
  int points;
  std::uint64_t seed;
  double tol;
  std::vector<Point> pts;
  ClassificationReport cls;
  SkewHypotheses skew;

  bool is_frame() const { return s.manifold().backend() == Backend::HomogeneousFrame; }
  bool skew_connection_exists() const { return skew.killing < default_tol() && skew.skew_defect < default_tol(); }
  double default_tol() const { return default_tolerance(s.manifold()); }

  /// Snapshot of sample i at the jet order of the deepest structure tensor.
  Snapshot& at(int i);
  /// Fresh random vector for sample i, reproducible from (seed, stream, i, k).
  NumTensor vector(std::string_view stream, int i, int k) const;

 private:
  int order_;
  std::vector<std::unique_ptr<Snapshot>> snaps_;
};

/// Collects reports for one context. Every entry point catches library
/// errors and turns them into a failing report carrying the message.
class Collector {
 public:
  explicit Collector(const SuiteContext& ctx) : ctx_(ctx) {}

  void run(const std::string& id, const std::string& formula, const std::function<double()>& residual, int points = -1);
  /// As run, with a check-specific tolerance in place of the suite one.
  void run_tol(const std::string& id, const std::string& formula, double tol, const std::function<double()>& residual,
               int points = -1);
  void run_if(bool ok, const std::string& reason, const std::string& id, const std::string& formula,
              const std::function<double()>& residual, int points = -1);
  void skip(const std::string& id, const std::string& formula, const std::string& reason);
  /// Passes when observed >= bound; the residual is max(0, bound - observed).
  void witness(const std::string& id, const std::string& formula, double bound, const std::function<double()>& observed,
               int points = -1);
  /// Passes when `fn` throws exactly E. Any other outcome fails.
  template <class E>
  void rejection(const std::string& id, const std::string& formula, const std::function<void()>& fn) {
    CheckReport r = base(id, formula, 1);
    try {
      fn();
      r.note = "no error raised";
      r.pass = false;
    } catch (const E& e) {
      r.max_abs_residual = 0.0;
      r.pass = true;
      r.note = std::string("expected rejection: ") + e.what();
    } catch (const std::exception& e) {
      r.note = std::string("wrong error: ") + e.what();
      r.pass = false;
    }
    out_.push_back(std::move(r));
  }

  std::vector<CheckReport>& reports() { return out_; }

 private:
  CheckReport base(const std::string& id, const std::string& formula, int points) const;

  const SuiteContext& ctx_;
  std::vector<CheckReport> out_;
};

/// Max over samples of `fn(snapshot, sample index)`.
double sample_max(SuiteContext& ctx, const std::function<double(Snapshot&, int)>& fn);
/// Same, with fresh snapshots of the given jet order (one on a frame). For
/// fields outside the structure's own graph.
double sample_max(SuiteContext& ctx, int order, const std::function<double(Snapshot&)>& fn);

// Small numeric helpers for identities written with vectors.
inline NumTensor mv(const NumTensor& m, const NumTensor& v) { return einsum("ij,j->i", m, v); }
inline double dot(const NumTensor& a, const NumTensor& b) { return einsum("i,i->", a, b)[0]; }
inline double form2(const NumTensor& t, const NumTensor& x, const NumTensor& y) { return einsum("ab,a,b->", t, x, y)[0]; }
inline double form3(const NumTensor& t, const NumTensor& x, const NumTensor& y, const NumTensor& z) {
  return einsum("abc,a,b,c->", t, x, y, z)[0];
}
inline double form4(const NumTensor& t, const NumTensor& x, const NumTensor& y, const NumTensor& z, const NumTensor& w) {
  return apply(t, {&x, &y, &z, &w})[0];
}
inline NumTensor outer(const NumTensor& a, const NumTensor& b) { return einsum("i,j->ij", a, b); }
NumTensor identity(int dim);
NumTensor transposed(const NumTensor& m);
/// sum_k c_k t_k
NumTensor combine(std::initializer_list<std::pair<double, const NumTensor*>> terms);

void axiom_checks(SuiteContext& ctx, Collector& c);
void curvature_checks(SuiteContext& ctx, Collector& c);
void connection_checks(SuiteContext& ctx, Collector& c);
void transform_checks(SuiteContext& ctx, Collector& c);

}  // namespace pac::detail
