#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "pac/jet.hpp"
#include "pac/tensor.hpp"

namespace pac {

enum class Backend { CoordinateChart, HomogeneousFrame };

struct Interval {
  double lo;
  double hi;
};

/// A sample location. Chart points carry coordinates; the frame backend has a
/// single abstract basepoint with empty coordinates.
struct Point {
  std::vector<double> coords;
  bool operator==(const Point&) const = default;
};

/// The space fields live on: either a coordinate box in R^dim, or a Lie
/// algebra frame E_a with constant structure constants [E_a, E_b] = c^k_ab E_k
/// on which every left-invariant field has constant components.
class Manifold {
 public:
  /// Throws UsageError unless dim is odd and >= 3 and every interval has
  /// nonempty interior.
  static std::shared_ptr<const Manifold> chart(std::string name, std::vector<Interval> box);
  /// `constants(a, b, k)` = c^k_ab. Throws UsageError unless the constants are
  /// antisymmetric in (a, b) and satisfy the Jacobi identity.
  static std::shared_ptr<const Manifold> frame(std::string name, NumTensor constants);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  /// n with dim = 2n + 1.
  int half_dim() const { return (dim_ - 1) / 2; }
  Backend backend() const { return backend_; }
  const std::vector<Interval>& box() const { return box_; }
  double structure_constant(int a, int b, int k) const;
  const NumTensor& structure_constants() const { return constants_; }

  bool contains(const Point& p) const;
  /// Throws DomainError if `p` is not a point of this manifold.
  void require(const Point& p) const;
  Point basepoint() const;

  /// Largest |sum_cyc c^m_ij c^l_mk| over all index choices.
  double jacobi_defect() const;

  /// Uniform samples over the box shrunk by `shrink` of its width per side.
  /// The frame backend returns `count` copies of the basepoint, so random
  /// vectors drawn per sample still vary.
  std::vector<Point> sample_points(int count, std::uint64_t seed, double shrink = 0.05) const;

 private:
  Manifold() = default;

  std::string name_;
  int dim_ = 0;
  Backend backend_ = Backend::CoordinateChart;
  std::vector<Interval> box_;
  NumTensor constants_;
};

using ManifoldPtr = std::shared_ptr<const Manifold>;

/// Per-point evaluation state: the jet order in force, coordinate jets, and a
/// memo of already evaluated fields keyed by field identity. One context
/// belongs to one thread.
class EvalContext {
 public:
  EvalContext(const Manifold& m, Point p, int order);

  const Manifold& manifold() const { return *manifold_; }
  const Point& point() const { return point_; }
  int order() const { return order_; }
  int dim() const { return manifold_->dim(); }

  /// The coordinate x_i as a jet around the point (chart backend only).
  const Jet& coordinate(int i) const;
  std::span<const Jet> coordinates() const { return coords_; }
  /// E_a(f): partial derivative on a chart, identically zero on a frame.
  Jet derive(const Jet& f, int a) const;
  double structure_constant(int a, int b, int k) const {
    return manifold_->structure_constant(a, b, k);
  }
  /// A zero tensor of the given rank at full context order.
  JetTensor zeros(int rank) const { return JetTensor(dim(), rank, Jet(0.0)); }

  const JetTensor* lookup(std::uint64_t id) const;
  const JetTensor& store(std::uint64_t id, JetTensor value);

 private:
  const Manifold* manifold_;
  Point point_;
  int order_;
  std::vector<Jet> coords_;
  std::unordered_map<std::uint64_t, JetTensor> memo_;
};

/// Deterministic random vectors for identity sampling.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}
  SampleRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

  double uniform(double lo, double hi);
  std::vector<double> vector(int dim);

 private:
  std::mt19937_64 engine_;
};

}  // namespace pac
