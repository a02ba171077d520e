#include "pac/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "pac/errors.hpp"

namespace pac {

namespace {

void require_odd_dim(int dim) {
  if (dim < 3 || dim % 2 == 0) throw UsageError("manifold dimension must be odd and >= 3");
}

}  // namespace

ManifoldPtr Manifold::chart(std::string name, std::vector<Interval> box) {
  require_odd_dim(static_cast<int>(box.size()));
  for (const auto& iv : box) {
    if (!(iv.lo < iv.hi)) throw UsageError("chart box interval has empty interior");
  }
  auto m = std::shared_ptr<Manifold>(new Manifold());
  m->name_ = std::move(name);
  m->dim_ = static_cast<int>(box.size());
  m->backend_ = Backend::CoordinateChart;
  m->box_ = std::move(box);
  m->constants_ = NumTensor(m->dim_, 3, 0.0);
  return m;
}

ManifoldPtr Manifold::frame(std::string name, NumTensor constants) {
  require_odd_dim(constants.dim());
  if (constants.rank() != 3) throw UsageError("structure constants must have rank 3");
  auto m = std::shared_ptr<Manifold>(new Manifold());
  m->name_ = std::move(name);
  m->dim_ = constants.dim();
  m->backend_ = Backend::HomogeneousFrame;
  m->constants_ = std::move(constants);
  const int n = m->dim_;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k)
        if (m->constants_(a, b, k) != -m->constants_(b, a, k))
          throw UsageError("structure constants are not antisymmetric");
  if (m->jacobi_defect() > 1e-12) throw UsageError("structure constants violate the Jacobi identity");
  return m;
}

double Manifold::structure_constant(int a, int b, int k) const { return constants_(a, b, k); }

double Manifold::jacobi_defect() const {
  // [[E_i,E_j],E_k] + [[E_j,E_k],E_i] + [[E_k,E_i],E_j] = 0
  const int n = dim_;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int m = 0; m < n; ++m) {
            s += constants_(i, j, m) * constants_(m, k, l) + constants_(j, k, m) * constants_(m, i, l) +
                 constants_(k, i, m) * constants_(m, j, l);
          }
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

bool Manifold::contains(const Point& p) const {
  if (backend_ == Backend::HomogeneousFrame) return p.coords.empty();
  if (static_cast<int>(p.coords.size()) != dim_) return false;
  for (int i = 0; i < dim_; ++i) {
    if (!(p.coords[i] >= box_[i].lo && p.coords[i] <= box_[i].hi)) return false;
  }
  return true;
}

void Manifold::require(const Point& p) const {
  if (!contains(p)) throw DomainError("point outside the domain of " + name_);
}

Point Manifold::basepoint() const {
  if (backend_ == Backend::HomogeneousFrame) return {};
  Point p;
  for (const auto& iv : box_) p.coords.push_back(0.5 * (iv.lo + iv.hi));
  return p;
}

std::vector<Point> Manifold::sample_points(int count, std::uint64_t seed, double shrink) const {
  std::vector<Point> out;
  out.reserve(count);
  if (backend_ == Backend::HomogeneousFrame) {
    out.assign(count, Point{});
    return out;
  }
  SampleRng rng(seed);
  for (int s = 0; s < count; ++s) {
    Point p;
    for (const auto& iv : box_) {
      const double margin = shrink * (iv.hi - iv.lo);
      p.coords.push_back(rng.uniform(iv.lo + margin, iv.hi - margin));
    }
    out.push_back(std::move(p));
  }
  return out;
}

EvalContext::EvalContext(const Manifold& m, Point p, int order)
    : manifold_(&m), point_(std::move(p)), order_(order) {
  m.require(point_);
  if (m.backend() == Backend::CoordinateChart) {
    const JetSpace& space = JetSpace::get(m.dim(), order);
    for (int i = 0; i < m.dim(); ++i) coords_.push_back(Jet::variable(space, order, i, point_.coords[i]));
  }
}

const Jet& EvalContext::coordinate(int i) const {
  if (coords_.empty()) throw UsageError("frame backend has no coordinates");
  return coords_.at(i);
}

Jet EvalContext::derive(const Jet& f, int a) const {
  if (manifold_->backend() == Backend::HomogeneousFrame) return Jet(0.0);
  return f.derivative(a);
}

const JetTensor* EvalContext::lookup(std::uint64_t id) const {
  auto it = memo_.find(id);
  return it == memo_.end() ? nullptr : &it->second;
}

const JetTensor& EvalContext::store(std::uint64_t id, JetTensor value) {
  return memo_.insert_or_assign(id, std::move(value)).first->second;
}

SampleRng::SampleRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(index)};
  engine_.seed(seq);
}

double SampleRng::uniform(double lo, double hi) {
  // Explicit mapping keeps streams identical across standard libraries.
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

std::vector<double> SampleRng::vector(int dim) {
  std::vector<double> v(dim);
  for (auto& x : v) x = uniform(-1.0, 1.0);
  return v;
}

}  // namespace pac
