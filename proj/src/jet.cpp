#include "pac/jet.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "pac/errors.hpp"

namespace pac {

namespace {

void enumerate_degree(int nvars, int degree, std::vector<int>& current, int var,
                      std::vector<std::vector<int>>& out) {
  if (var == nvars - 1) {
    current[var] = degree;
    out.push_back(current);
    current[var] = 0;
    return;
  }
  for (int e = degree; e >= 0; --e) {
    current[var] = e;
    enumerate_degree(nvars, degree - e, current, var + 1, out);
  }
  current[var] = 0;
}

}  // namespace

const JetSpace& JetSpace::get(int nvars, int max_order) {
  if (nvars < 0 || max_order < 0 || max_order > kMaxOrder) {
    throw UsageError("jet space out of range");
  }
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<JetSpace>> spaces;
  std::lock_guard lock(mutex);
  auto& slot = spaces[{nvars, max_order}];
  if (!slot) slot.reset(new JetSpace(nvars, max_order));
  return *slot;
}

JetSpace::JetSpace(int nvars, int max_order) : nvars_(nvars), max_order_(max_order) {
  size_upto_.assign(max_order + 1, 0);
  for (int d = 0; d <= max_order; ++d) {
    if (nvars == 0) {
      if (d == 0) exponents_.emplace_back();
    } else {
      std::vector<int> current(nvars, 0);
      enumerate_degree(nvars, d, current, 0, exponents_);
    }
    size_upto_[d] = static_cast<int>(exponents_.size());
  }
  for (const auto& e : exponents_) {
    int d = 0;
    for (int v : e) d += v;
    degree_.push_back(d);
  }

  const int count = static_cast<int>(exponents_.size());
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < count; ++j) {
      if (degree_[i] + degree_[j] > max_order) continue;
      std::vector<int> sum(nvars);
      for (int v = 0; v < nvars; ++v) sum[v] = exponents_[i][v] + exponents_[j][v];
      products_.push_back({i, j, index_of(sum)});
    }
  }
  std::stable_sort(products_.begin(), products_.end(), [this](const Product& a, const Product& b) {
    return degree_[a.out] < degree_[b.out];
  });
  products_upto_.assign(max_order + 1, 0);
  for (int d = 0; d <= max_order; ++d) {
    products_upto_[d] = static_cast<int>(std::count_if(
        products_.begin(), products_.end(), [&](const Product& p) { return degree_[p.out] <= d; }));
  }

  shifts_.resize(nvars);
  shifts_upto_.assign(nvars, std::vector<int>(max_order + 1, 0));
  for (int v = 0; v < nvars; ++v) {
    for (int i = 0; i < count; ++i) {
      if (exponents_[i][v] == 0) continue;
      std::vector<int> lowered = exponents_[i];
      --lowered[v];
      shifts_[v].push_back({i, index_of(lowered), static_cast<double>(exponents_[i][v])});
    }
    std::stable_sort(shifts_[v].begin(), shifts_[v].end(),
                     [this](const Shift& a, const Shift& b) { return degree_[a.dst] < degree_[b.dst]; });
    for (int d = 0; d <= max_order; ++d) {
      shifts_upto_[v][d] = static_cast<int>(std::count_if(
          shifts_[v].begin(), shifts_[v].end(), [&](const Shift& s) { return degree_[s.dst] <= d; }));
    }
  }
}

int JetSpace::index_of(const std::vector<int>& exponents) const {
  // Graded order: locate the degree block, then scan it.
  int d = 0;
  for (int v : exponents) d += v;
  if (d > max_order_) throw UsageError("monomial degree exceeds jet order");
  const int begin = d == 0 ? 0 : size_upto_[d - 1];
  for (int i = begin; i < size_upto_[d]; ++i) {
    if (exponents_[i] == exponents) return i;
  }
  throw UsageError("monomial not found");
}

Jet::Jet(const JetSpace& space, int order, double value)
    : space_(&space), order_(order), coeffs_(space.size(order), 0.0) {
  coeffs_[0] = value;
}

Jet Jet::variable(const JetSpace& space, int order, int var, double value) {
  Jet out(space, order, value);
  if (order >= 1) {
    std::vector<int> e(space.nvars(), 0);
    e[var] = 1;
    out.coeffs_[space.index_of(e)] = 1.0;
  }
  return out;
}

Jet Jet::derivative(int var) const {
  if (is_exact()) return Jet(0.0);
  if (order_ == 0) throw DerivativeDepthError("jet order exhausted: increase the evaluation order");
  Jet out(*space_, order_ - 1, 0.0);
  for (auto* s = space_->shifts_begin(var); s != space_->shifts_end(var, order_ - 1); ++s) {
    out.coeffs_[s->dst] += s->factor * coeffs_[s->src];
  }
  return out;
}

Jet Jet::truncated(int order) const {
  if (is_exact() || order >= order_) return *this;
  Jet out = *this;
  out.order_ = order;
  out.coeffs_.resize(space_->size(order));
  return out;
}

Jet& Jet::operator+=(const Jet& rhs) {
  if (rhs.is_exact()) {
    coeffs_[0] += rhs.coeffs_[0];
    return *this;
  }
  if (is_exact()) {
    const double v = coeffs_[0];
    *this = rhs;
    coeffs_[0] += v;
    return *this;
  }
  if (rhs.order_ < order_) {
    order_ = rhs.order_;
    coeffs_.resize(rhs.coeffs_.size());
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  if (rhs.is_exact()) {
    coeffs_[0] -= rhs.coeffs_[0];
    return *this;
  }
  if (is_exact()) {
    const double v = coeffs_[0];
    *this = rhs;
    for (auto& c : coeffs_) c = -c;
    coeffs_[0] += v;
    return *this;
  }
  if (rhs.order_ < order_) {
    order_ = rhs.order_;
    coeffs_.resize(rhs.coeffs_.size());
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

Jet& Jet::operator*=(double rhs) {
  for (auto& c : coeffs_) c *= rhs;
  return *this;
}

Jet& Jet::operator*=(const Jet& rhs) {
  *this = *this * rhs;
  return *this;
}

Jet operator*(const Jet& lhs, const Jet& rhs) {
  if (lhs.is_exact()) return rhs * lhs.coeffs_[0];
  if (rhs.is_exact()) return lhs * rhs.coeffs_[0];
  const int order = std::min(lhs.order_, rhs.order_);
  Jet out(*lhs.space_, order, 0.0);
  const double* a = lhs.coeffs_.data();
  const double* b = rhs.coeffs_.data();
  double* c = out.coeffs_.data();
  for (auto* p = lhs.space_->products_begin(); p != lhs.space_->products_end(order); ++p) {
    c[p->out] += a[p->lhs] * b[p->rhs];
  }
  return out;
}

Jet operator/(const Jet& lhs, const Jet& rhs) {
  if (rhs.is_exact()) return lhs * (1.0 / rhs.coeffs_[0]);
  return lhs * reciprocal(rhs);
}

Jet compose(const Jet& v, const std::vector<double>& taylor) {
  if (v.is_exact()) return Jet(taylor.at(0));
  const int order = v.order();
  if (static_cast<int>(taylor.size()) < order + 1) throw UsageError("taylor series too short");
  Jet u = v;
  u -= Jet(v.value());
  Jet result(*v.space(), order, taylor[order]);
  for (int k = order - 1; k >= 0; --k) {
    result = result * u;
    result += Jet(taylor[k]);
  }
  return result;
}

namespace {

int taylor_length(const Jet& v) { return v.is_exact() ? 1 : v.order() + 1; }

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

Jet reciprocal(const Jet& v) {
  const double a = v.value();
  if (a == 0.0) throw DegeneracyError("reciprocal of a jet with zero value");
  std::vector<double> t(taylor_length(v));
  double p = 1.0 / a;
  for (std::size_t k = 0; k < t.size(); ++k) {
    t[k] = (k % 2 == 0 ? 1.0 : -1.0) * p;
    p /= a;
  }
  return compose(v, t);
}

Jet exp(const Jet& v) {
  const double e = std::exp(v.value());
  std::vector<double> t(taylor_length(v));
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = e / factorial(static_cast<int>(k));
  return compose(v, t);
}

Jet log(const Jet& v) {
  const double a = v.value();
  if (a <= 0.0) throw DomainError("log of a non-positive jet");
  std::vector<double> t(taylor_length(v));
  t[0] = std::log(a);
  for (std::size_t k = 1; k < t.size(); ++k) {
    t[k] = (k % 2 == 1 ? 1.0 : -1.0) / (static_cast<double>(k) * std::pow(a, static_cast<double>(k)));
  }
  return compose(v, t);
}

Jet sin(const Jet& v) {
  const double s = std::sin(v.value());
  const double c = std::cos(v.value());
  const double cycle[4] = {s, c, -s, -c};
  std::vector<double> t(taylor_length(v));
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = cycle[k % 4] / factorial(static_cast<int>(k));
  return compose(v, t);
}

Jet cos(const Jet& v) {
  const double s = std::sin(v.value());
  const double c = std::cos(v.value());
  const double cycle[4] = {c, -s, -c, s};
  std::vector<double> t(taylor_length(v));
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = cycle[k % 4] / factorial(static_cast<int>(k));
  return compose(v, t);
}

Jet sinh(const Jet& v) {
  const double s = std::sinh(v.value());
  const double c = std::cosh(v.value());
  std::vector<double> t(taylor_length(v));
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = (k % 2 == 0 ? s : c) / factorial(static_cast<int>(k));
  return compose(v, t);
}

Jet cosh(const Jet& v) {
  const double s = std::sinh(v.value());
  const double c = std::cosh(v.value());
  std::vector<double> t(taylor_length(v));
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = (k % 2 == 0 ? c : s) / factorial(static_cast<int>(k));
  return compose(v, t);
}

Jet tanh(const Jet& v) { return sinh(v) / cosh(v); }

Jet sqrt(const Jet& v) {
  const double a = v.value();
  if (a <= 0.0) throw DomainError("sqrt of a non-positive jet");
  std::vector<double> t(taylor_length(v));
  // binom(1/2, k) * a^(1/2 - k)
  double binom = 1.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k > 0) binom *= (0.5 - static_cast<double>(k - 1)) / static_cast<double>(k);
    t[k] = binom * std::pow(a, 0.5 - static_cast<double>(k));
  }
  return compose(v, t);
}

}  // namespace pac
