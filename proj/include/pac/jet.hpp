#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace pac {

/// Index tables for truncated Taylor polynomials in `nvars` variables up to
/// total degree `max_order`. Monomials are stored in graded order, so a jet of
/// order k occupies a prefix of the coefficient table.
///
/// Spaces are interned: `JetSpace::get` returns a reference that stays valid
/// for the lifetime of the program.
class JetSpace {
 public:
  static constexpr int kMaxOrder = 6;

  static const JetSpace& get(int nvars, int max_order);

  int nvars() const { return nvars_; }
  int max_order() const { return max_order_; }

  /// Number of coefficients of a jet truncated at `order`.
  int size(int order) const { return size_upto_[order]; }
  int degree(int index) const { return degree_[index]; }
  const std::vector<int>& exponents(int index) const { return exponents_[index]; }
  /// Coefficient index of the monomial with the given exponent vector.
  int index_of(const std::vector<int>& exponents) const;

  struct Product {
    int lhs, rhs, out;
  };
  struct Shift {
    int src, dst;
    double factor;
  };

  /// Product terms whose output degree is at most `order`.
  const Product* products_begin() const { return products_.data(); }
  const Product* products_end(int order) const {
    return products_.data() + products_upto_[order];
  }
  /// Derivative terms d/dx_var whose output degree is at most `order`.
  const Shift* shifts_begin(int var) const { return shifts_[var].data(); }
  const Shift* shifts_end(int var, int order) const {
    return shifts_[var].data() + shifts_upto_[var][order];
  }

 private:
  JetSpace(int nvars, int max_order);

  int nvars_;
  int max_order_;
  std::vector<std::vector<int>> exponents_;
  std::vector<int> degree_;
  std::vector<int> size_upto_;
  std::vector<Product> products_;
  std::vector<int> products_upto_;
  std::vector<std::vector<Shift>> shifts_;
  std::vector<std::vector<int>> shifts_upto_;
};

/// Truncated multivariate Taylor expansion of a smooth function around a
/// base point: f(p + e) = sum_m c_m e^m, |m| <= order.
///
/// This is forward-mode differentiation carried to a fixed total order.
/// Each arithmetic operation truncates at the smaller operand order, and
/// each derivative lowers the order by one, so the order of a result states
/// exactly how many further derivatives are still exact.
///
/// A jet without a space is an exact constant: it combines with any jet and
/// its derivatives vanish identically. Frame-backend quantities live
/// entirely in this form.
class Jet {
 public:
  static constexpr int kExact = std::numeric_limits<int>::max() / 2;

  Jet() : coeffs_{0.0} {}
  Jet(double value) : coeffs_{value} {}  // NOLINT: implicit by design of the arithmetic
  /// Constant embedded in `space` at the given order.
  Jet(const JetSpace& space, int order, double value);

  /// The coordinate function x_var around base value `value`.
  static Jet variable(const JetSpace& space, int order, int var, double value);

  bool is_exact() const { return space_ == nullptr; }
  const JetSpace* space() const { return space_; }
  int order() const { return order_; }
  double value() const { return coeffs_[0]; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  /// Partial derivative along variable `var`; exact jets give exact zero.
  Jet derivative(int var) const;
  Jet truncated(int order) const;

  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(const Jet& rhs);
  Jet& operator*=(double rhs);

  friend Jet operator+(Jet lhs, const Jet& rhs) { return lhs += rhs; }
  friend Jet operator-(Jet lhs, const Jet& rhs) { return lhs -= rhs; }
  friend Jet operator*(const Jet& lhs, const Jet& rhs);
  friend Jet operator*(Jet lhs, double rhs) { return lhs *= rhs; }
  friend Jet operator*(double lhs, Jet rhs) { return rhs *= lhs; }
  friend Jet operator/(const Jet& lhs, const Jet& rhs);
  friend Jet operator/(Jet lhs, double rhs) { return lhs *= 1.0 / rhs; }
  friend Jet operator-(Jet v) { return v *= -1.0; }

 private:
  const JetSpace* space_ = nullptr;
  int order_ = kExact;
  std::vector<double> coeffs_;
};

Jet reciprocal(const Jet& v);
Jet exp(const Jet& v);
Jet log(const Jet& v);
Jet sin(const Jet& v);
Jet cos(const Jet& v);
Jet sqrt(const Jet& v);
Jet sinh(const Jet& v);
Jet cosh(const Jet& v);
Jet tanh(const Jet& v);

/// Composes a jet with a univariate function given its Taylor coefficients
/// f_k = f^(k)(v.value()) / k!, k = 0..v.order().
Jet compose(const Jet& v, const std::vector<double>& taylor);

}  // namespace pac
