#pragma once

#include <array>
#include <cassert>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pac/jet.hpp"

namespace pac {

/// Dense rank-r array over a dim-dimensional index range, row-major.
/// Slot meaning (covariant or contravariant) lives in the owning field's
/// Valence, not here.
template <class T>
class Tensor {
 public:
  Tensor() = default;
  Tensor(int dim, int rank, const T& fill = T{})
      : dim_(dim), rank_(rank), data_(power(dim, rank), fill) {}

  int dim() const { return dim_; }
  int rank() const { return rank_; }
  std::size_t size() const { return data_.size(); }

  T& operator[](std::size_t i) { return data_[i]; }
  const T& operator[](std::size_t i) const { return data_[i]; }

  template <std::integral... I>
  T& operator()(I... idx) {
    return data_[flat({static_cast<int>(idx)...})];
  }
  template <std::integral... I>
  const T& operator()(I... idx) const {
    return data_[flat({static_cast<int>(idx)...})];
  }

  T& at(std::span<const int> idx) { return data_[flat(idx)]; }
  const T& at(std::span<const int> idx) const { return data_[flat(idx)]; }

  std::size_t flat(std::initializer_list<int> idx) const {
    assert(static_cast<int>(idx.size()) == rank_);
    std::size_t f = 0;
    for (int i : idx) f = f * dim_ + i;
    return f;
  }
  std::size_t flat(std::span<const int> idx) const {
    assert(static_cast<int>(idx.size()) == rank_);
    std::size_t f = 0;
    for (int i : idx) f = f * dim_ + i;
    return f;
  }
  /// Inverse of flat(): writes the multi-index of entry `f` into `idx`.
  void unflat(std::size_t f, std::span<int> idx) const {
    for (int s = rank_ - 1; s >= 0; --s) {
      idx[s] = static_cast<int>(f % dim_);
      f /= dim_;
    }
  }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  template <class F>
  auto map(F f) const {
    Tensor<decltype(f(std::declval<const T&>()))> out;
    out.dim_ = dim_;
    out.rank_ = rank_;
    out.data_.reserve(data_.size());
    for (const auto& v : data_) out.data_.push_back(f(v));
    return out;
  }

 private:
  template <class U>
  friend class Tensor;

  static std::size_t power(int base, int exp) {
    std::size_t p = 1;
    for (int i = 0; i < exp; ++i) p *= static_cast<std::size_t>(base);
    return p;
  }

  int dim_ = 0;
  int rank_ = 0;
  std::vector<T> data_;
};

using JetTensor = Tensor<Jet>;
using NumTensor = Tensor<double>;

inline NumTensor values(const JetTensor& t) {
  return t.map([](const Jet& j) { return j.value(); });
}

/// Iterates every multi-index of a tensor of the given rank and dimension.
template <class F>
void for_each_index(int dim, int rank, F&& f) {
  std::vector<int> idx(rank, 0);
  std::size_t total = 1;
  for (int i = 0; i < rank; ++i) total *= static_cast<std::size_t>(dim);
  for (std::size_t n = 0; n < total; ++n) {
    f(std::span<const int>(idx));
    for (int s = rank - 1; s >= 0; --s) {
      if (++idx[s] < dim) break;
      idx[s] = 0;
    }
  }
}

enum class Slot : unsigned char { Covariant, Contravariant };

/// Ordered slot kinds of a tensor field. A (1,1) endomorphism A^i_j is
/// {Contravariant, Covariant}; a 2-form is {Covariant, Covariant}.
struct Valence {
  std::vector<Slot> slots;

  int rank() const { return static_cast<int>(slots.size()); }
  int covariant() const;
  int contravariant() const;
  bool operator==(const Valence&) const = default;
  std::string str() const;

  static Valence scalar() { return {}; }
  static Valence vector() { return {{Slot::Contravariant}}; }
  static Valence form(int degree) { return {std::vector<Slot>(degree, Slot::Covariant)}; }
  static Valence endomorphism() { return {{Slot::Contravariant, Slot::Covariant}}; }
  static Valence bivector() { return {{Slot::Contravariant, Slot::Contravariant}}; }
};

}  // namespace pac
