#pragma once

#include <algorithm>
#include <cmath>
#include <string_view>
#include <vector>

#include "pac/errors.hpp"
#include "pac/tensor.hpp"

namespace pac {

namespace detail {

inline bool is_zero(double v) { return v == 0.0; }
inline bool is_zero(const Jet& v) { return v.is_exact() && v.value() == 0.0; }

}  // namespace detail

/// Index-notation contraction, e.g. einsum("ab,bc->ac", {A, B}). Labels are
/// single lowercase letters; repeated labels not in the output are summed.
/// All operands must share one dimension.
template <class T>
Tensor<T> einsum(std::string_view expr, std::vector<const Tensor<T>*> ops) {
  const auto arrow = expr.find("->");
  if (arrow == std::string_view::npos) throw UsageError("einsum: missing '->' in " + std::string(expr));
  std::vector<std::string_view> inputs;
  std::string_view lhs = expr.substr(0, arrow);
  std::string_view out = expr.substr(arrow + 2);
  for (std::size_t start = 0;;) {
    const auto comma = lhs.find(',', start);
    inputs.push_back(lhs.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (inputs.size() != ops.size()) throw UsageError("einsum: operand count mismatch in " + std::string(expr));
  const int dim = ops.front()->dim();

  // Output labels first, then summed labels, in order of appearance.
  std::vector<char> labels(out.begin(), out.end());
  for (auto in : inputs)
    for (char c : in)
      if (std::find(labels.begin(), labels.end(), c) == labels.end()) labels.push_back(c);
  const int nlab = static_cast<int>(labels.size());
  auto slot_of = [&](char c) { return static_cast<int>(std::find(labels.begin(), labels.end(), c) - labels.begin()); };

  // strides[op][label]: flat offset contribution of each label in each operand.
  std::vector<std::vector<std::size_t>> strides(ops.size(), std::vector<std::size_t>(nlab, 0));
  for (std::size_t o = 0; o < ops.size(); ++o) {
    if (static_cast<int>(inputs[o].size()) != ops[o]->rank() || ops[o]->dim() != dim)
      throw UsageError("einsum: operand shape mismatch in " + std::string(expr));
    std::size_t s = 1;
    for (int k = static_cast<int>(inputs[o].size()) - 1; k >= 0; --k) {
      strides[o][slot_of(inputs[o][k])] += s;
      s *= static_cast<std::size_t>(dim);
    }
  }

  Tensor<T> result(dim, static_cast<int>(out.size()), T(0.0));
  std::vector<int> idx(nlab, 0);
  std::vector<std::size_t> offset(ops.size(), 0);
  std::size_t out_flat = 0;
  std::vector<std::size_t> out_stride(out.size());
  for (std::size_t k = out.size(), s = 1; k-- > 0; s *= static_cast<std::size_t>(dim)) out_stride[k] = s;

  while (true) {
    T prod = (*ops[0])[offset[0]];
    bool zero = detail::is_zero(prod);
    for (std::size_t o = 1; o < ops.size() && !zero; ++o) {
      const T& v = (*ops[o])[offset[o]];
      if (detail::is_zero(v)) zero = true;
      else prod = prod * v;
    }
    if (!zero) result[out_flat] += prod;

    int l = nlab - 1;
    for (; l >= 0; --l) {
      if (++idx[l] < dim) {
        for (std::size_t o = 0; o < ops.size(); ++o) offset[o] += strides[o][l];
        if (l < static_cast<int>(out.size())) out_flat += out_stride[l];
        break;
      }
      for (std::size_t o = 0; o < ops.size(); ++o) offset[o] -= strides[o][l] * (dim - 1);
      if (l < static_cast<int>(out.size())) out_flat -= out_stride[l] * (dim - 1);
      idx[l] = 0;
    }
    if (l < 0) break;
  }
  return result;
}

template <class T>
Tensor<T> einsum(std::string_view expr, const Tensor<T>& a) {
  return einsum<T>(expr, {&a});
}
template <class T>
Tensor<T> einsum(std::string_view expr, const Tensor<T>& a, const Tensor<T>& b) {
  return einsum<T>(expr, {&a, &b});
}
template <class T>
Tensor<T> einsum(std::string_view expr, const Tensor<T>& a, const Tensor<T>& b, const Tensor<T>& c) {
  return einsum<T>(expr, {&a, &b, &c});
}
template <class T>
Tensor<T> einsum(std::string_view expr, const Tensor<T>& a, const Tensor<T>& b, const Tensor<T>& c, const Tensor<T>& d) {
  return einsum<T>(expr, {&a, &b, &c, &d});
}

/// Elementwise a + s b for tensors of equal shape.
template <class T>
Tensor<T> axpy(const Tensor<T>& a, double s, const Tensor<T>& b) {
  Tensor<T> out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i] * s;
  return out;
}

template <class T>
Tensor<T> scaled(const Tensor<T>& a, double s) {
  Tensor<T> out = a;
  for (auto& v : out.data()) v *= s;
  return out;
}

/// Reorders slots: out(idx[perm[0]], idx[perm[1]], ...) = a(idx). perm[k] is
/// the output slot receiving input slot k.
template <class T>
Tensor<T> permuted(const Tensor<T>& a, std::vector<int> perm) {
  Tensor<T> out(a.dim(), a.rank(), T(0.0));
  std::vector<int> dst(a.rank());
  for_each_index(a.dim(), a.rank(), [&](std::span<const int> idx) {
    for (int k = 0; k < a.rank(); ++k) dst[perm[k]] = idx[k];
    out.at(dst) = a.at(idx);
  });
  return out;
}

inline double max_abs(const NumTensor& t) {
  double m = 0.0;
  for (double v : t.data()) m = std::max(m, std::abs(v));
  return m;
}

inline double max_abs_diff(const NumTensor& a, const NumTensor& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace pac
