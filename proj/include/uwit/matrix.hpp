// Copyright 2026 The uwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UWIT_MATRIX_HPP
#define UWIT_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace uwit {

using complex = std::complex<double>;

/// Dense square complex matrix stored row-major.
///
/// This is the carrier for every state and operator in the library. It makes
/// no claim about hermiticity or unitarity; callers check what they need.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (dim == 0) throw std::invalid_argument("ComplexMatrix: dimension must be positive");
  }

  ComplexMatrix(std::size_t dim, std::vector<complex> entries) : dim_(dim), data_(std::move(entries)) {
    if (dim == 0) throw std::invalid_argument("ComplexMatrix: dimension must be positive");
    if (data_.size() != dim * dim) {
      throw std::invalid_argument("ComplexMatrix: expected " + std::to_string(dim * dim) + " entries, got " +
                                  std::to_string(data_.size()));
    }
  }

  /// Row-by-row literal, mostly for fixtures.
  ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows) : dim_(rows.size()) {
    data_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
      if (row.size() != dim_) throw std::invalid_argument("ComplexMatrix: literal is not square");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  /// |v><v|
  static ComplexMatrix outer(std::span<const complex> v) {
    ComplexMatrix m(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return dim_ == 0; }

  complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * dim_ + j]; }
  const complex& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * dim_ + j]; }

  std::span<const complex> entries() const noexcept { return data_; }
  std::span<complex> entries() noexcept { return data_; }

  complex trace() const noexcept {
    complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  ComplexMatrix conjugate() const {
    ComplexMatrix out = *this;
    for (auto& z : out.data_) z = std::conj(z);
    return out;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
    return out;
  }

  std::size_t nonzeros() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(data_.begin(), data_.end(), [](const complex& z) { return z != complex{}; }));
  }

  /// Largest |M_ij - conj(M_ji)|.
  double hermiticity_defect() const noexcept {
    double worst = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i; j < dim_; ++j)
        worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
  }

  bool is_hermitian(double tol) const noexcept { return hermiticity_defect() <= tol; }

  ComplexMatrix& operator+=(const ComplexMatrix& rhs) {
    require_same_dim(rhs);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
  }

  ComplexMatrix& operator-=(const ComplexMatrix& rhs) {
    require_same_dim(rhs);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
  }

  ComplexMatrix& operator*=(complex s) noexcept {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(ComplexMatrix lhs, complex s) { return lhs *= s; }
  friend ComplexMatrix operator*(complex s, ComplexMatrix rhs) { return rhs *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) { return multiply(lhs, rhs); }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

  /// Product that skips zero entries of the sparser factor. Permutation and
  /// projector operators on the multi-copy register have O(1) nonzeros per
  /// row, so products with them cost O(d^2) rather than O(d^3).
  static ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    a.require_same_dim(b);
    if (a.nonzeros() <= b.nonzeros()) return multiply_skip_left(a, b);
    return multiply_skip_left(b.adjoint(), a.adjoint()).adjoint();
  }

 private:
  void require_same_dim(const ComplexMatrix& other) const {
    if (dim_ != other.dim_) {
      throw std::invalid_argument("ComplexMatrix: dimension mismatch (" + std::to_string(dim_) + " vs " +
                                  std::to_string(other.dim_) + ")");
    }
  }

  static ComplexMatrix multiply_skip_left(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t n = a.dim_;
    ComplexMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
      complex* crow = &c.data_[i * n];
      for (std::size_t k = 0; k < n; ++k) {
        const complex aik = a.data_[i * n + k];
        if (aik == complex{}) continue;
        const complex* brow = &b.data_[k * n];
        for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
      }
    }
    return c;
  }

  std::size_t dim_ = 0;
  std::vector<complex> data_;
};

/// Largest entrywise |a_ij - b_ij|.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
  double worst = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) worst = std::max(worst, std::abs(ea[k] - eb[k]));
  return worst;
}

inline double max_abs(const ComplexMatrix& a) {
  double worst = 0.0;
  for (const auto& z : a.entries()) worst = std::max(worst, std::abs(z));
  return worst;
}

/// tr(a b) in O(d^2) without forming the product.
inline complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("trace_of_product: dimension mismatch");
  const std::size_t n = a.dim();
  complex t = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const complex aik = a(i, k);
      if (aik != complex{}) t += aik * b(k, i);
    }
  return t;
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

}  // namespace uwit

#endif  // UWIT_MATRIX_HPP
