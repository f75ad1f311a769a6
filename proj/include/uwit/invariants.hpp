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

#ifndef UWIT_INVARIANTS_HPP
#define UWIT_INVARIANTS_HPP

#include <array>
#include <cstddef>

#include "uwit/linalg.hpp"
#include "uwit/matrix.hpp"
#include "uwit/states.hpp"
#include "uwit/witness.hpp"

namespace uwit {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

/// Pauli expansion of a two-qubit state:
///   rho = (1/4) [σ0⊗σ0 + Σ s_i σi⊗σ0 + Σ p_j σ0⊗σj + Σ β_ij σi⊗σj]
/// with s_i = tr[(σi⊗σ0) rho], p_j = tr[(σ0⊗σj) rho], β_ij = tr[(σi⊗σj) rho].
struct BlochDecomposition {
  Vec3 s{};
  Vec3 p{};
  Mat3 beta{};
};

/// σ0..σ3
inline const std::array<ComplexMatrix, 4>& pauli() {
  static const std::array<ComplexMatrix, 4> m{
      ComplexMatrix{{1, 0}, {0, 1}},
      ComplexMatrix{{0, 1}, {1, 0}},
      ComplexMatrix{{0, complex(0, -1)}, {complex(0, 1), 0}},
      ComplexMatrix{{1, 0}, {0, -1}},
  };
  return m;
}

inline BlochDecomposition decompose(const DensityMatrix& rho) {
  const auto& sig = pauli();
  auto expect = [&](std::size_t i, std::size_t j) { return trace_of_product(kron(sig[i], sig[j]), rho.matrix()).real(); };
  BlochDecomposition b;
  for (std::size_t i = 0; i < 3; ++i) {
    b.s[i] = expect(i + 1, 0);
    b.p[i] = expect(0, i + 1);
    for (std::size_t j = 0; j < 3; ++j) b.beta[i][j] = expect(i + 1, j + 1);
  }
  return b;
}

inline ComplexMatrix reconstruct(const BlochDecomposition& b) {
  const auto& sig = pauli();
  ComplexMatrix m = kron(sig[0], sig[0]);
  for (std::size_t i = 0; i < 3; ++i) {
    m += kron(sig[i + 1], sig[0]) * b.s[i];
    m += kron(sig[0], sig[i + 1]) * b.p[i];
    for (std::size_t j = 0; j < 3; ++j) m += kron(sig[i + 1], sig[j + 1]) * b.beta[i][j];
  }
  return m * 0.25;
}

/// The nine local-unitary invariants entering the moments, and the
/// combinations the moment identities are written in.
struct InvariantSet {
  double i1 = 0, i2 = 0, i3 = 0, i4 = 0, i5 = 0, i7 = 0, i8 = 0, i12 = 0, i14 = 0;
  double x1 = 0, x2 = 0, x3 = 0, x4 = 0;
  std::array<double, 6> y{};  // y1..y6 stored at 0..5
};

namespace detail {

inline double det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline constexpr int levi_civita(std::size_t i, std::size_t j, std::size_t k) {
  if (i == j || j == k || i == k) return 0;
  return ((j + 3 - i) % 3 == 1) ? 1 : -1;
}

inline double dot(const Vec3& u, const Vec3& v) { return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]; }

}  // namespace detail

inline InvariantSet makhlin(const BlochDecomposition& b) {
  const Mat3& beta = b.beta;
  Mat3 btb{};  // β^T β
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) btb[i][j] += beta[k][i] * beta[k][j];
  Vec3 s_beta{};  // row vector s β
  Vec3 beta_p{};  // column vector β p
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      s_beta[j] += b.s[i] * beta[i][j];
      beta_p[i] += beta[i][j] * b.p[j];
    }

  InvariantSet inv;
  inv.i1 = detail::det3(beta);
  for (std::size_t i = 0; i < 3; ++i) {
    inv.i2 += btb[i][i];
    for (std::size_t j = 0; j < 3; ++j) inv.i3 += btb[i][j] * btb[j][i];
  }
  inv.i4 = detail::dot(b.s, b.s);
  inv.i5 = detail::dot(s_beta, s_beta);
  inv.i7 = detail::dot(b.p, b.p);
  inv.i8 = detail::dot(beta_p, beta_p);
  inv.i12 = detail::dot(b.s, beta_p);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) {
        const int e1 = detail::levi_civita(i, j, k);
        if (e1 == 0) continue;
        for (std::size_t l = 0; l < 3; ++l)
          for (std::size_t m = 0; m < 3; ++m)
            for (std::size_t n = 0; n < 3; ++n) {
              const int e2 = detail::levi_civita(l, m, n);
              if (e2 == 0) continue;
              inv.i14 += e1 * e2 * b.s[i] * b.p[l] * beta[j][m] * beta[k][n];
            }
      }

  inv.y = {inv.i2, inv.i3, inv.i4, inv.i7, inv.i1 + inv.i12, inv.i5 + inv.i8 + inv.i14};
  inv.x1 = inv.i2 + inv.i4 + inv.i7;
  inv.x2 = inv.i1 + inv.i12;
  inv.x3 = inv.i2 * inv.i2 - inv.i3;
  inv.x4 = inv.i5 + inv.i8 + inv.i14 + inv.i4 * inv.i7;
  return inv;
}

/// Moments from the six combinations y1..y6:
///   4 Pi2 = 1 + x1,  16 Pi3 = 1 + 3 x1 + 6 x2,
///   64 Pi4 = 1 + 6 x1 + 24 x2 + x1^2 + 2 x3 + 4 x4,
/// with x1 = y1 + y3 + y4, x2 = y5, x3 = y1^2 - y2, x4 = y6 + y3 y4.
/// Only `y` is read.
inline MomentSet moments_from_invariants(const InvariantSet& inv) {
  const auto& y = inv.y;
  const double x1 = y[0] + y[2] + y[3];
  const double x2 = y[4];
  const double x3 = y[0] * y[0] - y[1];
  const double x4 = y[5] + y[2] * y[3];
  return MomentSet{
      .pi2 = (1.0 + x1) / 4.0,
      .pi3 = (1.0 + 3.0 * x1 + 6.0 * x2) / 16.0,
      .pi4 = (1.0 + 6.0 * x1 + 24.0 * x2 + x1 * x1 + 2.0 * x3 + 4.0 * x4) / 64.0,
      .source = MomentSource::kInvariants,
  };
}

inline MomentSet moments_invariants(const DensityMatrix& rho) { return moments_from_invariants(makhlin(decompose(rho))); }

}  // namespace uwit

#endif  // UWIT_INVARIANTS_HPP
