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

#ifndef UWIT_LINALG_HPP
#define UWIT_LINALG_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "uwit/matrix.hpp"

namespace uwit {

inline constexpr double kHermitianTolerance = 1e-10;

/// Qubit ordering of an n-copy register of two-qubit states.
///
/// Qubits are ordered copy-major: a1, b1, a2, b2, ..., so the register is the
/// literal n-fold tensor power of a state on (a, b). Qubit 0 is the most
/// significant bit of a basis index.
class RegisterLayout {
 public:
  explicit RegisterLayout(int n_copies) : n_copies_(n_copies) {
    if (n_copies < 2 || n_copies > 4) {
      throw std::invalid_argument("RegisterLayout: n_copies must be 2, 3 or 4, got " + std::to_string(n_copies));
    }
  }

  int n_copies() const noexcept { return n_copies_; }
  std::size_t qubits() const noexcept { return 2 * static_cast<std::size_t>(n_copies_); }
  std::size_t dim() const noexcept { return std::size_t{1} << qubits(); }

  /// Qubit index of photon a in copy `copy` (1-based).
  std::size_t a(int copy) const { return 2 * checked(copy); }
  /// Qubit index of photon b in copy `copy` (1-based).
  std::size_t b(int copy) const { return 2 * checked(copy) + 1; }

 private:
  std::size_t checked(int copy) const {
    if (copy < 1 || copy > n_copies_) {
      throw std::out_of_range("RegisterLayout: copy " + std::to_string(copy) + " not in 1.." +
                              std::to_string(n_copies_));
    }
    return static_cast<std::size_t>(copy - 1);
  }

  int n_copies_;
};

/// Split of a Hilbert space into first and second subsystem.
struct Bipartition {
  std::size_t dim_a = 2;
  std::size_t dim_b = 2;
};

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const complex aij = a(i, j);
      if (aij == complex{}) continue;
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return out;
}

/// m ⊗ m ⊗ ... (n factors).
inline ComplexMatrix tensor_power(const ComplexMatrix& m, int n) {
  if (n < 1) throw std::invalid_argument("tensor_power: n must be positive");
  ComplexMatrix out = m;
  for (int k = 1; k < n; ++k) out = kron(out, m);
  return out;
}

/// Transposes the indices of the second subsystem.
inline ComplexMatrix partial_transpose(const ComplexMatrix& rho, Bipartition parts = {}) {
  const std::size_t da = parts.dim_a;
  const std::size_t db = parts.dim_b;
  if (da == 0 || db == 0 || rho.dim() != da * db) {
    throw std::invalid_argument("partial_transpose: matrix of dimension " + std::to_string(rho.dim()) +
                                " does not match bipartition " + std::to_string(da) + "x" + std::to_string(db));
  }
  ComplexMatrix out(rho.dim());
  for (std::size_t ia = 0; ia < da; ++ia)
    for (std::size_t ib = 0; ib < db; ++ib)
      for (std::size_t ja = 0; ja < da; ++ja)
        for (std::size_t jb = 0; jb < db; ++jb) out(ia * db + jb, ja * db + ib) = rho(ia * db + ib, ja * db + jb);
  return out;
}

/// Permutation matrix exchanging qubits i and j of a `num_qubits` register.
inline ComplexMatrix swap_qubits(std::size_t num_qubits, std::size_t i, std::size_t j) {
  if (i >= num_qubits || j >= num_qubits) {
    throw std::out_of_range("swap_qubits: qubit index out of range for " + std::to_string(num_qubits) + " qubits");
  }
  if (i == j) throw std::invalid_argument("swap_qubits: indices must differ");
  const std::size_t dim = std::size_t{1} << num_qubits;
  const std::size_t bi = num_qubits - 1 - i;
  const std::size_t bj = num_qubits - 1 - j;
  ComplexMatrix out(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    const std::size_t vi = (x >> bi) & 1U;
    const std::size_t vj = (x >> bj) & 1U;
    std::size_t y = x;
    if (vi != vj) y ^= (std::size_t{1} << bi) | (std::size_t{1} << bj);
    out(y, x) = 1.0;
  }
  return out;
}

inline ComplexMatrix swap_qubits(const RegisterLayout& layout, std::size_t i, std::size_t j) {
  return swap_qubits(layout.qubits(), i, j);
}

/// Eigenvalues of a Hermitian matrix, ascending, by cyclic Jacobi rotations.
inline std::vector<double> hermitian_eig(const ComplexMatrix& m) {
  const double defect = m.hermiticity_defect();
  if (defect > kHermitianTolerance) {
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian (max defect " + std::to_string(defect) + ")");
  }
  const std::size_t n = m.dim();
  ComplexMatrix h = m;
  for (std::size_t i = 0; i < n; ++i) h(i, i) = h(i, i).real();

  auto off_norm2 = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += std::norm(h(i, j));
    return s;
  };
  double total2 = 0.0;
  for (const auto& z : h.entries()) total2 += std::norm(z);
  const double stop2 = total2 * 1e-34;

  for (int sweep = 0; sweep < 100 && off_norm2() > stop2; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const complex hpq = h(p, q);
        const double g = std::abs(hpq);
        if (g == 0.0) continue;
        const double app = h(p, p).real();
        const double aqq = h(q, q).real();
        // Below roundoff of both diagonal entries: drop it.
        if (g < 1e-20 * (std::abs(app) + std::abs(aqq))) {
          h(p, q) = h(q, p) = 0.0;
          continue;
        }
        const complex phase = hpq / g;
        const double theta = (aqq - app) / (2.0 * g);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // U restricted to (p, q): [[c, s], [-s conj(phase), c conj(phase)]].
        const complex upp = c;
        const complex upq = s;
        const complex uqp = -s * std::conj(phase);
        const complex uqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const complex hkp = h(k, p);
          const complex hkq = h(k, q);
          h(k, p) = hkp * upp + hkq * uqp;
          h(k, q) = hkp * upq + hkq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const complex hpk = h(p, k);
          const complex hqk = h(q, k);
          h(p, k) = std::conj(upp) * hpk + std::conj(uqp) * hqk;
          h(q, k) = std::conj(upq) * hpk + std::conj(uqq) * hqk;
        }
        h(p, q) = h(q, p) = 0.0;
        h(p, p) = app - t * g;
        h(q, q) = aqq + t * g;
      }
  }
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = h(i, i).real();
  std::sort(values.begin(), values.end());
  return values;
}

/// Eigenvalues of a general 4x4 complex matrix.
///
/// Hessenberg reduction followed by single-shift complex QR with Wilkinson
/// shifts and deflation. Accurate to ~1e-8 relative to the matrix norm for
/// diagonalizable input. Order is deflation order (not sorted).
inline std::array<complex, 4> eig4_general(const ComplexMatrix& m) {
  if (m.dim() != 4) throw std::invalid_argument("eig4_general: expected a 4x4 matrix, got dimension " +
                                               std::to_string(m.dim()));
  constexpr std::size_t n = 4;
  ComplexMatrix h = m;

  struct Givens {
    double c = 1.0;
    complex s = 0.0;
  };
  auto make_givens = [](complex a, complex b) {
    const double r = std::hypot(std::abs(a), std::abs(b));
    if (r == 0.0) return Givens{};
    if (a == complex{}) return Givens{0.0, 1.0};
    const double abs_a = std::abs(a);
    return Givens{abs_a / r, (a / abs_a) * std::conj(b) / r};
  };
  // rows (i, k): [x_i; x_k] <- [[c, s], [-conj(s), c]] [x_i; x_k]
  auto rotate_rows = [&](const Givens& g, std::size_t i, std::size_t k, std::size_t col_lo, std::size_t col_hi) {
    for (std::size_t j = col_lo; j <= col_hi; ++j) {
      const complex xi = h(i, j);
      const complex xk = h(k, j);
      h(i, j) = g.c * xi + g.s * xk;
      h(k, j) = -std::conj(g.s) * xi + g.c * xk;
    }
  };
  // columns (i, k): multiply on the right by the adjoint of the row rotation.
  auto rotate_cols = [&](const Givens& g, std::size_t i, std::size_t k, std::size_t row_lo, std::size_t row_hi) {
    for (std::size_t r = row_lo; r <= row_hi; ++r) {
      const complex xi = h(r, i);
      const complex xk = h(r, k);
      h(r, i) = g.c * xi + std::conj(g.s) * xk;
      h(r, k) = -g.s * xi + g.c * xk;
    }
  };

  for (std::size_t col = 0; col + 2 < n; ++col)
    for (std::size_t row = n - 1; row > col + 1; --row) {
      const Givens g = make_givens(h(row - 1, col), h(row, col));
      rotate_rows(g, row - 1, row, 0, n - 1);
      rotate_cols(g, row - 1, row, 0, n - 1);
      h(row, col) = 0.0;
    }

  std::array<complex, 4> values{};
  const double eps = std::numeric_limits<double>::epsilon();
  double scale = 0.0;
  for (const auto& z : h.entries()) scale = std::max(scale, std::abs(z));

  std::size_t hi = n - 1;
  int stuck = 0;
  while (true) {
    if (hi == 0) {
      values[0] = h(0, 0);
      break;
    }
    std::size_t lo = hi;
    while (lo > 0) {
      const double sub = std::abs(h(lo, lo - 1));
      const double diag = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
      if (sub <= eps * (diag > 0.0 ? diag : scale)) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      values[hi] = h(hi, hi);
      --hi;
      stuck = 0;
      continue;
    }
    if (++stuck > 200) throw std::runtime_error("eig4_general: QR iteration did not converge");

    // Wilkinson shift: eigenvalue of the trailing 2x2 block closer to h(hi, hi).
    const complex a = h(hi - 1, hi - 1);
    const complex b = h(hi - 1, hi);
    const complex c = h(hi, hi - 1);
    const complex d = h(hi, hi);
    const complex half_tr = 0.5 * (a + d);
    const complex disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
    const complex mu1 = half_tr + disc;
    const complex mu2 = half_tr - disc;
    complex shift = std::abs(mu1 - d) < std::abs(mu2 - d) ? mu1 : mu2;
    if (stuck % 11 == 10) shift = d + complex(std::abs(c), 0.0);  // exceptional shift

    for (std::size_t k = lo; k <= hi; ++k) h(k, k) -= shift;
    std::array<Givens, 4> rot{};
    for (std::size_t k = lo; k < hi; ++k) {
      rot[k] = make_givens(h(k, k), h(k + 1, k));
      rotate_rows(rot[k], k, k + 1, k, hi);
      h(k + 1, k) = 0.0;
    }
    for (std::size_t k = lo; k < hi; ++k) rotate_cols(rot[k], k, k + 1, lo, std::min(k + 2, hi));
    for (std::size_t k = lo; k <= hi; ++k) h(k, k) += shift;
  }
  return values;
}

/// Singular values of a square matrix, descending.
///
/// Computed as the nonnegative eigenvalues of the Hermitian dilation
/// [[0, M], [M^H, 0]], which keeps small singular values accurate to
/// roundoff in absolute terms instead of the square root of roundoff.
inline std::vector<double> singular_values(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  ComplexMatrix dilation(2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      dilation(i, n + j) = m(i, j);
      dilation(n + j, i) = std::conj(m(i, j));
    }
  std::vector<double> eig = hermitian_eig(dilation);
  std::vector<double> out(eig.rbegin(), eig.rbegin() + static_cast<std::ptrdiff_t>(n));
  for (double& v : out) v = std::max(v, 0.0);
  return out;
}

/// Column factor F with rho = F F^H, by diagonally pivoted Cholesky.
///
/// Stops once the largest remaining pivot falls below `rel_tol` times the
/// trace, so a numerically rank-deficient positive matrix yields exactly
/// as many columns as its numerical rank.
inline std::vector<std::vector<complex>> psd_factor(const ComplexMatrix& rho, double rel_tol = 1e-14) {
  const std::size_t n = rho.dim();
  ComplexMatrix r = rho;
  const double scale = std::max(std::abs(rho.trace()), std::numeric_limits<double>::min());
  std::vector<std::vector<complex>> columns;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t piv = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i)
      if (r(i, i).real() > best) {
        best = r(i, i).real();
        piv = i;
      }
    if (best <= rel_tol * scale) break;
    const double root = std::sqrt(best);
    std::vector<complex> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = r(i, piv) / root;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) r(i, j) -= col[i] * std::conj(col[j]);
    for (std::size_t j = 0; j < n; ++j) r(piv, j) = r(j, piv) = 0.0;
    columns.push_back(std::move(col));
  }
  return columns;
}

}  // namespace uwit

#endif  // UWIT_LINALG_HPP
