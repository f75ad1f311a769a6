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

#ifndef UWIT_WITNESS_HPP
#define UWIT_WITNESS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uwit/linalg.hpp"
#include "uwit/matrix.hpp"
#include "uwit/states.hpp"

namespace uwit {

/// Which computation produced a MomentSet.
enum class MomentSource { kDirect, kCollective, kInvariants };

inline std::string_view to_string(MomentSource s) {
  switch (s) {
    case MomentSource::kDirect: return "direct";
    case MomentSource::kCollective: return "collective";
    case MomentSource::kInvariants: return "invariants";
  }
  return "?";
}

/// Moments Pi_n = tr[(rho^Gamma)^n] for n = 2, 3, 4. Pi_1 = 1 is implicit.
struct MomentSet {
  double pi2 = 0.0;
  double pi3 = 0.0;
  double pi4 = 0.0;
  MomentSource source = MomentSource::kDirect;

  double operator[](int n) const {
    switch (n) {
      case 2: return pi2;
      case 3: return pi3;
      case 4: return pi4;
      default: throw std::out_of_range("MomentSet: moment order must be 2, 3 or 4");
    }
  }

  /// pi2 in [1/4, 1], |pi3| <= pi2, pi4 <= pi2^2, with slack `tol`.
  bool is_consistent(double tol = 1e-12) const noexcept {
    return pi2 >= 0.25 - tol && pi2 <= 1.0 + tol && std::abs(pi3) <= pi2 + tol && pi4 <= pi2 * pi2 + tol;
  }
};

inline double max_deviation(const MomentSet& a, const MomentSet& b) noexcept {
  return std::max({std::abs(a.pi2 - b.pi2), std::abs(a.pi3 - b.pi3), std::abs(a.pi4 - b.pi4)});
}

inline MomentSet moments_direct(const DensityMatrix& rho) {
  const ComplexMatrix g = partial_transpose(rho.matrix());
  const ComplexMatrix g2 = g * g;
  return MomentSet{
      .pi2 = g2.trace().real(),
      .pi3 = trace_of_product(g2, g).real(),
      .pi4 = trace_of_product(g2, g2).real(),
      .source = MomentSource::kDirect,
  };
}

/// det(rho^Gamma) as the quartic polynomial in the moments:
/// (1 - 6 Pi4 + 8 Pi3 + 3 Pi2^2 - 6 Pi2) / 24.
inline double witness_value(const MomentSet& m) noexcept {
  return (1.0 - 6.0 * m.pi4 + 8.0 * m.pi3 + 3.0 * m.pi2 * m.pi2 - 6.0 * m.pi2) / 24.0;
}

/// Rescaled witness w = max(0, -16 <W>).
inline double rescaled_witness(double witness) noexcept { return std::max(0.0, -16.0 * witness); }

inline std::vector<double> partial_transpose_spectrum(const DensityMatrix& rho) {
  return hermitian_eig(partial_transpose(rho.matrix()));
}

inline double negativity(const DensityMatrix& rho) {
  const double min_eig = partial_transpose_spectrum(rho).front();
  return std::clamp(2.0 * std::max(0.0, -min_eig), 0.0, 1.0);
}

/// sigma_y ⊗ sigma_y
inline const ComplexMatrix& spin_flip() {
  static const ComplexMatrix yy{{0, 0, 0, -1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}};
  return yy;
}

/// rho (sigma_y ⊗ sigma_y) rho* (sigma_y ⊗ sigma_y)
inline ComplexMatrix wootters_matrix(const DensityMatrix& rho) {
  const ComplexMatrix& yy = spin_flip();
  return rho.matrix() * yy * rho.matrix().conjugate() * yy;
}

/// Square roots of the Wootters-matrix eigenvalues, descending.
///
/// With rho = F F^H these are the singular values of F^T (sigma_y ⊗ sigma_y) F,
/// which avoids taking square roots of eigenvalues that are zero up to
/// roundoff (a pure state would otherwise pick up ~1e-8 spurious lambdas).
inline std::vector<double> wootters_lambdas(const DensityMatrix& rho) {
  const auto cols = psd_factor(rho.matrix());
  const std::size_t r = cols.size();
  const ComplexMatrix& yy = spin_flip();
  std::vector<double> lambdas;
  if (r > 0) {
    ComplexMatrix tau(r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        complex s = 0.0;
        for (std::size_t k = 0; k < 4; ++k)
          for (std::size_t l = 0; l < 4; ++l) {
            if (yy(k, l) != complex{}) s += cols[i][k] * yy(k, l) * cols[j][l];
          }
        tau(i, j) = s;
      }
    lambdas = singular_values(tau);
  }
  lambdas.resize(4, 0.0);
  return lambdas;
}

inline double concurrence(const DensityMatrix& rho) {
  const auto l = wootters_lambdas(rho);
  return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

/// Concurrence from the Wootters-matrix eigenvalues directly, with negative
/// eigenvalues clipped to zero before the square root. Retained as a second
/// route; loses accuracy when eigenvalues vanish.
inline double concurrence_from_eigenvalues(const DensityMatrix& rho) {
  const auto ev = eig4_general(wootters_matrix(rho));
  std::array<double, 4> l{};
  for (std::size_t k = 0; k < 4; ++k) l[k] = std::sqrt(std::max(0.0, ev[k].real()));
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

struct Bounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Tight bounds f(w) <= N <= C <= w^(1/4) on negativity and concurrence.
///
/// f inverts w(C) = C (C + 2)^3 / 27 on [0, 1]. Inputs within 1e-12 of the
/// interval are clamped onto it.
inline Bounds bounds(double w) {
  constexpr double slack = 1e-12;
  if (!(w >= -slack && w <= 1.0 + slack)) {
    throw std::domain_error("bounds: w must lie in [0, 1], got " + std::to_string(w));
  }
  w = std::clamp(w, 0.0, 1.0);
  if (w == 0.0) return {0.0, 0.0};
  // 2 sqrt(w^2 (16 w + 1)) - 2 w, written without cancellation for small w.
  const double arg = 2.0 * w * (16.0 * w / (std::sqrt(16.0 * w + 1.0) + 1.0));
  const double x = 3.0 * std::cbrt(arg);
  const double z = 1.0 + x - 36.0 * w / x;
  const double sz = std::sqrt(z);
  const double f = 0.5 * (-3.0 + sz + std::sqrt(3.0 - z + 2.0 / sz));
  return {std::clamp(f, 0.0, 1.0), std::pow(w, 0.25)};
}

/// w(C) = C (C + 2)^3 / 27, the curve the lower bound inverts.
inline double witness_of_concurrence(double c) noexcept { return c * (c + 2.0) * (c + 2.0) * (c + 2.0) / 27.0; }

inline constexpr double kEntanglementThreshold = 1e-12;

struct WitnessReport {
  double witness = 0.0;
  double w = 0.0;
  double negativity = 0.0;
  double concurrence = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  bool entangled = false;
  MomentSet moments;
};

inline WitnessReport report(const DensityMatrix& rho) {
  WitnessReport r;
  r.moments = moments_direct(rho);
  r.witness = witness_value(r.moments);
  r.w = rescaled_witness(r.witness);
  r.negativity = negativity(rho);
  r.concurrence = concurrence(rho);
  const Bounds b = bounds(r.w);
  r.lower_bound = b.lower;
  r.upper_bound = b.upper;
  r.entangled = r.witness < -kEntanglementThreshold;
  return r;
}

}  // namespace uwit

#endif  // UWIT_WITNESS_HPP
