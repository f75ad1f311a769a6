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

#ifndef UWIT_STATES_HPP
#define UWIT_STATES_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uwit/linalg.hpp"
#include "uwit/matrix.hpp"
#include "uwit/random.hpp"

namespace uwit {

inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPositivityTolerance = 1e-9;

/// Raised when a matrix fails density-matrix validation. The message names
/// each violated invariant and its magnitude.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A validated two-qubit state in the basis |HH>, |HV>, |VH>, |VV>.
///
/// Only constructible through validate(), so holding one means the matrix is
/// Hermitian, unit trace and positive semidefinite within tolerance.
class DensityMatrix {
 public:
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const std::optional<std::string>& label() const noexcept { return label_; }

  DensityMatrix with_label(std::string label) const {
    DensityMatrix out = *this;
    out.label_ = std::move(label);
    return out;
  }

 private:
  DensityMatrix(ComplexMatrix m, std::optional<std::string> label) : matrix_(std::move(m)), label_(std::move(label)) {}
  friend DensityMatrix validate(const ComplexMatrix& rho, std::optional<std::string> label);

  ComplexMatrix matrix_;
  std::optional<std::string> label_;
};

inline DensityMatrix validate(const ComplexMatrix& rho, std::optional<std::string> label = std::nullopt) {
  if (rho.dim() != 4) {
    throw ValidationError("dimension violation: expected 4x4, got " + std::to_string(rho.dim()) + "x" +
                          std::to_string(rho.dim()));
  }
  std::vector<std::string> problems;
  auto fmt = [](double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
  };

  const double defect = rho.hermiticity_defect();
  const bool hermitian = defect <= kHermitianTolerance;
  if (!hermitian) problems.push_back("hermiticity violation: max |rho_ij - conj(rho_ji)| = " + fmt(defect));

  const complex tr = rho.trace();
  const double trace_error = std::abs(tr - 1.0);
  if (trace_error > kTraceTolerance) {
    problems.push_back("trace violation: tr(rho) = " + fmt(tr.real()) + " (|tr - 1| = " + fmt(trace_error) + ")");
  }

  if (hermitian) {
    const double min_eig = hermitian_eig(rho).front();
    if (min_eig < -kPositivityTolerance) {
      problems.push_back("positivity violation: minimum eigenvalue = " + fmt(min_eig));
    }
  }

  if (!problems.empty()) {
    std::string msg = "invalid density matrix: ";
    for (std::size_t k = 0; k < problems.size(); ++k) msg += (k ? "; " : "") + problems[k];
    throw ValidationError(msg);
  }
  ComplexMatrix clean = rho;
  for (std::size_t i = 0; i < 4; ++i) clean(i, i) = clean(i, i).real();
  return DensityMatrix(std::move(clean), std::move(label));
}

// ---------------------------------------------------------------------------
// Named fixtures

enum class StateFamily { kMaximallyMixed, kSinglet, kPhiPlus, kWerner, kProduct, kPureSchmidt };

/// A fixture state with its parameter: werner(p), product(theta),
/// pure_schmidt(lambda1). Parameterless families ignore `param`.
struct NamedState {
  StateFamily family = StateFamily::kMaximallyMixed;
  double param = 0.0;
};

namespace detail {

inline ComplexMatrix pure(const std::array<complex, 4>& psi) { return ComplexMatrix::outer(psi); }

inline const std::array<complex, 4>& singlet_vector() {
  static const std::array<complex, 4> v{0.0, std::numbers::sqrt2 / 2.0, -std::numbers::sqrt2 / 2.0, 0.0};
  return v;
}

}  // namespace detail

inline std::string to_string(const NamedState& s) {
  auto num = [](double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  };
  switch (s.family) {
    case StateFamily::kMaximallyMixed: return "mixed";
    case StateFamily::kSinglet: return "singlet";
    case StateFamily::kPhiPlus: return "phi_plus";
    case StateFamily::kWerner: return "werner:" + num(s.param);
    case StateFamily::kProduct: return "product:" + num(s.param);
    case StateFamily::kPureSchmidt: return "pure_schmidt:" + num(s.param);
  }
  return "?";
}

inline DensityMatrix named_state(const NamedState& s) {
  switch (s.family) {
    case StateFamily::kMaximallyMixed: return validate(ComplexMatrix::identity(4) * 0.25, to_string(s));
    case StateFamily::kSinglet: return validate(detail::pure(detail::singlet_vector()), to_string(s));
    case StateFamily::kPhiPlus: {
      const double h = std::numbers::sqrt2 / 2.0;
      return validate(detail::pure({h, 0.0, 0.0, h}), to_string(s));
    }
    case StateFamily::kWerner: {
      const double p = s.param;
      if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("werner: p must lie in [0, 1]");
      ComplexMatrix m = detail::pure(detail::singlet_vector()) * p + ComplexMatrix::identity(4) * ((1.0 - p) / 4.0);
      return validate(m, to_string(s));
    }
    case StateFamily::kProduct: {
      // (cos t |H> + sin t |V>) on both photons.
      const double c = std::cos(s.param);
      const double sn = std::sin(s.param);
      return validate(detail::pure({c * c, c * sn, sn * c, sn * sn}), to_string(s));
    }
    case StateFamily::kPureSchmidt: {
      const double l1 = s.param;
      if (!(l1 >= 0.0 && l1 <= 1.0)) throw std::invalid_argument("pure_schmidt: lambda1 must lie in [0, 1]");
      const double l2 = std::sqrt(1.0 - l1 * l1);
      return validate(detail::pure({l1, 0.0, 0.0, l2}), to_string(s));
    }
  }
  throw std::invalid_argument("named_state: unknown family");
}

/// Parses "name" or "name:param", e.g. "singlet", "werner:0.5".
inline NamedState parse_named_state(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  std::optional<double> param;
  if (colon != std::string_view::npos) {
    const std::string arg(text.substr(colon + 1));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (arg.empty() || used != arg.size()) {
      throw std::invalid_argument("named state '" + std::string(text) + "': bad numeric parameter");
    }
    param = v;
  }
  auto no_param = [&](StateFamily f) {
    if (param) throw std::invalid_argument("named state '" + std::string(name) + "' takes no parameter");
    return NamedState{f, 0.0};
  };
  auto with_param = [&](StateFamily f) {
    if (!param) throw std::invalid_argument("named state '" + std::string(name) + "' requires ':<param>'");
    return NamedState{f, *param};
  };
  if (name == "mixed") return no_param(StateFamily::kMaximallyMixed);
  if (name == "singlet") return no_param(StateFamily::kSinglet);
  if (name == "phi_plus") return no_param(StateFamily::kPhiPlus);
  if (name == "werner") return with_param(StateFamily::kWerner);
  if (name == "product") return with_param(StateFamily::kProduct);
  if (name == "pure_schmidt") return with_param(StateFamily::kPureSchmidt);
  throw std::invalid_argument("unknown named state '" + std::string(name) +
                              "' (expected mixed, singlet, phi_plus, werner:p, product:theta, pure_schmidt:l1)");
}

/// Closed-form det(rho^Gamma) for the fixture families.
inline double analytic_witness(const NamedState& s) {
  switch (s.family) {
    case StateFamily::kMaximallyMixed: return 1.0 / 256.0;
    case StateFamily::kSinglet:
    case StateFamily::kPhiPlus: return -1.0 / 16.0;
    case StateFamily::kWerner: {
      const double p = s.param;
      return std::pow(1.0 + p, 3) * (1.0 - 3.0 * p) / 256.0;
    }
    case StateFamily::kProduct: return 0.0;
    case StateFamily::kPureSchmidt: {
      const double l1 = s.param;
      const double l2sq = 1.0 - l1 * l1;
      return -(l1 * l1 * l2sq) * (l1 * l1 * l2sq);
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Random states

enum class Ensemble { kHilbertSchmidt, kHaarPure };

struct RandomEnsembleSpec {
  Ensemble kind = Ensemble::kHilbertSchmidt;
  std::uint64_t seed = 0;
};

/// Stream of random two-qubit states. Owns its generator; one per thread.
///
/// Hilbert-Schmidt: rho = G G^H / tr(G G^H) with G a 4x4 Ginibre matrix.
/// Haar pure: |psi><psi| with psi a normalized complex Gaussian 4-vector.
class StateSampler {
 public:
  explicit StateSampler(RandomEnsembleSpec spec) : kind_(spec.kind), rng_(spec.seed) {}

  DensityMatrix next() {
    if (kind_ == Ensemble::kHaarPure) {
      std::array<complex, 4> psi{};
      double norm2 = 0.0;
      for (auto& z : psi) {
        z = rng_.complex_normal();
        norm2 += std::norm(z);
      }
      const double inv = 1.0 / std::sqrt(norm2);
      for (auto& z : psi) z *= inv;
      return validate(ComplexMatrix::outer(psi), "haar-pure");
    }
    ComplexMatrix g(4);
    for (auto& z : g.entries()) z = rng_.complex_normal();
    ComplexMatrix rho = g * g.adjoint();
    // Exact hermiticity; the product only guarantees it to roundoff.
    for (std::size_t i = 0; i < 4; ++i) {
      rho(i, i) = rho(i, i).real();
      for (std::size_t j = i + 1; j < 4; ++j) rho(j, i) = std::conj(rho(i, j));
    }
    rho *= 1.0 / rho.trace().real();
    return validate(rho, "hilbert-schmidt");
  }

  Rng& rng() noexcept { return rng_; }

 private:
  Ensemble kind_;
  Rng rng_;
};

/// First draw of the ensemble for this seed.
inline DensityMatrix sample(const RandomEnsembleSpec& spec) { return StateSampler(spec).next(); }

/// Haar-random 2x2 unitary: SU(2) from a normalized Gaussian 4-vector.
inline ComplexMatrix random_qubit_unitary(Rng& rng) {
  std::array<double, 4> q{};
  double n2 = 0.0;
  for (double& v : q) {
    v = rng.normal();
    n2 += v * v;
  }
  const double inv = 1.0 / std::sqrt(n2);
  const complex a(q[0] * inv, q[1] * inv);
  const complex b(q[2] * inv, q[3] * inv);
  return ComplexMatrix{{a, -std::conj(b)}, {b, std::conj(a)}};
}

/// (U_a ⊗ U_b) rho (U_a ⊗ U_b)^H
inline DensityMatrix apply_local_unitary(const DensityMatrix& rho, const ComplexMatrix& ua, const ComplexMatrix& ub) {
  const ComplexMatrix u = kron(ua, ub);
  ComplexMatrix out = u * rho.matrix() * u.adjoint();
  for (std::size_t i = 0; i < 4; ++i) {
    out(i, i) = out(i, i).real();
    for (std::size_t j = i + 1; j < 4; ++j) out(j, i) = std::conj(out(i, j));
  }
  return validate(out, rho.label().value_or("rotated"));
}

}  // namespace uwit

#endif  // UWIT_STATES_HPP
