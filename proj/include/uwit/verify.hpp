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

#ifndef UWIT_VERIFY_HPP
#define UWIT_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "uwit/collective.hpp"
#include "uwit/invariants.hpp"
#include "uwit/states.hpp"
#include "uwit/witness.hpp"

namespace uwit {

/// Outcome of one identity suite: the worst deviation seen and the bound it
/// is held to.
struct SuiteResult {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::size_t cases = 0;

  bool passed() const noexcept { return max_deviation <= tolerance; }
};

struct VerifyOptions {
  std::size_t samples = 200;
  std::uint64_t seed = 0;
};

namespace detail {

inline std::vector<DensityMatrix> draw_states(std::size_t count, std::uint64_t seed) {
  StateSampler sampler({Ensemble::kHilbertSchmidt, seed});
  std::vector<DensityMatrix> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(sampler.next());
  return out;
}

inline double product(const std::vector<double>& v) {
  double p = 1.0;
  for (double x : v) p *= x;
  return p;
}

}  // namespace detail

/// det(rho^Gamma) from the moment polynomial vs the eigenvalue product.
inline SuiteResult verify_witness_identity(const std::vector<DensityMatrix>& states) {
  SuiteResult r{"witness = det(rho^Gamma)", 0.0, 1e-10, states.size()};
  for (const auto& rho : states) {
    const double det = detail::product(partial_transpose_spectrum(rho));
    r.max_deviation = std::max(r.max_deviation, std::abs(witness_value(moments_direct(rho)) - det));
  }
  return r;
}

/// direct, cycle trace, (A+B)^2 form and sequential outcome probabilities.
inline SuiteResult verify_moment_routes(const std::vector<DensityMatrix>& states) {
  SuiteResult r{"moment routes agree", 0.0, 1e-10, states.size()};
  for (const auto& rho : states) {
    const MomentSet direct = moments_direct(rho);
    for (int n = 2; n <= 4; ++n) {
      std::vector<double> routes{direct[n], moment_cycle(rho, n), outcome_probabilities(rho, n).moment()};
      if (n >= 3) routes.push_back(moment_via_x(rho, n));
      const auto [lo, hi] = std::minmax_element(routes.begin(), routes.end());
      r.max_deviation = std::max(r.max_deviation, *hi - *lo);
      const CycleTraces ct = cycle_traces(rho, n);
      r.max_deviation = std::max(r.max_deviation, std::abs(ct.ab - ct.ba));
    }
  }
  return r;
}

/// P^± and Pbar^± are orthogonal idempotents summing to I, and the
/// swap-by-swap assembly equals (I ± A)/2.
inline SuiteResult verify_projector_algebra() {
  SuiteResult r{"projector algebra", 0.0, 1e-12, 3};
  for (int n = 2; n <= 4; ++n) {
    const CollectiveOperators& ops = collective_operators(n);
    const ComplexMatrix id = ComplexMatrix::identity(ops.a.dim());
    const ComplexMatrix zero(ops.a.dim());
    for (const auto* pair : {&ops.p_plus, &ops.pbar_plus}) {
      const ComplexMatrix& plus = *pair;
      const ComplexMatrix& minus = pair == &ops.p_plus ? ops.p_minus : ops.pbar_minus;
      r.max_deviation = std::max({r.max_deviation, max_abs_diff(plus * plus, plus), max_abs_diff(minus * minus, minus),
                                  max_abs_diff(plus * minus, zero), max_abs_diff(plus + minus, id),
                                  plus.hermiticity_defect(), minus.hermiticity_defect()});
    }
    r.max_deviation = std::max({r.max_deviation, ops.assembly_gap, max_abs_diff(ops.a * ops.a, id),
                                max_abs_diff(ops.b * ops.b, id)});
  }
  return r;
}

/// [A_n, (rho^{⊗n})'] = 0 and P^± (rho^{⊗n})' P^± = P^± rho^{⊗n} P^±.
inline SuiteResult verify_symmetrization(const std::vector<DensityMatrix>& states) {
  SuiteResult r{"symmetrized state", 0.0, 1e-12, states.size()};
  for (const auto& rho : states)
    for (int n = 2; n <= 4; ++n) {
      const CollectiveOperators& ops = collective_operators(n);
      const ComplexMatrix sym = symmetrized_state(rho, n);
      const ComplexMatrix r0 = copies(rho, n);
      r.max_deviation = std::max(r.max_deviation, max_abs(commutator(ops.a, sym)));
      for (const auto* p : {&ops.p_plus, &ops.p_minus})
        r.max_deviation = std::max(r.max_deviation, max_abs_diff(*p * sym * *p, *p * r0 * *p));
    }
  return r;
}

inline SuiteResult verify_invariant_moments(const std::vector<DensityMatrix>& states) {
  SuiteResult r{"invariant moment identities", 0.0, 1e-10, states.size()};
  for (const auto& rho : states)
    r.max_deviation = std::max(r.max_deviation, max_deviation(moments_invariants(rho), moments_direct(rho)));
  return r;
}

/// Largest change of any invariant under random U_a ⊗ U_b.
inline SuiteResult verify_local_invariance(const std::vector<DensityMatrix>& states, std::uint64_t seed) {
  SuiteResult r{"local-unitary invariance", 0.0, 1e-9, states.size()};
  Rng rng(seed);
  for (const auto& rho : states) {
    const InvariantSet before = makhlin(decompose(rho));
    const DensityMatrix rotated = apply_local_unitary(rho, random_qubit_unitary(rng), random_qubit_unitary(rng));
    const InvariantSet after = makhlin(decompose(rotated));
    const std::array<double, 9> a{before.i1, before.i2, before.i3, before.i4, before.i5,
                                  before.i7, before.i8, before.i12, before.i14};
    const std::array<double, 9> b{after.i1, after.i2, after.i3, after.i4, after.i5,
                                  after.i7, after.i8, after.i12, after.i14};
    for (std::size_t k = 0; k < a.size(); ++k) r.max_deviation = std::max(r.max_deviation, std::abs(a[k] - b[k]));
  }
  return r;
}

/// Every identity suite on `samples` Hilbert-Schmidt states. The
/// symmetrization suite, which works on 256x256 matrices, uses at most 50.
inline std::vector<SuiteResult> run_identity_suites(const VerifyOptions& opt) {
  const auto states = detail::draw_states(opt.samples, opt.seed);
  const std::vector<DensityMatrix> few(states.begin(),
                                       states.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(50, states.size())));
  return {
      verify_witness_identity(states),
      verify_moment_routes(states),
      verify_projector_algebra(),
      verify_symmetrization(few),
      verify_invariant_moments(states),
      verify_local_invariance(states, derive_seed(opt.seed, 0x10CA1)),
  };
}

}  // namespace uwit

#endif  // UWIT_VERIFY_HPP
