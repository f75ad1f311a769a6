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

#ifndef UWIT_COLLECTIVE_HPP
#define UWIT_COLLECTIVE_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uwit/linalg.hpp"
#include "uwit/matrix.hpp"
#include "uwit/states.hpp"
#include "uwit/witness.hpp"

namespace uwit {

// Collective multi-copy observables.
//
// On n copies of a two-qubit state, A_n and B_n are products of disjoint
// qubit swaps (on the a photons and on the b photons respectively) whose
// product A_n B_n is an n-cycle, so tr(A_n B_n rho^{⊗n}) = tr[(rho^Gamma)^n].
// Both are Hermitian involutions; P_n^± = (I ± A_n)/2 and Pbar_n^± =
// (I ± B_n)/2 project onto their ±1 eigenspaces. Measuring P first and Pbar
// second gives four outcomes whose signed probabilities sum to Pi_n.

enum class OperatorKind { kA, kB, kPPlus, kPMinus, kPbarPlus, kPbarMinus, kX };

inline std::string_view to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::kA: return "A";
    case OperatorKind::kB: return "B";
    case OperatorKind::kPPlus: return "P+";
    case OperatorKind::kPMinus: return "P-";
    case OperatorKind::kPbarPlus: return "Pbar+";
    case OperatorKind::kPbarMinus: return "Pbar-";
    case OperatorKind::kX: return "X";
  }
  return "?";
}

struct CollectiveOperator {
  int n_copies = 2;
  OperatorKind kind = OperatorKind::kA;
  ComplexMatrix matrix;
};

using QubitPair = std::pair<std::size_t, std::size_t>;

/// Swap pairs making up A_n, in the order the projector assembly consumes
/// them: (a1,a2), then (b2,b3), then (a3,a4).
inline std::vector<QubitPair> a_side_swaps(int n) {
  const RegisterLayout l(n);
  std::vector<QubitPair> s{{l.a(1), l.a(2)}};
  if (n >= 3) s.emplace_back(l.b(2), l.b(3));
  if (n >= 4) s.emplace_back(l.a(3), l.a(4));
  return s;
}

/// Swap pairs making up B_n: the A_n list with photons a and b exchanged.
inline std::vector<QubitPair> b_side_swaps(int n) {
  const RegisterLayout l(n);
  std::vector<QubitPair> s{{l.b(1), l.b(2)}};
  if (n >= 3) s.emplace_back(l.a(2), l.a(3));
  if (n >= 4) s.emplace_back(l.b(3), l.b(4));
  return s;
}

inline ComplexMatrix product_of_swaps(const RegisterLayout& layout, const std::vector<QubitPair>& swaps) {
  ComplexMatrix m = ComplexMatrix::identity(layout.dim());
  for (const auto& [i, j] : swaps) m = m * swap_qubits(layout, i, j);
  return m;
}

struct ProjectorPair {
  ComplexMatrix plus;
  ComplexMatrix minus;
};

/// Parity projectors of a product of commuting swaps, assembled one swap at a
/// time: with Q^± the projectors for the swaps so far and R^± = (I ± S)/2
/// for the next swap S,
///   new^± = Q^∓ R^- + Q^± R^+.
/// For A_3 this reads P_3^± = P_{12}^∓ Pbar_{23}^- + P_{12}^± Pbar_{23}^+, and
/// for A_4 it extends P_3^± by the (a3, a4) swap.
inline ProjectorPair assemble_parity_projectors(const RegisterLayout& layout, const std::vector<QubitPair>& swaps) {
  if (swaps.empty()) throw std::invalid_argument("assemble_parity_projectors: no swaps");
  const ComplexMatrix id = ComplexMatrix::identity(layout.dim());
  auto pair_projectors = [&](const QubitPair& s) {
    const ComplexMatrix sw = swap_qubits(layout, s.first, s.second);
    return ProjectorPair{(id + sw) * 0.5, (id - sw) * 0.5};
  };
  ProjectorPair acc = pair_projectors(swaps.front());
  for (std::size_t k = 1; k < swaps.size(); ++k) {
    const ProjectorPair r = pair_projectors(swaps[k]);
    ProjectorPair next{acc.minus * r.minus + acc.plus * r.plus, acc.plus * r.minus + acc.minus * r.plus};
    acc = std::move(next);
  }
  return acc;
}

/// Every collective operator for one copy count, built once.
struct CollectiveOperators {
  int n_copies = 2;
  ComplexMatrix a, b;
  ComplexMatrix p_plus, p_minus;
  ComplexMatrix pbar_plus, pbar_minus;
  ComplexMatrix x;  // (A + B)^2
  ComplexMatrix ab, ba;
  /// effect[y][x] = P^y Pbar^x P^y, so that the probability of first seeing
  /// y on the A side and then x on the B side is tr(effect[y][x] rho^{⊗n}).
  /// Index 0 is the + outcome, 1 the - outcome.
  std::array<std::array<ComplexMatrix, 2>, 2> effect;
  /// max entrywise gap between the swap-by-swap assembly and (I ± A)/2,
  /// (I ± B)/2; zero up to roundoff.
  double assembly_gap = 0.0;
};

inline constexpr double kAssemblyTolerance = 1e-12;

namespace detail {

inline CollectiveOperators build_operators(int n) {
  const RegisterLayout layout(n);
  const ComplexMatrix id = ComplexMatrix::identity(layout.dim());
  CollectiveOperators ops;
  ops.n_copies = n;
  ops.a = product_of_swaps(layout, a_side_swaps(n));
  ops.b = product_of_swaps(layout, b_side_swaps(n));
  ops.p_plus = (id + ops.a) * 0.5;
  ops.p_minus = (id - ops.a) * 0.5;
  ops.pbar_plus = (id + ops.b) * 0.5;
  ops.pbar_minus = (id - ops.b) * 0.5;
  if (n >= 3) {
    const ProjectorPair pa = assemble_parity_projectors(layout, a_side_swaps(n));
    const ProjectorPair pb = assemble_parity_projectors(layout, b_side_swaps(n));
    ops.assembly_gap = std::max({max_abs_diff(pa.plus, ops.p_plus), max_abs_diff(pa.minus, ops.p_minus),
                                 max_abs_diff(pb.plus, ops.pbar_plus), max_abs_diff(pb.minus, ops.pbar_minus)});
    if (ops.assembly_gap > kAssemblyTolerance) {
      throw std::logic_error("collective operators: projector assembly disagrees with (I ± A)/2 for n = " +
                             std::to_string(n));
    }
  }
  const ComplexMatrix sum = ops.a + ops.b;
  ops.x = sum * sum;
  ops.ab = ops.a * ops.b;
  ops.ba = ops.b * ops.a;
  const std::array<const ComplexMatrix*, 2> p{&ops.p_plus, &ops.p_minus};
  const std::array<const ComplexMatrix*, 2> pbar{&ops.pbar_plus, &ops.pbar_minus};
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 2; ++x) ops.effect[y][x] = *p[y] * *pbar[x] * *p[y];
  return ops;
}

}  // namespace detail

/// Cached operators for n in {2, 3, 4}; thread-safe, immutable once built.
inline const CollectiveOperators& collective_operators(int n) {
  if (n < 2 || n > 4) throw std::invalid_argument("collective_operators: n must be 2, 3 or 4");
  static std::array<std::once_flag, 3> once;
  static std::array<CollectiveOperators, 3> cache;
  const auto slot = static_cast<std::size_t>(n - 2);
  std::call_once(once[slot], [&] { cache[slot] = detail::build_operators(n); });
  return cache[slot];
}

inline CollectiveOperator build(OperatorKind kind, int n) {
  if (kind == OperatorKind::kX && n < 3) {
    throw std::invalid_argument("build: X is defined for n = 3 and 4 only");
  }
  const CollectiveOperators& ops = collective_operators(n);
  auto pick = [&]() -> const ComplexMatrix& {
    switch (kind) {
      case OperatorKind::kA: return ops.a;
      case OperatorKind::kB: return ops.b;
      case OperatorKind::kPPlus: return ops.p_plus;
      case OperatorKind::kPMinus: return ops.p_minus;
      case OperatorKind::kPbarPlus: return ops.pbar_plus;
      case OperatorKind::kPbarMinus: return ops.pbar_minus;
      case OperatorKind::kX: return ops.x;
    }
    throw std::invalid_argument("build: unknown operator kind");
  };
  return CollectiveOperator{n, kind, pick()};
}

/// rho^{⊗n} in the copy-major register layout.
inline ComplexMatrix copies(const DensityMatrix& rho, int n) {
  if (n < 2 || n > 4) throw std::invalid_argument("copies: n must be 2, 3 or 4");
  return tensor_power(rho.matrix(), n);
}

struct CycleTraces {
  complex ab;  // tr(A B rho^{⊗n})
  complex ba;  // tr(B A rho^{⊗n})
};

inline CycleTraces cycle_traces(const DensityMatrix& rho, int n) {
  const CollectiveOperators& ops = collective_operators(n);
  const ComplexMatrix r = copies(rho, n);
  return {trace_of_product(ops.ab, r), trace_of_product(ops.ba, r)};
}

/// Pi_n = tr(A_n B_n rho^{⊗n}).
inline double moment_cycle(const DensityMatrix& rho, int n) { return cycle_traces(rho, n).ab.real(); }

/// Pi_n = tr[(A_n + B_n)^2 rho^{⊗n}] / 2 - 1, n in {3, 4}.
inline double moment_via_x(const DensityMatrix& rho, int n) {
  if (n != 3 && n != 4) throw std::invalid_argument("moment_via_x: n must be 3 or 4");
  const CollectiveOperators& ops = collective_operators(n);
  return 0.5 * trace_of_product(ops.x, copies(rho, n)).real() - 1.0;
}

struct SpectrumLevel {
  double value = 0.0;
  std::size_t multiplicity = 0;
};

/// Distinct eigenvalues of X_n after rounding to 1e-8, ascending.
inline std::vector<SpectrumLevel> spectrum_x(int n) {
  if (n != 3 && n != 4) throw std::invalid_argument("spectrum_x: n must be 3 or 4");
  static std::array<std::once_flag, 2> once;
  static std::array<std::vector<SpectrumLevel>, 2> cache;
  const auto slot = static_cast<std::size_t>(n - 3);
  std::call_once(once[slot], [&] {
    std::vector<SpectrumLevel> levels;
    for (double v : hermitian_eig(collective_operators(n).x)) {
      const double rounded = std::round(v * 1e8) / 1e8 + 0.0;  // +0.0 folds -0 into 0
      if (levels.empty() || levels.back().value != rounded) levels.push_back({rounded, 0});
      ++levels.back().multiplicity;
    }
    cache[slot] = std::move(levels);
  });
  return cache[slot];
}

/// Number of projective outcomes needed for all three moments: two for Pi_2
/// plus one per eigenspace of X_3 and X_4.
inline std::size_t projection_count() { return 2 + spectrum_x(3).size() + spectrum_x(4).size(); }

/// Probabilities of the four outcomes of the sequential measurement: project
/// onto the ± eigenspace of A_n first, then onto the ± eigenspace of B_n.
struct OutcomeTable {
  int n_copies = 2;
  /// Indexed [first][second] with 0 = '+' and 1 = '-'.
  std::array<std::array<double, 2>, 2> p{};

  double pp() const noexcept { return p[0][0]; }
  double pm() const noexcept { return p[0][1]; }
  double mp() const noexcept { return p[1][0]; }
  double mm() const noexcept { return p[1][1]; }
  double total() const noexcept { return pp() + pm() + mp() + mm(); }
  /// p++ - p+- - p-+ + p--
  double moment() const noexcept { return pp() - pm() - mp() + mm(); }
};

inline OutcomeTable outcome_probabilities(const DensityMatrix& rho, int n) {
  const CollectiveOperators& ops = collective_operators(n);
  const ComplexMatrix r = copies(rho, n);
  OutcomeTable t;
  t.n_copies = n;
  for (int y = 0; y < 2; ++y)
    for (int x = 0; x < 2; ++x) t.p[y][x] = std::max(0.0, trace_of_product(ops.effect[y][x], r).real());
  return t;
}

/// Same probabilities computed literally as tr[Pbar^x P^y R P^y Pbar^x].
inline OutcomeTable outcome_probabilities_sequential(const DensityMatrix& rho, int n) {
  const CollectiveOperators& ops = collective_operators(n);
  const ComplexMatrix r = copies(rho, n);
  const std::array<const ComplexMatrix*, 2> p{&ops.p_plus, &ops.p_minus};
  const std::array<const ComplexMatrix*, 2> pbar{&ops.pbar_plus, &ops.pbar_minus};
  OutcomeTable t;
  t.n_copies = n;
  for (int y = 0; y < 2; ++y) {
    const ComplexMatrix after_a = *p[y] * r * *p[y];
    for (int x = 0; x < 2; ++x) t.p[y][x] = (*pbar[x] * after_a * *pbar[x]).trace().real();
  }
  return t;
}

/// All three moments from the sequential-measurement probabilities.
inline MomentSet moments_collective(const DensityMatrix& rho) {
  return MomentSet{
      .pi2 = outcome_probabilities(rho, 2).moment(),
      .pi3 = outcome_probabilities(rho, 3).moment(),
      .pi4 = outcome_probabilities(rho, 4).moment(),
      .source = MomentSource::kCollective,
  };
}

/// (rho^{⊗n} + A_n rho^{⊗n} A_n) / 2, which commutes with A_n.
inline ComplexMatrix symmetrized_state(const DensityMatrix& rho, int n) {
  const CollectiveOperators& ops = collective_operators(n);
  const ComplexMatrix r = copies(rho, n);
  return (r + ops.a * r * ops.a) * 0.5;
}

}  // namespace uwit

#endif  // UWIT_COLLECTIVE_HPP
