// Copyright 2026 The Maskforge Authors
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

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "maskforge/linalg.hpp"
#include "maskforge/states.hpp"

namespace maskforge {

//=========================================================================
// Disk-constraint machinery. A candidate basis claims that every maskable
// state of the distribution masker has fixed diagonal magnitudes in it.
// The maximally-entangled family (1/sqrt d) sum_j e^{i theta_j} |a_j b_j>
// is entirely maskable, so any diagonal drift across phase settings
// falsifies the claim for that basis. Two concrete phase settings with
// drifted diagonals form a witness.
//=========================================================================

struct CandidateBasis {
  std::size_t d = 2;       // local dimension; the basis spans d^2
  ComplexMatrix vectors;   // d^2 x d^2, columns are the basis vectors

  CandidateBasis(std::size_t local_d, ComplexMatrix columns)
      : d(local_d), vectors(std::move(columns)) {
    const std::size_t n = d * d;
    if (vectors.rows() != n || vectors.cols() != n)
      throw std::invalid_argument("CandidateBasis: expected a d^2 x d^2 column set");
    const ComplexMatrix gram = vectors.adjoint() * vectors;
    if ((gram - ComplexMatrix::identity(n)).sup_norm() > 1e-10)
      throw std::invalid_argument("CandidateBasis: columns are not orthonormal within 1e-10");
  }
};

struct ViolationWitness {
  PureState state1;
  PureState state2;
  std::size_t basis_index = 0;  // index of the maximally drifting basis vector
  double diagonal_gap = 0.0;    // sup-norm gap between the two diagonals
  std::string branch;           // "schmidt" | "fourier"
};

namespace detail {

inline void check_local_orthonormal(const ComplexMatrix& basis, std::size_t d,
                                    const char* who) {
  if (basis.cols() != d)
    throw std::invalid_argument(std::string(who) + ": expected d basis columns");
  const ComplexMatrix gram = basis.adjoint() * basis;
  if ((gram - ComplexMatrix::identity(d)).sup_norm() > 1e-10)
    throw std::invalid_argument(std::string(who) + ": local basis is not orthonormal");
}

/// (1/sqrt d) sum_j e^{i theta_j} |a_j> (x) |b_j> as a flat d^2 vector.
inline std::vector<cplx> family_state(const ComplexMatrix& local_a,
                                      const ComplexMatrix& local_b,
                                      const std::vector<double>& phases) {
  const std::size_t d = local_a.cols();
  std::vector<cplx> amps(d * d, 0.0);
  const double w = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t j = 0; j < d; ++j) {
    const cplx phase = std::polar(w, phases[j]);
    for (std::size_t p = 0; p < d; ++p) {
      const cplx ap = phase * local_a(p, j);
      if (ap == 0.0) continue;
      for (std::size_t q = 0; q < d; ++q) amps[p * d + q] += ap * local_b(q, j);
    }
  }
  return amps;
}

inline std::vector<double> diagonal_profile(const CandidateBasis& basis,
                                            const std::vector<cplx>& amps) {
  const std::size_t n = basis.d * basis.d;
  std::vector<double> diag(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx overlap = 0.0;
    for (std::size_t r = 0; r < n; ++r)
      overlap += std::conj(basis.vectors(r, k)) * amps[r];
    diag[k] = std::norm(overlap);
  }
  return diag;
}

/// Enumerates phase settings on a grid (theta_0 pinned to zero; a global
/// phase never moves a diagonal) and hands each to `visit`.
template <typename Visit>
void scan_phase_grid(std::size_t d, std::size_t points, const Visit& visit) {
  std::vector<double> phases(d, 0.0);
  const std::size_t free_angles = d - 1;
  std::vector<std::size_t> grid(free_angles, 0);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(points);
  for (;;) {
    for (std::size_t a = 0; a < free_angles; ++a)
      phases[a + 1] = -std::numbers::pi + step * static_cast<double>(grid[a]);
    visit(phases);
    std::size_t a = 0;
    for (; a < free_angles; ++a) {
      if (++grid[a] < points) break;
      grid[a] = 0;
    }
    if (a == free_angles) break;
  }
}

/// Completes r orthonormal columns to a full orthonormal basis of C^d.
inline ComplexMatrix complete_basis(const ComplexMatrix& partial, std::size_t d) {
  ComplexMatrix out(d, d);
  std::size_t have = partial.cols();
  for (std::size_t c = 0; c < have; ++c)
    for (std::size_t r = 0; r < d; ++r) out(r, c) = partial(r, c);
  for (std::size_t cand = 0; cand < d && have < d; ++cand) {
    std::vector<cplx> v(d, 0.0);
    v[cand] = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t c = 0; c < have; ++c) {
        cplx proj = 0.0;
        for (std::size_t r = 0; r < d; ++r) proj += std::conj(out(r, c)) * v[r];
        for (std::size_t r = 0; r < d; ++r) v[r] -= proj * out(r, c);
      }
    double norm2 = 0.0;
    for (const cplx& z : v) norm2 += std::norm(z);
    if (norm2 < 1e-8) continue;  // candidate already in the span
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t r = 0; r < d; ++r) out(r, have) = v[r] * inv;
    ++have;
  }
  if (have != d) throw std::runtime_error("complete_basis: completion failed");
  return out;
}

}  // namespace detail

/// Discrete Fourier transform of a local basis:
/// |a~_j> = (1/sqrt d) sum_k e^{2 pi i jk/d} |a_k>.
inline ComplexMatrix fourier_local_basis(const ComplexMatrix& basis, std::size_t d) {
  detail::check_local_orthonormal(basis, d, "fourier_local_basis");
  const std::size_t rows = basis.rows();
  ComplexMatrix out(rows, d);
  const double w = 1.0 / std::sqrt(static_cast<double>(d));
  const double step = 2.0 * std::numbers::pi / static_cast<double>(d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      const cplx f = std::polar(w, step * static_cast<double>((j * k) % d));
      for (std::size_t r = 0; r < rows; ++r) out(r, j) += f * basis(r, k);
    }
  return out;
}

/// Largest drift of any diagonal entry {|<M_k|psi_theta>|^2}_k as the phases
/// run over a grid that includes the given setting. Zero means the family is
/// consistent with the disk constraint for these local bases.
inline double disk_deviation(const CandidateBasis& basis, const ComplexMatrix& local_a,
                             const ComplexMatrix& local_b,
                             const std::vector<double>& phases) {
  detail::check_local_orthonormal(local_a, basis.d, "disk_deviation");
  detail::check_local_orthonormal(local_b, basis.d, "disk_deviation");
  if (phases.size() != basis.d)
    throw std::invalid_argument("disk_deviation: expected one phase per local index");
  const std::size_t n = basis.d * basis.d;
  std::vector<double> lo(n, std::numeric_limits<double>::infinity());
  std::vector<double> hi(n, -std::numeric_limits<double>::infinity());
  auto absorb = [&](const std::vector<double>& setting) {
    const auto diag =
        detail::diagonal_profile(basis, detail::family_state(local_a, local_b, setting));
    for (std::size_t k = 0; k < n; ++k) {
      lo[k] = std::min(lo[k], diag[k]);
      hi[k] = std::max(hi[k], diag[k]);
    }
  };
  const std::size_t points = basis.d <= 3 ? 64 : 8;
  detail::scan_phase_grid(basis.d, points, absorb);
  absorb(phases);
  double dev = 0.0;
  for (std::size_t k = 0; k < n; ++k) dev = std::max(dev, hi[k] - lo[k]);
  return dev;
}

/// Constructive falsification: pick local bases from the most entangled basis
/// vector's Schmidt pair, or Fourier-transform the induced local bases when
/// the candidate is a product basis, then hunt two phase settings whose
/// diagonals differ. Both returned states have maximally mixed marginals, so
/// the distribution masker masks them even though their diagonals disagree.
inline ViolationWitness find_violation(const CandidateBasis& basis, double threshold = 0.05) {
  const std::size_t d = basis.d;
  const std::size_t n = d * d;

  // Most entangled column decides the branch (cutoff on the second Schmidt
  // coefficient; below it the Fourier argument carries near-product bases).
  double best_second = 0.0;
  std::size_t best_col = 0;
  std::vector<SchmidtDecomposition> schmidts;
  schmidts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<cplx> amps(n);
    for (std::size_t r = 0; r < n; ++r) amps[r] = basis.vectors(r, k);
    const PureState vec(std::move(amps), {d, d}, {"A'", "B'"});
    schmidts.push_back(schmidt_decompose(vec, {"A'"}));
    const auto& coeff = schmidts.back().coefficients;
    const double second = coeff.size() > 1 ? std::sqrt(coeff[1]) : 0.0;
    if (second > best_second) {
      best_second = second;
      best_col = k;
    }
  }

  ComplexMatrix local_a(d, d), local_b(d, d);
  std::string branch;
  if (best_second > 1e-6) {
    branch = "schmidt";
    local_a = detail::complete_basis(schmidts[best_col].left, d);
    local_b = detail::complete_basis(schmidts[best_col].right, d);
  } else {
    branch = "fourier";
    // Product basis: collect the d distinct factors on each side, then
    // Fourier both; the transformed products sit outside every disk.
    std::vector<std::vector<cplx>> as, bs;
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<cplx> a(d), b(d);
      for (std::size_t r = 0; r < d; ++r) a[r] = schmidts[k].left(r, 0);
      for (std::size_t r = 0; r < d; ++r) b[r] = schmidts[k].right(r, 0);
      auto add_unique = [d](std::vector<std::vector<cplx>>& reps, const std::vector<cplx>& v) {
        for (const auto& rep : reps) {
          cplx ov = 0.0;
          for (std::size_t r = 0; r < d; ++r) ov += std::conj(rep[r]) * v[r];
          if (std::abs(ov) > 0.99) return;
        }
        reps.push_back(v);
      };
      add_unique(as, a);
      add_unique(bs, b);
    }
    if (as.size() != d || bs.size() != d)
      throw std::runtime_error("find_violation: product factor extraction failed");
    ComplexMatrix ma(d, d), mb(d, d);
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t r = 0; r < d; ++r) {
        ma(r, c) = as[c][r];
        mb(r, c) = bs[c][r];
      }
    local_a = fourier_local_basis(ma, d);
    local_b = fourier_local_basis(mb, d);
  }

  // Grid scan for the widest per-entry drift, then a local refinement around
  // the extremal settings.
  const std::size_t points = d <= 3 ? 64 : 8;
  std::vector<double> lo(n, std::numeric_limits<double>::infinity());
  std::vector<double> hi(n, -std::numeric_limits<double>::infinity());
  std::vector<std::vector<double>> lo_at(n), hi_at(n);
  detail::scan_phase_grid(d, points, [&](const std::vector<double>& setting) {
    const auto diag =
        detail::diagonal_profile(basis, detail::family_state(local_a, local_b, setting));
    for (std::size_t k = 0; k < n; ++k) {
      if (diag[k] < lo[k]) {
        lo[k] = diag[k];
        lo_at[k] = setting;
      }
      if (diag[k] > hi[k]) {
        hi[k] = diag[k];
        hi_at[k] = setting;
      }
    }
  });
  std::size_t k_star = 0;
  for (std::size_t k = 1; k < n; ++k)
    if (hi[k] - lo[k] > hi[k_star] - lo[k_star]) k_star = k;

  auto entry = [&](const std::vector<double>& setting) {
    return detail::diagonal_profile(basis,
                                    detail::family_state(local_a, local_b, setting))[k_star];
  };
  auto refine = [&](std::vector<double> setting, bool maximize) {
    double span = 2.0 * std::numbers::pi / static_cast<double>(points);
    double best = entry(setting);
    for (int round = 0; round < 3; ++round) {
      for (std::size_t a = 1; a < d; ++a) {
        for (int offset = -4; offset <= 4; ++offset) {
          std::vector<double> probe = setting;
          probe[a] += span * static_cast<double>(offset) / 4.0;
          const double v = entry(probe);
          if ((maximize && v > best) || (!maximize && v < best)) {
            best = v;
            setting = probe;
          }
        }
      }
      span /= 4.0;
    }
    return setting;
  };
  const std::vector<double> setting_hi = refine(hi_at[k_star], true);
  const std::vector<double> setting_lo = refine(lo_at[k_star], false);
  const double gap = entry(setting_hi) - entry(setting_lo);

  if (gap < threshold)
    throw std::runtime_error(
        "find_violation: best diagonal gap " + std::to_string(gap) +
        " is below the violation threshold; the phase search failed, which on an "
        "orthonormal candidate basis indicates an implementation bug");

  ViolationWitness witness{
      PureState(detail::family_state(local_a, local_b, setting_hi), {d, d}, {"A'", "B'"}),
      PureState(detail::family_state(local_a, local_b, setting_lo), {d, d}, {"A'", "B'"}),
      k_star,
      gap,
      branch,
  };
  return witness;
}

/// How far a witness state's marginals sit from maximally mixed; maskability
/// under the distribution masker means both values vanish.
inline double marginal_mixedness_deviation(const PureState& state) {
  const std::size_t d = state.dims()[0];
  double dev = 0.0;
  for (const char* side : {"A'", "B'"}) {
    ComplexMatrix marg = state.reduced_density({side}).matrix();
    for (std::size_t i = 0; i < d; ++i) marg(i, i) -= 1.0 / static_cast<double>(d);
    dev = std::max(dev, marg.sup_norm());
  }
  return dev;
}

/// Haar-random candidate basis, the standard fuzz input for the sweep.
inline CandidateBasis random_candidate_basis(std::size_t d, std::uint64_t seed) {
  return CandidateBasis(d, haar_random_unitary(d * d, seed));
}

}  // namespace maskforge
