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

#include "maskforge/masker.hpp"
#include "maskforge/rng.hpp"

namespace maskforge {

//=========================================================================
// Generalized Pauli operators on a qudit. Z is the clock matrix
// diag(omega^k) with omega = exp(2 pi i / d); X the cyclic shift. The
// uniform Z-twirl sum_i Z^i (.) Z^-i / d is the full dephasing channel,
// which is exactly what the marginal computations below need.
//=========================================================================

inline ComplexMatrix clock_matrix(std::size_t d) {
  ComplexMatrix z(d, d);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(d);
  for (std::size_t k = 0; k < d; ++k)
    z(k, k) = std::polar(1.0, step * static_cast<double>(k));
  return z;
}

inline ComplexMatrix shift_matrix(std::size_t d) {
  ComplexMatrix x(d, d);
  for (std::size_t k = 0; k < d; ++k) x((k + 1) % d, k) = 1.0;
  return x;
}

/// X^a Z^b entry: omega^{b i} on the (i -> i+a mod d) shift.
inline cplx weyl_entry(std::size_t d, std::size_t a, std::size_t b, std::size_t row,
                       std::size_t col) {
  if (row != (col + a) % d) return 0.0;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(d);
  return std::polar(1.0, step * static_cast<double>(b * col % d));
}

namespace detail {

inline DensityMatrix diagonal_safe_state(const std::vector<double>& probs) {
  ComplexMatrix s(probs.size(), probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) s(i, i) = probs[i];
  return DensityMatrix(std::move(s), {probs.size()}, {"S"});
}

inline DensityMatrix trivial_safe_state() {
  ComplexMatrix s(1, 1);
  s(0, 0) = 1.0;
  return DensityMatrix(std::move(s), {1}, {"S"});
}

}  // namespace detail

//=========================================================================
// Constructors
//=========================================================================

/// Quantum one-time pad: the d^2 Weyl rotations of the input go to A while B
/// keeps the classical pad value as a flag, each with probability 1/d^2.
/// Universal with randomness cost 2 log2 d.
inline Masker build_qotp(std::size_t d) {
  if (d < 2) throw std::invalid_argument("build_qotp: dimension must be >= 2");
  const std::size_t ds = d * d;
  ComplexMatrix m(d * ds, d * ds);  // (A=d) x (B=d^2) rows, (I=d) x (S=d^2) cols
  for (std::size_t s = 0; s < ds; ++s) {
    const std::size_t a = s / d;
    const std::size_t b = s % d;
    for (std::size_t row = 0; row < d; ++row)
      for (std::size_t col = 0; col < d; ++col) {
        const cplx w = weyl_entry(d, a, b, row, col);
        if (w != 0.0) m(row * ds + s, col * ds + s) = w;
      }
  }
  std::vector<double> probs(ds, 1.0 / static_cast<double>(ds));
  return Masker(std::move(m), detail::diagonal_safe_state(probs), d, d, ds);
}

/// A fair coin picks the direction: pad toward A with the flag in B, or pad
/// toward B with the flag in A. Both parties carry d data levels plus d^2
/// flag levels. Universal with randomness cost 1 + 2 log2 d.
inline Masker build_coinflip_otp(std::size_t d) {
  if (d < 2) throw std::invalid_argument("build_coinflip_otp: dimension must be >= 2");
  const std::size_t pads = d * d;
  const std::size_t ds = 2 * pads;
  const std::size_t dside = d + pads;  // data levels 0..d-1, flags d..d+d^2-1
  ComplexMatrix m(dside * dside, d * ds);
  for (std::size_t s = 0; s < ds; ++s) {
    const bool toward_a = s < pads;
    const std::size_t pad = toward_a ? s : s - pads;
    const std::size_t a = pad / d;
    const std::size_t b = pad % d;
    const std::size_t flag_level = d + pad;
    for (std::size_t row = 0; row < d; ++row)
      for (std::size_t col = 0; col < d; ++col) {
        const cplx w = weyl_entry(d, a, b, row, col);
        if (w == 0.0) continue;
        const std::size_t out =
            toward_a ? row * dside + flag_level : flag_level * dside + row;
        m(out, col * ds + s) = w;
      }
  }
  std::vector<double> probs(ds, 1.0 / static_cast<double>(ds));
  return Masker(std::move(m), detail::diagonal_safe_state(probs), d, dside, dside);
}

/// Odd-d family: both output systems have dimension 2d (data levels 0..d-1,
/// flag levels d..2d-1). The 2d completely uneven branches send a clocked
/// copy to one side and a flag to the other; the d-1 even branches shift the
/// data by j on A and by 2j on B. The doubled shift covers every nonzero
/// residue only when d is odd, which is exactly where universality comes
/// from. Randomness cost log2(d+1) + (2/(d+1)) log2 d.
inline Masker build_odd_d(std::size_t d) {
  if (d < 3 || d % 2 == 0)
    throw std::invalid_argument("build_odd_d: dimension must be odd and >= 3");
  const std::size_t ds = 3 * d - 1;
  const std::size_t dside = 2 * d;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(d);
  ComplexMatrix m(dside * dside, d * ds);

  for (std::size_t s = 0; s < ds; ++s) {
    if (s < d) {
      // clocked copy to A, flag d+s in B; clock exponent is 1-based
      const std::size_t i = s + 1;
      const std::size_t flag = d + s;
      for (std::size_t k = 0; k < d; ++k) {
        const cplx w = std::polar(1.0, step * static_cast<double>((i * k) % d));
        m((k)*dside + flag, k * ds + s) = w;
      }
    } else if (s < 2 * d) {
      const std::size_t i = s - d + 1;
      const std::size_t flag = d + (s - d);
      for (std::size_t k = 0; k < d; ++k) {
        const cplx w = std::polar(1.0, step * static_cast<double>((i * k) % d));
        m(flag * dside + k, k * ds + s) = w;
      }
    } else {
      const std::size_t j = s - 2 * d + 1;  // 1..d-1
      for (std::size_t k = 0; k < d; ++k) {
        const std::size_t row_a = (k + j) % d;
        const std::size_t row_b = (k + 2 * j) % d;
        m(row_a * dside + row_b, k * ds + s) = 1.0;
      }
    }
  }

  std::vector<double> probs(ds);
  const double uneven = 1.0 / static_cast<double>(d * (d + 1));
  const double even = 1.0 / static_cast<double>(d + 1);
  for (std::size_t s = 0; s < ds; ++s) probs[s] = s < 2 * d ? uneven : even;
  return Masker(std::move(m), detail::diagonal_safe_state(probs), d, dside, dside);
}

/// Qudit-to-each-party distribution: the identity embedding of a d^2 input
/// onto A (x) B with a trivial safe state. Not universal; its maskable set is
/// the states with maximally mixed marginals.
inline Masker build_distribution_masker(std::size_t d) {
  if (d < 2)
    throw std::invalid_argument("build_distribution_masker: dimension must be >= 2");
  return Masker(ComplexMatrix::identity(d * d), detail::trivial_safe_state(), d * d, d, d);
}

/// Identity embedding that hands the whole input to A. The canonical
/// non-universal reference point for dS = 1.
inline Masker build_identity_masker(std::size_t d) {
  if (d < 2)
    throw std::invalid_argument("build_identity_masker: dimension must be >= 2");
  return Masker(ComplexMatrix::identity(d), detail::trivial_safe_state(), d, d, 1);
}

/// Composes the isometry with exp(i eps H) for a seeded random Hermitian H of
/// unit sup-norm on the output space. eps = 0 returns the masker unchanged.
inline Masker perturb(const Masker& m, double eps, std::uint64_t seed) {
  if (eps < 0.0 || eps > 1.0)
    throw std::invalid_argument("perturb: eps must lie in [0, 1]");
  if (eps == 0.0) return m;
  const std::size_t dout = m.dim_a() * m.dim_b();
  Rng rng(seed);
  ComplexMatrix g(dout, dout);
  for (std::size_t i = 0; i < dout; ++i)
    for (std::size_t j = 0; j < dout; ++j) g(i, j) = rng.gaussian_complex();
  ComplexMatrix h(dout, dout);
  for (std::size_t i = 0; i < dout; ++i)
    for (std::size_t j = 0; j < dout; ++j)
      h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
  const HermitianEigen eig = hermitian_eigensystem(h, 1e-9);
  double spectral = 0.0;
  for (double lam : eig.eigenvalues) spectral = std::max(spectral, std::abs(lam));
  h *= cplx(1.0 / spectral, 0.0);
  const ComplexMatrix rotation = expm_hermitian_times(h, cplx(0.0, eps));
  return Masker(rotation * m.isometry(), m.safe_state(), m.dim_in(), m.dim_a(), m.dim_b());
}

//=========================================================================
// Catalog
//=========================================================================

struct ZooEntry {
  std::string name;
  std::size_t d = 2;
  double eps = 0.0;
  Masker masker;
  double expected_cost = 0.0;  // closed form, bits
  bool expected_universal = true;
};

inline double qotp_cost(std::size_t d) { return 2.0 * std::log2(static_cast<double>(d)); }
inline double coinflip_cost(std::size_t d) {
  return 1.0 + 2.0 * std::log2(static_cast<double>(d));
}
inline double odd_d_cost(std::size_t d) {
  return std::log2(static_cast<double>(d + 1)) +
         2.0 / static_cast<double>(d + 1) * std::log2(static_cast<double>(d));
}

inline Masker build_zoo(const std::string& name, std::size_t d) {
  if (name == "qotp") return build_qotp(d);
  if (name == "coinflip") return build_coinflip_otp(d);
  if (name == "odd_d") return build_odd_d(d);
  if (name == "distribution") return build_distribution_masker(d);
  if (name == "identity") return build_identity_masker(d);
  throw std::invalid_argument("unknown zoo masker: " + name);
}

/// The universal families at the requested dimensions plus one perturbed
/// entry, in a deterministic order.
inline std::vector<ZooEntry> zoo_catalog(const std::vector<std::size_t>& ds,
                                         std::uint64_t seed, double perturb_eps = 0.02) {
  std::vector<ZooEntry> out;
  for (std::size_t d : ds)
    out.push_back({"coinflip", d, 0.0, build_coinflip_otp(d), coinflip_cost(d), true});
  for (std::size_t d : ds)
    if (d >= 3 && d % 2 == 1)
      out.push_back({"odd_d", d, 0.0, build_odd_d(d), odd_d_cost(d), true});
  if (perturb_eps > 0.0)
    out.push_back({"perturbed_qotp", 2, perturb_eps,
                   perturb(build_qotp(2), perturb_eps, seed), qotp_cost(2), false});
  for (std::size_t d : ds)
    out.push_back({"qotp", d, 0.0, build_qotp(d), qotp_cost(d), true});
  return out;
}

}  // namespace maskforge
