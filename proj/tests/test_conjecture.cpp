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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "maskforge/conjecture.hpp"

using namespace maskforge;
using maskforge::testing::max_abs_diff;

namespace {

CandidateBasis computational_product_basis(std::size_t d) {
  return CandidateBasis(d, ComplexMatrix::identity(d * d));
}

CandidateBasis bell_basis() {
  // columns (|00> + |11>)/sqrt2, (|00> - |11>)/sqrt2, (|01> + |10>)/sqrt2,
  // (|01> - |10>)/sqrt2
  ComplexMatrix b(4, 4);
  const double w = 1.0 / std::sqrt(2.0);
  b(0, 0) = w;
  b(3, 0) = w;
  b(0, 1) = w;
  b(3, 1) = -w;
  b(1, 2) = w;
  b(2, 2) = w;
  b(1, 3) = w;
  b(2, 3) = -w;
  return CandidateBasis(2, std::move(b));
}

}  // namespace

TEST_CASE("disk_deviation: computational family in its own product basis is flat") {
  const CandidateBasis basis = computational_product_basis(2);
  const ComplexMatrix local = ComplexMatrix::identity(2);
  CHECK(disk_deviation(basis, local, local, {0.0, 0.0}) < 1e-12);
}

TEST_CASE("disk_deviation: any product family built from the local bases stays flat") {
  // candidate = {a_i (x) b_j} with the same local bases: diagonals are
  // delta_ij / d for every phase setting
  const ComplexMatrix ua = haar_random_unitary(3, 61);
  const ComplexMatrix ub = haar_random_unitary(3, 62);
  ComplexMatrix cols(9, 9);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t p = 0; p < 3; ++p)
        for (std::size_t q = 0; q < 3; ++q)
          cols(p * 3 + q, i * 3 + j) = ua(p, i) * ub(q, j);
  const CandidateBasis basis(3, std::move(cols));
  CHECK(disk_deviation(basis, ua, ub, {0.0, 0.0, 0.0}) < 1e-10);
}

TEST_CASE("disk_deviation: Fourier local bases break the computational basis") {
  // amplitude on |00> is (1 + e^{i theta}) / (2 sqrt 2): the diagonal swings
  // between 1/2 and 0, so the drift is exactly 1/2
  const CandidateBasis basis = computational_product_basis(2);
  const ComplexMatrix f = fourier_local_basis(ComplexMatrix::identity(2), 2);
  const double dev = disk_deviation(basis, f, f, {0.0, 0.0});
  CHECK(dev == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("disk_deviation: invariant under rephasing the candidate vectors") {
  Rng rng(67);
  const CandidateBasis basis = random_candidate_basis(2, 68);
  ComplexMatrix rephased = basis.vectors;
  for (std::size_t c = 0; c < 4; ++c) {
    const cplx phase = std::polar(1.0, rng.uniform(-3.0, 3.0));
    for (std::size_t r = 0; r < 4; ++r) rephased(r, c) *= phase;
  }
  const CandidateBasis twin(2, std::move(rephased));
  const ComplexMatrix f = fourier_local_basis(ComplexMatrix::identity(2), 2);
  const double a = disk_deviation(basis, f, f, {0.0, 0.0});
  const double b = disk_deviation(twin, f, f, {0.0, 0.0});
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("disk_deviation: rejects non-orthonormal local bases") {
  const CandidateBasis basis = computational_product_basis(2);
  ComplexMatrix bad(2, 2);
  bad(0, 0) = 1.0;
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(disk_deviation(basis, bad, ComplexMatrix::identity(2), {0.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("fourier_local_basis: qubit computational goes to |+>, |->") {
  const ComplexMatrix f = fourier_local_basis(ComplexMatrix::identity(2), 2);
  const double w = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(f(0, 0) - cplx(w, 0.0)) < 1e-12);
  CHECK(std::abs(f(1, 0) - cplx(w, 0.0)) < 1e-12);
  CHECK(std::abs(f(0, 1) - cplx(w, 0.0)) < 1e-12);
  CHECK(std::abs(f(1, 1) + cplx(w, 0.0)) < 1e-12);
}

TEST_CASE("fourier_local_basis: double transform is the parity permutation") {
  for (std::size_t d : {2, 3, 5}) {
    const ComplexMatrix once = fourier_local_basis(ComplexMatrix::identity(d), d);
    const ComplexMatrix twice = fourier_local_basis(once, d);
    for (std::size_t j = 0; j < d; ++j) {
      // |<e_{-j mod d} | F^2 e_j>| = 1 up to phase
      const std::size_t target = (d - j) % d;
      CHECK(std::abs(twice(target, j)) == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("fourier_local_basis: preserves orthonormality on random input") {
  const ComplexMatrix u = haar_random_unitary(5, 71);
  const ComplexMatrix f = fourier_local_basis(u, 5);
  CHECK(max_abs_diff(f.adjoint() * f, ComplexMatrix::identity(5)) < 1e-10);
  ComplexMatrix bad(5, 5);
  bad(0, 0) = 1.0;
  CHECK_THROWS_AS(fourier_local_basis(bad, 5), std::invalid_argument);
}

TEST_CASE("find_violation: computational product basis yields the analytic gap 1/2") {
  const ViolationWitness w = find_violation(computational_product_basis(2));
  CHECK(w.branch == "fourier");
  CHECK(w.diagonal_gap == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(marginal_mixedness_deviation(w.state1) < 1e-10);
  CHECK(marginal_mixedness_deviation(w.state2) < 1e-10);
}

TEST_CASE("find_violation: Bell basis fires the Schmidt branch") {
  const ViolationWitness w = find_violation(bell_basis());
  CHECK(w.branch == "schmidt");
  CHECK(w.diagonal_gap >= 0.25);
  CHECK(marginal_mixedness_deviation(w.state1) < 1e-10);
  CHECK(marginal_mixedness_deviation(w.state2) < 1e-10);
}

TEST_CASE("find_violation: random candidate bases always produce witnesses") {
  for (std::size_t d : {2, 3}) {
    const int trials = d == 2 ? 10 : 5;
    for (int t = 0; t < trials; ++t) {
      const CandidateBasis basis = random_candidate_basis(d, 7000 + 13 * t + d);
      const ViolationWitness w = find_violation(basis);
      CHECK(w.diagonal_gap >= 0.05);
      CHECK(marginal_mixedness_deviation(w.state1) < 1e-10);
      CHECK(marginal_mixedness_deviation(w.state2) < 1e-10);
      // the two diagonals really differ at the reported index
      const double d1 = [&] {
        cplx ov = 0.0;
        for (std::size_t r = 0; r < d * d; ++r)
          ov += std::conj(basis.vectors(r, w.basis_index)) * w.state1.amplitudes()[r];
        return std::norm(ov);
      }();
      const double d2 = [&] {
        cplx ov = 0.0;
        for (std::size_t r = 0; r < d * d; ++r)
          ov += std::conj(basis.vectors(r, w.basis_index)) * w.state2.amplitudes()[r];
        return std::norm(ov);
      }();
      CHECK(std::abs(d1 - d2) == doctest::Approx(w.diagonal_gap).epsilon(1e-9));
    }
  }
}

TEST_CASE("CandidateBasis: rejects non-orthonormal columns") {
  ComplexMatrix cols(4, 4);
  for (std::size_t i = 0; i < 4; ++i) cols(i, 0) = 0.5;
  CHECK_THROWS_AS(CandidateBasis(2, std::move(cols)), std::invalid_argument);
}
