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
#include "maskforge/linalg.hpp"

using namespace maskforge;
using maskforge::testing::max_abs_diff;
using maskforge::testing::random_hermitian;
using maskforge::testing::random_matrix;

namespace {

ComplexMatrix reconstruct(const HermitianEigen& eig) {
  const std::size_t n = eig.eigenvalues.size();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += eig.eigenvalues[k] * eig.eigenvectors(i, k) *
                     std::conj(eig.eigenvectors(j, k));
  return out;
}

}  // namespace

TEST_CASE("eigensystem: Pauli-Z") {
  ComplexMatrix z(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  const HermitianEigen eig = hermitian_eigensystem(z);
  CHECK(eig.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eig.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("eigensystem: identity d=3 keeps an orthonormal basis") {
  const HermitianEigen eig = hermitian_eigensystem(ComplexMatrix::identity(3));
  for (double lam : eig.eigenvalues) CHECK(lam == doctest::Approx(1.0).epsilon(1e-12));
  const ComplexMatrix gram = eig.eigenvectors.adjoint() * eig.eigenvectors;
  CHECK(max_abs_diff(gram, ComplexMatrix::identity(3)) < 1e-10);
}

TEST_CASE("eigensystem: random 4x4 reconstruction within 1e-10") {
  Rng rng(11);
  const ComplexMatrix h = random_hermitian(4, rng);
  const HermitianEigen eig = hermitian_eigensystem(h);
  CHECK(max_abs_diff(reconstruct(eig), h) < 1e-10);
  const ComplexMatrix gram = eig.eigenvectors.adjoint() * eig.eigenvectors;
  CHECK(max_abs_diff(gram, ComplexMatrix::identity(4)) < 1e-10);
  CHECK(std::is_sorted(eig.eigenvalues.rbegin(), eig.eigenvalues.rend()));
}

TEST_CASE("eigensystem: eigenvalue sum matches the trace") {
  Rng rng(23);
  for (std::size_t n : {2, 3, 5, 9, 17}) {
    const ComplexMatrix h = random_hermitian(n, rng);
    const HermitianEigen eig = hermitian_eigensystem(h);
    double sum = 0.0;
    for (double lam : eig.eigenvalues) sum += lam;
    CHECK(std::abs(sum - std::real(h.trace())) < 1e-10);
    CHECK(max_abs_diff(reconstruct(eig), h) < 1e-10);
  }
}

TEST_CASE("eigensystem: rejects bad input") {
  CHECK_THROWS_AS(hermitian_eigensystem(ComplexMatrix(2, 3)), std::invalid_argument);
  ComplexMatrix skew(2, 2);
  skew(0, 1) = 1.0;  // not Hermitian: (1,0) stays zero
  CHECK_THROWS_AS(hermitian_eigensystem(skew, 1e-10), std::invalid_argument);
}

TEST_CASE("kron: identities and a diagonal expansion") {
  CHECK(max_abs_diff(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)),
                     ComplexMatrix::identity(4)) == 0.0);
  ComplexMatrix z(2, 2), proj(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  proj(0, 0) = 1.0;
  const ComplexMatrix zp = kron(z, proj);
  ComplexMatrix expect(4, 4);
  expect(0, 0) = 1.0;
  expect(2, 2) = -1.0;
  CHECK(max_abs_diff(zp, expect) == 0.0);
}

TEST_CASE("kron: mixed-product property on random factors") {
  Rng rng(5);
  const ComplexMatrix x = random_matrix(2, 2, rng);
  const ComplexMatrix y = random_matrix(3, 3, rng);
  const ComplexMatrix u = random_matrix(2, 1, rng);
  const ComplexMatrix v = random_matrix(3, 1, rng);
  const ComplexMatrix lhs = kron(x, y) * kron(u, v);
  const ComplexMatrix rhs = kron(x * u, y * v);
  CHECK(max_abs_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("kron: associative exactly on integer matrices") {
  Rng rng(7);
  auto int_matrix = [&](std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m(i, j) = cplx(static_cast<double>(rng.next_u64() % 7) - 3.0, 0.0);
    return m;
  };
  const ComplexMatrix a = int_matrix(2), b = int_matrix(2), c = int_matrix(3);
  CHECK(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))) == 0.0);
}

TEST_CASE("partial_trace: maximally entangled pair has the mixed marginal") {
  ComplexMatrix phi(4, 4);
  for (std::size_t i : {0, 3})
    for (std::size_t j : {0, 3}) phi(i, j) = 0.5;
  const ComplexMatrix marg = partial_trace(phi, {2, 2}, {1});
  CHECK(max_abs_diff(marg, ComplexMatrix::identity(2) * cplx(0.5, 0.0)) < 1e-14);
}

TEST_CASE("partial_trace: product state recovers the local factor") {
  Rng rng(13);
  const ComplexMatrix rho = maskforge::testing::random_density(2, rng);
  const ComplexMatrix sig = maskforge::testing::random_density(3, rng);
  CHECK(max_abs_diff(partial_trace(kron(rho, sig), {2, 3}, {1}), rho) < 1e-13);
  CHECK(max_abs_diff(partial_trace(kron(rho, sig), {2, 3}, {0}), sig) < 1e-13);
}

TEST_CASE("partial_trace: random 6x6 state, either factor, stays a state") {
  Rng rng(17);
  const ComplexMatrix rho = maskforge::testing::random_density(6, rng);
  for (std::size_t traced : {0, 1}) {
    const ComplexMatrix red = partial_trace(rho, {2, 3}, {traced});
    CHECK(std::abs(red.trace() - cplx(1.0, 0.0)) < 1e-12);
    CHECK(red.hermiticity_error() < 1e-12);
    const HermitianEigen eig = hermitian_eigensystem(red);
    for (double lam : eig.eigenvalues) CHECK(lam > -1e-12);
  }
}

TEST_CASE("partial_trace: commutes with convex mixing") {
  Rng rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = maskforge::testing::random_density(6, rng);
    const ComplexMatrix b = maskforge::testing::random_density(6, rng);
    const double p = rng.uniform();
    const ComplexMatrix mix = a * cplx(p, 0.0) + b * cplx(1.0 - p, 0.0);
    const ComplexMatrix lhs = partial_trace(mix, {2, 3}, {1});
    const ComplexMatrix rhs = partial_trace(a, {2, 3}, {1}) * cplx(p, 0.0) +
                              partial_trace(b, {2, 3}, {1}) * cplx(1.0 - p, 0.0);
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("partial_trace: rejects inconsistent inputs") {
  const ComplexMatrix rho = ComplexMatrix::identity(6);
  CHECK_THROWS_AS(partial_trace(rho, {2, 2}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(rho, {2, 3}, {2}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(rho, {2, 3}, {0, 0}), std::invalid_argument);
}

TEST_CASE("expm: imaginary scale of a Hermitian generator is unitary") {
  Rng rng(29);
  const ComplexMatrix h = random_hermitian(4, rng);
  const ComplexMatrix u = expm_hermitian_times(h, cplx(0.0, 0.3));
  CHECK(max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(4)) < 1e-12);
}

TEST_CASE("permute_subsystems: swap of a two-factor vector") {
  // |0>|1> on dims (2,3) lands at index (1,0) once the factors swap
  std::vector<cplx> v(6, 0.0);
  v[1] = 1.0;
  const auto w = permute_subsystems(v, {2, 3}, {1, 0});
  CHECK(w[1 * 2 + 0] == cplx(1.0, 0.0));
}
