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

#include "maskforge/linalg.hpp"
#include "maskforge/rng.hpp"
#include "maskforge/states.hpp"

namespace maskforge::testing {

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.gaussian_complex();
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
  const ComplexMatrix g = random_matrix(n, n, rng);
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
  return h;
}

/// Random full-rank state G G^dagger normalized to unit trace.
inline ComplexMatrix random_density(std::size_t n, Rng& rng) {
  const ComplexMatrix g = random_matrix(n, n, rng);
  ComplexMatrix rho = g * g.adjoint();
  const double tr = std::real(rho.trace());
  rho *= cplx(1.0 / tr, 0.0);
  return rho;
}

/// First columns of a Haar unitary: a Haar-random isometry.
inline ComplexMatrix random_isometry(std::size_t dim_in, std::size_t dim_out,
                                     std::uint64_t seed) {
  const ComplexMatrix u = haar_random_unitary(dim_out, seed);
  ComplexMatrix v(dim_out, dim_in);
  for (std::size_t r = 0; r < dim_out; ++r)
    for (std::size_t c = 0; c < dim_in; ++c) v(r, c) = u(r, c);
  return v;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).sup_norm();
}

}  // namespace maskforge::testing
