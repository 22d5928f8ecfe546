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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "maskforge/linalg.hpp"
#include "maskforge/states.hpp"

namespace maskforge {

//=========================================================================
// Masker: an isometry M : H_I (x) H_S -> H_A (x) H_B together with a safe
// state sigma_S. The induced map rho -> M (rho (x) sigma_S) M^dagger hides
// rho from A and from B individually when it is universal, i.e. when both
// marginals are constant over all inputs.
//=========================================================================

class Masker {
 public:
  Masker(ComplexMatrix isometry, DensityMatrix safe_state, std::size_t dim_in,
         std::size_t dim_a, std::size_t dim_b)
      : isometry_(std::move(isometry)),
        safe_state_(std::move(safe_state)),
        dim_in_(dim_in),
        dim_a_(dim_a),
        dim_b_(dim_b) {
    const std::size_t dim_safe = safe_state_.dim();
    if (isometry_.cols() != dim_in_ * dim_safe ||
        isometry_.rows() != dim_a_ * dim_b_)
      throw std::invalid_argument("Masker: isometry shape does not match dimensions");
    if (dim_a_ * dim_b_ < dim_in_ * dim_safe)
      throw std::invalid_argument("Masker: output space smaller than input (x) safe space");
    const ComplexMatrix gram = isometry_.adjoint() * isometry_;
    if ((gram - ComplexMatrix::identity(gram.rows())).sup_norm() > 1e-10)
      throw std::invalid_argument("Masker: M^dagger M differs from identity beyond 1e-10");
  }

  const ComplexMatrix& isometry() const { return isometry_; }
  const DensityMatrix& safe_state() const { return safe_state_; }
  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_safe() const { return safe_state_.dim(); }
  std::size_t dim_a() const { return dim_a_; }
  std::size_t dim_b() const { return dim_b_; }

 private:
  ComplexMatrix isometry_;
  DensityMatrix safe_state_;
  std::size_t dim_in_;
  std::size_t dim_a_;
  std::size_t dim_b_;
};

/// One branch of the random-isometry form: an isometry H_I -> H_A (x) H_B
/// selected with probability `probability` by the safe state's spectrum.
struct BipartiteEmbedding {
  ComplexMatrix isometry;  // (dim_a * dim_b) x dim_in
  double probability;
  std::size_t dim_in;
  std::size_t dim_a;
  std::size_t dim_b;
};

struct MaskerReport {
  bool is_universal = false;
  double marginal_deviation = 0.0;
  DensityMatrix sigma_a;
  DensityMatrix sigma_b;
  double randomness_cost = 0.0;  // bits
  std::size_t embedding_count = 0;
  double tolerance = 0.0;
};

//=========================================================================
// Operations
//=========================================================================

/// M (X (x) sigma_S) M^dagger on an arbitrary operator X; linear in X, so it
/// also serves the matrix-unit scans below.
inline ComplexMatrix apply_raw(const Masker& m, const ComplexMatrix& x) {
  if (!x.is_square() || x.rows() != m.dim_in())
    throw std::invalid_argument("apply: operator dimension does not match the masker input");
  return conjugate_by(m.isometry(), kron(x, m.safe_state().matrix()));
}

inline DensityMatrix apply(const Masker& m, const DensityMatrix& rho) {
  if (rho.dim() != m.dim_in())
    throw std::invalid_argument("apply: state dimension does not match the masker input");
  return DensityMatrix(apply_raw(m, rho.matrix()), {m.dim_a(), m.dim_b()}, {"A", "B"});
}

/// Spectral decomposition of the safe state turns the masker into a mixture
/// of bipartite embeddings M_i = M (1 (x) |e_i>). Branches with probability
/// at most 1e-12 carry no weight and are dropped.
inline std::vector<BipartiteEmbedding> decompose_embeddings(const Masker& m) {
  const HermitianEigen eig = hermitian_eigensystem(m.safe_state().matrix(), 1e-10);
  const std::size_t ds = m.dim_safe();
  const std::size_t di = m.dim_in();
  const std::size_t dout = m.dim_a() * m.dim_b();
  std::vector<BipartiteEmbedding> out;
  for (std::size_t k = 0; k < ds; ++k) {
    const double p = eig.eigenvalues[k];
    if (p <= 1e-12) continue;
    ComplexMatrix mk(dout, di);
    for (std::size_t r = 0; r < dout; ++r)
      for (std::size_t i = 0; i < di; ++i) {
        cplx sum = 0.0;
        for (std::size_t s = 0; s < ds; ++s)
          sum += m.isometry()(r, i * ds + s) * eig.eigenvectors(s, k);
        mk(r, i) = sum;
      }
    out.push_back(BipartiteEmbedding{std::move(mk), p, di, m.dim_a(), m.dim_b()});
  }
  return out;
}

inline double randomness_cost(const Masker& m) {
  return von_neumann_entropy(m.safe_state());
}

/// Scans all matrix units E_kl. By linearity the marginals are constant over
/// every input state iff Tr_B Phi(E_kl) = delta_kl sigma_A (and the mirror
/// statement for A), so the scan is complete rather than a sampling check.
inline MaskerReport verify_universal(const Masker& m, double tol = 1e-10) {
  const std::size_t d = m.dim_in();
  const std::vector<std::size_t> out_dims{m.dim_a(), m.dim_b()};

  // Reference marginals from the maximally mixed input.
  ComplexMatrix mixed(d, d);
  for (std::size_t i = 0; i < d; ++i) mixed(i, i) = 1.0 / static_cast<double>(d);
  const ComplexMatrix phi_mixed = apply_raw(m, mixed);
  ComplexMatrix ref_a = partial_trace(phi_mixed, out_dims, {1});
  ComplexMatrix ref_b = partial_trace(phi_mixed, out_dims, {0});

  double deviation = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t l = 0; l < d; ++l) {
      ComplexMatrix unit(d, d);
      unit(k, l) = 1.0;
      const ComplexMatrix image = apply_raw(m, unit);
      ComplexMatrix marg_a = partial_trace(image, out_dims, {1});
      ComplexMatrix marg_b = partial_trace(image, out_dims, {0});
      if (k == l) {
        marg_a -= ref_a;
        marg_b -= ref_b;
      }
      deviation = std::max(deviation, marg_a.sup_norm());
      deviation = std::max(deviation, marg_b.sup_norm());
    }
  }

  MaskerReport report{
      deviation <= tol,
      deviation,
      DensityMatrix(std::move(ref_a), {m.dim_a()}, {"A"}),
      DensityMatrix(std::move(ref_b), {m.dim_b()}, {"B"}),
      randomness_cost(m),
      decompose_embeddings(m).size(),
      tol,
  };
  return report;
}

/// True iff all distinct images are orthogonal: sup |M_i^dagger M_j| < 1e-10.
inline bool verify_orthogonal_images(const std::vector<BipartiteEmbedding>& embeddings) {
  for (std::size_t i = 0; i < embeddings.size(); ++i)
    for (std::size_t j = i + 1; j < embeddings.size(); ++j) {
      const ComplexMatrix overlap = embeddings[i].isometry.adjoint() * embeddings[j].isometry;
      if (overlap.sup_norm() >= 1e-10) return false;
    }
  return true;
}

/// min{S(sigma_A), S(sigma_B), S(sigma_S)} >= log2(d_I), checked numerically.
/// Only meaningful for universal maskers; calling it on anything else is a
/// caller bug and throws.
inline bool check_fact1(const Masker& m, double tol = 1e-10) {
  const MaskerReport report = verify_universal(m, tol);
  if (!report.is_universal)
    throw std::invalid_argument("check_fact1: masker is not universal at the given tolerance");
  const double sa = von_neumann_entropy(report.sigma_a);
  const double sb = von_neumann_entropy(report.sigma_b);
  const double ss = report.randomness_cost;
  const double bound = std::log2(static_cast<double>(m.dim_in()));
  return std::min({sa, sb, ss}) >= bound - 1e-9;
}

//=========================================================================
// Secret sharing: the purifier K of the safe state holds a share of any
// secret the masker hides. On the global pure state over (R, A, B, K) built
// from a maximally entangled input, hiding means I(R:A), I(R:B), I(R:K) all
// vanish while each of AK and BK holds the full 2 log2(d) with R.
//=========================================================================

struct ThresholdShareReport {
  double info_ra = 0.0;
  double info_rb = 0.0;
  double info_rk = 0.0;
  double info_rak = 0.0;
  double info_rbk = 0.0;
  bool hidden_from_singles = false;  // first three below tolerance
  bool pairs_recover = false;        // last two reach 2 log2 d within tolerance
};

inline ThresholdShareReport verify_threshold_shares(const Masker& m, double tol = 1e-9) {
  const std::size_t d = m.dim_in();
  const PureState gamma = maximally_entangled(d);
  const PureState sigma_pure = purify(m.safe_state(), "K");
  // (R, I) (x) (S, K) -> apply M on the adjacent (I, S) pair -> (R, A, B, K).
  PureState global = tensor(gamma, sigma_pure);
  global = apply_isometry(global, {"I", m.safe_state().labels().front()}, m.isometry(),
                          {m.dim_a(), m.dim_b()}, {"A", "B"});

  // Joint entropies route through the smaller complement of each cut; the two
  // sides of a pure state share their nonzero spectrum.
  ThresholdShareReport rep;
  rep.info_ra = mutual_information_cut(global, {"R"}, {"A"});
  rep.info_rb = mutual_information_cut(global, {"R"}, {"B"});
  rep.info_rk = mutual_information_cut(global, {"R"}, {"K"});
  rep.info_rak = mutual_information_cut(global, {"R"}, {"A", "K"});
  rep.info_rbk = mutual_information_cut(global, {"R"}, {"B", "K"});
  const double full = 2.0 * std::log2(static_cast<double>(d));
  rep.hidden_from_singles =
      rep.info_ra < tol && rep.info_rb < tol && rep.info_rk < tol;
  rep.pairs_recover =
      std::abs(rep.info_rak - full) < tol && std::abs(rep.info_rbk - full) < tol;
  return rep;
}

}  // namespace maskforge
