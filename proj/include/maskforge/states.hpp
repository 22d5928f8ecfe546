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

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "maskforge/linalg.hpp"
#include "maskforge/rng.hpp"

namespace maskforge {

// All entropies in this library are base-2: bits, matching the qubit/bit
// framing everywhere else.

namespace detail {

// Eigenvalues in (-kNegativeTol, kZeroCutoff) are treated as exact zeros of a
// rounded-off spectrum. Anything below -kNegativeTol is real negativity and
// must surface as an error instead of being clamped away, since it usually
// means a masker or channel was assembled wrong.
constexpr double kZeroCutoff = 1e-12;
constexpr double kNegativeTol = 1e-10;

inline double entropy_of_spectrum(const std::vector<double>& eigenvalues) {
  double s = 0.0;
  for (double lam : eigenvalues) {
    if (lam < -kNegativeTol)
      throw std::invalid_argument("entropy: eigenvalue below -1e-10, state is not positive");
    if (lam < kZeroCutoff) continue;
    s -= lam * std::log2(lam);
  }
  return s;
}

inline std::size_t product(const std::vector<std::size_t>& dims) {
  std::size_t p = 1;
  for (std::size_t d : dims) p *= d;
  return p;
}

inline void check_labels_unique(const std::vector<std::string>& labels) {
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size())
    throw std::invalid_argument("subsystem labels must be unique");
}

}  // namespace detail

//=========================================================================
// DensityMatrix / PureState
//=========================================================================

class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix matrix, std::vector<std::size_t> dims,
                std::vector<std::string> labels)
      : matrix_(std::move(matrix)), dims_(std::move(dims)), labels_(std::move(labels)) {
    if (dims_.size() != labels_.size())
      throw std::invalid_argument("DensityMatrix: dims and labels differ in length");
    detail::check_labels_unique(labels_);
    if (detail::product(dims_) != matrix_.rows() || !matrix_.is_square())
      throw std::invalid_argument("DensityMatrix: dims do not factor the matrix dimension");
    if (matrix_.hermiticity_error() > 1e-10)
      throw std::invalid_argument("DensityMatrix: matrix is not Hermitian within 1e-10");
    if (std::abs(matrix_.trace() - 1.0) > 1e-10)
      throw std::invalid_argument("DensityMatrix: trace differs from 1 beyond 1e-10");
  }

  /// Single-subsystem state labeled "S" by default.
  static DensityMatrix single(ComplexMatrix matrix, std::string label = "S") {
    const std::size_t d = matrix.rows();
    return DensityMatrix(std::move(matrix), {d}, {std::move(label)});
  }

  const ComplexMatrix& matrix() const { return matrix_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t dim() const { return matrix_.rows(); }

  std::size_t subsystem_index(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    throw std::invalid_argument("unknown subsystem label: " + label);
  }

  /// Reduction to the named subsystems (kept in original order).
  DensityMatrix reduced(const std::vector<std::string>& keep) const {
    std::vector<bool> keep_mask(dims_.size(), false);
    for (const std::string& l : keep) keep_mask[subsystem_index(l)] = true;
    std::vector<std::size_t> traced;
    std::vector<std::size_t> kept_dims;
    std::vector<std::string> kept_labels;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      if (keep_mask[i]) {
        kept_dims.push_back(dims_[i]);
        kept_labels.push_back(labels_[i]);
      } else {
        traced.push_back(i);
      }
    }
    return DensityMatrix(partial_trace(matrix_, dims_, traced), kept_dims, kept_labels);
  }

 private:
  ComplexMatrix matrix_;
  std::vector<std::size_t> dims_;
  std::vector<std::string> labels_;
};

class PureState {
 public:
  PureState(std::vector<cplx> amplitudes, std::vector<std::size_t> dims,
            std::vector<std::string> labels)
      : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)), labels_(std::move(labels)) {
    if (dims_.size() != labels_.size())
      throw std::invalid_argument("PureState: dims and labels differ in length");
    detail::check_labels_unique(labels_);
    if (detail::product(dims_) != amplitudes_.size())
      throw std::invalid_argument("PureState: dims do not factor the vector length");
    double norm2 = 0.0;
    for (const cplx& a : amplitudes_) norm2 += std::norm(a);
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-10)
      throw std::invalid_argument("PureState: norm differs from 1 beyond 1e-10");
  }

  const std::vector<cplx>& amplitudes() const { return amplitudes_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t dim() const { return amplitudes_.size(); }

  std::size_t subsystem_index(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return i;
    throw std::invalid_argument("unknown subsystem label: " + label);
  }

  DensityMatrix to_density() const {
    const std::size_t n = amplitudes_.size();
    ComplexMatrix rho(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        rho(i, j) = amplitudes_[i] * std::conj(amplitudes_[j]);
    return DensityMatrix(std::move(rho), dims_, labels_);
  }

  /// Reduced density matrix of the named subsystems, built directly from the
  /// amplitudes (never materializes the full |psi><psi|).
  DensityMatrix reduced_density(const std::vector<std::string>& keep) const {
    std::vector<bool> keep_mask(dims_.size(), false);
    for (const std::string& l : keep) keep_mask[subsystem_index(l)] = true;
    std::vector<std::size_t> kept_pos, rest_pos;
    std::vector<std::size_t> kept_dims;
    std::vector<std::string> kept_labels;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
      if (keep_mask[i]) {
        kept_pos.push_back(i);
        kept_dims.push_back(dims_[i]);
        kept_labels.push_back(labels_[i]);
      } else {
        rest_pos.push_back(i);
      }
    }
    const auto strides = detail::row_strides(dims_);
    const auto kept_off = detail::subsystem_offsets(dims_, strides, kept_pos);
    const auto rest_off = detail::subsystem_offsets(dims_, strides, rest_pos);
    ComplexMatrix rho(kept_off.size(), kept_off.size());
    for (std::size_t a = 0; a < kept_off.size(); ++a)
      for (std::size_t b = 0; b < kept_off.size(); ++b) {
        cplx sum = 0.0;
        for (std::size_t r : rest_off)
          sum += amplitudes_[kept_off[a] + r] * std::conj(amplitudes_[kept_off[b] + r]);
        rho(a, b) = sum;
      }
    return DensityMatrix(std::move(rho), kept_dims, kept_labels);
  }

 private:
  std::vector<cplx> amplitudes_;
  std::vector<std::size_t> dims_;
  std::vector<std::string> labels_;
};

//=========================================================================
// Entropic quantities
//=========================================================================

inline double von_neumann_entropy(const DensityMatrix& rho) {
  const HermitianEigen eig = hermitian_eigensystem(rho.matrix(), 1e-10);
  return detail::entropy_of_spectrum(eig.eigenvalues);
}

inline double shannon_entropy_bits(const std::vector<double>& p) {
  double s = 0.0;
  for (double q : p) {
    if (q < detail::kZeroCutoff) continue;
    s -= q * std::log2(q);
  }
  return s;
}

namespace detail {

inline std::vector<std::string> union_labels(const std::vector<std::string>& order,
                                             const std::vector<std::string>& a,
                                             const std::vector<std::string>& b) {
  std::set<std::string> wanted(a.begin(), a.end());
  for (const std::string& l : b) {
    if (wanted.count(l))
      throw std::invalid_argument("mutual_information: label sets overlap on " + l);
    wanted.insert(l);
  }
  std::vector<std::string> out;
  for (const std::string& l : order)
    if (wanted.count(l)) out.push_back(l);
  if (out.size() != wanted.size())
    throw std::invalid_argument("mutual_information: unknown subsystem label");
  return out;
}

}  // namespace detail

/// I(A:B) = S(A) + S(B) - S(AB), every term from an explicit reduction.
inline double mutual_information(const DensityMatrix& rho,
                                 const std::vector<std::string>& part_a,
                                 const std::vector<std::string>& part_b) {
  const auto joint = detail::union_labels(rho.labels(), part_a, part_b);
  const double sa = von_neumann_entropy(rho.reduced(part_a));
  const double sb = von_neumann_entropy(rho.reduced(part_b));
  const double sab = von_neumann_entropy(rho.reduced(joint));
  return sa + sb - sab;
}

inline double mutual_information(const PureState& psi,
                                 const std::vector<std::string>& part_a,
                                 const std::vector<std::string>& part_b) {
  const auto joint = detail::union_labels(psi.labels(), part_a, part_b);
  const double sa = von_neumann_entropy(psi.reduced_density(part_a));
  const double sb = von_neumann_entropy(psi.reduced_density(part_b));
  const double sab = von_neumann_entropy(psi.reduced_density(joint));
  return sa + sb - sab;
}

/// Entropy of a cut of a pure state, computed on whichever side of the cut is
/// smaller; the two sides of a pure state share their nonzero spectrum.
inline double entropy_of_cut(const PureState& psi, const std::vector<std::string>& side) {
  std::set<std::string> in_side(side.begin(), side.end());
  if (in_side.size() != side.size())
    throw std::invalid_argument("entropy_of_cut: repeated label");
  for (const std::string& l : side) psi.subsystem_index(l);  // validates
  std::size_t side_dim = 1, comp_dim = 1;
  std::vector<std::string> comp;
  for (std::size_t i = 0; i < psi.labels().size(); ++i) {
    if (in_side.count(psi.labels()[i])) {
      side_dim *= psi.dims()[i];
    } else {
      comp.push_back(psi.labels()[i]);
      comp_dim *= psi.dims()[i];
    }
  }
  const auto& use = (side_dim <= comp_dim) ? side : comp;
  return von_neumann_entropy(psi.reduced_density(use));
}

/// Mutual information between cuts of a pure state; joint entropies go
/// through the smaller complement. Exact for pure inputs and much cheaper on
/// wide systems than the generic reduction path.
inline double mutual_information_cut(const PureState& psi,
                                     const std::vector<std::string>& part_a,
                                     const std::vector<std::string>& part_b) {
  const auto joint = detail::union_labels(psi.labels(), part_a, part_b);
  return entropy_of_cut(psi, part_a) + entropy_of_cut(psi, part_b) -
         entropy_of_cut(psi, joint);
}

//=========================================================================
// Constructions
//=========================================================================

/// sum_k |k>|k> / sqrt(d) on labels (R, I).
inline PureState maximally_entangled(std::size_t d) {
  if (d < 2) throw std::invalid_argument("maximally_entangled: dimension must be >= 2");
  std::vector<cplx> amps(d * d, 0.0);
  const double w = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t k = 0; k < d; ++k) amps[k * d + k] = w;
  return PureState(std::move(amps), {d, d}, {"R", "I"});
}

/// Purification |Sigma> = sum_i sqrt(lambda_i) |e_i>|i>_K with the purifier
/// dimension equal to rank(sigma), not the full dimension.
inline PureState purify(const DensityMatrix& sigma, const std::string& new_label) {
  const HermitianEigen eig = hermitian_eigensystem(sigma.matrix(), 1e-10);
  std::size_t rank = 0;
  for (double lam : eig.eigenvalues) {
    if (lam < -detail::kNegativeTol)
      throw std::invalid_argument("purify: state has a negative eigenvalue");
    if (lam >= detail::kZeroCutoff) ++rank;
  }
  if (rank == 0) throw std::invalid_argument("purify: state has no support");
  const std::size_t d = sigma.dim();
  std::vector<cplx> amps(d * rank, 0.0);
  double norm2 = 0.0;
  for (std::size_t k = 0; k < rank; ++k) {
    const double s = std::sqrt(std::max(eig.eigenvalues[k], 0.0));
    for (std::size_t i = 0; i < d; ++i) amps[i * rank + k] = s * eig.eigenvectors(i, k);
    norm2 += std::max(eig.eigenvalues[k], 0.0);
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (cplx& a : amps) a *= scale;
  std::vector<std::size_t> dims = sigma.dims();
  dims.push_back(rank);
  std::vector<std::string> labels = sigma.labels();
  labels.push_back(new_label);
  return PureState(std::move(amps), std::move(dims), std::move(labels));
}

/// QR-corrected Ginibre sampling: modified Gram-Schmidt yields the unique Q
/// with positive-diagonal R, which carries the Haar distribution.
inline ComplexMatrix haar_random_unitary(std::size_t d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("haar_random_unitary: dimension must be >= 1");
  Rng rng(seed);
  ComplexMatrix g(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g(i, j) = rng.gaussian_complex();
  ComplexMatrix q(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<cplx> v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = g(i, j);
    for (int pass = 0; pass < 2; ++pass) {  // reorthogonalize once
      for (std::size_t k = 0; k < j; ++k) {
        cplx proj = 0.0;
        for (std::size_t i = 0; i < d; ++i) proj += std::conj(q(i, k)) * v[i];
        for (std::size_t i = 0; i < d; ++i) v[i] -= proj * q(i, k);
      }
    }
    double norm2 = 0.0;
    for (const cplx& z : v) norm2 += std::norm(z);
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t i = 0; i < d; ++i) q(i, j) = v[i] * inv;
  }
  return q;
}

/// Normalized complex-Gaussian amplitudes: Haar on the pure-state sphere.
inline PureState random_pure_state(const std::vector<std::size_t>& dims,
                                   const std::vector<std::string>& labels, Rng& rng) {
  std::vector<cplx> amps(detail::product(dims));
  double norm2 = 0.0;
  for (cplx& a : amps) {
    a = rng.gaussian_complex();
    norm2 += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (cplx& a : amps) a *= inv;
  return PureState(std::move(amps), dims, labels);
}

//=========================================================================
// Schmidt decomposition
//=========================================================================

struct SchmidtDecomposition {
  std::vector<double> coefficients;  // lambda_i, descending, sum 1
  ComplexMatrix left;                // columns |u_i> on the cut side
  ComplexMatrix right;               // columns |v_i> on the complement
};

/// psi = sum_i sqrt(lambda_i) |u_i>|v_i> across the cut given by `cut` (left
/// side); only terms with lambda_i above the numerical cutoff are returned.
inline SchmidtDecomposition schmidt_decompose(const PureState& psi,
                                              const std::vector<std::string>& cut) {
  std::set<std::string> in_cut(cut.begin(), cut.end());
  if (in_cut.size() != cut.size())
    throw std::invalid_argument("schmidt_decompose: repeated label in cut");
  std::vector<std::size_t> left_pos, right_pos;
  std::size_t dl = 1, dr = 1;
  std::size_t found = 0;
  for (std::size_t i = 0; i < psi.labels().size(); ++i) {
    if (in_cut.count(psi.labels()[i])) {
      left_pos.push_back(i);
      dl *= psi.dims()[i];
      ++found;
    } else {
      right_pos.push_back(i);
      dr *= psi.dims()[i];
    }
  }
  if (found != cut.size())
    throw std::invalid_argument("schmidt_decompose: unknown label in cut");
  if (left_pos.empty() || right_pos.empty())
    throw std::invalid_argument("schmidt_decompose: cut must leave both sides nonempty");

  const auto strides = detail::row_strides(psi.dims());
  const auto left_off = detail::subsystem_offsets(psi.dims(), strides, left_pos);
  const auto right_off = detail::subsystem_offsets(psi.dims(), strides, right_pos);
  ComplexMatrix m(dl, dr);
  for (std::size_t a = 0; a < dl; ++a)
    for (std::size_t b = 0; b < dr; ++b) m(a, b) = psi.amplitudes()[left_off[a] + right_off[b]];

  // Spectral route on the smaller Gram matrix.
  SchmidtDecomposition out;
  const bool left_small = dl <= dr;
  const ComplexMatrix gram = left_small ? m * m.adjoint() : m.adjoint() * m;
  const HermitianEigen eig = hermitian_eigensystem(gram, 1e-10);
  std::size_t rank = 0;
  for (double lam : eig.eigenvalues)
    if (lam >= detail::kZeroCutoff) ++rank;
  out.coefficients.assign(eig.eigenvalues.begin(), eig.eigenvalues.begin() + rank);
  out.left = ComplexMatrix(dl, rank);
  out.right = ComplexMatrix(dr, rank);
  for (std::size_t k = 0; k < rank; ++k) {
    const double inv = 1.0 / std::sqrt(out.coefficients[k]);
    if (left_small) {
      for (std::size_t i = 0; i < dl; ++i) out.left(i, k) = eig.eigenvectors(i, k);
      for (std::size_t b = 0; b < dr; ++b) {
        cplx w = 0.0;
        for (std::size_t a = 0; a < dl; ++a) w += std::conj(m(a, b)) * eig.eigenvectors(a, k);
        out.right(b, k) = std::conj(w) * inv;
      }
    } else {
      for (std::size_t b = 0; b < dr; ++b) out.right(b, k) = std::conj(eig.eigenvectors(b, k));
      for (std::size_t a = 0; a < dl; ++a) {
        cplx w = 0.0;
        for (std::size_t b = 0; b < dr; ++b) w += m(a, b) * std::conj(out.right(b, k));
        out.left(a, k) = w * inv;
      }
    }
  }
  return out;
}

//=========================================================================
// Isometry application on labeled states
//=========================================================================

/// Applies an isometry to a contiguous run of subsystems of a pure state,
/// replacing them with the given output subsystems. The targets must appear
/// consecutively in the state's label order.
inline PureState apply_isometry(const PureState& psi,
                                const std::vector<std::string>& target_labels,
                                const ComplexMatrix& op,
                                const std::vector<std::size_t>& out_dims,
                                const std::vector<std::string>& out_labels) {
  if (target_labels.empty()) throw std::invalid_argument("apply_isometry: no targets");
  const std::size_t first = psi.subsystem_index(target_labels.front());
  for (std::size_t k = 0; k < target_labels.size(); ++k) {
    const std::size_t idx = psi.subsystem_index(target_labels[k]);
    if (idx != first + k)
      throw std::invalid_argument("apply_isometry: targets must be consecutive subsystems");
  }
  std::size_t din = 1;
  for (std::size_t k = 0; k < target_labels.size(); ++k) din *= psi.dims()[first + k];
  std::size_t dout = detail::product(out_dims);
  if (op.cols() != din || op.rows() != dout)
    throw std::invalid_argument("apply_isometry: operator shape does not match targets");

  std::size_t pre = 1, post = 1;
  for (std::size_t i = 0; i < first; ++i) pre *= psi.dims()[i];
  for (std::size_t i = first + target_labels.size(); i < psi.dims().size(); ++i)
    post *= psi.dims()[i];

  std::vector<cplx> out(pre * dout * post, 0.0);
  const auto& in = psi.amplitudes();
  for (std::size_t p = 0; p < pre; ++p)
    for (std::size_t o = 0; o < dout; ++o) {
      const std::size_t out_base = (p * dout + o) * post;
      for (std::size_t i = 0; i < din; ++i) {
        const cplx w = op(o, i);
        if (w == 0.0) continue;
        const std::size_t in_base = (p * din + i) * post;
        for (std::size_t t = 0; t < post; ++t) out[out_base + t] += w * in[in_base + t];
      }
    }

  std::vector<std::size_t> dims(psi.dims().begin(), psi.dims().begin() + first);
  dims.insert(dims.end(), out_dims.begin(), out_dims.end());
  dims.insert(dims.end(), psi.dims().begin() + first + target_labels.size(), psi.dims().end());
  std::vector<std::string> labels(psi.labels().begin(), psi.labels().begin() + first);
  labels.insert(labels.end(), out_labels.begin(), out_labels.end());
  labels.insert(labels.end(), psi.labels().begin() + first + target_labels.size(),
                psi.labels().end());
  return PureState(std::move(out), std::move(dims), std::move(labels));
}

/// Tensor product; labels must stay disjoint.
inline PureState tensor(const PureState& a, const PureState& b) {
  std::vector<cplx> amps(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      amps[i * b.dim() + j] = a.amplitudes()[i] * b.amplitudes()[j];
  std::vector<std::size_t> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  std::vector<std::string> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  return PureState(std::move(amps), std::move(dims), std::move(labels));
}

}  // namespace maskforge
