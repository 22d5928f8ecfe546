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
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace maskforge {

using cplx = std::complex<double>;

//=========================================================================
// Dense complex matrix, row-major. The substrate for every operator in the
// library: states, isometries, channels.
//=========================================================================

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  std::vector<cplx>& data() { return entries_; }
  const std::vector<cplx>& data() const { return entries_; }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  cplx trace() const {
    if (!is_square()) throw std::invalid_argument("trace: matrix must be square");
    cplx t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  /// Largest entry magnitude.
  double sup_norm() const {
    double m = 0.0;
    for (const cplx& z : entries_) m = std::max(m, std::abs(z));
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const cplx& z : entries_) s += std::norm(z);
    return std::sqrt(s);
  }

  /// Largest |a_ij - conj(a_ji)| over all pairs; 0 for exactly Hermitian input.
  double hermiticity_error() const {
    if (!is_square()) return std::numeric_limits<double>::infinity();
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    check_same_shape(o, "+=");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    check_same_shape(o, "-=");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
    return *this;
  }
  ComplexMatrix& operator*=(cplx s) {
    for (cplx& z : entries_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    a += b;
    return a;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    a -= b;
    return a;
  }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) {
    a *= s;
    return a;
  }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) {
    a *= s;
    return a;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("matrix product: inner dimensions differ");
    ComplexMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const cplx aik = a(i, k);
        if (aik == 0.0) continue;
        const cplx* brow = &b.entries_[k * b.cols_];
        cplx* crow = &c.entries_[i * b.cols_];
        for (std::size_t j = 0; j < b.cols_; ++j) crow[j] += aik * brow[j];
      }
    }
    return c;
  }

 private:
  void check_same_shape(const ComplexMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument(std::string("matrix ") + op + ": shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> entries_;
};

/// X sandwiched as M X M^dagger.
inline ComplexMatrix conjugate_by(const ComplexMatrix& m, const ComplexMatrix& x) {
  return m * x * m.adjoint();
}

//=========================================================================
// Tensor structure
//=========================================================================

inline ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y) {
  ComplexMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) {
      const cplx xij = x(i, j);
      if (xij == 0.0) continue;
      for (std::size_t k = 0; k < y.rows(); ++k)
        for (std::size_t l = 0; l < y.cols(); ++l)
          out(i * y.rows() + k, j * y.cols() + l) = xij * y(k, l);
    }
  return out;
}

namespace detail {

/// Mixed-radix offsets: enumerate all joint indices of the subsystems listed
/// in `positions`, returning each as a flat row offset. `strides[p]` is the
/// flat stride of subsystem p.
inline std::vector<std::size_t> subsystem_offsets(
    const std::vector<std::size_t>& dims, const std::vector<std::size_t>& strides,
    const std::vector<std::size_t>& positions) {
  std::size_t total = 1;
  for (std::size_t p : positions) total *= dims[p];
  std::vector<std::size_t> offsets(total, 0);
  std::size_t repeat = total;
  for (std::size_t p : positions) {
    repeat /= dims[p];
    std::size_t idx = 0;
    while (idx < total) {
      for (std::size_t digit = 0; digit < dims[p]; ++digit)
        for (std::size_t r = 0; r < repeat; ++r, ++idx)
          offsets[idx] += digit * strides[p];
    }
  }
  return offsets;
}

inline std::vector<std::size_t> row_strides(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) strides[i - 1] = strides[i] * dims[i];
  return strides;
}

}  // namespace detail

/// Traces out the subsystems listed in `traced` from a square operator whose
/// index factors as the given dims (subsystem 0 most significant). Kept
/// subsystems remain in their original order.
inline ComplexMatrix partial_trace(const ComplexMatrix& x,
                                   const std::vector<std::size_t>& dims,
                                   const std::vector<std::size_t>& traced) {
  if (!x.is_square()) throw std::invalid_argument("partial_trace: matrix must be square");
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  if (total != x.rows())
    throw std::invalid_argument("partial_trace: dims do not factor the matrix dimension");
  std::vector<bool> is_traced(dims.size(), false);
  for (std::size_t t : traced) {
    if (t >= dims.size())
      throw std::invalid_argument("partial_trace: subsystem index out of range");
    if (is_traced[t]) throw std::invalid_argument("partial_trace: repeated subsystem index");
    is_traced[t] = true;
  }
  std::vector<std::size_t> kept_pos, traced_pos;
  for (std::size_t p = 0; p < dims.size(); ++p)
    (is_traced[p] ? traced_pos : kept_pos).push_back(p);

  const auto strides = detail::row_strides(dims);
  const auto kept_off = detail::subsystem_offsets(dims, strides, kept_pos);
  const auto traced_off = detail::subsystem_offsets(dims, strides, traced_pos);

  ComplexMatrix out(kept_off.size(), kept_off.size());
  for (std::size_t r = 0; r < kept_off.size(); ++r)
    for (std::size_t c = 0; c < kept_off.size(); ++c) {
      cplx sum = 0.0;
      for (std::size_t t : traced_off) sum += x(kept_off[r] + t, kept_off[c] + t);
      out(r, c) = sum;
    }
  return out;
}

/// Reorders the tensor factors of a column vector's index space. `order[k]`
/// names the old subsystem that lands at new position k.
inline std::vector<cplx> permute_subsystems(const std::vector<cplx>& amps,
                                            const std::vector<std::size_t>& dims,
                                            const std::vector<std::size_t>& order) {
  const auto strides = detail::row_strides(dims);
  std::vector<std::size_t> new_dims(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) new_dims[k] = dims[order[k]];
  const auto new_strides = detail::row_strides(new_dims);
  std::vector<cplx> out(amps.size());
  std::vector<std::size_t> digit(dims.size(), 0);
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    std::size_t rem = idx;
    std::size_t target = 0;
    for (std::size_t p = 0; p < dims.size(); ++p) {
      digit[p] = rem / strides[p];
      rem %= strides[p];
    }
    for (std::size_t k = 0; k < order.size(); ++k) target += digit[order[k]] * new_strides[k];
    out[target] = amps[idx];
  }
  return out;
}

//=========================================================================
// Hermitian eigenproblem: cyclic Jacobi rotations. Deterministic, no
// external dependency; dimensions in this library stay a few hundred at
// most, well inside Jacobi territory.
//=========================================================================

struct HermitianEigen {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // unitary, columns matching eigenvalues
};

inline HermitianEigen hermitian_eigensystem(const ComplexMatrix& h, double tol = 1e-9) {
  if (!h.is_square())
    throw std::invalid_argument("hermitian_eigensystem: matrix must be square");
  if (h.hermiticity_error() > tol)
    throw std::invalid_argument(
        "hermitian_eigensystem: matrix is not Hermitian within tolerance");
  const std::size_t n = h.rows();
  ComplexMatrix a = h;
  // Fold in the adjoint so rounding asymmetry cannot bias the sweep.
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = cplx(std::real(a(i, i)), 0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx sym = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = sym;
      a(j, i) = std::conj(sym);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double stop = 1e-13 * std::max(1.0, a.frobenius_norm());

  for (int sweep = 0; sweep < 100 && n > 1; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * std::norm(a(p, q));
    if (std::sqrt(off) <= stop) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        const cplx phase = apq / r;  // e^{i phi}
        const double app = std::real(a(p, p));
        const double aqq = std::real(a(q, q));
        const double tau = (aqq - app) / (2.0 * r);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx s_conj_phase = s * std::conj(phase);

        a(p, p) = app - t * r;
        a(q, q) = aqq + t * r;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = c * akp - s_conj_phase * akq;
          a(k, q) = s * akp + c * std::conj(phase) * akq;
          a(p, k) = std::conj(a(k, p));
          a(q, k) = std::conj(a(k, q));
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = c * vkp - s_conj_phase * vkq;
          v(k, q) = s * vkp + c * std::conj(phase) * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = std::real(a(i, i));
  // Stable so that an already-diagonal input keeps its basis order; the
  // embedding decomposition of a degenerate safe state depends on it.
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t l, std::size_t r) { return diag[l] > diag[r]; });

  HermitianEigen out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = diag[idx[j]];
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, idx[j]);
  }
  return out;
}

/// V diag(f(lambda)) V^dagger for f(lambda) = exp(scale * lambda); `scale` may
/// be imaginary, which turns a Hermitian generator into a unitary.
inline ComplexMatrix expm_hermitian_times(const ComplexMatrix& h, cplx scale,
                                          double tol = 1e-9) {
  const HermitianEigen eig = hermitian_eigensystem(h, tol);
  const std::size_t n = h.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx f = std::exp(scale * eig.eigenvalues[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = eig.eigenvectors(i, k) * f;
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += vik * std::conj(eig.eigenvectors(j, k));
    }
  }
  return out;
}

}  // namespace maskforge
