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
#include <vector>

#include "maskforge/bounds.hpp"
#include "maskforge/masker.hpp"
#include "maskforge/parallel.hpp"
#include "maskforge/states.hpp"

namespace maskforge {

//=========================================================================
// ChannelOp: a channel held in Stinespring form, V : H_in -> H_out (x) H_env
// with the environment traced out. The complementary channel traces out the
// output instead.
//=========================================================================

class ChannelOp {
 public:
  ChannelOp(ComplexMatrix isometry, std::size_t dim_in, std::size_t dim_out,
            std::size_t dim_env)
      : isometry_(std::move(isometry)), dim_in_(dim_in), dim_out_(dim_out), dim_env_(dim_env) {
    if (isometry_.cols() != dim_in_ || isometry_.rows() != dim_out_ * dim_env_)
      throw std::invalid_argument("ChannelOp: isometry shape does not match dimensions");
    const ComplexMatrix gram = isometry_.adjoint() * isometry_;
    if ((gram - ComplexMatrix::identity(dim_in_)).sup_norm() > 1e-10)
      throw std::invalid_argument("ChannelOp: V^dagger V differs from identity beyond 1e-10");
  }

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  std::size_t dim_env() const { return dim_env_; }
  const ComplexMatrix& isometry() const { return isometry_; }

  ComplexMatrix apply(const ComplexMatrix& rho) const {
    return partial_trace(conjugate_by(isometry_, rho), {dim_out_, dim_env_}, {1});
  }

  ComplexMatrix complement(const ComplexMatrix& rho) const {
    return partial_trace(conjugate_by(isometry_, rho), {dim_out_, dim_env_}, {0});
  }

  /// Adjoint of the channel: X -> V^dagger (X (x) 1_env) V, without
  /// materializing the padded operator.
  ComplexMatrix dual(const ComplexMatrix& x) const {
    ComplexMatrix out(dim_in_, dim_in_);
    for (std::size_t i = 0; i < dim_in_; ++i)
      for (std::size_t j = 0; j < dim_in_; ++j) {
        cplx sum = 0.0;
        for (std::size_t o = 0; o < dim_out_; ++o)
          for (std::size_t op = 0; op < dim_out_; ++op) {
            const cplx xoo = x(o, op);
            if (xoo == 0.0) continue;
            cplx inner = 0.0;
            for (std::size_t e = 0; e < dim_env_; ++e)
              inner += std::conj(isometry_(o * dim_env_ + e, i)) *
                       isometry_(op * dim_env_ + e, j);
            sum += xoo * inner;
          }
        out(i, j) = sum;
      }
    return out;
  }

  /// Adjoint of the complementary channel: Y -> V^dagger (1_out (x) Y) V.
  ComplexMatrix dual_complement(const ComplexMatrix& y) const {
    ComplexMatrix out(dim_in_, dim_in_);
    for (std::size_t i = 0; i < dim_in_; ++i)
      for (std::size_t j = 0; j < dim_in_; ++j) {
        cplx sum = 0.0;
        for (std::size_t e = 0; e < dim_env_; ++e)
          for (std::size_t ep = 0; ep < dim_env_; ++ep) {
            const cplx yee = y(e, ep);
            if (yee == 0.0) continue;
            cplx inner = 0.0;
            for (std::size_t o = 0; o < dim_out_; ++o)
              inner += std::conj(isometry_(o * dim_env_ + e, i)) *
                       isometry_(o * dim_env_ + ep, j);
            sum += yee * inner;
          }
        out(i, j) = sum;
      }
    return out;
  }

 private:
  ComplexMatrix isometry_;
  std::size_t dim_in_;
  std::size_t dim_out_;
  std::size_t dim_env_;
};

namespace detail {

inline ComplexMatrix reorder_output_pair(const ComplexMatrix& v, std::size_t da,
                                         std::size_t db, std::size_t extra) {
  // rows (a, b, extra) -> (b, a, extra)
  ComplexMatrix out(v.rows(), v.cols());
  for (std::size_t a = 0; a < da; ++a)
    for (std::size_t b = 0; b < db; ++b)
      for (std::size_t k = 0; k < extra; ++k) {
        const std::size_t src = (a * db + b) * extra + k;
        const std::size_t dst = (b * da + a) * extra + k;
        for (std::size_t c = 0; c < v.cols(); ++c) out(dst, c) = v(src, c);
      }
  return out;
}

}  // namespace detail

enum class Side { A, B };

/// Per-embedding subchannel rho -> Tr_side' M_i rho M_i^dagger.
inline ChannelOp embedding_channel(const BipartiteEmbedding& emb, Side side) {
  if (side == Side::A) return ChannelOp(emb.isometry, emb.dim_in, emb.dim_a, emb.dim_b);
  return ChannelOp(detail::reorder_output_pair(emb.isometry, emb.dim_a, emb.dim_b, 1),
                   emb.dim_in, emb.dim_b, emb.dim_a);
}

/// The masker's mixture channel rho -> Tr_side' Phi(rho), in Stinespring form
/// via the purified safe state: the environment is the far side together with
/// the purifier K.
inline ChannelOp erasure_channel(const Masker& m, Side side) {
  const PureState sigma = purify(m.safe_state(), "K");
  const std::size_t ds = m.dim_safe();
  const std::size_t rank = sigma.dims().back();
  const std::size_t di = m.dim_in();
  const std::size_t dab = m.dim_a() * m.dim_b();
  ComplexMatrix w(dab * rank, di);
  for (std::size_t ab = 0; ab < dab; ++ab)
    for (std::size_t k = 0; k < rank; ++k)
      for (std::size_t i = 0; i < di; ++i) {
        cplx sum = 0.0;
        for (std::size_t s = 0; s < ds; ++s)
          sum += m.isometry()(ab, i * ds + s) * sigma.amplitudes()[s * rank + k];
        w(ab * rank + k, i) = sum;
      }
  // rows are ordered (A, B, K)
  if (side == Side::A) return ChannelOp(std::move(w), di, m.dim_a(), m.dim_b() * rank);
  return ChannelOp(detail::reorder_output_pair(w, m.dim_a(), m.dim_b(), rank), di, m.dim_b(),
                   m.dim_a() * rank);
}

//=========================================================================
// Entanglement-assisted capacity: maximize the concave quantum mutual
// information I(rho) = S(rho) + S(N(rho)) - S(N^c(rho)) over input states.
// Exponentiated-gradient ascent respects positivity and the trace constraint
// natively, and concavity makes the fixed point global. The duality gap
// lmax(grad) - tr(rho grad) upper-bounds the remaining suboptimality, so a
// gap below tol certifies the value.
//=========================================================================

struct CapacityResult {
  double value = 0.0;  // bits
  DensityMatrix optimizer;
  std::size_t iterations = 0;
  double gradient_residual = 0.0;  // duality gap at exit
  std::string method = "ascent";
  bool converged = false;
};

namespace detail {

inline HermitianEigen safe_eigen(const ComplexMatrix& h) {
  return hermitian_eigensystem(h, 1e-8);
}

inline double entropy_of_matrix(const ComplexMatrix& rho) {
  return entropy_of_spectrum(safe_eigen(rho).eigenvalues);
}

/// log2 of a state with 1e-12 of the maximally mixed state folded in first;
/// keeps rank-deficient iterates inside the domain of the logarithm.
inline ComplexMatrix log2_regularized(const ComplexMatrix& rho) {
  const std::size_t n = rho.rows();
  ComplexMatrix mixed = rho * cplx(1.0 - 1e-12, 0.0);
  const double floor_weight = 1e-12 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) mixed(i, i) += floor_weight;
  const HermitianEigen eig = safe_eigen(mixed);
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = std::max(eig.eigenvalues[k], 1e-14);
    const double f = std::log2(lam);
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = eig.eigenvectors(i, k) * f;
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += vik * std::conj(eig.eigenvectors(j, k));
    }
  }
  return out;
}

/// Normalized exp of a Hermitian exponent, spectrum shifted for stability.
inline ComplexMatrix gibbs_state(const ComplexMatrix& exponent) {
  const HermitianEigen eig = safe_eigen(exponent);
  const std::size_t n = exponent.rows();
  const double top = eig.eigenvalues.front();
  std::vector<double> w(n);
  double z = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    w[k] = std::exp(eig.eigenvalues[k] - top);
    z += w[k];
  }
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double f = w[k] / z;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = eig.eigenvectors(i, k) * f;
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += vik * std::conj(eig.eigenvectors(j, k));
    }
  }
  return out;
}

}  // namespace detail

inline double capacity_objective(const ChannelOp& ch, const ComplexMatrix& rho) {
  return detail::entropy_of_matrix(rho) + detail::entropy_of_matrix(ch.apply(rho)) -
         detail::entropy_of_matrix(ch.complement(rho));
}

inline CapacityResult cea_capacity(const ChannelOp& ch, double tol = 1e-6,
                                   std::size_t max_iterations = 5000) {
  const std::size_t d = ch.dim_in();
  ComplexMatrix rho(d, d);
  for (std::size_t i = 0; i < d; ++i) rho(i, i) = 1.0 / static_cast<double>(d);

  double value = capacity_objective(ch, rho);
  double step = 1.0;
  double gap = 0.0;
  std::size_t iter = 0;
  bool converged = false;
  constexpr double kLn2 = 0.6931471805599453;

  for (; iter < max_iterations; ++iter) {
    // gradient in bits; the uniform -1/ln2 shifts cancel under normalization
    const ComplexMatrix grad = (detail::log2_regularized(rho) * cplx(-1.0, 0.0)) -
                               ch.dual(detail::log2_regularized(ch.apply(rho))) +
                               ch.dual_complement(detail::log2_regularized(ch.complement(rho)));
    const HermitianEigen geig = detail::safe_eigen(grad);
    double trace_part = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        trace_part += std::real(rho(i, j) * grad(j, i));
    gap = geig.eigenvalues.front() - trace_part;
    if (gap <= tol) {
      converged = true;
      break;
    }

    const ComplexMatrix base = detail::log2_regularized(rho);
    double new_value = value;
    ComplexMatrix candidate = rho;
    bool accepted = false;
    while (step > 1e-18) {
      const ComplexMatrix exponent = (base + grad * cplx(step, 0.0)) * cplx(kLn2, 0.0);
      candidate = detail::gibbs_state(exponent);
      new_value = capacity_objective(ch, candidate);
      if (new_value >= value - 1e-12) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // stalled at machine precision
    const double delta = new_value - value;
    rho = candidate;
    value = new_value;
    step = std::min(step * 1.5, 64.0);
    // Value plateau alone is not enough: the duality gap bounds the distance
    // to the optimum, so demand it is small before trusting the plateau.
    if (std::abs(delta) < tol && gap <= 100.0 * tol) {
      converged = true;
      break;
    }
  }

  const double cap = 2.0 * std::log2(static_cast<double>(d));
  CapacityResult result{
      std::clamp(value, 0.0, cap),
      DensityMatrix(rho, {d}, {"In"}),
      iter,
      gap,
      "ascent",
      converged,
  };
  return result;
}

/// I(Ref:Out) of (1 (x) N) applied to a pure probe on (Ref, In); the brute
/// oracle maximizes this over Haar samples while the solver climbs it.
inline double channel_mutual_information(const ChannelOp& ch, const PureState& probe) {
  if (probe.dims().size() != 2 || probe.dims()[1] != ch.dim_in())
    throw std::invalid_argument("channel_mutual_information: probe shape mismatch");
  const PureState relabeled(probe.amplitudes(), probe.dims(), {"Ref", "In"});
  const PureState out = apply_isometry(relabeled, {"In"}, ch.isometry(),
                                       {ch.dim_out(), ch.dim_env()}, {"Out", "Env"});
  const double sr = von_neumann_entropy(out.reduced_density({"Ref"}));
  const double so = von_neumann_entropy(out.reduced_density({"Out"}));
  const double se = von_neumann_entropy(out.reduced_density({"Env"}));  // = S(Ref,Out)
  return sr + so - se;
}

inline double sampled_capacity_max(const ChannelOp& ch, std::size_t samples,
                                   std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t d = ch.dim_in();
  double best = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const PureState probe = random_pure_state({d, d}, {"Ref", "In"}, rng);
    best = std::max(best, channel_mutual_information(ch, probe));
  }
  return best;
}

/// Random channel in Stinespring form: the first dim_in columns of a Haar
/// unitary on out (x) env.
inline ChannelOp random_channel(std::size_t dim_in, std::size_t dim_out, std::size_t dim_env,
                                std::uint64_t seed) {
  if (dim_out * dim_env < dim_in)
    throw std::invalid_argument("random_channel: output (x) environment smaller than input");
  const ComplexMatrix u = haar_random_unitary(dim_out * dim_env, seed);
  ComplexMatrix v(dim_out * dim_env, dim_in);
  for (std::size_t r = 0; r < v.rows(); ++r)
    for (std::size_t c = 0; c < dim_in; ++c) v(r, c) = u(r, c);
  return ChannelOp(std::move(v), dim_in, dim_out, dim_env);
}

//=========================================================================
// Masker-level capacity checks
//=========================================================================

/// e = C_EA of the masker's side channel; exactly-universal maskers give a
/// constant-output channel, hence e below the solver tolerance.
inline double erasure_capacity(const Masker& m, Side side, double tol = 1e-6) {
  return cea_capacity(erasure_channel(m, side), tol).value;
}

struct EmbeddingCapacity {
  std::size_t index = 0;
  char side = 'A';
  double probability = 0.0;
  double capacity = 0.0;  // C_EA of the subchannel
  double budget = 0.0;    // -log2 p_i
  double erasure = 0.0;   // e of the matching side
  double margin = 0.0;    // budget + erasure - capacity; negative = violation
  bool satisfied = true;
};

struct Theorem2Report {
  std::vector<EmbeddingCapacity> entries;
  double e_a = 0.0;
  double e_b = 0.0;
  double slack = 0.0;          // allowed numerical slack
  double worst_margin = 0.0;   // most negative margin over all entries
  bool all_satisfied = true;
};

/// For each embedding and each side, the subchannel capacity must fit within
/// the information budget -log2 p_i of its branch, up to the side's erasure
/// capacity e. Violations are findings in the report, not errors.
inline Theorem2Report theorem2_check(const Masker& m, double tol = 1e-6) {
  Theorem2Report report;
  report.slack = 1000.0 * tol;
  report.e_a = erasure_capacity(m, Side::A, tol);
  report.e_b = erasure_capacity(m, Side::B, tol);
  const std::vector<BipartiteEmbedding> embeddings = decompose_embeddings(m);
  report.entries.resize(2 * embeddings.size());
  parallel_for(report.entries.size(), [&](std::size_t slot) {
    const std::size_t i = slot / 2;
    const Side side = (slot % 2 == 0) ? Side::A : Side::B;
    EmbeddingCapacity entry;
    entry.index = i;
    entry.side = side == Side::A ? 'A' : 'B';
    entry.probability = embeddings[i].probability;
    entry.capacity = cea_capacity(embedding_channel(embeddings[i], side), tol).value;
    entry.budget = -std::log2(embeddings[i].probability);
    entry.erasure = side == Side::A ? report.e_a : report.e_b;
    entry.margin = entry.budget + entry.erasure - entry.capacity;
    entry.satisfied = entry.margin >= -report.slack;
    report.entries[slot] = std::move(entry);
  });
  report.worst_margin = std::numeric_limits<double>::infinity();
  for (const EmbeddingCapacity& e : report.entries) {
    report.worst_margin = std::min(report.worst_margin, e.margin);
    report.all_satisfied = report.all_satisfied && e.satisfied;
  }
  return report;
}

//=========================================================================
// Robust bounds: for imperfect masking with erasure capacity e, every flow
// level I_i is discounted to max(I_i - e, 0) before entering the bounds.
//=========================================================================

struct RobustBounds {
  double e = 0.0;
  double theorem3_adjusted = 0.0;
  double i1_adjusted = 0.0;
  std::vector<std::size_t> i1_subset;
  std::string i1_method;
};

inline RobustBounds robust_bounds(const FlowProfile& profile, double e) {
  if (e < 0.0) throw std::invalid_argument("robust_bounds: e must be nonnegative");
  RobustBounds out;
  out.e = e;
  if (e == 0.0) {
    // exact reproduction of the unadjusted quantities
    out.theorem3_adjusted = theorem3_bound(profile);
    SubsetMin sm = minimize_formal_entropy(detail::profile_levels(profile), &out.i1_method);
    out.i1_adjusted = sm.value;
    out.i1_subset = sm.subset;
    return out;
  }
  const double logd = std::log2(static_cast<double>(profile.dim_in));
  std::vector<double> adjusted;
  adjusted.reserve(profile.flows.size());
  double imbalance = 0.0;
  for (const EmbeddingFlow& f : profile.flows) {
    const double level = std::max(f.flow_max - e, 0.0);
    adjusted.push_back(level);
    imbalance += f.probability * std::max(level - logd, 0.0);
  }
  out.theorem3_adjusted = logd + imbalance;  // the log d floor survives any e
  SubsetMin sm = minimize_formal_entropy(adjusted, &out.i1_method);
  out.i1_adjusted = sm.value;
  out.i1_subset = sm.subset;
  return out;
}

}  // namespace maskforge
