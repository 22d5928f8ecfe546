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
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "maskforge/masker.hpp"
#include "maskforge/states.hpp"

namespace maskforge {

//=========================================================================
// Flow profiles: per-embedding entropies and mutual informations at a probe
// state. Every randomness-cost bound in the library is a functional of one
// of these.
//=========================================================================

struct EmbeddingFlow {
  double probability = 0.0;
  double entropy_a = 0.0;  // S(A)_i, bits
  double entropy_b = 0.0;  // S(B)_i
  double info_a = 0.0;     // I(R:A)_i
  double info_b = 0.0;     // I(R:B)_i
  double flow_max = 0.0;   // I_i = max of the two
};

struct FlowProfile {
  std::vector<EmbeddingFlow> flows;
  std::size_t dim_in = 0;
  double entropy_r = 0.0;
  bool maxent_input = false;
  std::string input_descriptor;
  std::optional<PureState> probe;  // the input state the profile was taken at
};

namespace detail {

// Joint entropies are computed from the explicit two-party reduction while it
// stays desk-sized, so the conservation identity is genuinely exercised; past
// the cap the complementary cut of the pure state gives the same spectrum at
// a fraction of the cost.
constexpr std::size_t kHonestJointCap = 128;

inline double joint_entropy(const PureState& psi, const std::vector<std::string>& side) {
  std::size_t dim = 1;
  for (const std::string& l : side) dim *= psi.dims()[psi.subsystem_index(l)];
  if (dim <= kHonestJointCap) return von_neumann_entropy(psi.reduced_density(side));
  return entropy_of_cut(psi, side);
}

inline EmbeddingFlow flow_of_state(const PureState& psi, double probability,
                                   const std::vector<std::string>& labels_r,
                                   const std::vector<std::string>& labels_a,
                                   const std::vector<std::string>& labels_b) {
  EmbeddingFlow f;
  f.probability = probability;
  const double sr = von_neumann_entropy(psi.reduced_density(labels_r));
  f.entropy_a = von_neumann_entropy(psi.reduced_density(labels_a));
  f.entropy_b = von_neumann_entropy(psi.reduced_density(labels_b));
  std::vector<std::string> ra = labels_r, rb = labels_r;
  ra.insert(ra.end(), labels_a.begin(), labels_a.end());
  rb.insert(rb.end(), labels_b.begin(), labels_b.end());
  f.info_a = sr + f.entropy_a - joint_entropy(psi, ra);
  f.info_b = sr + f.entropy_b - joint_entropy(psi, rb);
  f.flow_max = std::max(f.info_a, f.info_b);
  return f;
}

inline bool is_maxent(const PureState& gamma) {
  if (gamma.dims().size() != 2 || gamma.dims()[0] != gamma.dims()[1]) return false;
  const std::size_t d = gamma.dims()[0];
  const double w = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t i = 0; i < d; ++i) {
      const cplx expect = (r == i) ? cplx(w, 0.0) : cplx(0.0, 0.0);
      if (std::abs(gamma.amplitudes()[r * d + i] - expect) > 1e-12) return false;
    }
  return true;
}

}  // namespace detail

/// Sends half of the probe state through every embedding and collects the
/// entropic bookkeeping of the resulting (R, A, B) pure states.
inline FlowProfile flow_profile(const std::vector<BipartiteEmbedding>& embeddings,
                                const PureState& gamma) {
  if (embeddings.empty()) throw std::invalid_argument("flow_profile: no embeddings");
  if (gamma.dims().size() != 2)
    throw std::invalid_argument("flow_profile: probe state must be bipartite");
  if (gamma.dims()[1] != embeddings.front().dim_in)
    throw std::invalid_argument("flow_profile: probe dimension does not match embeddings");

  const PureState probe(gamma.amplitudes(), gamma.dims(), {"R", "I"});
  FlowProfile profile;
  profile.dim_in = embeddings.front().dim_in;
  profile.entropy_r = von_neumann_entropy(probe.reduced_density({"R"}));
  profile.maxent_input = detail::is_maxent(probe);
  profile.input_descriptor = profile.maxent_input
                                 ? "maximally_entangled(d=" + std::to_string(profile.dim_in) + ")"
                                 : "explicit";
  profile.probe = probe;
  profile.flows.reserve(embeddings.size());
  for (const BipartiteEmbedding& emb : embeddings) {
    const PureState psi = apply_isometry(probe, {"I"}, emb.isometry, {emb.dim_a, emb.dim_b},
                                         {"A", "B"});
    profile.flows.push_back(
        detail::flow_of_state(psi, emb.probability, {"R"}, {"A"}, {"B"}));
  }
  return profile;
}

//=========================================================================
// Bounds read off a profile
//=========================================================================

/// Average information flow, maximized over the receiving side.
inline double theorem1_bound(const FlowProfile& profile) {
  double to_a = 0.0, to_b = 0.0;
  for (const EmbeddingFlow& f : profile.flows) {
    to_a += f.probability * f.info_a;
    to_b += f.probability * f.info_b;
  }
  return std::max(to_a, to_b);
}

/// log2 d plus the average absolute flow imbalance.
inline double theorem3_bound(const FlowProfile& profile) {
  double imbalance = 0.0;
  for (const EmbeddingFlow& f : profile.flows)
    imbalance += f.probability * std::abs(f.entropy_a - f.entropy_b);
  return std::log2(static_cast<double>(profile.dim_in)) + imbalance;
}

inline double min_embedding_bound(const FlowProfile& profile) {
  double m = std::numeric_limits<double>::infinity();
  for (const EmbeddingFlow& f : profile.flows) m = std::min(m, f.flow_max);
  return m;
}

/// Largest single-embedding flow. Reported alongside the bounds; it is NOT a
/// lower bound on the randomness cost (the odd-d family exceeds its cost
/// here), which is the whole point of tracking it.
inline double max_embedding_flow(const FlowProfile& profile) {
  double m = 0.0;
  for (const EmbeddingFlow& f : profile.flows) m = std::max(m, f.flow_max);
  return m;
}

//=========================================================================
// Unevenness measure: the subset-minimized formal entropy of {2^-I_i},
// maximized over probe states. Larger when information flow is more
// lopsided; always sandwiched between log d and 2(1+1/d) log d.
//=========================================================================

struct SubsetMin {
  double value = 0.0;
  std::vector<std::size_t> subset;  // original indices, ascending
};

namespace detail {

constexpr double kSubsetTol = 1e-9;

inline std::vector<double> subset_weights(const std::vector<double>& levels) {
  std::vector<double> w(levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i)
    w[i] = std::exp2(-std::max(levels[i], 0.0));  // clamp -1e-12 noise
  return w;
}

/// Admissible subsets carry total weight >= 1 while some member could be
/// dropped without the rest exceeding 1.
inline bool admissible(double sum, double max_weight) {
  return sum >= 1.0 - kSubsetTol && sum - max_weight <= 1.0 + kSubsetTol;
}

inline std::vector<std::size_t> sorted_by_level(const std::vector<double>& levels) {
  std::vector<std::size_t> idx(levels.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return levels[a] < levels[b]; });
  return idx;
}

}  // namespace detail

/// Greedy assignment: take indices in ascending level order until the weights
/// reach 1. The last index taken is always removable.
inline SubsetMin minimize_formal_entropy_greedy(const std::vector<double>& levels) {
  const auto weights = detail::subset_weights(levels);
  const auto order = detail::sorted_by_level(levels);
  SubsetMin out;
  double sum = 0.0;
  for (std::size_t i : order) {
    out.subset.push_back(i);
    sum += weights[i];
    out.value += weights[i] * std::max(levels[i], 0.0);
    if (sum >= 1.0 - detail::kSubsetTol) break;
  }
  if (sum < 1.0 - detail::kSubsetTol)
    throw std::invalid_argument(
        "unevenness: total weight below 1, no admissible subset (malformed input)");
  std::sort(out.subset.begin(), out.subset.end());
  return out;
}

/// Exact branch-and-bound over subsets. Indices are explored in ascending
/// level order; a branch dies as soon as its partial entropy meets the
/// incumbent or its remaining weight cannot reach 1.
inline SubsetMin minimize_formal_entropy_exact(const std::vector<double>& levels) {
  const auto weights = detail::subset_weights(levels);
  const auto order = detail::sorted_by_level(levels);
  const std::size_t n = levels.size();
  std::vector<double> suffix(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + weights[order[i]];
  if (suffix[0] < 1.0 - detail::kSubsetTol)
    throw std::invalid_argument(
        "unevenness: total weight below 1, no admissible subset (malformed input)");

  SubsetMin best = minimize_formal_entropy_greedy(levels);
  std::vector<std::size_t> chosen;
  // max_weight of the current chosen set is its first element: order is by
  // ascending level, hence descending weight.
  std::function<void(std::size_t, double, double)> walk = [&](std::size_t k, double sum,
                                                              double entropy) {
    if (sum >= 1.0 - detail::kSubsetTol) {
      const double max_w = chosen.empty() ? 0.0 : weights[chosen.front()];
      if (detail::admissible(sum, max_w) && entropy < best.value) {
        best.value = entropy;
        best.subset = chosen;
        std::sort(best.subset.begin(), best.subset.end());
      }
      return;  // supersets only grow the entropy and break removability
    }
    if (k == n || sum + suffix[k] < 1.0 - detail::kSubsetTol) return;
    // Any completion must raise the weight to 1, and every candidate left
    // carries at least levels[order[k]] entropy per unit weight.
    const double completion_floor =
        entropy + (1.0 - sum) * std::max(levels[order[k]], 0.0);
    if (completion_floor >= best.value - 1e-15) return;
    const std::size_t i = order[k];
    chosen.push_back(i);
    walk(k + 1, sum + weights[i], entropy + weights[i] * std::max(levels[i], 0.0));
    chosen.pop_back();
    walk(k + 1, sum, entropy);
  };
  walk(0, 0.0, 0.0);
  return best;
}

/// Exact search up to 24 indices; greedy beyond. The greedy route mirrors the
/// probability assignment that proves the one-shot bound, and the exact
/// search certifies it at desk scale.
inline SubsetMin minimize_formal_entropy(const std::vector<double>& levels,
                                         std::string* method = nullptr) {
  if (levels.size() <= 24) {
    if (method) *method = "exact-subset";
    return minimize_formal_entropy_exact(levels);
  }
  if (method) *method = "greedy";
  return minimize_formal_entropy_greedy(levels);
}

enum class GammaMode { maxent, search };

struct UnevennessOptions {
  GammaMode gamma = GammaMode::maxent;
  std::uint64_t seed = 42;
  int restarts = 20;
  int iterations = 500;
  double simplex_tol = 1e-7;
  std::optional<PureState> input_state;  // overrides the default probe
};

struct UnevennessResult {
  double value = 0.0;  // bits
  std::vector<std::size_t> chosen_subset;
  std::string input_state_descriptor;
  std::string method;        // "exact-subset" | "greedy"
  std::string gamma_search;  // "fixed" | "optimized"
};

namespace detail {

inline std::vector<double> profile_levels(const FlowProfile& profile) {
  std::vector<double> levels;
  levels.reserve(profile.flows.size());
  for (const EmbeddingFlow& f : profile.flows) levels.push_back(std::max(f.flow_max, 0.0));
  return levels;
}

/// Cheap I_i evaluation for the probe search: entropies through the smaller
/// side of each cut of the pure (R, A, B) state.
inline std::vector<double> fast_levels(const std::vector<BipartiteEmbedding>& embeddings,
                                       const PureState& gamma) {
  const PureState probe(gamma.amplitudes(), gamma.dims(), {"R", "I"});
  const double sr = von_neumann_entropy(probe.reduced_density({"R"}));
  std::vector<double> levels;
  levels.reserve(embeddings.size());
  for (const BipartiteEmbedding& emb : embeddings) {
    const PureState psi = apply_isometry(probe, {"I"}, emb.isometry, {emb.dim_a, emb.dim_b},
                                         {"A", "B"});
    const double sa = von_neumann_entropy(psi.reduced_density({"A"}));
    const double sb = von_neumann_entropy(psi.reduced_density({"B"}));
    // pure (R,A,B): S(RA) = S(B), S(RB) = S(A)
    const double ia = sr + sa - sb;
    const double ib = sr + sb - sa;
    levels.push_back(std::max(0.0, std::max(ia, ib)));
  }
  return levels;
}

inline PureState default_probe(std::size_t dim_in) {
  if (dim_in >= 2) return maximally_entangled(dim_in);
  return PureState({cplx(1.0, 0.0)}, {1, 1}, {"R", "I"});
}

// Probe parametrization for the search: Schmidt weights through a softmax,
// composed with a local unitary exp(iG) on the I side.
inline PureState probe_from_params(std::size_t d, const std::vector<double>& params) {
  std::vector<double> mu(d);
  double z = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double x = (k + 1 < d) ? params[k] : 0.0;
    mu[k] = std::exp(std::min(x, 40.0));
    z += mu[k];
  }
  for (double& m : mu) m /= z;
  ComplexMatrix gen(d, d);
  std::size_t at = d - 1;
  for (std::size_t i = 0; i < d; ++i) gen(i, i) = params[at++];
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const double re = params[at++];
      const double im = params[at++];
      gen(i, j) = cplx(re, im);
      gen(j, i) = cplx(re, -im);
    }
  const ComplexMatrix u = expm_hermitian_times(gen, cplx(0.0, 1.0), 1e-8);
  std::vector<cplx> amps(d * d, 0.0);
  for (std::size_t r = 0; r < d; ++r) {
    const double s = std::sqrt(mu[r]);
    for (std::size_t i = 0; i < d; ++i) amps[r * d + i] = s * u(i, r);
  }
  double norm2 = 0.0;
  for (const cplx& a : amps) norm2 += std::norm(a);
  const double inv = 1.0 / std::sqrt(norm2);
  for (cplx& a : amps) a *= inv;
  return PureState(std::move(amps), {d, d}, {"R", "I"});
}

/// Plain Nelder-Mead minimizer; returns the best point found.
inline std::vector<double> nelder_mead_minimize(
    const std::function<double(const std::vector<double>&)>& f, std::vector<double> start,
    double step, int max_iters, double tol) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> pts(n + 1, start);
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
  for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  auto order = [&] {
    std::vector<std::size_t> idx(n + 1);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return vals[a] < vals[b];
    });
    std::vector<std::vector<double>> p2(n + 1);
    std::vector<double> v2(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      p2[i] = pts[idx[i]];
      v2[i] = vals[idx[i]];
    }
    pts.swap(p2);
    vals.swap(v2);
  };

  for (int iter = 0; iter < max_iters; ++iter) {
    order();
    if (vals[n] - vals[0] < tol) break;
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / static_cast<double>(n);
    auto blend = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t k = 0; k < n; ++k) p[k] = centroid[k] + t * (pts[n][k] - centroid[k]);
      return p;
    };
    const auto reflected = blend(-1.0);
    const double fr = f(reflected);
    if (fr < vals[0]) {
      const auto expanded = blend(-2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        pts[n] = expanded;
        vals[n] = fe;
      } else {
        pts[n] = reflected;
        vals[n] = fr;
      }
    } else if (fr < vals[n - 1]) {
      pts[n] = reflected;
      vals[n] = fr;
    } else {
      const auto contracted = blend(0.5);
      const double fc = f(contracted);
      if (fc < vals[n]) {
        pts[n] = contracted;
        vals[n] = fc;
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          for (std::size_t k = 0; k < n; ++k) pts[i][k] = 0.5 * (pts[i][k] + pts[0][k]);
          vals[i] = f(pts[i]);
        }
      }
    }
  }
  order();
  return pts[0];
}

}  // namespace detail

/// Subset-minimized formal entropy of {2^-I_i} at the configured probe.
/// With the search enabled the result is the best of the default probe and
/// every restart; any search output is a certified lower bound on the
/// probe-maximized measure.
inline UnevennessResult unevenness_I1(const std::vector<BipartiteEmbedding>& embeddings,
                                      const UnevennessOptions& options = {}) {
  if (embeddings.empty()) throw std::invalid_argument("unevenness_I1: no embeddings");
  const std::size_t d = embeddings.front().dim_in;

  const PureState base_probe =
      options.input_state ? *options.input_state : detail::default_probe(d);
  const FlowProfile base = flow_profile(embeddings, base_probe);

  UnevennessResult out;
  std::string method;
  SubsetMin sm = minimize_formal_entropy(detail::profile_levels(base), &method);
  out.value = sm.value;
  out.chosen_subset = sm.subset;
  out.method = method;
  out.input_state_descriptor = base.input_descriptor;
  out.gamma_search = "fixed";
  if (options.gamma != GammaMode::search || d < 2) return out;

  // Random-restart Nelder-Mead over Schmidt weights composed with local
  // unitaries; Nelder-Mead minimizes, the measure maximizes, hence the sign.
  const std::size_t nparams = (d - 1) + d * d;
  Rng rng(options.seed);
  auto objective = [&](const std::vector<double>& params) {
    const PureState probe = detail::probe_from_params(d, params);
    const auto levels = detail::fast_levels(embeddings, probe);
    try {
      return -minimize_formal_entropy_greedy(levels).value;
    } catch (const std::invalid_argument&) {
      return 1e6;  // infeasible probe: all weight short of 1
    }
  };
  std::vector<double> best_params;
  double best_val = -1e300;
  for (int r = 0; r < options.restarts; ++r) {
    std::vector<double> start(nparams);
    for (double& x : start) x = rng.uniform(-1.0, 1.0);
    const auto found = detail::nelder_mead_minimize(objective, start, 0.4, options.iterations,
                                                    options.simplex_tol);
    const double val = -objective(found);
    if (val > best_val) {
      best_val = val;
      best_params = found;
    }
  }
  if (!best_params.empty() && best_val > out.value) {
    const PureState probe = detail::probe_from_params(d, best_params);
    const FlowProfile searched = flow_profile(embeddings, probe);
    SubsetMin refined = minimize_formal_entropy(detail::profile_levels(searched), &method);
    if (refined.value > out.value) {
      out.value = refined.value;
      out.chosen_subset = refined.subset;
      out.method = method;
      out.input_state_descriptor =
          "searched(seed=" + std::to_string(options.seed) +
          ", restarts=" + std::to_string(options.restarts) + ")";
    }
  }
  out.gamma_search = "optimized";
  return out;
}

//=========================================================================
// Tensor-power estimate of the regularized measure
//=========================================================================

struct IinfEstimate {
  double value = 0.0;    // (1/n) I1 of the n-fold family
  int n = 1;
  double band_lo = 0.0;  // a-priori log d
  double band_hi = 0.0;  // a-priori 2 log d
  double clamped = 0.0;
  std::string method;
};

inline IinfEstimate unevenness_Iinf_estimate(const std::vector<BipartiteEmbedding>& embeddings,
                                             int n) {
  if (n != 1 && n != 2)
    throw std::invalid_argument("unevenness_Iinf_estimate: n must be 1 or 2");
  if (embeddings.empty())
    throw std::invalid_argument("unevenness_Iinf_estimate: no embeddings");
  const std::size_t d = embeddings.front().dim_in;
  IinfEstimate est;
  est.n = n;
  est.band_lo = std::log2(static_cast<double>(d));
  est.band_hi = 2.0 * est.band_lo;

  std::vector<double> levels;
  if (n == 1) {
    const UnevennessResult one = unevenness_I1(embeddings);
    est.value = one.value;
    est.method = one.method;
    est.clamped = std::clamp(est.value, est.band_lo, est.band_hi);
    return est;
  }

  // Two-fold family on the doubled input: probe |Gamma_{d^2}> factors across
  // the pair, so both halves are driven together.
  const std::size_t d2 = d * d;
  std::vector<cplx> amps(d2 * d2, 0.0);
  const double w = 1.0 / static_cast<double>(d);
  for (std::size_t i1 = 0; i1 < d; ++i1)
    for (std::size_t i2 = 0; i2 < d; ++i2) {
      const std::size_t r = i1 * d + i2;
      amps[r * d2 + i1 * d + i2] = w;
    }
  const PureState probe(std::move(amps), {d2, d, d}, {"R", "I1", "I2"});

  std::vector<double> probs;
  for (const BipartiteEmbedding& first : embeddings) {
    const PureState half = apply_isometry(probe, {"I1"}, first.isometry,
                                          {first.dim_a, first.dim_b}, {"A1", "B1"});
    for (const BipartiteEmbedding& second : embeddings) {
      const PureState full = apply_isometry(half, {"I2"}, second.isometry,
                                            {second.dim_a, second.dim_b}, {"A2", "B2"});
      const EmbeddingFlow f = detail::flow_of_state(
          full, first.probability * second.probability, {"R"}, {"A1", "A2"}, {"B1", "B2"});
      levels.push_back(std::max(f.flow_max, 0.0));
      probs.push_back(f.probability);
    }
  }
  const SubsetMin sm = minimize_formal_entropy(levels, &est.method);
  est.value = 0.5 * sm.value;
  est.clamped = std::clamp(est.value, est.band_lo, est.band_hi);
  return est;
}

//=========================================================================
// Conservation residual and the scrambling-consistency helper
//=========================================================================

/// |2 S(R) - I(R:A) - I(R:B)| for an isometry applied to half of a bipartite
/// pure state, with every entropy taken from an explicit reduction.
inline double conservation_check(const ComplexMatrix& isometry, std::size_t dim_a,
                                 std::size_t dim_b, const PureState& gamma) {
  if (gamma.dims().size() != 2)
    throw std::invalid_argument("conservation_check: probe state must be bipartite");
  const std::size_t din = gamma.dims()[1];
  if (isometry.cols() != din || isometry.rows() != dim_a * dim_b)
    throw std::invalid_argument("conservation_check: isometry shape mismatch");
  const ComplexMatrix gram = isometry.adjoint() * isometry;
  if ((gram - ComplexMatrix::identity(din)).sup_norm() > 1e-10)
    throw std::invalid_argument("conservation_check: input is not an isometry");

  const PureState probe(gamma.amplitudes(), gamma.dims(), {"R", "I"});
  const PureState psi = apply_isometry(probe, {"I"}, isometry, {dim_a, dim_b}, {"A", "B"});
  const double sr = von_neumann_entropy(psi.reduced_density({"R"}));
  const double info_a = mutual_information(psi, {"R"}, {"A"});
  const double info_b = mutual_information(psi, {"R"}, {"B"});
  return std::abs(2.0 * sr - info_a - info_b);
}

/// One arithmetic inequality: a reflection-capacity lower bound must fit
/// inside the participating fraction of the entanglement entropy.
inline bool scrambling_consistency(double i_inf_lower, double c, double s_t) {
  if (i_inf_lower < 0.0 || s_t < 0.0 || c < 0.0 || c > 1.0)
    throw std::invalid_argument("scrambling_consistency: inputs out of range");
  return i_inf_lower <= c * s_t;
}

}  // namespace maskforge
