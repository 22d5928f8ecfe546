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

// Acceptance suite: end-to-end checks of the numerical claims the library is
// built around, at desk scale (d <= 5). Prints one PASS/FAIL line per
// criterion and exits with the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "maskforge/bounds.hpp"
#include "maskforge/capacity.hpp"
#include "maskforge/conjecture.hpp"
#include "maskforge/masker.hpp"
#include "maskforge/states.hpp"
#include "maskforge/zoo.hpp"

using namespace maskforge;

namespace {

int failures = 0;

void criterion(int number, const std::string& title,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("[%s] %2d. %s (%s) [%.1fs]\n", ok ? "PASS" : "FAIL", number, title.c_str(),
              detail.c_str(), secs);
  std::fflush(stdout);
  if (!ok) ++failures;
}

ComplexMatrix random_isometry(std::size_t dim_in, std::size_t dim_out, std::uint64_t seed) {
  const ComplexMatrix u = haar_random_unitary(dim_out, seed);
  ComplexMatrix v(dim_out, dim_in);
  for (std::size_t r = 0; r < dim_out; ++r)
    for (std::size_t c = 0; c < dim_in; ++c) v(r, c) = u(r, c);
  return v;
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << x;
  return out.str();
}

}  // namespace

int main() {
  // 1. Information conservation: 100 random isometries per d in {2,3,4},
  //    5 probe states each, residual below 1e-9.
  criterion(1, "information conservation law", [](std::string& detail) {
    double worst = 0.0;
    for (std::size_t d : {2, 3, 4}) {
      for (int k = 0; k < 100; ++k) {
        const std::uint64_t seed = 10'000 + 131 * d + static_cast<std::uint64_t>(k);
        const ComplexMatrix v = random_isometry(d, 6, seed);
        Rng rng(seed ^ 0xabcdef);
        for (int s = 0; s < 5; ++s) {
          const PureState probe = random_pure_state({d, d}, {"R", "I"}, rng);
          worst = std::max(worst, conservation_check(v, 2, 3, probe));
        }
      }
    }
    detail = "max residual " + fmt(worst) + " over 1500 cases";
    return worst < 1e-9;
  });

  // 2. No-masking: trivial-safe-state maskers and the distribution masker all
  //    leak with marginal deviation at least 0.1.
  criterion(2, "no-masking corollary", [](std::string& detail) {
    double least = 1e300;
    for (std::size_t d = 2; d <= 5; ++d)
      least = std::min(least, verify_universal(build_identity_masker(d)).marginal_deviation);
    for (std::size_t d : {2, 3})
      least = std::min(least, verify_universal(build_distribution_masker(d)).marginal_deviation);
    for (int k = 0; k < 10; ++k) {
      const std::size_t d = 2 + (k % 2);
      const Masker m(random_isometry(d, 9, 20'000 + k),
                     DensityMatrix(ComplexMatrix::identity(1), {1}, {"S"}), d, 3, 3);
      least = std::min(least, verify_universal(m).marginal_deviation);
    }
    detail = "smallest observed deviation " + fmt(least);
    return least >= 0.1;
  });

  // 3. Pad saturation: R = 2 log2 d exactly, and the one-shot unevenness
  //    measure meets it.
  criterion(3, "one-time pad saturation", [](std::string& detail) {
    double worst = 0.0;
    for (std::size_t d : {2, 3}) {
      const Masker m = build_qotp(d);
      const double cost = randomness_cost(m);
      const double target = 2.0 * std::log2(static_cast<double>(d));
      const UnevennessResult i1 = unevenness_I1(decompose_embeddings(m));
      worst = std::max(worst, std::abs(cost - target));
      worst = std::max(worst, std::abs(i1.value - cost));
    }
    detail = "max |deviation| " + fmt(worst);
    return worst < 1e-9;
  });

  // 4. Odd-d family: universality, the closed-form cost, every lower bound
  //    below the cost, and the over-eager per-branch bound reproduced as a
  //    non-bound.
  criterion(4, "odd-d counterexample family", [](std::string& detail) {
    bool ok = true;
    std::ostringstream info;
    for (std::size_t d : {3, 5}) {
      const Masker m = build_odd_d(d);
      const double dd = static_cast<double>(d);
      const double cost = randomness_cost(m);
      const double closed = std::log2(dd + 1.0) + 2.0 / (dd + 1.0) * std::log2(dd);
      const MaskerReport report = verify_universal(m);
      const auto embeddings = decompose_embeddings(m);
      const FlowProfile profile = flow_profile(embeddings, maximally_entangled(d));
      const UnevennessResult i1 = unevenness_I1(embeddings);
      const double max_flow = max_embedding_flow(profile);
      ok = ok && report.is_universal && report.marginal_deviation < 1e-10;
      ok = ok && std::abs(cost - closed) < 1e-9;
      ok = ok && theorem1_bound(profile) <= cost + 1e-9;
      ok = ok && theorem3_bound(profile) <= cost + 1e-9;
      ok = ok && min_embedding_bound(profile) <= cost + 1e-9;
      ok = ok && i1.value <= cost + 2.0 * std::log2(dd) / dd + 1e-9;
      ok = ok && std::abs(max_flow - 2.0 * std::log2(dd)) < 1e-9 && max_flow > cost;
      if (d == 3)
        info << "d=3: R=" << cost << " thm1=" << theorem1_bound(profile)
             << " thm3=" << theorem3_bound(profile) << " I1=" << i1.value;
    }
    detail = info.str();
    return ok;
  });

  // 5. Capacity trade-off sweep at solver tolerance 1e-6, slack 1e-3;
  //    pad subchannels toward the data side saturate their budgets.
  criterion(5, "subchannel capacity trade-off", [](std::string& detail) {
    bool ok = true;
    double worst_margin = 1e300;
    double worst_saturation = 0.0;
    for (const Masker& m : {build_qotp(2), build_qotp(3), build_odd_d(3)}) {
      const Theorem2Report report = theorem2_check(m, 1e-6);
      ok = ok && report.all_satisfied;
      for (const EmbeddingCapacity& entry : report.entries)
        worst_margin = std::min(worst_margin, entry.margin);
    }
    for (std::size_t d : {2, 3}) {
      const Theorem2Report report = theorem2_check(build_qotp(d), 1e-6);
      for (const EmbeddingCapacity& entry : report.entries)
        if (entry.side == 'A')
          worst_saturation =
              std::max(worst_saturation, std::abs(entry.capacity - entry.budget));
    }
    detail = "worst margin " + fmt(worst_margin) + ", pad saturation gap " +
             fmt(worst_saturation);
    return ok && worst_margin >= -1e-3 && worst_saturation <= 1e-3;
  });

  // 6. Capacity solver versus the 20,000-sample Haar search on 20 random
  //    channels with input dimension at most 3.
  criterion(6, "capacity solver vs sampling oracle", [](std::string& detail) {
    double worst_gap = -1e300;
    bool ok = true;
    for (int k = 0; k < 20; ++k) {
      Rng pick(40'000 + static_cast<std::uint64_t>(k));
      const std::size_t din = 2 + (pick.next_u64() % 2);
      const std::size_t dout = 2 + (pick.next_u64() % 2);
      const std::size_t denv = 2 + (pick.next_u64() % 2);
      const ChannelOp ch = random_channel(din, dout, denv, 41'000 + k);
      const CapacityResult res = cea_capacity(ch, 1e-6);
      const double sampled = sampled_capacity_max(ch, 20'000, 42'000 + k);
      worst_gap = std::max(worst_gap, sampled - res.value);
      ok = ok && res.value >= sampled - 1e-3;
      ok = ok && res.value <= 2.0 * std::log2(static_cast<double>(din)) + 1e-9;
    }
    detail = "max (sampled - solver) " + fmt(worst_gap);
    return ok;
  });

  // 7. Disk-basis falsification: every random candidate basis yields a
  //    witness pair of maskable states with diagonal gap >= 0.05; the
  //    analytic qubit product basis reproduces gap 1/2.
  criterion(7, "disk-conjecture falsification", [](std::string& detail) {
    bool ok = true;
    double min_gap = 1e300;
    auto sweep = [&](std::size_t d, int trials, std::uint64_t base) {
      for (int t = 0; t < trials; ++t) {
        const ViolationWitness w = find_violation(random_candidate_basis(d, base + t));
        min_gap = std::min(min_gap, w.diagonal_gap);
        ok = ok && w.diagonal_gap >= 0.05;
        ok = ok && marginal_mixedness_deviation(w.state1) < 1e-10;
        ok = ok && marginal_mixedness_deviation(w.state2) < 1e-10;
      }
    };
    sweep(2, 50, 50'000);
    sweep(3, 20, 60'000);
    const ViolationWitness analytic =
        find_violation(CandidateBasis(2, ComplexMatrix::identity(4)));
    ok = ok && std::abs(analytic.diagonal_gap - 0.5) < 1e-9;
    detail = "min random gap " + fmt(min_gap) + ", analytic gap " +
             std::to_string(analytic.diagonal_gap);
    return ok;
  });

  // 8. Size theorem over the universal catalog at d <= 5.
  criterion(8, "masker size theorem sweep", [](std::string& detail) {
    double worst_margin = 1e300;
    bool ok = true;
    for (const ZooEntry& entry : zoo_catalog({2, 3, 4, 5}, 42, 0.0)) {
      const MaskerReport report = verify_universal(entry.masker);
      if (!report.is_universal) {
        ok = false;
        continue;
      }
      const double bound = std::log2(static_cast<double>(entry.masker.dim_in()));
      const double least = std::min({von_neumann_entropy(report.sigma_a),
                                     von_neumann_entropy(report.sigma_b),
                                     report.randomness_cost});
      worst_margin = std::min(worst_margin, least - bound);
      ok = ok && least >= bound - 1e-9;
    }
    detail = "smallest entropy margin " + fmt(worst_margin);
    return ok;
  });

  // 9. Secret sharing: singles blind, pairs recover the full 2 log2 d.
  criterion(9, "threshold secret shares", [](std::string& detail) {
    double worst = 0.0;
    for (const Masker& m : {build_qotp(2), build_odd_d(3)}) {
      const ThresholdShareReport rep = verify_threshold_shares(m);
      const double full = 2.0 * std::log2(static_cast<double>(m.dim_in()));
      worst = std::max({worst, std::abs(rep.info_ra), std::abs(rep.info_rb),
                        std::abs(rep.info_rk), std::abs(rep.info_rak - full),
                        std::abs(rep.info_rbk - full)});
    }
    detail = "max deviation " + fmt(worst);
    return worst < 1e-9;
  });

  // 10. Robustness: a 2% perturbed pad leaks a measurable e, and the
  //     discounted bounds hold with 1e-3 slack.
  criterion(10, "robust bounds under perturbation", [](std::string& detail) {
    const Masker wobbly = perturb(build_qotp(2), 0.02, 42);
    const double cost = randomness_cost(wobbly);
    const double e_a = erasure_capacity(wobbly, Side::A, 1e-6);
    const double e_b = erasure_capacity(wobbly, Side::B, 1e-6);
    const double e = std::max(e_a, e_b);
    const auto embeddings = decompose_embeddings(wobbly);
    const FlowProfile profile = flow_profile(embeddings, maximally_entangled(2));
    const RobustBounds rb = robust_bounds(profile, e);
    const double oneshot = cost + 2.0 * std::log2(2.0) / 2.0;
    detail = "e=" + fmt(e) + ", adj thm3 " + std::to_string(rb.theorem3_adjusted) +
             ", adj I1 " + std::to_string(rb.i1_adjusted);
    return e > 0.0 && rb.theorem3_adjusted <= cost + 1e-3 && rb.i1_adjusted <= oneshot + 1e-3;
  });

  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures;
}
