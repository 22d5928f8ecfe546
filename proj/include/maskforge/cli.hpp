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

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "maskforge/bounds.hpp"
#include "maskforge/capacity.hpp"
#include "maskforge/conjecture.hpp"
#include "maskforge/masker.hpp"
#include "maskforge/parallel.hpp"
#include "maskforge/serialize.hpp"
#include "maskforge/zoo.hpp"

namespace maskforge {

// Exit contract: 0 when every asserted inequality holds within tolerance,
// 2 on a bound violation (the offending quantity lands in the report),
// 1 on malformed input. Reports are the data contract; every numeric field
// is present in every row, with explicit nulls for absent computations.

struct RunConfig {
  std::string command;  // verify | bounds | capacity | conjecture | zoo | all
  std::string input_path;
  std::string output_path;
  std::string zoo_name;
  std::size_t d = 2;
  std::vector<std::size_t> d_list{2, 3};
  double eps = 0.0;
  std::uint64_t seed = 42;
  double tol = -1.0;  // negative: per-command default
  std::string gamma = "maxent";
  int n = 1;
  int trials = 50;
  std::string side = "both";
  std::string format = "json";
  bool quiet = false;
};

namespace cli_detail {

constexpr double kBoundTol = 1e-9;

inline void emit(const RunConfig& cfg, const std::string& line) {
  if (!cfg.quiet) std::cout << line << "\n";
}

inline json shares_to_json(const ThresholdShareReport& shares) {
  return json{{"I_RA", shares.info_ra},   {"I_RB", shares.info_rb},
              {"I_RK", shares.info_rk},   {"I_RAK", shares.info_rak},
              {"I_RBK", shares.info_rbk}, {"hidden_from_singles", shares.hidden_from_singles},
              {"pairs_recover", shares.pairs_recover}};
}

inline json profile_table(const FlowProfile& profile) {
  json table = json::array();
  for (std::size_t i = 0; i < profile.flows.size(); ++i) {
    const EmbeddingFlow& f = profile.flows[i];
    table.push_back(json{{"i", i},
                         {"p", f.probability},
                         {"S_A", f.entropy_a},
                         {"S_B", f.entropy_b},
                         {"I_RA", f.info_a},
                         {"I_RB", f.info_b},
                         {"I_i", f.flow_max}});
  }
  return table;
}

}  // namespace cli_detail

//=========================================================================
// Report builders (pure; the run() driver handles files and exit codes)
//=========================================================================

inline json verify_report(const Masker& m, double tol, bool* ok) {
  const MaskerReport report = verify_universal(m, tol);
  const auto embeddings = decompose_embeddings(m);
  json out{
      {"universal", report.is_universal},
      {"marginal_deviation", report.marginal_deviation},
      {"tolerance", tol},
      {"randomness_cost", report.randomness_cost},
      {"embedding_count", report.embedding_count},
      {"orthogonal_images", verify_orthogonal_images(embeddings)},
      {"sigma_A", density_to_json(report.sigma_a)},
      {"sigma_B", density_to_json(report.sigma_b)},
      {"fact1", nullptr},
      {"threshold_shares", cli_detail::shares_to_json(verify_threshold_shares(m))},
  };
  if (report.is_universal) out["fact1"] = check_fact1(m, tol);
  *ok = report.is_universal;
  return out;
}

inline json bounds_report(const Masker& m, const std::string& gamma, int n,
                          std::uint64_t seed, bool* ok) {
  const MaskerReport verify = verify_universal(m);
  const auto embeddings = decompose_embeddings(m);
  const FlowProfile profile = flow_profile(embeddings, maximally_entangled(m.dim_in()));
  const double cost = verify.randomness_cost;
  const double thm1 = theorem1_bound(profile);
  const double thm3 = theorem3_bound(profile);
  const double min_emb = min_embedding_bound(profile);
  const double max_emb = max_embedding_flow(profile);

  UnevennessOptions opts;
  opts.seed = seed;
  const UnevennessResult i1 = unevenness_I1(embeddings, opts);
  json i1_search = nullptr;
  if (gamma == "search") {
    UnevennessOptions search = opts;
    search.gamma = GammaMode::search;
    const UnevennessResult searched = unevenness_I1(embeddings, search);
    i1_search = json{{"value", searched.value},
                     {"input", searched.input_state_descriptor},
                     {"method", searched.method}};
  }
  const IinfEstimate iinf = unevenness_Iinf_estimate(embeddings, n);

  const double d_in = static_cast<double>(m.dim_in());
  const double logd = std::log2(d_in);
  const double oneshot_slack = 2.0 * logd / d_in;
  json violations = json::array();
  if (verify.is_universal) {
    auto check = [&](const char* name, double lhs, double rhs) {
      if (lhs > rhs + cli_detail::kBoundTol)
        violations.push_back(json{{"bound", name}, {"value", lhs}, {"limit", rhs}});
    };
    check("theorem1", thm1, cost);
    check("theorem3", thm3, cost);
    check("min_embedding", min_emb, cost);
    check("I1_oneshot", i1.value, cost + oneshot_slack);
    check("I1_band_high", i1.value, 2.0 * (1.0 + 1.0 / d_in) * logd);
    check("I1_band_low", logd, i1.value + 2.0 * cli_detail::kBoundTol);
  }
  *ok = violations.empty();

  return json{
      {"R", cost},
      {"universal", verify.is_universal},
      {"theorem1", thm1},
      {"theorem3", thm3},
      {"I1", i1.value},
      {"I1_subset", i1.chosen_subset},
      {"I1_method", i1.method},
      {"I1_input", i1.input_state_descriptor},
      {"I1_search", i1_search},
      {"Iinf_estimate", iinf.value},
      {"Iinf_n", iinf.n},
      {"Iinf_band", json::array({iinf.band_lo, iinf.band_hi})},
      {"min_embedding", min_emb},
      {"max_embedding", max_emb},
      {"gamma", gamma},
      {"per_embedding", cli_detail::profile_table(profile)},
      {"violations", violations},
  };
}

inline json capacity_report(const Masker& m, const std::string& side, double tol, bool* ok) {
  const Theorem2Report report = theorem2_check(m, tol);
  json entries = json::array();
  for (const EmbeddingCapacity& e : report.entries) {
    if (side != "both" && side != std::string(1, e.side)) continue;
    entries.push_back(json{{"i", e.index},
                           {"side", std::string(1, e.side)},
                           {"p", e.probability},
                           {"C_EA", e.capacity},
                           {"budget", e.budget},
                           {"e", e.erasure},
                           {"margin", e.margin},
                           {"satisfied", e.satisfied}});
  }
  bool all = true;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& e : entries) {
    all = all && e.at("satisfied").get<bool>();
    worst = std::min(worst, e.at("margin").get<double>());
  }
  *ok = all;
  return json{{"tol", tol},           {"slack", report.slack},
              {"e_A", report.e_a},    {"e_B", report.e_b},
              {"side", side},         {"worst_margin", worst},
              {"all_satisfied", all}, {"per_embedding", entries}};
}

inline json conjecture_report(std::size_t d, int trials, std::uint64_t seed, bool* ok) {
  json witnesses = json::array();
  bool all = true;
  for (int t = 0; t < trials; ++t) {
    const CandidateBasis basis = random_candidate_basis(d, seed + static_cast<std::uint64_t>(t));
    json row{{"trial", t}, {"found", false}};
    try {
      const ViolationWitness w = find_violation(basis);
      const double mix_dev = std::max(marginal_mixedness_deviation(w.state1),
                                      marginal_mixedness_deviation(w.state2));
      row["found"] = true;
      row["branch"] = w.branch;
      row["diagonal_gap"] = w.diagonal_gap;
      row["basis_index"] = w.basis_index;
      row["marginal_deviation"] = mix_dev;
      row["maskable"] = mix_dev < 1e-10;
      row["state1"] = pure_to_json(w.state1);
      row["state2"] = pure_to_json(w.state2);
      all = all && mix_dev < 1e-10;
    } catch (const std::runtime_error& e) {
      row["error"] = e.what();
      all = false;
    }
    witnesses.push_back(std::move(row));
  }
  *ok = all;
  return json{{"d", d}, {"trials", trials}, {"seed", seed}, {"all_passed", all},
              {"witnesses", witnesses}};
}

//=========================================================================
// Full suite
//=========================================================================

inline json run_all_summary(const std::vector<std::size_t>& ds, std::uint64_t seed, bool* ok) {
  const std::vector<ZooEntry> entries = zoo_catalog(ds, seed);
  std::vector<json> rows(entries.size());
  std::vector<char> row_ok(entries.size(), 1);

  parallel_for(entries.size(), [&](std::size_t idx) {
    const ZooEntry& entry = entries[idx];
    const Masker& m = entry.masker;
    const double logd = std::log2(static_cast<double>(m.dim_in()));
    const double oneshot = 2.0 * logd / static_cast<double>(m.dim_in());

    const MaskerReport verify = verify_universal(m);
    const auto embeddings = decompose_embeddings(m);
    const FlowProfile profile = flow_profile(embeddings, maximally_entangled(m.dim_in()));
    const double thm1 = theorem1_bound(profile);
    const double thm3 = theorem3_bound(profile);
    const UnevennessResult i1 = unevenness_I1(embeddings);
    const double min_emb = min_embedding_bound(profile);
    const double max_emb = max_embedding_flow(profile);
    const Theorem2Report thm2 = theorem2_check(m);
    const ThresholdShareReport shares = verify_threshold_shares(m);

    json row{
        {"name", entry.name},
        {"d", entry.d},
        {"eps", entry.eps},
        {"universal", verify.is_universal},
        {"marginal_deviation", verify.marginal_deviation},
        {"R", verify.randomness_cost},
        {"expected_R", entry.expected_cost},
        {"fact1", nullptr},
        {"theorem1", thm1},
        {"theorem3", thm3},
        {"I1", i1.value},
        {"min_embedding", min_emb},
        {"max_embedding", max_emb},
        {"thm2_worst_slack", thm2.worst_margin},
        {"e_A", thm2.e_a},
        {"e_B", thm2.e_b},
        {"I_RA", shares.info_ra},
        {"I_RB", shares.info_rb},
        {"I_RK", shares.info_rk},
        {"I_RAK", shares.info_rak},
        {"I_RBK", shares.info_rbk},
        {"robust_theorem3", nullptr},
        {"robust_I1", nullptr},
    };

    bool good = thm2.all_satisfied;
    if (verify.is_universal) {
      const bool fact1 = check_fact1(m);
      row["fact1"] = fact1;
      good = good && fact1;
      good = good && thm1 <= verify.randomness_cost + cli_detail::kBoundTol;
      good = good && thm3 <= verify.randomness_cost + cli_detail::kBoundTol;
      good = good && min_emb <= verify.randomness_cost + cli_detail::kBoundTol;
      good = good && i1.value <= verify.randomness_cost + oneshot + cli_detail::kBoundTol;
      good = good && shares.hidden_from_singles && shares.pairs_recover;
    } else if (entry.eps > 0.0) {
      // Imperfect masking: the bounds survive with every level discounted by
      // the erasure capacity, at the capacity solver's slack.
      const double e = std::max(thm2.e_a, thm2.e_b);
      const RobustBounds robust = robust_bounds(profile, e);
      row["robust_theorem3"] = robust.theorem3_adjusted;
      row["robust_I1"] = robust.i1_adjusted;
      good = good && robust.theorem3_adjusted <= verify.randomness_cost + 1e-3;
      good = good && robust.i1_adjusted <= verify.randomness_cost + oneshot + 1e-3;
    }
    row["ok"] = good;
    rows[idx] = std::move(row);
    row_ok[idx] = good ? 1 : 0;
  });

  bool all = true;
  json out_rows = json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    all = all && row_ok[i];
    out_rows.push_back(std::move(rows[i]));
  }
  *ok = all;
  json dims = json::array();
  for (std::size_t d : ds) dims.push_back(d);
  return json{{"seed", seed}, {"d", dims}, {"all_ok", all}, {"rows", out_rows}};
}

/// Flat CSV mirror of the summary table; JSON stays authoritative.
inline std::string summary_to_csv(const json& summary) {
  static const std::vector<std::string> columns{
      "name", "d",   "eps", "universal", "marginal_deviation",
      "R",    "fact1", "theorem1", "theorem3", "I1",
      "min_embedding", "max_embedding", "thm2_worst_slack", "e_A", "e_B",
      "I_RA", "I_RB", "I_RK", "I_RAK", "I_RBK",
      "robust_theorem3", "robust_I1", "ok"};
  std::ostringstream out;
  for (std::size_t c = 0; c < columns.size(); ++c)
    out << columns[c] << (c + 1 < columns.size() ? "," : "\n");
  for (const json& row : summary.at("rows")) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const json& cell = row.at(columns[c]);
      if (!cell.is_null()) out << cell.dump();
      out << (c + 1 < columns.size() ? "," : "\n");
    }
  }
  return out.str();
}

//=========================================================================
// Driver
//=========================================================================

inline int run(const RunConfig& cfg) {
  try {
    bool ok = true;
    json report;

    if (cfg.command == "zoo") {
      Masker m = build_zoo(cfg.zoo_name, cfg.d);
      if (cfg.eps > 0.0) m = perturb(m, cfg.eps, cfg.seed);
      if (cfg.output_path.empty())
        throw std::invalid_argument("zoo build: output path required (-o)");
      save_json(cfg.output_path, masker_to_json(m));
      cli_detail::emit(cfg, "wrote " + cfg.zoo_name + "(d=" + std::to_string(cfg.d) +
                                ") to " + cfg.output_path);
      return 0;
    }

    if (cfg.command == "verify") {
      const Masker m = load_masker(cfg.input_path);
      const double tol = cfg.tol > 0.0 ? cfg.tol : 1e-10;
      report = verify_report(m, tol, &ok);
      cli_detail::emit(cfg, std::string("universal: ") + (ok ? "true" : "false") +
                                ", deviation: " +
                                std::to_string(report.at("marginal_deviation").get<double>()) +
                                ", R: " +
                                std::to_string(report.at("randomness_cost").get<double>()));
    } else if (cfg.command == "bounds") {
      const Masker m = load_masker(cfg.input_path);
      report = bounds_report(m, cfg.gamma, cfg.n, cfg.seed, &ok);
      cli_detail::emit(cfg, "R=" + std::to_string(report.at("R").get<double>()) +
                                " thm1=" + std::to_string(report.at("theorem1").get<double>()) +
                                " thm3=" + std::to_string(report.at("theorem3").get<double>()) +
                                " I1=" + std::to_string(report.at("I1").get<double>()));
    } else if (cfg.command == "capacity") {
      const Masker m = load_masker(cfg.input_path);
      const double tol = cfg.tol > 0.0 ? cfg.tol : 1e-6;
      if (cfg.side != "A" && cfg.side != "B" && cfg.side != "both")
        throw std::invalid_argument("capacity: side must be A, B or both");
      report = capacity_report(m, cfg.side, tol, &ok);
      cli_detail::emit(cfg, "e_A=" + std::to_string(report.at("e_A").get<double>()) +
                                " e_B=" + std::to_string(report.at("e_B").get<double>()) +
                                " worst_margin=" +
                                std::to_string(report.at("worst_margin").get<double>()));
    } else if (cfg.command == "conjecture") {
      if (cfg.d != 2 && cfg.d != 3)
        throw std::invalid_argument("conjecture: d must be 2 or 3");
      report = conjecture_report(cfg.d, cfg.trials, cfg.seed, &ok);
      cli_detail::emit(cfg, std::string("witnesses found for ") +
                                std::to_string(cfg.trials) + " trials: " +
                                (ok ? "all" : "NOT all"));
    } else if (cfg.command == "all") {
      report = run_all_summary(cfg.d_list, cfg.seed, &ok);
      cli_detail::emit(cfg, std::string("suite rows: ") +
                                std::to_string(report.at("rows").size()) +
                                ", all_ok: " + (ok ? "true" : "false"));
    } else {
      throw std::invalid_argument("unknown command: " + cfg.command);
    }

    if (!cfg.output_path.empty()) {
      if (cfg.command == "all" && cfg.format == "csv") {
        std::ofstream out(cfg.output_path);
        if (!out) throw std::runtime_error("cannot open for writing: " + cfg.output_path);
        out << summary_to_csv(report);
      } else {
        save_json(cfg.output_path, report);
      }
    }
    return ok ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace maskforge
