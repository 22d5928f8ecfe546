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

#include <CLI11.hpp>

#include "maskforge/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"maskforge: construction, verification and entropic analysis of quantum maskers"};
  app.require_subcommand(1);

  maskforge::RunConfig cfg;
  std::string action;

  auto* zoo = app.add_subcommand("zoo", "build a masker from the built-in catalog");
  zoo->add_option("action", action, "only 'build' is supported")->required();
  zoo->add_option("name", cfg.zoo_name, "qotp | coinflip | odd_d | distribution | identity")
      ->required();
  zoo->add_option("--d", cfg.d, "input dimension")->capture_default_str();
  zoo->add_option("--eps", cfg.eps, "perturbation strength in [0,1]")->capture_default_str();
  zoo->add_option("--seed", cfg.seed, "seed for the perturbation")->capture_default_str();
  zoo->add_option("-o,--out", cfg.output_path, "output masker file")->required();

  auto* verify = app.add_subcommand("verify", "check universality, cost and secret shares");
  verify->add_option("input", cfg.input_path, "masker JSON file")->required();
  verify->add_option("--tol", cfg.tol, "universality tolerance (default 1e-10)");
  verify->add_option("--out", cfg.output_path, "report JSON file");

  auto* bounds = app.add_subcommand("bounds", "randomness-cost bounds and unevenness");
  bounds->add_option("input", cfg.input_path, "masker JSON file")->required();
  bounds->add_option("--gamma", cfg.gamma, "probe choice: maxent | search")
      ->check(CLI::IsMember({"maxent", "search"}))->capture_default_str();
  bounds->add_option("--n", cfg.n, "tensor power for the regularized estimate (1 or 2)")
      ->check(CLI::IsMember({1, 2}))->capture_default_str();
  bounds->add_option("--seed", cfg.seed, "seed for the probe search")->capture_default_str();
  bounds->add_option("--out", cfg.output_path, "report JSON file");

  auto* capacity = app.add_subcommand("capacity", "subchannel capacities vs mixing budgets");
  capacity->add_option("input", cfg.input_path, "masker JSON file")->required();
  capacity->add_option("--side", cfg.side, "A | B | both")
      ->check(CLI::IsMember({"A", "B", "both"}))->capture_default_str();
  capacity->add_option("--tol", cfg.tol, "capacity solver tolerance (default 1e-6)");
  capacity->add_option("--out", cfg.output_path, "report JSON file");

  auto* conjecture = app.add_subcommand("conjecture", "diagonal-drift witnesses against disk bases");
  conjecture->add_option("--d", cfg.d, "local dimension (2 or 3)")
      ->check(CLI::IsMember({2, 3}))->capture_default_str();
  conjecture->add_option("--trials", cfg.trials, "number of random candidate bases")->capture_default_str();
  conjecture->add_option("--seed", cfg.seed, "base seed")->capture_default_str();
  conjecture->add_option("--out", cfg.output_path, "witness JSON file");

  auto* all = app.add_subcommand("all", "full suite over the masker catalog");
  all->add_option("--d", cfg.d_list, "dimensions to sweep")->delimiter(',')->capture_default_str();
  all->add_option("--seed", cfg.seed, "suite seed")->capture_default_str();
  all->add_option("--out", cfg.output_path, "summary file");
  all->add_option("--format", cfg.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // malformed invocation maps to exit 1
  }

  if (zoo->parsed()) {
    if (action != "build") {
      std::cerr << "error: unknown zoo action '" << action << "'\n";
      return 1;
    }
    cfg.command = "zoo";
  } else if (verify->parsed()) {
    cfg.command = "verify";
  } else if (bounds->parsed()) {
    cfg.command = "bounds";
  } else if (capacity->parsed()) {
    cfg.command = "capacity";
  } else if (conjecture->parsed()) {
    cfg.command = "conjecture";
  } else if (all->parsed()) {
    cfg.command = "all";
  }
  return maskforge::run(cfg);
}
