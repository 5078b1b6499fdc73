// Copyright 2026 The actiongate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cstdio>
#include <iterator>
#include <utility>

#include <CLI11.hpp>

#include "actiongate/errors.hpp"
#include "execute.hpp"

using namespace actiongate;
using namespace actiongate::cli;

int main(int argc, char** argv) {
  CLI::App app{"actiongate: action-variable spectra, drives, gates and robustness"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir;
  bool dry_run = false;
  std::vector<std::string> tol_flags;

  auto* config_opt = app.add_option("--config", config_path, "Experiment config (JSON)")->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "Seed for every random draw");
  auto* out_opt = app.add_option("--out", out_dir, "Output directory");
  app.add_flag("--dry-run", dry_run, "Print the resolved plan without computing");
  app.add_option("--tol", tol_flags, "Tolerance override NAME=VALUE (repeatable)")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  const std::pair<const char*, const char*> subcommands[] = {
      {"spectrum", "Quantized levels, optionally against the radial eigensolver"},
      {"actions", "Action integrals of classical orbits and the closed-form round trip"},
      {"drive", "Driven propagation of one transition and its RWA report"},
      {"gate", "Pulse schedule for a target gate and its simulated fidelity"},
      {"encode", "Encoded basis, per-qubit selectivity and two-qubit strategy"},
      {"selectivity", "Frequency-selectivity report for one transition"},
      {"birkhoff", "Second-order expansion of H0(J) and its quantized spectrum"},
      {"robustness", "Gate fidelity and localization under static perturbations"},
  };
  static_assert(std::size(subcommands) == kSubcommands.size());
  for (const auto& [name, help] : subcommands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kConfigError;
  }

  RunResult result;
  try {
    Overrides ov;
    ov.subcommand = app.get_subcommands().front()->get_name();
    if (*seed_opt) ov.seed = seed;
    if (*out_opt) ov.out_dir = out_dir;
    ov.dry_run = dry_run;
    for (const auto& t : tol_flags) ov.tolerances.push_back(parse_tolerance_flag(t));
    ov.thread_cap = thread_cap_from_env();
    const Json doc = *config_opt ? read_config_file(config_path) : Json::object();
    result = execute(doc, ov);
  } catch (const ConfigError& e) {
    result.exit_code = kConfigError;
    result.report = error_json(e);
  }

  const std::string text = to_text(result.report);
  std::fwrite(text.data(), 1, text.size(), result.exit_code == kOk ? stdout : stderr);
  return result.exit_code;
}
