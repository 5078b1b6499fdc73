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


#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "actiongate/action_oracle.hpp"
#include "actiongate/birkhoff.hpp"
#include "actiongate/encodings.hpp"
#include "actiongate/gates.hpp"
#include "actiongate/robustness.hpp"
#include "actiongate/spectra.hpp"
#include "json_text.hpp"

namespace actiongate::cli {

inline constexpr std::array<const char*, 8> kSubcommands = {
    "spectrum", "actions", "drive", "gate", "encode", "selectivity", "birkhoff", "robustness"};

/// Overridable numerical tolerances, addressed by name from the config file
/// ("tolerances" section) or from --tol NAME=VALUE.
struct Tolerances {
  double degeneracy = 1e-10;   // relative, level grouping
  double quadrature = 1e-10;   // relative, action integrals
  double eigensolver = 1e-9;   // relative, radial grid refinement
  double rwa_threshold = 0.05;
  double collision = -1.0;     // absolute; negative selects 10 eps max|a|
  double guard = 0.05;         // selectivity leakage guard
  double resonance = 1e-9;     // integer-relation residual

  /// Throws ConfigError with path "tolerances.<name>" for unknown names or
  /// out-of-range values.
  void set(const std::string& name, double value);
  Json to_json() const;
};

struct Coupling {
  std::size_t i = 0;
  std::size_t j = 0;
  cplx value;
};

struct EncodingConfig {
  std::vector<EncodingSpec> qubits;
  EncodingOptions options;
  bool replace_control = false;  // start from zero instead of the default control
  std::vector<Coupling> couplings;
};

using IndexPair = std::array<std::size_t, 2>;

struct SpectrumConfig {
  int n_max = 3;
  int eigensolver_l_max = -1;  // negative skips the eigensolver comparison
  int eigensolver_count = 3;
};

struct ActionsConfig {
  std::vector<OrbitSpec> orbits;
  std::size_t seeded = 0;
};

struct DriveConfig {
  std::optional<IndexPair> pair;   // basis indices; default the first qubit's logical pair
  double epsilon = 1e-3;
  std::optional<double> omega_d;   // empty means "auto"
  double phi = 0.0;
  std::optional<double> t;         // default a pi pulse on resonance
  long steps = 0;                  // 0 derives from steps_per_period
  int steps_per_period = 64;
  int samples = 50;
  DriveModel model = DriveModel::full;
};

struct GateConfig {
  GateName target = GateName::H;
  double theta = kPi;
  double epsilon = 1e-3;
  Engine engine = Engine::exact;
  int steps_per_period = 64;
};

struct SelectivityConfig {
  std::optional<IndexPair> pair;
  double epsilon = 1e-3;
};

struct BirkhoffConfig {
  ClassicalActions j0;
  std::vector<int> cutoffs;
  QuantizationConvention convention = QuantizationConvention::number;
  int k_max = 6;
};

struct RobustnessConfig {
  PerturbationStructure structure = PerturbationStructure::dense;
  std::size_t band_width = 1;
  std::vector<double> epsilon2;
  GateName gate = GateName::X;
  double epsilon = 1e-2;
  int steps_per_period = 64;
  std::size_t max_dimension = 500;
};

struct ExperimentConfig {
  std::string subcommand;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = "out";
  bool dry_run = false;
  unsigned threads = 1;
  ModelSpec model;
  AnharmonicForm form = AnharmonicForm::exact;
  Tolerances tol;
  EncodingConfig encoding;
  SpectrumConfig spectrum;
  ActionsConfig actions;
  DriveConfig drive;
  GateConfig gate;
  SelectivityConfig selectivity;
  BirkhoffConfig birkhoff;
  RobustnessConfig robustness;
};

/// Command-line values that take precedence over the file.
struct Overrides {
  std::optional<std::string> subcommand;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out_dir;
  bool dry_run = false;
  std::vector<std::pair<std::string, double>> tolerances;
  /// Upper bound on worker threads (ACTIONGATE_THREADS).
  std::optional<unsigned> thread_cap;
};

/// Validates `doc` against the shipped schema and builds the configuration.
/// Throws ConfigError naming the dotted path of the first violation.
ExperimentConfig parse_config(const Json& doc, const Overrides& overrides = {});

/// Reads and parses a JSON file; syntax errors are ConfigError at path "".
Json read_config_file(const std::filesystem::path& path);

/// Parses "NAME=VALUE" for --tol.
std::pair<std::string, double> parse_tolerance_flag(const std::string& flag);

/// ACTIONGATE_THREADS as a positive integer; ConfigError when malformed.
std::optional<unsigned> thread_cap_from_env();

Json model_to_json(const ModelSpec& m);
Json qn_to_json(const QuantumNumbers& qn);

}  // namespace actiongate::cli
