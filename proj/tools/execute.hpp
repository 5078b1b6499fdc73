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

#include <filesystem>
#include <string>
#include <vector>

#include "actiongate/errors.hpp"
#include "config.hpp"

namespace actiongate::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kDomainError = 2, kConvergenceError = 3 };

struct RunResult {
  int exit_code = kOk;
  /// Summary (or the resolved plan under --dry-run) on success, the error
  /// object otherwise.
  Json report;
  std::vector<std::filesystem::path> outputs;
};

/// Runs the pipeline of `cfg.subcommand` and writes its files atomically
/// below `cfg.out_dir`. Library errors are caught and mapped to exit codes.
RunResult execute(const ExperimentConfig& cfg);

/// Parses `doc`, then executes; ConfigError becomes exit code 1.
RunResult execute(const Json& doc, const Overrides& overrides);

/// {"error": kind, "class": ..., "message": ..., "path": ...}
Json error_json(const Error& e);

}  // namespace actiongate::cli
