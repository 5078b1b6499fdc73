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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "actiongate/drive.hpp"
#include "actiongate/gates.hpp"
#include "actiongate/linalg.hpp"

namespace actiongate {

enum class PerturbationStructure { dense, banded };

/// Static perturbation eps2 P in energy units. P is drawn from the seed:
/// off-diagonal entries uniform on the unit disc, diagonal entries uniform on
/// [-1, 1], mirrored to a Hermitian matrix and scaled so max|P_ij| = 1.
/// Banded matrices keep |i - j| <= band_width.
struct PerturbationSpec {
  double strength = 0.0;
  PerturbationStructure structure = PerturbationStructure::dense;
  std::size_t band_width = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

std::string to_string(PerturbationStructure s);
PerturbationStructure perturbation_structure_from_string(const std::string& name);

/// The normalized P of size n (strength not applied). Bitwise reproducible
/// for a given seed on every platform.
CMatrix perturbation_matrix(std::size_t n, const PerturbationSpec& spec);

struct RobustnessOptions {
  std::size_t max_dimension = 500;
};

struct Eigensystem {
  RVector values;       // ascending
  CMatrix vectors;      // columns, orthonormal
  double max_residual = 0.0;
};

/// Spectrum of diag(E) + eps2 P. At eps2 = 0 the eigenvectors are the basis
/// vectors themselves. Throws SizeError above the dimension cap.
Eigensystem perturbed_eigensystem(const Basis& basis, const PerturbationSpec& pert,
                                  const RobustnessOptions& options = {});

struct LevelOverlap {
  std::size_t level = 0;    // unperturbed basis index n
  std::size_t state = 0;    // assigned perturbed eigenstate n'
  double overlap = 0.0;     // |<n'|n>|^2
  bool persists = false;    // overlap > 1/2
};

/// Greedy assignment by descending overlap; every eigenstate is used at
/// most once.
struct LocalizationReport {
  std::vector<LevelOverlap> levels;
  RMatrix overlaps;          // overlaps(n, n') = |<n'|n>|^2
  double min_overlap = 1.0;
  double persist_fraction = 1.0;
};

LocalizationReport localization_report(const Basis& basis, const PerturbationSpec& pert,
                                       const RobustnessOptions& options = {});

struct SweepPoint {
  double epsilon2 = 0.0;
  double fidelity = 0.0;
  double min_overlap = 1.0;
  double persist_fraction = 1.0;
};

struct SweepOptions {
  ExecutionOptions execution;
  RobustnessOptions robustness;
  /// Points evaluated concurrently; results do not depend on it.
  unsigned threads = 1;
};

/// For each eps2: exact-engine execution of `schedule` with eps2 P added to
/// H0, restricted to `logical` and compared with `target`. P is the same
/// matrix at every point (generated from the seed alone).
std::vector<SweepPoint> fidelity_sweep(const Basis& basis, const ControlMatrix& control,
                                       const PulseSchedule& schedule, std::span<const std::size_t> logical,
                                       const CMatrix& target, const PerturbationSpec& pert,
                                       std::span<const double> epsilon2, const SweepOptions& options = {});

/// CSV with columns epsilon2,fidelity,min_overlap,persist_fraction.
std::string sweep_csv(const std::vector<SweepPoint>& points);

/// Least-squares slope of log(1 - F) against log(eps2) over points with
/// eps2 > 0 and F < 1.
double infidelity_slope(const std::vector<SweepPoint>& points);

}  // namespace actiongate
