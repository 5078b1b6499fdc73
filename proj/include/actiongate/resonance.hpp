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
#include <span>
#include <vector>

#include "actiongate/spectra.hpp"

namespace actiongate {

/// Integer vector l with |l . nu| < tol. Sign is canonical: the first
/// nonzero coefficient is positive.
struct ResonanceRelation {
  std::vector<int> coefficients;
  double residual = 0.0;
};

struct ResonanceScanOptions {
  int k_max = 6;
  double tol = 1e-9;
  std::size_t max_vectors = 10'000'000;
};

/// Exhaustive search over 1 <= sum |l_i| <= k_max. Throws SizeError if the
/// number of candidate vectors exceeds max_vectors.
std::vector<ResonanceRelation> resonance_scan(std::span<const double> frequencies,
                                              const ResonanceScanOptions& options = {});

/// Number of nonzero integer vectors in dimension `dim` with 1-norm <= k_max,
/// saturating at SIZE_MAX.
std::size_t resonance_search_size(std::size_t dim, int k_max);

/// Partition of indices into groups of equal value within `tol`. Values need
/// not be sorted; groups are ordered by their smallest member value.
std::vector<std::vector<std::size_t>> degeneracy_groups(std::span<const double> values, double tol);

struct ResonanceReport {
  std::vector<std::vector<std::size_t>> degeneracy_groups;
  std::vector<ResonanceRelation> relations;
};

/// Degeneracy groups of `levels` (absolute tolerance `options.tol`) together
/// with the integer relations among `frequencies`.
ResonanceReport degeneracy_and_resonance_scan(const LevelSet& levels,
                                              std::span<const double> frequencies,
                                              const ResonanceScanOptions& options = {});

}  // namespace actiongate
