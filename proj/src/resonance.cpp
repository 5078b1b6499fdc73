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


#include "actiongate/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "actiongate/errors.hpp"

namespace actiongate {

namespace {

std::size_t saturating_add(std::size_t a, std::size_t b) {
  const std::size_t max = std::numeric_limits<std::size_t>::max();
  return a > max - b ? max : a + b;
}

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  const std::size_t max = std::numeric_limits<std::size_t>::max();
  if (a != 0 && b > max / a) return max;
  return a * b;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays integral at every step
    const std::size_t num = saturating_mul(r, n - k + i);
    if (num == std::numeric_limits<std::size_t>::max()) return num;
    r = num / i;
  }
  return r;
}

struct Search {
  std::span<const double> freqs;
  double tol;
  int k_max;
  std::vector<int> current;
  std::vector<ResonanceRelation> found;

  void visit(std::size_t index, int budget, bool leading, double partial) {
    if (index == freqs.size()) {
      if (leading) return;  // zero vector
      if (std::abs(partial) < tol) found.push_back({current, std::abs(partial)});
      return;
    }
    const int lo = leading ? 0 : -budget;
    for (int c = lo; c <= budget; ++c) {
      current[index] = c;
      visit(index + 1, budget - std::abs(c), leading && c == 0, partial + c * freqs[index]);
    }
    current[index] = 0;
  }
};

}  // namespace

std::size_t resonance_search_size(std::size_t dim, int k_max) {
  if (k_max <= 0) return 0;
  const auto k = static_cast<std::size_t>(k_max);
  // lattice points in the 1-norm ball: sum_i 2^i C(dim, i) C(k, i)
  std::size_t total = 0;
  std::size_t pow2 = 1;
  for (std::size_t i = 0; i <= std::min(dim, k); ++i) {
    total = saturating_add(total, saturating_mul(pow2, saturating_mul(binomial(dim, i), binomial(k, i))));
    pow2 = saturating_mul(pow2, 2);
  }
  return total - 1;
}

std::vector<ResonanceRelation> resonance_scan(std::span<const double> frequencies,
                                              const ResonanceScanOptions& options) {
  if (options.k_max < 1) throw DomainError("resonance scan needs k_max >= 1");
  if (!(options.tol > 0.0)) throw DomainError("resonance scan needs tol > 0");
  const std::size_t size = resonance_search_size(frequencies.size(), options.k_max);
  if (size > options.max_vectors)
    throw SizeError("resonance search space of " + std::to_string(size) +
                    " integer vectors exceeds the bound " + std::to_string(options.max_vectors));
  Search s{frequencies, options.tol, options.k_max, std::vector<int>(frequencies.size(), 0), {}};
  if (!frequencies.empty()) s.visit(0, options.k_max, true, 0.0);
  std::stable_sort(s.found.begin(), s.found.end(), [](const auto& a, const auto& b) {
    const auto norm = [](const std::vector<int>& v) {
      return std::accumulate(v.begin(), v.end(), 0, [](int acc, int x) { return acc + std::abs(x); });
    };
    return norm(a.coefficients) < norm(b.coefficients);
  });
  return s.found;
}

std::vector<std::vector<std::size_t>> degeneracy_groups(std::span<const double> values, double tol) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<std::vector<std::size_t>> groups;
  double anchor = 0.0;
  for (std::size_t idx : order) {
    // chain grouping against the first member keeps groups from drifting
    if (groups.empty() || std::abs(values[idx] - anchor) > tol) {
      groups.push_back({idx});
      anchor = values[idx];
    } else {
      groups.back().push_back(idx);
    }
  }
  for (auto& g : groups) std::sort(g.begin(), g.end());
  return groups;
}

ResonanceReport degeneracy_and_resonance_scan(const LevelSet& levels,
                                              std::span<const double> frequencies,
                                              const ResonanceScanOptions& options) {
  if (options.k_max < 1) throw DomainError("resonance scan needs k_max >= 1");
  if (!(options.tol > 0.0)) throw DomainError("resonance scan needs tol > 0");
  ResonanceReport report;
  std::vector<double> energies;
  energies.reserve(levels.levels.size());
  for (const auto& lv : levels.levels) energies.push_back(lv.energy);
  report.degeneracy_groups = degeneracy_groups(energies, options.tol);
  if (!frequencies.empty()) report.relations = resonance_scan(frequencies, options);
  return report;
}

}  // namespace actiongate
