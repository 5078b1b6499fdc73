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


#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "actiongate/errors.hpp"
#include "actiongate/resonance.hpp"
#include "actiongate/spectra.hpp"

using namespace actiongate;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

// Direct transcription of the exact anharmonic closed form (no
// cancellation-safe rewrite), used as an oracle for the library's form.
double anharmonic_exact_oracle(double c, int nr, int l) {
  const double big_n = 2.0 * nr + l + 1.5;
  const double arg = 1.0 - 3.0 * big_n * c + 0.75 * (l + 1.5) * (l - 0.5) * c * c;
  return 2.0 / (3.0 * c) * (1.0 - std::sqrt(arg));
}

}  // namespace

TEST_CASE("classical energies of the four models", "[spectra]") {
  const ClassicalActions j{4.712389, 1.256637, 1.884956};
  CHECK_THAT(energy_classical(ModelSpec::harmonic(), j), WithinAbs(2.0, 1e-6));
  CHECK(energy_classical(ModelSpec::anharmonic_oscillator(0.0), j) ==
        energy_classical(ModelSpec::harmonic(), j));
  CHECK_THAT(energy_classical(ModelSpec::coulomb_model(), {2 * pi, 0, 0}),
             WithinRel(-0.5, 1e-15));
  CHECK_THAT(energy_classical(ModelSpec::perturbed_coulomb(0.0), {1.0, 2.0, 3.0}),
             WithinRel(energy_classical(ModelSpec::coulomb_model(), {1.0, 2.0, 3.0}), 1e-15));
}

TEST_CASE("classical energy domain errors", "[spectra]") {
  CHECK_THROWS_AS(energy_classical(ModelSpec::coulomb_model(), {0, 0, 0}), DomainError);
  CHECK_THROWS_AS(energy_classical(ModelSpec::perturbed_coulomb(0.1), {1.0, 0.1, 0.0}),
                  DomainError);
  CHECK_THROWS_AS(energy_classical(ModelSpec::anharmonic_oscillator(1.0), {100, 0, 0}),
                  DomainError);
  CHECK_THROWS_AS(energy_classical(ModelSpec::harmonic(1.0, 1), {1, 1, 0}), DomainError);
  ModelSpec bad = ModelSpec::harmonic();
  bad.mass = -1;
  CHECK_THROWS_AS(energy_classical(bad, {1, 0, 0}), DomainError);
}

TEST_CASE("quantized spectra", "[spectra]") {
  CHECK_THAT(energy_quantum(ModelSpec::coulomb_model(), {1, 1, 0}), WithinRel(-1.0 / 18, 1e-15));
  CHECK(energy_quantum(ModelSpec::harmonic(), {0, 0, 0}) == 1.5);
  const double lp = -0.5 + std::sqrt(0.24);
  CHECK_THAT(lp, WithinAbs(-0.0101021, 1e-7));
  const double d = 1.0 + lp;
  CHECK_THAT(energy_quantum(ModelSpec::perturbed_coulomb(0.005), {0, 0, 0}),
             WithinRel(-0.5 / (d * d), 1e-15));
  CHECK_THAT(energy_quantum(ModelSpec::perturbed_coulomb(0.005), {0, 0, 0}),
             WithinAbs(-0.5102578, 1e-6));
  CHECK_THROWS_AS(energy_quantum(ModelSpec::perturbed_coulomb(0.2), {0, 0, 0}), DomainError);
  CHECK_THROWS_AS(energy_quantum(ModelSpec::harmonic(1.0, 2), {0, 0, 1}), DomainError);
}

TEST_CASE("anharmonic exact form against direct oracle and limits", "[spectra]") {
  for (double c : {1e-3, 1e-2, 3e-2})
    for (int nr = 0; nr < 4; ++nr)
      for (int l = 0; l < 4; ++l) {
        const auto m = ModelSpec::anharmonic_oscillator(c);
        const double e = energy_quantum(m, {nr, l, 0});
        CHECK_THAT(e, WithinRel(anharmonic_exact_oracle(c, nr, l), 1e-11));
      }
  for (int nr = 0; nr < 5; ++nr)
    for (int l = 0; l < 5; ++l)
      CHECK(energy_quantum(ModelSpec::anharmonic_oscillator(0.0), {nr, l, 0}) ==
            energy_quantum(ModelSpec::harmonic(), {nr, l, 0}));
  for (int nr = 0; nr < 5; ++nr)
    for (int l = 0; l < 3; ++l)
      CHECK(energy_quantum(ModelSpec::perturbed_coulomb(0.0), {nr, l, 0}) ==
            energy_quantum(ModelSpec::coulomb_model(), {nr, l, 0}));
}

TEST_CASE("small-c anharmonic form drops a c N^2 term", "[spectra]") {
  // Taylor expansion of the exact form at first order in c:
  // E = N + (3/4) c N^2 - (1/4)(l + 3/2)(l - 1/2) c. The small-c form lacks
  // the (3/4) c N^2 piece, so the gap divided by c tends to (3/4) N^2.
  const double c = 1e-6;
  const auto m = ModelSpec::anharmonic_oscillator(c);
  for (int nr = 0; nr < 3; ++nr)
    for (int l = 0; l < 3; ++l) {
      const double big_n = 2.0 * nr + l + 1.5;
      const double gap = energy_quantum(m, {nr, l, 0}, AnharmonicForm::exact) -
                         energy_quantum(m, {nr, l, 0}, AnharmonicForm::small_c);
      CHECK_THAT(gap / c, WithinRel(0.75 * big_n * big_n, 1e-4));
    }
}

TEST_CASE("classical frequencies", "[spectra]") {
  const auto h = classical_frequencies(ModelSpec::harmonic(), {1.0, 0.5, 0.25});
  REQUIRE(h.analytic.size() == 3);
  CHECK(h.analytic == std::vector<double>{2.0, 1.0, 1.0});
  CHECK(h.max_relative_error < 1e-6);

  const auto c0 = classical_frequencies(ModelSpec::anharmonic_oscillator(0.0), {1.0, 0.5, 0.25});
  CHECK(c0.analytic == h.analytic);

  const auto coul = classical_frequencies(ModelSpec::coulomb_model(), {2 * pi - 1.0, 0.5, 0.5});
  CHECK_THAT(coul.analytic[0], WithinRel(1.0, 1e-14));

  const std::vector<ClassicalActions> points{{1.0, 0.9, 0.4}, {2.0, 1.3, 0.0}, {0.5, 2.0, 1.0}};
  for (const auto& model : {ModelSpec::harmonic(), ModelSpec::anharmonic_oscillator(0.01),
                            ModelSpec::coulomb_model(), ModelSpec::perturbed_coulomb(0.005)})
    for (const auto& j : points) {
      INFO(to_string(model.kind));
      CHECK(classical_frequencies(model, j).max_relative_error <= 1e-6);
    }
}

TEST_CASE("transition frequencies", "[spectra]") {
  const auto coul = ModelSpec::coulomb_model();
  CHECK_THAT(transition_frequency(coul, {1, 0, 0}, {0, 0, 0}), WithinRel(0.375, 1e-15));
  CHECK(transition_frequency(coul, {2, 1, 0}, {2, 1, 0}) == 0.0);
  const auto small = ModelSpec::anharmonic_oscillator(1e-9);
  CHECK_THAT(transition_frequency(small, {1, 0, 0}, {0, 0, 0}), WithinRel(2.0, 1e-7));
  for (const auto& model : {ModelSpec::anharmonic_oscillator(0.01), ModelSpec::perturbed_coulomb(0.005)})
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        CHECK(transition_frequency(model, {a, 1, 0}, {b, 0, 1}) ==
              -transition_frequency(model, {b, 0, 1}, {a, 1, 0}));
}

TEST_CASE("semiclassical frequency correspondence", "[spectra]") {
  const auto coul = ModelSpec::coulomb_model();
  const auto s0 = semiclassical_frequency(coul, {0, 0, 0}, Axis::r);
  CHECK_THAT(s0.semiclassical, WithinRel(1.0, 1e-15));

  const auto s100 = semiclassical_frequency(coul, {100, 0, 0}, Axis::r);
  const double n = 100;
  const double oracle = (2 * n + 3) * (n + 1) / (2 * (n + 2) * (n + 2));
  CHECK_THAT(s100.quantum / s100.semiclassical, WithinRel(oracle, 1e-12));
  CHECK_THAT(oracle, WithinAbs(0.98534, 5e-6));

  double prev = 0.0;
  for (int k = 1; k <= 10000; k += 37) {
    const auto s = semiclassical_frequency(coul, {k, 0, 0}, Axis::r, 1);
    const double ratio = s.quantum / s.semiclassical;
    CHECK(ratio > prev);
    CHECK(ratio < 1.0);
    prev = ratio;
  }

  const auto h = semiclassical_frequency(ModelSpec::harmonic(), {3, 1, 2}, Axis::r);
  CHECK(h.semiclassical == 2.0);
  CHECK(h.quantum == 2.0);
  for (double r : h.relation_residuals) CHECK(r == 0.0);
}

TEST_CASE("relation partial sums converge", "[spectra]") {
  for (const auto& model : {ModelSpec::coulomb_model(), ModelSpec::anharmonic_oscillator(0.01),
                            ModelSpec::perturbed_coulomb(0.005)}) {
    INFO(to_string(model.kind));
    const auto s = semiclassical_frequency(model, {3, 1, 0}, Axis::r, 6);
    REQUIRE(s.relation_residuals.size() == 6);
    CHECK(std::abs(s.relation_residuals.back()) < std::abs(s.relation_residuals.front()));
    CHECK(std::abs(s.relation_residuals.back()) < 1e-3 * std::abs(s.quantum));
  }
}

TEST_CASE("level enumeration ordering and degeneracy", "[spectra]") {
  const auto levels = enumerate_levels(ModelSpec::coulomb_model(), 3);
  REQUIRE_FALSE(levels.levels.empty());
  CHECK(levels.levels.front().energy == -0.5);
  for (std::size_t i = 1; i < levels.levels.size(); ++i)
    CHECK(levels.levels[i - 1].energy <= levels.levels[i].energy);
  // n = 0..3 shells
  CHECK(levels.groups.size() == 4);
  std::size_t members = 0;
  for (const auto& g : levels.groups) members += g.size();
  CHECK(members == levels.levels.size());

  const std::string csv = level_set_csv(levels);
  CHECK(csv.rfind("n_r,n_theta,n_phi,l,n,energy,degeneracy_group\n0,0,0,0,0,-0.5,0\n", 0) == 0);
}

TEST_CASE("resonance scan", "[spectra][resonance]") {
  const std::vector<double> harmonic{2.0, 1.0, 1.0};
  const auto rel = resonance_scan(harmonic, {.k_max = 3, .tol = 1e-9});
  auto has = [&](std::vector<int> v) {
    for (const auto& r : rel)
      if (r.coefficients == v) return true;
    return false;
  };
  CHECK(has({1, -2, 0}));
  CHECK(has({0, 1, -1}));
  for (const auto& r : rel) {
    const auto first = std::find_if(r.coefficients.begin(), r.coefficients.end(),
                                    [](int x) { return x != 0; });
    CHECK(*first > 0);
  }

  const std::vector<double> single{1.7};
  CHECK(resonance_scan(single, {.k_max = 6}).empty());

  const auto f = classical_frequencies(ModelSpec::anharmonic_oscillator(0.01, 1.0, 2), {1.3, 0.7, 0.0});
  CHECK(resonance_scan(f.analytic, {.k_max = 5, .tol = 1e-9}).empty());

  CHECK(resonance_search_size(3, 1) == 6);
  CHECK(resonance_search_size(2, 2) == 12);
  const std::vector<double> wide(24, 1.0);
  CHECK_THROWS_AS(resonance_scan(wide, {.k_max = 6}), SizeError);
  CHECK_THROWS_AS(resonance_scan(harmonic, {.k_max = 0}), DomainError);
}
