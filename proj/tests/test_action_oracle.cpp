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
#include <random>

#include "actiongate/action_oracle.hpp"
#include "actiongate/errors.hpp"

using namespace actiongate;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

// Textbook radial actions: harmonic J_r = pi (E / w - L),
// Coulomb J_r = 2 pi (k sqrt(m / -2E) - L).
double harmonic_jr(double e, double l) { return pi * (e - l); }
double coulomb_jr(double e, double l) { return 2 * pi * (std::sqrt(1.0 / (-2.0 * e)) - l); }

}  // namespace

TEST_CASE("harmonic action integrals", "[action_oracle]") {
  const OrbitSpec o{ModelSpec::harmonic(), 2.0, 0.5, 0.3};
  const auto q = action_integrals(o);
  CHECK_THAT(q.actions.j_r, WithinAbs(4.712389, 1e-6));
  CHECK_THAT(q.actions.j_theta, WithinAbs(1.256637, 1e-6));
  CHECK_THAT(q.actions.j_phi, WithinAbs(1.884956, 1e-6));
  CHECK_THAT(q.actions.j_r, WithinRel(harmonic_jr(2.0, 0.5), 1e-12));
  CHECK(q.r_minus > 0.0);
  CHECK(q.r_minus < q.r_plus);
  CHECK(verify_closed_form(ModelSpec::harmonic(), o) <= 1e-8);
}

TEST_CASE("radial action with zero angular momentum", "[action_oracle]") {
  const auto h = action_integrals({ModelSpec::harmonic(), 1.7, 0.0, 0.0});
  CHECK(h.r_minus == 0.0);
  CHECK_THAT(h.actions.j_r, WithinRel(harmonic_jr(1.7, 0.0), 1e-12));
  const auto c = action_integrals({ModelSpec::coulomb_model(), -0.4, 0.0, 0.0});
  CHECK_THAT(c.actions.j_r, WithinRel(coulomb_jr(-0.4, 0.0), 1e-10));
}

TEST_CASE("circular orbit has vanishing radial action", "[action_oracle]") {
  // harmonic circular orbit: E = w L; Coulomb: E = -m k^2 / (2 L^2)
  const auto h = action_integrals({ModelSpec::harmonic(), 1.0, 1.0, 0.5});
  CHECK_THAT(h.actions.j_r, WithinAbs(0.0, 1e-6));
  const auto c = action_integrals({ModelSpec::coulomb_model(), -0.5, 1.0, 1.0});
  CHECK_THAT(c.actions.j_r, WithinAbs(0.0, 1e-6));
}

TEST_CASE("Coulomb action sum", "[action_oracle]") {
  const auto q = action_integrals({ModelSpec::coulomb_model(), -0.5, 0.3, 0.3});
  CHECK_THAT(q.actions.j_r + q.actions.j_theta + q.actions.j_phi, WithinRel(2 * pi, 1e-10));
  CHECK_THAT(q.actions.j_r, WithinRel(coulomb_jr(-0.5, 0.3), 1e-10));
}

TEST_CASE("closed-form round trips", "[action_oracle]") {
  CHECK(verify_closed_form(ModelSpec::perturbed_coulomb(0.005),
                           {ModelSpec::perturbed_coulomb(0.005), -0.3, 0.5, 0.5}) <= 1e-6);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double e = -0.2 - 0.6 * u(rng);
    const double lmax = std::sqrt(1.0 / (-2.0 * e));
    const double l = lmax * (0.05 + 0.9 * u(rng));
    const double lz = l * (2.0 * u(rng) - 1.0);
    CHECK(verify_closed_form(ModelSpec::coulomb_model(), {ModelSpec::coulomb_model(), e, l, lz}) <= 1e-9);
    const double eh = 0.5 + 2.5 * u(rng);
    const double lh = eh * 0.95 * u(rng);
    CHECK(verify_closed_form(ModelSpec::harmonic(), {ModelSpec::harmonic(), eh, lh, -lh / 3}) <= 1e-10);
  }
}

TEST_CASE("anharmonic closed form is first order in c", "[action_oracle]") {
  // The classical anharmonic H0(J) agrees with quadrature only to O(c^2):
  // the residual shrinks about 100x when c drops 10x.
  const auto at = [](double c) {
    const auto m = ModelSpec::anharmonic_oscillator(c);
    return verify_closed_form(m, {m, 1.5, 0.4, 0.4});
  };
  const double r2 = at(1e-2), r3 = at(1e-3);
  CHECK(r2 > 1e-4);
  CHECK(r2 / r3 > 60.0);
  CHECK(r2 / r3 < 160.0);
}

TEST_CASE("quadrature is stable under node doubling", "[action_oracle]") {
  const OrbitSpec o{ModelSpec::perturbed_coulomb(0.005), -0.3, 0.5, 0.2};
  const auto a = action_integrals(o);
  const auto b = action_integrals(o, {.initial_nodes = 2 * a.nodes});
  CHECK_THAT(b.actions.j_r, WithinRel(a.actions.j_r, 1e-8));
}

TEST_CASE("unbound orbits are rejected", "[action_oracle]") {
  CHECK_THROWS_AS(action_integrals({ModelSpec::coulomb_model(), 0.1, 0.5, 0.0}), NoBoundOrbit);
  CHECK_THROWS_AS(action_integrals({ModelSpec::coulomb_model(), -0.5, 1.2, 0.0}), NoBoundOrbit);
  CHECK_THROWS_AS(action_integrals({ModelSpec::perturbed_coulomb(0.1), -0.5, 0.2, 0.0}), NoBoundOrbit);
  CHECK_THROWS_AS(action_integrals({ModelSpec::harmonic(), 1.0, 0.5, 0.7}), DomainError);
}

TEST_CASE("radial eigensolver", "[action_oracle]") {
  const auto coul = converged_radial_levels(ModelSpec::coulomb_model(), 0, 2);
  CHECK_THAT(coul.energies[0], WithinRel(-0.5, 1e-6));
  CHECK_THAT(coul.energies[1], WithinRel(-0.125, 1e-6));

  const auto harm = converged_radial_levels(ModelSpec::harmonic(), 0, 1);
  CHECK_THAT(harm.energies[0], WithinRel(1.5, 1e-6));

  const auto pert = converged_radial_levels(ModelSpec::perturbed_coulomb(0.005), 0, 1);
  CHECK_THAT(pert.energies[0], WithinRel(energy_quantum(ModelSpec::perturbed_coulomb(0.005), {0, 0, 0}), 1e-6));

  // l-degeneracy of the Coulomb shell n = 2
  const auto l1 = converged_radial_levels(ModelSpec::coulomb_model(), 1, 2);
  const auto l2 = converged_radial_levels(ModelSpec::coulomb_model(), 2, 1);
  const auto l0 = converged_radial_levels(ModelSpec::coulomb_model(), 0, 3);
  CHECK_THAT(l1.energies[1], WithinRel(l0.energies[2], 1e-5));
  CHECK_THAT(l2.energies[0], WithinRel(l0.energies[2], 1e-5));

  // raw ladder approaches the limit from one side
  for (std::size_t i = 0; i < coul.energies.size(); ++i) {
    double prev_gap = std::abs(coul.ladder[0][i] - coul.energies[i]);
    for (std::size_t k = 1; k < coul.ladder.size(); ++k) {
      const double gap = std::abs(coul.ladder[k][i] - coul.energies[i]);
      CHECK(gap < prev_gap);
      prev_gap = gap;
    }
  }
}

TEST_CASE("uniform grid solve", "[action_oracle]") {
  const RadialGrid grid{1e-6, 12.0, 4000, GridSpacing::uniform};
  const auto e = eigensolve_radial(ModelSpec::harmonic(), 0, grid, 2);
  CHECK_THAT(e[0], WithinRel(1.5, 1e-5));
  CHECK_THAT(e[1], WithinRel(3.5, 1e-5));
  CHECK_THROWS_AS(eigensolve_radial(ModelSpec::harmonic(), 0, {1.0, 0.5, 10}, 1), DomainError);
}

TEST_CASE("seeded orbits", "[action_oracle]") {
  const auto a = seeded_orbits(ModelSpec::coulomb_model(), 25, 11);
  const auto b = seeded_orbits(ModelSpec::coulomb_model(), 25, 11);
  REQUIRE(a.size() == 25);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].energy == b[i].energy);
    CHECK(a[i].angular_momentum == b[i].angular_momentum);
    CHECK(a[i].axial_momentum == b[i].axial_momentum);
    CHECK(std::abs(a[i].axial_momentum) <= a[i].angular_momentum);
  }
  CHECK(seeded_orbits(ModelSpec::coulomb_model(), 1, 12)[0].energy != a[0].energy);

  for (const auto& o : seeded_orbits(ModelSpec::harmonic(1.3), 20, 3))
    CHECK(verify_closed_form(o.model, o) <= 1e-8);
  for (const auto& o : seeded_orbits(ModelSpec::perturbed_coulomb(0.005), 20, 3))
    CHECK(verify_closed_form(o.model, o) <= 1e-6);
  for (int dim = 1; dim <= 2; ++dim)
    for (const auto& o : seeded_orbits(ModelSpec::coulomb_model(1.0, dim), 5, 3))
      CHECK(verify_closed_form(o.model, o) <= 1e-8);
  // bound for every draw even where the closed form is only first order in c
  for (const auto& o : seeded_orbits(ModelSpec::anharmonic_oscillator(0.01), 20, 3))
    CHECK_NOTHROW(action_integrals(o));
}
