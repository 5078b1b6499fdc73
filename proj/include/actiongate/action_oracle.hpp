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
#include <vector>

#include "actiongate/spectra.hpp"

namespace actiongate {

/// A bound classical orbit in a central field: energy, total angular
/// momentum L >= 0 and axial component |L_z| <= L.
struct OrbitSpec {
  ModelSpec model;
  double energy = 0.0;
  double angular_momentum = 0.0;
  double axial_momentum = 0.0;
};

struct ActionQuadrature {
  ClassicalActions actions;
  double r_minus = 0.0;
  double r_plus = 0.0;
  double error_estimate = 0.0;  // |J_r(n) - J_r(n/2)| at the accepted node count
  int nodes = 0;
};

struct QuadratureOptions {
  int initial_nodes = 64;
  int max_nodes = 8192;
  double relative_tol = 1e-10;
};

/// J_phi = 2 pi |L_z|, J_theta = 2 pi (L - |L_z|), and J_r = 2 int p_r dr
/// between the radial turning points by Gauss-Legendre quadrature on the
/// substitution r = r_- + (r_+ - r_-) sin^2 u.
///
/// Throws NoBoundOrbit if the radial momentum is nowhere real and
/// QuadratureError if node doubling does not reach `relative_tol`.
ActionQuadrature action_integrals(const OrbitSpec& orbit, const QuadratureOptions& options = {});

/// |H0(J(orbit)) - E| / |E|.
double verify_closed_form(const ModelSpec& model, const OrbitSpec& orbit,
                          const QuadratureOptions& options = {});

/// `count` bound orbits drawn from `seed`. Energies cover a fixed band
/// below the top of the well (Coulomb) or a few quanta above the bottom
/// (oscillators); L spans 5% to 95% of the circular-orbit value and L_z
/// the full [-L, L]. L = 0 in one dimension and L_z = L in two.
std::vector<OrbitSpec> seeded_orbits(const ModelSpec& model, std::size_t count, std::uint64_t seed);

/// Potential energy including the -beta/r^2 term where present.
double potential(const ModelSpec& model, double r);

enum class GridSpacing { uniform, log };

struct RadialGrid {
  double r_min = 1e-6;
  double r_max = 1.0;
  int points = 1000;
  GridSpacing spacing = GridSpacing::uniform;

  void validate() const;
};

/// Lowest `count` eigenvalues of the reduced radial equation
///   -(hbar^2 / 2m) u'' + [V + hbar^2 l (l + 1) / (2 m r^2)] u = E u
/// with u(r_min) = u(r_max) = 0 on one fixed grid. The log grid uses
/// r = e^x, u = e^{x/2} v, which turns the problem into a symmetric
/// tridiagonal one after scaling by 1/r.
std::vector<double> eigensolve_radial(const ModelSpec& model, int l, const RadialGrid& grid,
                                      int count);

struct RadialConvergence {
  std::vector<double> energies;             // Richardson-extrapolated
  std::vector<std::vector<double>> ladder;  // raw energies per refinement
  RadialGrid finest;
  double max_shift = 0.0;  // last change of the extrapolated values, relative
};

struct RadialOptions {
  GridSpacing spacing = GridSpacing::log;
  int initial_points = 500;
  int max_refinements = 7;
  double relative_tol = 1e-9;
  double r_max = 0.0;  // 0 selects automatically
};

/// Halves the spacing until successive Richardson-extrapolated eigenvalues
/// shift by less than `relative_tol`. Throws ConvergenceError when the
/// refinement budget is exhausted.
RadialConvergence converged_radial_levels(const ModelSpec& model, int l, int count,
                                          const RadialOptions& options = {});

}  // namespace actiongate
