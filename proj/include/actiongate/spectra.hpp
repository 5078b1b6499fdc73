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

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace actiongate {

enum class ModelKind { isotropic_harmonic, anharmonic, coulomb, coulomb_perturbed };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

/// One of the four central-potential integrable models. Defaults are the
/// unit system hbar = m = 1.
///
///   isotropic_harmonic  V = m w^2 r^2 / 2
///   anharmonic          V = m w^2 (r^2 + c r^4) / 2
///   coulomb             V = -k / r
///   coulomb_perturbed   V = -(k / r + beta / r^2)
struct ModelSpec {
  ModelKind kind = ModelKind::isotropic_harmonic;
  double mass = 1.0;
  double omega = 1.0;
  double anharmonicity = 0.0;  // c, units 1/length^2
  double coulomb_k = 1.0;
  double beta = 0.0;
  double hbar = 1.0;
  int dimension = 3;

  /// Throws DomainError naming the offending parameter.
  void validate() const;

  static ModelSpec harmonic(double omega = 1.0, int dimension = 3);
  static ModelSpec anharmonic_oscillator(double c, double omega = 1.0, int dimension = 3);
  static ModelSpec coulomb_model(double k = 1.0, int dimension = 3);
  static ModelSpec perturbed_coulomb(double beta, double k = 1.0, int dimension = 3);
};

enum class Axis { r, theta, phi };

struct QuantumNumbers {
  int n_r = 0;
  int n_theta = 0;
  int n_phi = 0;

  int l() const { return n_theta + n_phi; }
  int n() const { return n_r + n_theta + n_phi; }
  int component(Axis axis) const;

  friend auto operator<=>(const QuantumNumbers&, const QuantumNumbers&) = default;
};

std::string to_string(const QuantumNumbers& qn);

struct ClassicalActions {
  double j_r = 0.0;
  double j_theta = 0.0;
  double j_phi = 0.0;

  double component(Axis axis) const;
  double& component(Axis axis);
};

/// Selects the closed form used for the anharmonic quantized energy. The
/// small-c form drops the c (2 n_r + l + 3/2)^2 term that the expansion of
/// the exact form produces; both are kept so the gap can be inspected.
enum class AnharmonicForm { exact, small_c };

/// Classical H0(J). Throws DomainError when the bound-motion or
/// square-root precondition fails.
double energy_classical(const ModelSpec& model, const ClassicalActions& j);

/// Quantized E0(n).
double energy_quantum(const ModelSpec& model, const QuantumNumbers& qn,
                      AnharmonicForm form = AnharmonicForm::exact);

/// Angular frequencies w^c_i = 2 pi dH0/dJ_i for the axes present in the
/// model dimension, from the closed forms and from central differences.
struct ClassicalFrequencies {
  std::vector<double> analytic;
  std::vector<double> numeric;
  double max_relative_error = 0.0;
};

ClassicalFrequencies classical_frequencies(const ModelSpec& model, const ClassicalActions& j);

/// (E0(a) - E0(b)) / hbar.
double transition_frequency(const ModelSpec& model, const QuantumNumbers& a,
                            const QuantumNumbers& b, AnharmonicForm form = AnharmonicForm::exact);

/// Quantum frequency along one axis, omega_i = (E0(n + e_i) - E0(n)) / hbar,
/// next to its semiclassical counterpart (1/hbar) dE0/dn_i.
/// relation_residuals[k] = omega_i - sum_{l=1}^{k+1} E0^(l) / (l! hbar).
struct SemiclassicalFrequency {
  double semiclassical = 0.0;
  double quantum = 0.0;
  std::vector<double> relation_residuals;
};

SemiclassicalFrequency semiclassical_frequency(const ModelSpec& model, const QuantumNumbers& qn,
                                               Axis axis, int order = 4,
                                               AnharmonicForm form = AnharmonicForm::exact);

struct Level {
  QuantumNumbers qn;
  double energy = 0.0;
};

/// Levels sorted by energy, ties broken by (n, n_r, n_theta, n_phi).
struct LevelSet {
  std::vector<Level> levels;
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> group_of;
};

/// Every admissible level with total n <= n_max. Degeneracy tolerance is
/// relative_tol times the spectral range.
LevelSet enumerate_levels(const ModelSpec& model, int n_max,
                          AnharmonicForm form = AnharmonicForm::exact,
                          double relative_tol = 1e-10);

/// Sorts and groups an arbitrary list of levels.
LevelSet make_level_set(std::vector<Level> levels, double relative_tol = 1e-10);

/// CSV with columns n_r,n_theta,n_phi,l,n,energy,degeneracy_group.
std::string level_set_csv(const LevelSet& levels);

}  // namespace actiongate
