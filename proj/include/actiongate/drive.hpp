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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "actiongate/linalg.hpp"
#include "actiongate/spectra.hpp"

namespace actiongate {

struct BasisLevel {
  std::string label;
  double energy = 0.0;
};

/// Ordered energy eigenbasis of H0. Frequencies are (E_i - E_j) / hbar.
class Basis {
 public:
  Basis() = default;
  Basis(std::vector<BasisLevel> levels, double hbar = 1.0);

  static Basis from_energies(const std::vector<double>& energies, double hbar = 1.0);
  static Basis from_level_set(const LevelSet& levels, double hbar = 1.0);

  std::size_t size() const noexcept { return levels_.size(); }
  double hbar() const noexcept { return hbar_; }
  double energy(std::size_t i) const { return levels_.at(i).energy; }
  const std::string& label(std::size_t i) const { return levels_.at(i).label; }
  const std::vector<BasisLevel>& levels() const noexcept { return levels_; }
  double frequency(std::size_t i, std::size_t j) const;
  /// Throws PairError when absent.
  std::size_t index_of(const std::string& label) const;
  /// diag(E_n) / hbar
  RVector angular_energies() const;

 private:
  std::vector<BasisLevel> levels_;
  double hbar_ = 1.0;
};

/// Hermitian amplitude matrix a_{nn'} with H1 = hbar sum a_{nn'} |n><n'|.
class ControlMatrix {
 public:
  ControlMatrix() = default;
  /// Throws DomainError unless |a - a^dagger| <= 1e-12 entrywise.
  explicit ControlMatrix(CMatrix a);

  static ControlMatrix zero(std::size_t n);
  /// Nearest-neighbour ladder a_{k+1,k} = sqrt(k + 1) along the given order.
  static ControlMatrix ladder(std::size_t n);

  const CMatrix& matrix() const noexcept { return a_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(a_.rows()); }
  cplx operator()(std::size_t i, std::size_t j) const;
  double max_abs() const;
  /// Sets a_ij = v and a_ji = conj(v).
  void set(std::size_t i, std::size_t j, cplx v);

 private:
  CMatrix a_;
};

struct DriveSpec {
  double epsilon = 0.0;
  double omega_d = 0.0;
  double phi = 0.0;
};

/// Index pair of a transition. `upper` is the level of higher energy (ties
/// broken by index) once normalized.
struct LevelPair {
  std::size_t upper = 0;
  std::size_t lower = 0;
};

/// Orders a pair so that E(upper) > E(lower), or upper > lower by index on
/// equal energies. Throws PairError for out-of-range or identical indices.
LevelPair normalized_pair(const Basis& basis, std::size_t a, std::size_t b);

/// H^I = H^I_+ + H^I_- + H^I_g at time t, in units of energy.
struct InteractionSplit {
  CMatrix plus;
  CMatrix minus;
  CMatrix diagonal;
};

InteractionSplit interaction_split(const Basis& basis, const ControlMatrix& control,
                                   const DriveSpec& drive, double t);

/// eps cos(w_d t + phi) U0^dagger H1 U0, the full interaction-picture
/// Hamiltonian.
CMatrix interaction_hamiltonian(const Basis& basis, const ControlMatrix& control,
                                const DriveSpec& drive, double t);

/// Interaction-picture Rabi propagator of a single resonant pair,
/// exp(-i (eps t / 2)(a_{mm'} e^{-i phi} |m><m'| + h.c.)), identity
/// elsewhere.
UnitaryMatrix rabi_propagator(const Basis& basis, const ControlMatrix& control,
                              const DriveSpec& drive, LevelPair pair, double t);

/// Rotating-wave generator (angular frequency units) for every pair whose
/// transition frequency lies within `tol` of omega_d and has nonzero
/// coupling: (eps / 2) sum (a_{nn'} e^{-i phi} |n><n'| + h.c.).
CMatrix resonant_generator(const Basis& basis, const ControlMatrix& control,
                           const DriveSpec& drive, double tol);

/// Free evolution diag(exp(-i E_n t / hbar)).
UnitaryMatrix free_propagator(const Basis& basis, double t);

enum class DriveModel {
  full,           // H0 + eps cos(w_d t + phi) H1
  rotating_wave,  // H0 + U0 H^I_- U0^dagger
};

struct ExactOptions {
  DriveModel model = DriveModel::full;
  /// Additional static Hermitian term (energy units) added to H0 during
  /// propagation only; the interaction frame stays that of H0.
  std::optional<CMatrix> static_perturbation;
  /// Re-run at 2x and 4x steps and require observed order 2 +/- 0.5.
  bool verify_order = false;
};

struct ExactPropagation {
  UnitaryMatrix u;
  double observed_order = 0.0;     // filled when verify_order is set
  double richardson_error = 0.0;   // |U(2n) - U(n)|_max / 3 when verify_order is set
};

/// Schroedinger-picture propagator from 0 to t by the exponential midpoint
/// rule with `steps` uniform steps.
ExactPropagation exact_propagator(const Basis& basis, const ControlMatrix& control,
                                  const DriveSpec& drive, double t, long steps,
                                  const ExactOptions& options = {});

/// max_ij |U(n) - U(2n)| / |U(2n) - U(4n)|, reported as log2.
double observed_order(const CMatrix& coarse, const CMatrix& mid, const CMatrix& fine);

struct DysonOptions {
  int points_per_period = 4096;
  long min_points = 256;
  /// QuadratureError above this grid-halving difference.
  double quadrature_tol = 1e-6;
};

struct DysonResult {
  CMatrix partial_sum;                 // sum_{n <= N_max} U^{I(n)}(t)
  std::vector<double> term_norms;      // Frobenius norm of each included term
  double next_term_norm = 0.0;         // norm of U^{I(N_max + 1)}(t)
  double quadrature_error = 0.0;       // grid-halving estimate on the partial sum
  long points = 0;
};

/// Truncated Dyson series of the interaction-picture propagator by Picard
/// iteration with cumulative trapezoid integration on a shared grid.
DysonResult dyson_propagator(const Basis& basis, const ControlMatrix& control,
                             const DriveSpec& drive, int n_max, double t,
                             const DysonOptions& options = {});

/// Two-level parameters of a pair (|0> = lower, |1> = upper).
struct TwoLevelParams {
  double omega_bar = 0.0;     // (E_0 + E_1) / hbar
  double omega_tilde = 0.0;   // (E_1 - E_0) / hbar
  double detuning = 0.0;      // omega_d - omega_tilde
  double coupling = 0.0;      // eps |a_10|
  double phi_tilde = 0.0;     // a_10 = |a_10| e^{-i phi_tilde}
  double phi_prime = 0.0;     // phi + phi_tilde
  double omega_rabi = 0.0;    // sqrt(detuning^2 + coupling^2)
  double omega_d = 0.0;
};

TwoLevelParams two_level_params(const Basis& basis, const ControlMatrix& control,
                                const DriveSpec& drive, LevelPair pair);

enum class TwoLevelForm {
  /// Exact solution of the rotating-wave two-level problem: the phase
  /// factors carry omega_d.
  rotating_frame,
  /// Phase factors carry omega_tilde instead of omega_d.
  /// Agrees with rotating_frame only at zero detuning.
  printed,
};

struct TwoLevelSolution {
  UnitaryMatrix u;         // basis (|0>, |1>)
  double transition = 0.0; // P_01 = (coupling / Omega)^2 sin^2(Omega t / 2)
};

TwoLevelSolution two_level_analytic(const TwoLevelParams& params, double t,
                                    TwoLevelForm form = TwoLevelForm::rotating_frame);

/// Static two-level problem at omega_d = 0.
struct ZeroDriveParams {
  double epsilon0 = 0.0;      // eps cos phi
  double omega_t = 0.0;       // omega_bar + eps0 (a00 + a11)
  double omega_r = 0.0;       // omega_tilde + eps0 (a11 - a00)
  double gamma = 0.0;         // 2 eps0 |a_10|
  double omega0 = 0.0;        // sqrt(omega_r^2 + gamma^2)
  double phi_tilde = 0.0;
  std::array<double, 3> axis{0.0, 0.0, 1.0};
};

ZeroDriveParams zero_drive_params(const Basis& basis, const ControlMatrix& control,
                                  const DriveSpec& drive, LevelPair pair);

UnitaryMatrix zero_drive_propagator(const ZeroDriveParams& params, double t);

struct RwaRatio {
  LevelPair pair;
  std::string kind;  // "counter_rotating", "diagonal", "off_resonant"
  double value = 0.0;
  bool flagged = false;
};

struct RwaReport {
  LevelPair target;
  double omega_d = 0.0;
  double threshold = 0.05;
  double collision_tol = 0.0;
  std::vector<RwaRatio> ratios;
  std::vector<LevelPair> collisions;
  bool all_below_threshold() const;
};

struct RwaOptions {
  double threshold = 0.05;
  /// Negative selects 10 eps max|a|.
  double collision_tol = -1.0;
  /// Pairs excluded from the collision check (intended companions).
  std::vector<LevelPair> companions;
};

/// Tabulates the rotating-wave small parameters around a resonant target.
/// Throws ResonanceCollision if another coupled pair sits within the
/// collision tolerance of omega_d, unless `throw_on_collision` is false.
RwaReport rwa_validity_report(const Basis& basis, const ControlMatrix& control,
                              const DriveSpec& drive, LevelPair target,
                              const RwaOptions& options = {}, bool throw_on_collision = true);

double default_collision_tol(const ControlMatrix& control, const DriveSpec& drive);

}  // namespace actiongate
