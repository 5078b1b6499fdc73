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
#include <vector>

#include "actiongate/drive.hpp"
#include "actiongate/linalg.hpp"

namespace actiongate {

/// R_n(theta) = exp(-i theta n.sigma / 2).
struct Rotation {
  std::array<double, 3> axis{1.0, 0.0, 0.0};
  double angle = 0.0;

  /// Throws DomainError unless |n| = 1 within 1e-12.
  void validate() const;

  static Rotation x(double theta) { return {{1.0, 0.0, 0.0}, theta}; }
  static Rotation y(double theta) { return {{0.0, 1.0, 0.0}, theta}; }
  static Rotation z(double theta) { return {{0.0, 0.0, 1.0}, theta}; }
  /// Axis (cos alpha, -sin alpha, 0), the convention of the Rabi axis.
  static Rotation in_plane(double alpha, double theta);
};

UnitaryMatrix rotation_matrix(const Rotation& rot);

enum class GateName { I, X, Y, Z, H, S, CSWAP, CU, CNOT_prime, CNOT };

std::string to_string(GateName name);
/// Accepts "I", "X", "Y", "Z", "H", "S", "CSWAP", "CU", "CNOT'", "CNOT_prime", "CNOT".
GateName gate_name_from_string(const std::string& name);
bool is_two_qubit(GateName name);

/// Canonical matrices and their rotation-product constructions:
///   X = i R_x(pi)            Y = i R_y(pi)           Z = R_x(pi) R_y(pi)
///   H = i R_x(pi) R_y(pi/2)  S = e^{-i pi/4} R_y(-pi/2) R_x(pi/2) R_y(pi/2)
///   CNOT' = CU(R_x(pi))      CNOT = (S x I) CNOT'
/// The product form is evaluated exactly as written, prefactors included.
struct StandardGate {
  UnitaryMatrix product_form;
  UnitaryMatrix canonical;
};

struct GateArgs {
  double theta = 0.0;               // CSWAP angle
  std::optional<CMatrix> unitary;   // CU target
};

StandardGate standard_gate(GateName name, const GateArgs& args = {});

UnitaryMatrix canonical_gate(GateName name, const GateArgs& args = {});

/// Diagonal-block CSWAP(theta): R_x(theta) on {|01>, |10>}.
UnitaryMatrix cswap(double theta);

/// |0><0| x I + |1><1| x U
UnitaryMatrix controlled(const CMatrix& u);

/// |tr(U^dagger V)| / d. Throws DimensionMismatch on unequal sizes.
double fidelity(const CMatrix& u, const CMatrix& v);
inline double fidelity(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  return fidelity(u.matrix(), v.matrix());
}

struct PulseSegment {
  DriveSpec drive;
  double duration = 0.0;
  LevelPair pair;
};

enum class Frame { interaction, schrodinger };

struct PulseSchedule {
  std::vector<PulseSegment> segments;
  Frame frame = Frame::interaction;
};

/// Time-ordered rotation list whose product reproduces `name` up to the
/// printed prefactor. Empty for I.
std::vector<Rotation> single_qubit_decomposition(GateName name);

struct SynthesisOptions {
  double epsilon = 0.01;
  RwaOptions rwa;          // collision check around the target
  bool check_rwa = true;
};

/// Drive segment realizing `target` on `pair` in the interaction frame.
/// omega_{mm'} > 0: w_d = w_{mm'}, phi = alpha - phi_tilde, t = theta / (eps |a|).
/// omega_{mm'} = 0: static drive with phi in {0, pi}, t = theta / (2 eps |a|),
/// available only for axes +-(cos phi_tilde, -sin phi_tilde, 0) and a_00 = a_11.
/// theta is normalized to [0, 2 pi) (negative angles flip the axis).
PulseSegment synthesize_rotation(const Basis& basis, const ControlMatrix& control, LevelPair pair,
                                 const Rotation& target, const SynthesisOptions& options = {});

enum class Engine { rabi, exact };

struct ExecutionOptions {
  /// Pairs whose frequency lies within this of omega_d join the rotating-wave
  /// generator of the rabi engine. Negative selects 10 eps max|a|.
  double resonance_tol = -1.0;
  /// Steps per period of the fastest frequency in H(t) for the exact engine.
  int steps_per_period = 64;
  long min_steps = 64;
  std::optional<CMatrix> static_perturbation;
};

/// Ordered product of per-segment propagators. Each segment's drive clock
/// starts at zero; in the interaction frame each factor is U0(t_k)^dagger U_k.
UnitaryMatrix execute_schedule(const Basis& basis, const ControlMatrix& control,
                               const PulseSchedule& schedule, Engine engine,
                               const ExecutionOptions& options = {});

/// Segment sequence for a single-qubit gate on the logical pair.
PulseSchedule synthesize_single_qubit_gate(const Basis& basis, const ControlMatrix& control,
                                           LevelPair logical, GateName name,
                                           const SynthesisOptions& options = {});

/// Logical indices of a two-qubit register, |0~> .. |3~>.
using RegisterIndices = std::array<std::size_t, 4>;

/// CNOT = (S x I) CNOT': R_x(pi) on (|3~>, |2~>) followed by S on the first
/// qubit, driven through (|2~>, |0~>) with (|3~>, |1~>) as companion.
PulseSchedule synthesize_cnot(const Basis& basis, const ControlMatrix& control,
                              const RegisterIndices& reg, const SynthesisOptions& options = {});

/// CSWAP(theta) as R_x(theta) on (|2~>, |1~>).
PulseSchedule synthesize_cswap(const Basis& basis, const ControlMatrix& control,
                               const RegisterIndices& reg, double theta,
                               const SynthesisOptions& options = {});

}  // namespace actiongate
