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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "actiongate/drive.hpp"
#include "actiongate/gates.hpp"
#include "actiongate/spectra.hpp"

namespace actiongate {

enum class EncodingVariant { single_action, two_action, three_action, two_system, three_system };

std::string to_string(EncodingVariant v);
EncodingVariant encoding_variant_from_string(const std::string& name);

/// One logical qubit. `zero` and `one` hold one label per subsystem.
///
///   single_action, two_action, three_action   one subsystem; the labels
///       differ in exactly 1, 2 or 3 quantum numbers
///   two_system, three_system                  2 or 3 subsystems
struct EncodingSpec {
  EncodingVariant variant = EncodingVariant::single_action;
  std::vector<ModelSpec> subsystems;
  std::vector<QuantumNumbers> zero;
  std::vector<QuantumNumbers> one;
  AnharmonicForm form = AnharmonicForm::exact;

  /// Throws DomainError on any invariant violation.
  void validate() const;

  /// |n> vs |n + 1> along `axis` of a single model.
  static EncodingSpec single(const ModelSpec& model, QuantumNumbers zero, Axis axis, int step = 1);
};

/// Tensor-product basis over every subsystem of a register of one or more
/// logical qubits, each qubit owning its own subsystems in order.
struct EncodedBasis {
  Basis basis;
  std::vector<ModelSpec> subsystems;
  /// labels[i][s] = quantum numbers of subsystem s in basis state i.
  std::vector<std::vector<QuantumNumbers>> labels;
  /// Computational states, first qubit most significant: for two qubits
  /// |0~> = |00>, |1~> = |01>, |2~> = |10>, |3~> = |11>.
  std::vector<std::size_t> logical;
  std::size_t qubits = 0;

  std::size_t index_of(std::span<const QuantumNumbers> state) const;
  /// Logical indices of a two-qubit register.
  RegisterIndices register_indices() const;
};

struct EncodingOptions {
  /// Largest total quantum number kept per subsystem. Empty selects one
  /// above the largest logical label of that subsystem.
  std::vector<int> cutoffs;
  std::size_t max_dimension = 4096;
};

/// Throws CutoffError if a logical label exceeds its subsystem cutoff and
/// SizeError above `max_dimension` states.
EncodedBasis build_encoding_basis(std::span<const EncodingSpec> qubits, const EncodingOptions& options = {});
EncodedBasis build_encoding_basis(const EncodingSpec& qubit, const EncodingOptions& options = {});

/// Nearest-neighbour couplings inside each subsystem: states that differ by
/// one unit in a single quantum number of a single subsystem are coupled with
/// amplitude sqrt(max n). Cross-subsystem amplitudes are zero.
ControlMatrix default_control(const EncodedBasis& basis);

enum class Verdict { selective, collision, needs_zero_drive };

std::string to_string(Verdict v);

struct SpuriousTransition {
  LevelPair pair;
  double frequency = 0.0;  // |omega_{nn'}|
  double detuning = 0.0;   // | |omega_{nn'}| - omega~ |
  double coupling = 0.0;   // eps |a_{nn'}|
  double leakage = 0.0;    // coupling / detuning, infinite at zero detuning
  bool collision = false;  // detuning below the collision tolerance
  bool leaky = false;      // leakage at or above the guard
};

struct SelectivityReport {
  LevelPair target;
  double target_frequency = 0.0;
  double target_coupling = 0.0;
  double guard = 0.05;
  double collision_tol = 0.0;
  std::vector<SpuriousTransition> spurious;
  Verdict verdict = Verdict::selective;
};

struct SelectivityOptions {
  double epsilon = 1e-3;
  double guard = 0.05;
  /// Negative selects 10 eps max|a|.
  double collision_tol = -1.0;
};

/// Coupled transitions that touch the target pair, ranked against the
/// target frequency. The verdict is collision when any of them collides or
/// leaks, needs_zero_drive when the target frequency vanishes, otherwise
/// selective.
SelectivityReport selectivity_check(const Basis& basis, const ControlMatrix& control, LevelPair target,
                                    const SelectivityOptions& options = {});

enum class SwapStrategy {
  zero_drive,           // omega~_21 = 0, static drive on (|2~>, |1~>)
  frequency_selection,  // omega~_30 != 0, R_x on (|3~>, |0~>)
  spaced,               // omega~_21 != 0, R_x on (|2~>, |1~>)
};

std::string to_string(SwapStrategy s);

struct StrategyAssessment {
  SwapStrategy strategy;
  bool available = false;
  std::string reason;
};

struct TwoQubitPlan {
  SwapStrategy strategy;
  LevelPair pair;
  PulseSchedule schedule;
  UnitaryMatrix target;           // on |0~> .. |3~>
  double predicted_fidelity = 0.0;
  std::vector<StrategyAssessment> assessments;
};

struct TwoQubitPlanOptions {
  double theta = kPi / 2;
  double epsilon = 1e-3;
  double guard = 0.05;
  Engine engine = Engine::exact;
  ExecutionOptions execution;
};

/// Picks the first available of zero_drive, spaced, frequency_selection and
/// simulates it. Throws NoStrategy when none applies.
TwoQubitPlan two_qubit_plan(const EncodedBasis& basis, const ControlMatrix& control,
                            const TwoQubitPlanOptions& options = {});

}  // namespace actiongate
