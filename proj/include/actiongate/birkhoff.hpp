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

#include <optional>
#include <span>
#include <vector>

#include "actiongate/linalg.hpp"
#include "actiongate/resonance.hpp"
#include "actiongate/spectra.hpp"

namespace actiongate {

/// Second-order expansion of H0(J) about J_o over the axes present in the
/// model dimension:
///   H0(J_o + dJ) ~ H0(J_o) + sum g_i dJ_i + 1/2 sum h_ij dJ_i dJ_j
/// with g_i = dH0/dJ_i (so the angular frequency is 2 pi g_i).
struct ExpansionCoeffs {
  ModelSpec model;
  ClassicalActions j0;
  std::vector<Axis> axes;
  double h0 = 0.0;
  RVector gradient;
  RMatrix hessian;
  /// Central-difference values; equal to the primary ones for models
  /// without closed-form derivatives.
  RVector numeric_gradient;
  RMatrix numeric_hessian;
  bool analytic = false;
  /// max relative gap between closed-form and numeric derivatives, scaled by
  /// the largest entry of each; zero when only numeric values exist.
  double max_relative_error = 0.0;
};

/// Closed forms for the harmonic and Coulomb models, central differences with
/// step 1e-5 |J_o| otherwise. Throws DomainError unless every present action
/// lies strictly inside the bound-motion domain.
ExpansionCoeffs taylor_expand(const ModelSpec& model, const ClassicalActions& j0);

/// det(h_ij).
double nondegeneracy_determinant(const ExpansionCoeffs& coeffs);

/// Integer relations among the frequencies; the same search as
/// resonance_scan.
std::vector<ResonanceRelation> incommensurability_check(std::span<const double> omega, int k_max = 6,
                                                        double tol = 1e-9);
std::vector<ResonanceRelation> incommensurability_check(const ExpansionCoeffs& coeffs, int k_max = 6,
                                                        double tol = 1e-9);

enum class QuantizationConvention {
  number,      // dJ_i -> 2 pi hbar dn_i
  oscillator,  // dJ_i -> 2 pi hbar (dn_i + 1/2)
};

/// Diagonal Hamiltonian on number states dn_i in [0, cutoff_i):
///   E(dn) = H0(J_o) + sum c_i x_i + 1/2 sum c_ij x_i x_j,
///   c_i = 2 pi hbar g_i,  c_ij = (2 pi hbar)^2 h_ij,
/// where x_i = dn_i, or dn_i + 1/2 under the oscillator convention.
struct QuantizedBirkhoff {
  double h0 = 0.0;
  RVector c;
  RMatrix c2;
  std::vector<int> cutoffs;
  QuantizationConvention convention = QuantizationConvention::number;
  double hbar = 1.0;

  double energy(std::span<const int> dn) const;
  /// Every state of the cutoff box, last mode fastest.
  std::vector<std::vector<int>> states() const;
  std::vector<double> spectrum() const;
};

/// Throws DomainError for cutoffs below 2 or a count that does not match
/// the expansion axes.
QuantizedBirkhoff quantize_truncated(const ExpansionCoeffs& coeffs, std::span<const int> cutoffs,
                                     QuantizationConvention convention = QuantizationConvention::number);

/// Exact H0(J_o + dJ) with dJ from the quantization convention.
double exact_shifted_energy(const ExpansionCoeffs& coeffs, std::span<const int> dn,
                            QuantizationConvention convention = QuantizationConvention::number);

/// sup |g'''(s)| / 6 for g(s) = H0(J_o + s dJ), s in [0, 1]: the Lagrange
/// bound on |exact - truncated|. The supremum is taken over 201 samples of a
/// fourth-order central difference, inflated by 10%.
double taylor_remainder_bound(const ExpansionCoeffs& coeffs, std::span<const int> dn,
                              QuantizationConvention convention = QuantizationConvention::number);

/// diag(1, 1, 1, e^{-i theta}) with theta = c_ij t / hbar on |00>, |01>,
/// |10>, |11>.
UnitaryMatrix coupling_phase_gate(double c_ij, double t, double hbar = 1.0);

}  // namespace actiongate
