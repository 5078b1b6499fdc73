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

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

namespace actiongate {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// max_ij |M_ij|
double max_abs(const CMatrix& m);

/// max_ij |(U^dagger U - I)_ij|
double unitarity_defect(const CMatrix& u);

bool is_hermitian(const CMatrix& m, double tol);

/// exp(-i * h * t) for Hermitian h. 2x2 inputs take a closed-form path;
/// larger ones are diagonalized.
CMatrix expm_hermitian(const CMatrix& h, double t);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Sub-block of `m` on the listed indices (rows and columns).
CMatrix restrict_to(const CMatrix& m, std::span<const std::size_t> indices);

/// Dense unitary propagator. Construction through `checked` enforces
/// max|U^dagger U - I| <= tol.
class UnitaryMatrix {
 public:
  UnitaryMatrix() = default;
  static UnitaryMatrix identity(Eigen::Index n);
  static UnitaryMatrix checked(CMatrix m, double tol = 1e-8);
  /// No unitarity check. Used for intermediate products already known to
  /// be unitary.
  static UnitaryMatrix unchecked(CMatrix m);

  const CMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  cplx operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  UnitaryMatrix operator*(const UnitaryMatrix& rhs) const {
    return unchecked(m_ * rhs.m_);
  }
  UnitaryMatrix adjoint() const { return unchecked(m_.adjoint()); }

 private:
  explicit UnitaryMatrix(CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;
};

}  // namespace actiongate
