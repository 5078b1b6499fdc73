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


#include "actiongate/linalg.hpp"

#include <cmath>
#include <string>

#include "actiongate/errors.hpp"

namespace actiongate {

double max_abs(const CMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double unitarity_defect(const CMatrix& u) {
  const CMatrix d = u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols());
  return max_abs(d);
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

namespace {

// exp(-i t (h0 I + hx X + hy Y + hz Z))
CMatrix expm_hermitian_2x2(const CMatrix& h, double t) {
  const double h0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
  const double hz = 0.5 * (h(0, 0).real() - h(1, 1).real());
  const double hx = 0.5 * (h(0, 1).real() + h(1, 0).real());
  const double hy = 0.5 * (h(1, 0).imag() - h(0, 1).imag());
  const double norm = std::sqrt(hx * hx + hy * hy + hz * hz);
  const double c = std::cos(norm * t);
  // sin(norm t)/norm, finite as norm -> 0
  const double s = norm > 1e-300 ? std::sin(norm * t) / norm : t;
  const cplx phase = std::exp(-kI * (h0 * t));
  CMatrix u(2, 2);
  u(0, 0) = phase * cplx(c, -s * hz);
  u(1, 1) = phase * cplx(c, s * hz);
  u(0, 1) = phase * (-kI * s) * cplx(hx, -hy);
  u(1, 0) = phase * (-kI * s) * cplx(hx, hy);
  return u;
}

}  // namespace

CMatrix expm_hermitian(const CMatrix& h, double t) {
  if (h.rows() == 1) {
    CMatrix u(1, 1);
    u(0, 0) = std::exp(-kI * (h(0, 0).real() * t));
    return u;
  }
  if (h.rows() == 2) return expm_hermitian_2x2(h, t);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  const RVector& w = es.eigenvalues();
  CVector phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) phases(i) = std::exp(-kI * (w(i) * t));
  const CMatrix& v = es.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix restrict_to(const CMatrix& m, std::span<const std::size_t> indices) {
  const auto n = static_cast<Eigen::Index>(indices.size());
  CMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out(i, j) = m(static_cast<Eigen::Index>(indices[i]), static_cast<Eigen::Index>(indices[j]));
  return out;
}

UnitaryMatrix UnitaryMatrix::identity(Eigen::Index n) {
  return UnitaryMatrix(CMatrix::Identity(n, n));
}

UnitaryMatrix UnitaryMatrix::checked(CMatrix m, double tol) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("unitary matrix must be square");
  const double defect = unitarity_defect(m);
  if (!(defect <= tol))
    throw ConvergenceError("propagator lost unitarity: max|U^dagger U - I| = " +
                           std::to_string(defect));
  return UnitaryMatrix(std::move(m));
}

UnitaryMatrix UnitaryMatrix::unchecked(CMatrix m) { return UnitaryMatrix(std::move(m)); }

}  // namespace actiongate
