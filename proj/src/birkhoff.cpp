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


#include "actiongate/birkhoff.hpp"

#include <algorithm>
#include <cmath>

#include "actiongate/errors.hpp"

namespace actiongate {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

std::vector<Axis> present_axes(int dimension) {
  std::vector<Axis> out{Axis::r};
  if (dimension >= 2) out.push_back(Axis::theta);
  if (dimension >= 3) out.push_back(Axis::phi);
  return out;
}

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::r: return "J_r";
    case Axis::theta: return "J_theta";
    case Axis::phi: return "J_phi";
  }
  return "J";
}

ClassicalActions shifted(const ClassicalActions& j0, const std::vector<Axis>& axes, std::span<const double> dj) {
  ClassicalActions j = j0;
  for (std::size_t i = 0; i < axes.size(); ++i) j.component(axes[i]) += dj[i];
  return j;
}

double energy_at(const ModelSpec& m, const ClassicalActions& j0, const std::vector<Axis>& axes,
                 std::span<const double> dj) {
  return energy_classical(m, shifted(j0, axes, dj));
}

}  // namespace

ExpansionCoeffs taylor_expand(const ModelSpec& model, const ClassicalActions& j0) {
  model.validate();
  ExpansionCoeffs out;
  out.model = model;
  out.j0 = j0;
  out.axes = present_axes(model.dimension);
  const auto& axes = out.axes;
  const auto d = static_cast<Eigen::Index>(axes.size());
  out.h0 = energy_classical(model, j0);

  double norm = 0.0;
  for (Axis a : axes) norm += j0.component(a) * j0.component(a);
  norm = std::sqrt(norm);
  const double h = 1e-5 * norm;
  for (Axis a : axes)
    if (!(j0.component(a) > 3.0 * h))
      throw DomainError(std::string("expansion point must lie inside the action domain; ") + axis_name(a) +
                        " is at the boundary");

  // central differences
  std::vector<double> dj(axes.size(), 0.0);
  auto f = [&]() {
    try {
      return energy_at(model, j0, axes, dj);
    } catch (const DomainError& e) {
      throw DomainError(std::string("expansion point too close to the domain boundary: ") + e.what());
    }
  };
  out.numeric_gradient = RVector::Zero(d);
  out.numeric_hessian = RMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    dj[i] = h;
    const double fp = f();
    dj[i] = -h;
    const double fm = f();
    dj[i] = 0.0;
    out.numeric_gradient(i) = (fp - fm) / (2.0 * h);
    out.numeric_hessian(i, i) = (fp - 2.0 * out.h0 + fm) / (h * h);
    for (Eigen::Index k = 0; k < i; ++k) {
      double acc = 0.0;
      for (int si : {1, -1})
        for (int sk : {1, -1}) {
          dj[i] = si * h;
          dj[k] = sk * h;
          acc += si * sk * f();
        }
      dj[i] = dj[k] = 0.0;
      out.numeric_hessian(i, k) = out.numeric_hessian(k, i) = acc / (4.0 * h * h);
    }
  }

  const double angular = j0.j_theta + j0.j_phi;
  switch (model.kind) {
    case ModelKind::isotropic_harmonic: {
      out.gradient = RVector::Zero(d);
      for (Eigen::Index i = 0; i < d; ++i)
        out.gradient(i) = model.omega / kTwoPi * (axes[i] == Axis::r ? 2.0 : 1.0);
      out.hessian = RMatrix::Zero(d, d);
      out.analytic = true;
      break;
    }
    case ModelKind::coulomb: {
      const double s = j0.j_r + angular;
      const double a = 2.0 * kPi * kPi * model.mass * model.coulomb_k * model.coulomb_k;
      out.gradient = RVector::Constant(d, 2.0 * a / (s * s * s));
      out.hessian = RMatrix::Constant(d, d, -6.0 * a / (s * s * s * s));
      out.analytic = true;
      break;
    }
    default:
      out.gradient = out.numeric_gradient;
      out.hessian = out.numeric_hessian;
      break;
  }

  if (out.analytic) {
    const double gscale = out.gradient.cwiseAbs().maxCoeff();
    const double hscale = std::max(out.hessian.cwiseAbs().maxCoeff(), gscale / norm);
    out.max_relative_error = std::max((out.gradient - out.numeric_gradient).cwiseAbs().maxCoeff() / gscale,
                                      (out.hessian - out.numeric_hessian).cwiseAbs().maxCoeff() / hscale);
  }
  return out;
}

double nondegeneracy_determinant(const ExpansionCoeffs& coeffs) {
  if (coeffs.hessian.rows() != coeffs.hessian.cols()) throw DimensionMismatch("Hessian must be square");
  return coeffs.hessian.determinant();
}

std::vector<ResonanceRelation> incommensurability_check(std::span<const double> omega, int k_max, double tol) {
  ResonanceScanOptions o;
  o.k_max = k_max;
  o.tol = tol;
  return resonance_scan(omega, o);
}

std::vector<ResonanceRelation> incommensurability_check(const ExpansionCoeffs& coeffs, int k_max, double tol) {
  std::vector<double> w(coeffs.gradient.data(), coeffs.gradient.data() + coeffs.gradient.size());
  for (double& x : w) x *= kTwoPi;
  return incommensurability_check(w, k_max, tol);
}

namespace {

std::vector<double> quantized_shift(const ExpansionCoeffs& coeffs, std::span<const int> dn,
                                    QuantizationConvention convention) {
  if (dn.size() != coeffs.axes.size()) throw DimensionMismatch("number vector does not match the expansion axes");
  const double scale = kTwoPi * coeffs.model.hbar;
  const double offset = convention == QuantizationConvention::oscillator ? 0.5 : 0.0;
  std::vector<double> dj;
  for (int n : dn) dj.push_back(scale * (n + offset));
  return dj;
}

}  // namespace

double QuantizedBirkhoff::energy(std::span<const int> dn) const {
  if (static_cast<Eigen::Index>(dn.size()) != c.size())
    throw DimensionMismatch("number vector does not match the mode count");
  const double offset = convention == QuantizationConvention::oscillator ? 0.5 : 0.0;
  RVector x(c.size());
  for (Eigen::Index i = 0; i < c.size(); ++i) x(i) = dn[static_cast<std::size_t>(i)] + offset;
  return h0 + c.dot(x) + 0.5 * x.dot(c2 * x);
}

std::vector<std::vector<int>> QuantizedBirkhoff::states() const {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(cutoffs.size(), 0);
  bool more = true;
  while (more) {
    out.push_back(cur);
    more = false;
    for (std::size_t k = cur.size(); k-- > 0;) {
      if (++cur[k] < cutoffs[k]) {
        more = true;
        break;
      }
      cur[k] = 0;
    }
  }
  return out;
}

std::vector<double> QuantizedBirkhoff::spectrum() const {
  std::vector<double> e;
  for (const auto& s : states()) e.push_back(energy(s));
  return e;
}

QuantizedBirkhoff quantize_truncated(const ExpansionCoeffs& coeffs, std::span<const int> cutoffs,
                                     QuantizationConvention convention) {
  if (cutoffs.size() != coeffs.axes.size()) throw DomainError("one cutoff per expansion axis is required");
  for (int c : cutoffs)
    if (c < 2) throw DomainError("mode cutoffs must be at least 2");
  QuantizedBirkhoff q;
  const double s = kTwoPi * coeffs.model.hbar;
  q.h0 = coeffs.h0;
  q.c = s * coeffs.gradient;
  q.c2 = s * s * 0.5 * (coeffs.hessian + coeffs.hessian.transpose());
  q.cutoffs.assign(cutoffs.begin(), cutoffs.end());
  q.convention = convention;
  q.hbar = coeffs.model.hbar;
  return q;
}

double exact_shifted_energy(const ExpansionCoeffs& coeffs, std::span<const int> dn,
                            QuantizationConvention convention) {
  const auto dj = quantized_shift(coeffs, dn, convention);
  return energy_at(coeffs.model, coeffs.j0, coeffs.axes, dj);
}

double taylor_remainder_bound(const ExpansionCoeffs& coeffs, std::span<const int> dn,
                              QuantizationConvention convention) {
  const auto dj = quantized_shift(coeffs, dn, convention);
  auto g = [&](double s) {
    std::vector<double> step(dj.size());
    for (std::size_t i = 0; i < dj.size(); ++i) step[i] = s * dj[i];
    return energy_at(coeffs.model, coeffs.j0, coeffs.axes, step);
  };
  const double h = 1e-2;
  double sup = 0.0;
  for (int k = 0; k <= 200; ++k) {
    const double s = k / 200.0;
    const double d3 = (-g(s + 3 * h) + 8 * g(s + 2 * h) - 13 * g(s + h) + 13 * g(s - h) - 8 * g(s - 2 * h) +
                       g(s - 3 * h)) /
                      (8 * h * h * h);
    sup = std::max(sup, std::abs(d3));
  }
  return 1.1 * sup / 6.0;
}

UnitaryMatrix coupling_phase_gate(double c_ij, double t, double hbar) {
  if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
  CMatrix m = CMatrix::Identity(4, 4);
  m(3, 3) = std::polar(1.0, -c_ij * t / hbar);
  return UnitaryMatrix::unchecked(std::move(m));
}

}  // namespace actiongate
