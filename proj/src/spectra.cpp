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


#include "actiongate/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <sstream>

#include "actiongate/detail/closed_forms.hpp"
#include "actiongate/errors.hpp"
#include "actiongate/format.hpp"
#include "actiongate/resonance.hpp"

namespace actiongate {

using detail::kTwoPi;

namespace {

constexpr double kPiD = kTwoPi / 2.0;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw DomainError(std::string("model parameter ") + name + " must be positive and finite");
}

bool is_oscillator(ModelKind k) {
  return k == ModelKind::isotropic_harmonic || k == ModelKind::anharmonic;
}

void check_axes(const ModelSpec& m, const QuantumNumbers& qn) {
  if (qn.n_r < 0 || qn.n_theta < 0 || qn.n_phi < 0)
    throw DomainError("quantum numbers must be non-negative: " + to_string(qn));
  if (m.dimension == 1 && (qn.n_theta != 0 || qn.n_phi != 0))
    throw DomainError("dimension 1 admits only n_r: " + to_string(qn));
  if (m.dimension == 2 && qn.n_phi != 0)
    throw DomainError("dimension 2 admits only (n_r, n_theta): " + to_string(qn));
}

void check_axes(const ModelSpec& m, const ClassicalActions& j) {
  if (!(j.j_r >= 0.0) || !(j.j_theta >= 0.0) || !(j.j_phi >= 0.0))
    throw DomainError("actions must be non-negative");
  if (m.dimension == 1 && (j.j_theta != 0.0 || j.j_phi != 0.0))
    throw DomainError("dimension 1 admits only J_r");
  if (m.dimension == 2 && j.j_phi != 0.0)
    throw DomainError("dimension 2 admits only (J_r, J_theta)");
}

std::vector<Axis> axes_for(int dimension) {
  std::vector<Axis> out{Axis::r};
  if (dimension >= 2) out.push_back(Axis::theta);
  if (dimension >= 3) out.push_back(Axis::phi);
  return out;
}

void check_quantum_domain(const ModelSpec& m, const QuantumNumbers& qn, AnharmonicForm form) {
  const double h = m.hbar;
  const double l = qn.l();
  if (m.kind == ModelKind::anharmonic && form == AnharmonicForm::exact) {
    const double c = m.anharmonicity;
    const double big_n = 2.0 * qn.n_r + l + 1.5;
    const double arg = 1.0 - 3.0 * h / (m.mass * m.omega) * big_n * c +
                       3.0 * h * h / (4.0 * m.mass * m.mass * m.omega * m.omega) * (l + 1.5) *
                           (l - 0.5) * c * c;
    if (!(arg > 0.0))
      throw DomainError("anharmonic quantized energy: square-root argument " + format_double(arg) +
                        " is not positive at " + to_string(qn));
  }
  if (m.kind == ModelKind::coulomb_perturbed) {
    const double arg = (l + 0.5) * (l + 0.5) - 2.0 * m.mass * m.beta / (h * h);
    if (!(arg > 0.0))
      throw DomainError("perturbed Coulomb: l' is imaginary since 2 m beta / hbar^2 >= (l + 1/2)^2 at " +
                        to_string(qn));
    const double lp = -0.5 + std::sqrt(arg);
    if (!(qn.n_r + lp + 1.0 > 0.0))
      throw DomainError("perturbed Coulomb: n_r + l' + 1 must be positive");
  }
}

double quantum_energy_real(const ModelSpec& m, double nr, double nth, double nph,
                           AnharmonicForm form) {
  return detail::quantum_energy<double>(m, nr, nth, nph, form);
}

}  // namespace

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::isotropic_harmonic: return "isotropic_harmonic";
    case ModelKind::anharmonic: return "anharmonic";
    case ModelKind::coulomb: return "coulomb";
    case ModelKind::coulomb_perturbed: return "coulomb_perturbed";
  }
  return "unknown";
}

ModelKind model_kind_from_string(const std::string& name) {
  for (auto k : {ModelKind::isotropic_harmonic, ModelKind::anharmonic, ModelKind::coulomb,
                 ModelKind::coulomb_perturbed})
    if (to_string(k) == name) return k;
  throw DomainError("unknown model kind '" + name + "'");
}

void ModelSpec::validate() const {
  require_positive(mass, "m");
  require_positive(hbar, "hbar");
  if (dimension < 1 || dimension > 3) throw DomainError("model dimension must be 1, 2 or 3");
  if (is_oscillator(kind)) require_positive(omega, "omega");
  if (kind == ModelKind::anharmonic && !(anharmonicity >= 0.0))
    throw DomainError("model parameter c must be non-negative");
  if (kind == ModelKind::coulomb || kind == ModelKind::coulomb_perturbed)
    require_positive(coulomb_k, "k");
  if (kind == ModelKind::coulomb_perturbed && !(beta >= 0.0))
    throw DomainError("model parameter beta must be non-negative");
}

ModelSpec ModelSpec::harmonic(double omega, int dimension) {
  ModelSpec m;
  m.kind = ModelKind::isotropic_harmonic;
  m.omega = omega;
  m.dimension = dimension;
  return m;
}

ModelSpec ModelSpec::anharmonic_oscillator(double c, double omega, int dimension) {
  ModelSpec m = harmonic(omega, dimension);
  m.kind = ModelKind::anharmonic;
  m.anharmonicity = c;
  return m;
}

ModelSpec ModelSpec::coulomb_model(double k, int dimension) {
  ModelSpec m;
  m.kind = ModelKind::coulomb;
  m.coulomb_k = k;
  m.dimension = dimension;
  return m;
}

ModelSpec ModelSpec::perturbed_coulomb(double beta, double k, int dimension) {
  ModelSpec m = coulomb_model(k, dimension);
  m.kind = ModelKind::coulomb_perturbed;
  m.beta = beta;
  return m;
}

int QuantumNumbers::component(Axis axis) const {
  switch (axis) {
    case Axis::r: return n_r;
    case Axis::theta: return n_theta;
    case Axis::phi: return n_phi;
  }
  return 0;
}

std::string to_string(const QuantumNumbers& qn) {
  return "(" + std::to_string(qn.n_r) + "," + std::to_string(qn.n_theta) + "," +
         std::to_string(qn.n_phi) + ")";
}

double ClassicalActions::component(Axis axis) const {
  switch (axis) {
    case Axis::r: return j_r;
    case Axis::theta: return j_theta;
    case Axis::phi: return j_phi;
  }
  return 0.0;
}

double& ClassicalActions::component(Axis axis) {
  switch (axis) {
    case Axis::theta: return j_theta;
    case Axis::phi: return j_phi;
    default: return j_r;
  }
}

double energy_classical(const ModelSpec& model, const ClassicalActions& j) {
  model.validate();
  check_axes(model, j);
  const double angular = j.j_theta + j.j_phi;
  switch (model.kind) {
    case ModelKind::isotropic_harmonic:
      break;
    case ModelKind::anharmonic: {
      const double c = model.anharmonicity;
      const double mw = model.mass * model.omega;
      const double arg = 1.0 - 3.0 / (2.0 * kPiD * mw) * (2.0 * j.j_r + angular) * c +
                         3.0 / (16.0 * kPiD * kPiD * mw * mw) * angular * angular * c * c;
      if (!(arg > 0.0))
        throw DomainError("anharmonic H0(J): square-root argument " + format_double(arg) +
                          " is not positive");
      break;
    }
    case ModelKind::coulomb:
      if (!(j.j_r + angular > 0.0))
        throw DomainError("Coulomb H0(J): J_r + J_theta + J_phi must be positive for bound motion");
      break;
    case ModelKind::coulomb_perturbed: {
      const double arg = angular * angular - 8.0 * kPiD * kPiD * model.mass * model.beta;
      if (!(arg >= 0.0))
        throw DomainError("perturbed Coulomb H0(J): (J_theta + J_phi)^2 - 8 pi^2 m beta = " +
                          format_double(arg) + " is negative");
      if (!(j.j_r + std::sqrt(arg) > 0.0))
        throw DomainError("perturbed Coulomb H0(J): no bound motion at zero effective action");
      break;
    }
  }
  return detail::classical_energy<double>(model, j.j_r, j.j_theta, j.j_phi);
}

double energy_quantum(const ModelSpec& model, const QuantumNumbers& qn, AnharmonicForm form) {
  model.validate();
  check_axes(model, qn);
  check_quantum_domain(model, qn, form);
  return quantum_energy_real(model, qn.n_r, qn.n_theta, qn.n_phi, form);
}

ClassicalFrequencies classical_frequencies(const ModelSpec& model, const ClassicalActions& j) {
  const double energy = energy_classical(model, j);
  const auto axes = axes_for(model.dimension);
  const double angular = j.j_theta + j.j_phi;
  const double m = model.mass;

  ClassicalFrequencies out;
  for (Axis axis : axes) {
    double w = 0.0;
    switch (model.kind) {
      case ModelKind::isotropic_harmonic:
        w = axis == Axis::r ? 2.0 * model.omega : model.omega;
        break;
      case ModelKind::anharmonic: {
        const double c = model.anharmonicity;
        const double denom = 1.0 - 3.0 * energy / (2.0 * m * model.omega * model.omega) * c;
        w = axis == Axis::r
                ? 2.0 * model.omega / denom
                : model.omega * (1.0 - angular * c / (4.0 * kPiD * m * model.omega)) / denom;
        break;
      }
      case ModelKind::coulomb:
        w = std::pow(-2.0 * m * energy, 1.5) / (m * m * model.coulomb_k);
        break;
      case ModelKind::coulomb_perturbed: {
        const double wr = std::pow(-2.0 * m * energy, 1.5) / (m * m * model.coulomb_k);
        w = axis == Axis::r
                ? wr
                : angular / std::sqrt(angular * angular - 8.0 * kPiD * kPiD * m * model.beta) * wr;
        break;
      }
    }
    out.analytic.push_back(w);

    const double scale = std::max({j.j_r, angular, 1e-3});
    const double step = 1e-5 * scale;
    ClassicalActions lo = j, hi = j;
    hi.component(axis) += step;
    lo.component(axis) -= step;
    double numeric = 0.0;
    if (lo.component(axis) < 0.0) {
      // one-sided second-order stencil at the J_i = 0 boundary
      ClassicalActions h2 = j;
      h2.component(axis) += 2.0 * step;
      numeric = (-3.0 * energy + 4.0 * energy_classical(model, hi) - energy_classical(model, h2)) /
                (2.0 * step);
    } else {
      numeric = (energy_classical(model, hi) - energy_classical(model, lo)) / (2.0 * step);
    }
    out.numeric.push_back(kTwoPi * numeric);
    const double rel = std::abs(out.numeric.back() - w) / std::max(std::abs(w), 1e-300);
    out.max_relative_error = std::max(out.max_relative_error, rel);
  }
  return out;
}

double transition_frequency(const ModelSpec& model, const QuantumNumbers& a,
                            const QuantumNumbers& b, AnharmonicForm form) {
  if (a == b) {
    energy_quantum(model, a, form);
    return 0.0;
  }
  return (energy_quantum(model, a, form) - energy_quantum(model, b, form)) / model.hbar;
}

SemiclassicalFrequency semiclassical_frequency(const ModelSpec& model, const QuantumNumbers& qn,
                                               Axis axis, int order, AnharmonicForm form) {
  model.validate();
  check_axes(model, qn);
  if ((axis == Axis::theta && model.dimension < 2) || (axis == Axis::phi && model.dimension < 3))
    throw DomainError("axis not present in model dimension");
  if (order < 1) throw DomainError("relation order must be >= 1");

  QuantumNumbers up = qn;
  if (axis == Axis::r) ++up.n_r;
  if (axis == Axis::theta) ++up.n_theta;
  if (axis == Axis::phi) ++up.n_phi;
  check_quantum_domain(model, qn, form);
  check_quantum_domain(model, up, form);

  const double h = model.hbar;
  const double mk2 = model.mass * model.coulomb_k * model.coulomb_k;
  SemiclassicalFrequency out;
  std::vector<double> derivs(static_cast<std::size_t>(order) + 1, 0.0);  // E^(l), l = 1..order

  auto along = [&](std::complex<double> z) {
    std::complex<double> nr = qn.n_r, nth = qn.n_theta, nph = qn.n_phi;
    if (axis == Axis::r) nr += z;
    if (axis == Axis::theta) nth += z;
    if (axis == Axis::phi) nph += z;
    return detail::quantum_energy<std::complex<double>>(model, nr, nth, nph, form);
  };

  if (model.kind == ModelKind::isotropic_harmonic ||
      (model.kind == ModelKind::anharmonic && model.anharmonicity == 0.0 &&
       form == AnharmonicForm::exact)) {
    const double w = axis == Axis::r ? 2.0 * model.omega : model.omega;
    out.semiclassical = w;
    out.quantum = w;
    out.relation_residuals.assign(static_cast<std::size_t>(order), 0.0);
    return out;
  }

  if (model.kind == ModelKind::coulomb) {
    const double n1 = qn.n() + 1.0;
    out.quantum = mk2 / (2.0 * h * h * h) * (2.0 * n1 + 1.0) / (n1 * n1 * (n1 + 1.0) * (n1 + 1.0));
    // E = -A (n+1)^-2, E^(l) = -A (-1)^l (l+1)! (n+1)^-(l+2)
    const double a = mk2 / (2.0 * h * h);
    double fact = 1.0;
    for (int l = 1; l <= order; ++l) {
      fact *= (l + 1);
      derivs[static_cast<std::size_t>(l)] =
          -a * ((l % 2) ? -1.0 : 1.0) * fact / std::pow(n1, l + 2);
    }
    out.semiclassical = derivs[1] / h;
  } else {
    const double e0 = quantum_energy_real(model, qn.n_r, qn.n_theta, qn.n_phi, form);
    const double e1 = quantum_energy_real(model, up.n_r, up.n_theta, up.n_phi, form);
    out.quantum = (e1 - e0) / h;

    const double x = qn.component(axis);
    const double step = 1e-6 * std::max(1.0, x);
    out.semiclassical = (along(step).real() - along(-step).real()) / (2.0 * step) / h;

    // Contour radius kept inside the nearest singularity of E0 along the axis.
    double radius = 0.5;
    if (model.kind == ModelKind::coulomb_perturbed) {
      const double l = qn.l();
      const double branch = l + 0.5 - std::sqrt(2.0 * model.mass * model.beta) / h;
      radius = std::min(radius, 0.5 * branch);
      const double lp = -0.5 + std::sqrt((l + 0.5) * (l + 0.5) - 2.0 * model.mass * model.beta / (h * h));
      radius = std::min(radius, 0.5 * (qn.n_r + lp + 1.0));
    } else {
      radius = 0.25;
    }
    derivs[1] = out.semiclassical * h;
    for (int l = 2; l <= order; ++l)
      derivs[static_cast<std::size_t>(l)] = detail::cauchy_derivative(along, 0.0, l, radius);
  }

  double partial = 0.0;
  double fact = 1.0;
  for (int l = 1; l <= order; ++l) {
    fact *= l;
    partial += derivs[static_cast<std::size_t>(l)] / (fact * h);
    out.relation_residuals.push_back(out.quantum - partial);
  }
  return out;
}

LevelSet make_level_set(std::vector<Level> levels, double relative_tol) {
  std::sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    const auto ka = std::make_tuple(a.qn.n(), a.qn.n_r, a.qn.n_theta, a.qn.n_phi);
    const auto kb = std::make_tuple(b.qn.n(), b.qn.n_r, b.qn.n_theta, b.qn.n_phi);
    return ka < kb;
  });
  LevelSet out;
  out.levels = std::move(levels);
  if (out.levels.empty()) return out;
  const double lo = out.levels.front().energy;
  const double hi = out.levels.back().energy;
  double scale = hi - lo;
  if (scale == 0.0) scale = std::max(std::abs(hi), 1.0);
  std::vector<double> energies;
  energies.reserve(out.levels.size());
  for (const auto& lv : out.levels) energies.push_back(lv.energy);
  out.groups = degeneracy_groups(energies, relative_tol * scale);
  out.group_of.assign(out.levels.size(), 0);
  for (std::size_t g = 0; g < out.groups.size(); ++g)
    for (std::size_t idx : out.groups[g]) out.group_of[idx] = g;
  return out;
}

LevelSet enumerate_levels(const ModelSpec& model, int n_max, AnharmonicForm form,
                          double relative_tol) {
  model.validate();
  if (n_max < 0) throw DomainError("n_max must be non-negative");
  std::vector<Level> levels;
  const int max_th = model.dimension >= 2 ? n_max : 0;
  const int max_ph = model.dimension >= 3 ? n_max : 0;
  for (int nr = 0; nr <= n_max; ++nr)
    for (int nth = 0; nth <= std::min(max_th, n_max - nr); ++nth)
      for (int nph = 0; nph <= std::min(max_ph, n_max - nr - nth); ++nph) {
        QuantumNumbers qn{nr, nth, nph};
        levels.push_back({qn, energy_quantum(model, qn, form)});
      }
  return make_level_set(std::move(levels), relative_tol);
}

std::string level_set_csv(const LevelSet& levels) {
  std::ostringstream os;
  os << "n_r,n_theta,n_phi,l,n,energy,degeneracy_group\n";
  for (std::size_t i = 0; i < levels.levels.size(); ++i) {
    const auto& lv = levels.levels[i];
    os << lv.qn.n_r << ',' << lv.qn.n_theta << ',' << lv.qn.n_phi << ',' << lv.qn.l() << ','
       << lv.qn.n() << ',' << format_double(lv.energy) << ',' << levels.group_of[i] << '\n';
  }
  return os.str();
}

}  // namespace actiongate
