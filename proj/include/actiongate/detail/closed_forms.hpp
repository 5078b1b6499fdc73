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

// Closed-form H0(J) and E0(n) written over a generic scalar so the same
// expressions serve real evaluation and complex-step/contour derivatives.
// No domain checks here; callers validate first.

#include <cmath>
#include <complex>
#include <functional>

#include "actiongate/spectra.hpp"

namespace actiongate::detail {

inline constexpr double kTwoPi = 6.28318530717958647692;

template <class T>
T classical_energy(const ModelSpec& m, T jr, T jth, T jph) {
  using std::sqrt;
  const double pi = kTwoPi / 2.0;
  const T angular = jth + jph;
  switch (m.kind) {
    case ModelKind::isotropic_harmonic:
      return m.omega / kTwoPi * (2.0 * jr + angular);
    case ModelKind::anharmonic: {
      const double c = m.anharmonicity;
      const T s = 2.0 * jr + angular;
      if (c == 0.0) return m.omega / kTwoPi * s;
      // 1 - sqrt(1 - x) = x / (1 + sqrt(1 - x)) keeps the small-c limit exact.
      const T x_over_c = 3.0 / (2.0 * pi * m.mass * m.omega) * s -
                         3.0 / (16.0 * pi * pi * m.mass * m.mass * m.omega * m.omega) * angular *
                             angular * c;
      const T x = x_over_c * c;
      return 2.0 * m.mass * m.omega * m.omega / 3.0 * x_over_c / (1.0 + sqrt(1.0 - x));
    }
    case ModelKind::coulomb: {
      const T s = jr + angular;
      return -2.0 * pi * pi * m.mass * m.coulomb_k * m.coulomb_k / (s * s);
    }
    case ModelKind::coulomb_perturbed: {
      const T s = jr + sqrt(angular * angular - 8.0 * pi * pi * m.mass * m.beta);
      return -2.0 * pi * pi * m.mass * m.coulomb_k * m.coulomb_k / (s * s);
    }
  }
  return T(0.0);
}

template <class T>
T quantum_energy(const ModelSpec& m, T nr, T nth, T nph, AnharmonicForm form) {
  using std::sqrt;
  const T l = nth + nph;
  const double h = m.hbar;
  switch (m.kind) {
    case ModelKind::isotropic_harmonic:
      return h * m.omega * (2.0 * nr + l + 1.5);
    case ModelKind::anharmonic: {
      const double c = m.anharmonicity;
      const T big_n = 2.0 * nr + l + 1.5;
      const T q = (l + 1.5) * (l - 0.5);
      if (form == AnharmonicForm::small_c)
        return h * m.omega * big_n - h * h / (4.0 * m.mass) * q * c;
      if (c == 0.0) return h * m.omega * big_n;
      const T x_over_c = 3.0 * h / (m.mass * m.omega) * big_n -
                         3.0 * h * h / (4.0 * m.mass * m.mass * m.omega * m.omega) * q * c;
      const T x = x_over_c * c;
      return 2.0 * m.mass * m.omega * m.omega / 3.0 * x_over_c / (1.0 + sqrt(1.0 - x));
    }
    case ModelKind::coulomb: {
      const T d = nr + l + 1.0;
      return -m.mass * m.coulomb_k * m.coulomb_k / (2.0 * d * d * h * h);
    }
    case ModelKind::coulomb_perturbed: {
      const T lp = -0.5 + sqrt((l + 0.5) * (l + 0.5) - 2.0 * m.mass * m.beta / (h * h));
      const T d = nr + lp + 1.0;
      return -m.mass * m.coulomb_k * m.coulomb_k / (2.0 * d * d * h * h);
    }
  }
  return T(0.0);
}

/// f^(order)(x) for a function analytic in the disc |z - x| <= radius, via
/// the trapezoid rule on Cauchy's integral formula.
inline double cauchy_derivative(const std::function<std::complex<double>(std::complex<double>)>& f,
                                double x, int order, double radius, int points = 64) {
  std::complex<double> acc = 0.0;
  for (int j = 0; j < points; ++j) {
    const double theta = kTwoPi * j / points;
    const std::complex<double> w = std::polar(1.0, theta);
    acc += f(x + radius * w) * std::polar(1.0, -order * theta);
  }
  double factorial = 1.0;
  for (int i = 2; i <= order; ++i) factorial *= i;
  return (acc * factorial / (points * std::pow(radius, order))).real();
}

}  // namespace actiongate::detail
