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


#include "actiongate/action_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "actiongate/errors.hpp"
#include "actiongate/format.hpp"
#include "actiongate/linalg.hpp"
#include "actiongate/quadrature.hpp"

namespace actiongate {

namespace {

constexpr double kTwoPiD = 2.0 * std::numbers::pi;

bool is_coulomb(ModelKind k) { return k == ModelKind::coulomb || k == ModelKind::coulomb_perturbed; }

double beta_of(const ModelSpec& m) { return m.kind == ModelKind::coulomb_perturbed ? m.beta : 0.0; }

// r^2 V(r), finite at r = 0.
double r2_potential(const ModelSpec& m, double r) {
  switch (m.kind) {
    case ModelKind::isotropic_harmonic:
      return 0.5 * m.mass * m.omega * m.omega * r * r * r * r;
    case ModelKind::anharmonic:
      return 0.5 * m.mass * m.omega * m.omega * r * r * r * r * (1.0 + m.anharmonicity * r * r);
    case ModelKind::coulomb:
    case ModelKind::coulomb_perturbed:
      return -m.coulomb_k * r - beta_of(m);
  }
  return 0.0;
}

// r^2 p_r^2 = 2 m r^2 (E - V) - L^2
struct RadialMomentum {
  const ModelSpec& model;
  double energy;
  double l2;

  double operator()(double r) const {
    return 2.0 * model.mass * (energy * r * r - r2_potential(model, r)) - l2;
  }
};

double outer_bound(const OrbitSpec& o) {
  const ModelSpec& m = o.model;
  if (is_coulomb(m.kind)) {
    if (!(o.energy < 0.0))
      throw NoBoundOrbit("Coulomb orbit with E = " + format_double(o.energy) + " >= 0 is unbound");
    const double e = -o.energy;
    return (m.coulomb_k + std::sqrt(m.coulomb_k * m.coulomb_k + 4.0 * e * beta_of(m))) / (2.0 * e);
  }
  if (!(o.energy > 0.0))
    throw NoBoundOrbit("oscillator orbit needs E > 0, got " + format_double(o.energy));
  return std::sqrt(2.0 * o.energy / (m.mass * m.omega * m.omega));
}

template <class F>
double bisect(const F& f, double neg, double pos) {
  for (int i = 0; i < 400; ++i) {
    const double mid = 0.5 * (neg + pos);
    if (mid == neg || mid == pos) break;
    (f(mid) > 0.0 ? pos : neg) = mid;
  }
  return 0.5 * (neg + pos);
}

template <class F>
double golden_max(const F& f, double a, double b) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < 200 && b - a > 1e-15 * b; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}


// Sturm count: number of eigenvalues of the symmetric tridiagonal matrix
// strictly below x.
Eigen::Index sturm_count(const RVector& diag, const RVector& sub, double x) {
  Eigen::Index count = 0;
  double q = diag(0) - x;
  if (q < 0.0) ++count;
  for (Eigen::Index i = 1; i < diag.size(); ++i) {
    if (q == 0.0) q = 1e-300;
    q = diag(i) - x - sub(i - 1) * sub(i - 1) / q;
    if (q < 0.0) ++count;
  }
  return count;
}

// Lowest `count` eigenvalues by bisection on the Sturm count. Only the
// bottom of the spectrum is needed, and this is O(N) per probe.
std::vector<double> lowest_tridiagonal_eigenvalues(const RVector& diag, const RVector& sub,
                                                   int count) {
  double lo = diag(0), hi = diag(0);
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(sub(i - 1));
    if (i + 1 < diag.size()) radius += std::abs(sub(i));
    lo = std::min(lo, diag(i) - radius);
    hi = std::max(hi, diag(i) + radius);
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    double a = k == 0 ? lo : out.back() - 1e-12 * std::abs(out.back());
    double b = hi;
    a = std::max(a, lo);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (a + b);
      if (mid == a || mid == b) break;
      (sturm_count(diag, sub, mid) > k ? b : a) = mid;
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

}  // namespace

double potential(const ModelSpec& model, double r) { return r2_potential(model, r) / (r * r); }

ActionQuadrature action_integrals(const OrbitSpec& orbit, const QuadratureOptions& options) {
  const ModelSpec& m = orbit.model;
  m.validate();
  const double l = orbit.angular_momentum;
  const double lz = orbit.axial_momentum;
  if (!(l >= 0.0) || !(std::abs(lz) <= l))
    throw DomainError("orbit needs L >= 0 and |L_z| <= L");
  if (m.dimension == 1 && l != 0.0) throw DomainError("one-dimensional orbit needs L = 0");
  if (m.dimension == 2 && lz != l)
    throw DomainError("two-dimensional orbit carries all angular momentum in L_z = L");

  ActionQuadrature out;
  out.actions.j_phi = kTwoPiD * std::abs(lz);
  out.actions.j_theta = kTwoPiD * (l - std::abs(lz));
  if (m.dimension == 2) {
    // planar motion: the single angle is labelled theta
    out.actions.j_theta = kTwoPiD * l;
    out.actions.j_phi = 0.0;
  }

  const RadialMomentum f{m, orbit.energy, l * l};
  const double r_hi = outer_bound(orbit);
  const double f_origin = f(0.0);
  if (f_origin > 0.0)
    throw NoBoundOrbit("effective potential falls to the centre: L^2 < 2 m beta");

  // coarse logarithmic scan for the maximum of r^2 p_r^2
  constexpr int kScan = 1000;
  const double r_lo = r_hi * 1e-9;
  double best_r = r_lo, best_f = f(r_lo);
  int best_i = 0;
  const double ratio = std::pow(r_hi / r_lo, 1.0 / (kScan - 1));
  double r = r_lo;
  for (int i = 0; i < kScan; ++i, r *= ratio) {
    const double v = f(r);
    if (v > best_f) best_f = v, best_r = r, best_i = i;
  }
  const double a = best_i == 0 ? 0.0 : best_r / ratio;
  const double b = std::min(best_r * ratio, r_hi);
  const double peak = golden_max(f, a, b);
  const double f_peak = std::max(f(peak), best_f);
  const double scale = std::max(l * l, 2.0 * m.mass * std::abs(orbit.energy) * r_hi * r_hi);
  if (!(f_peak > 0.0)) {
    if (f_peak > -1e-10 * scale) {
      out.r_minus = out.r_plus = peak;
      out.nodes = 0;
      return out;  // circular orbit, J_r = 0
    }
    throw NoBoundOrbit("no radial turning points: max r^2 p_r^2 = " + format_double(f_peak));
  }
  const double peak_r = f(peak) >= best_f ? peak : best_r;

  out.r_minus = f_origin < 0.0 ? bisect(f, 0.0, peak_r) : 0.0;
  double far = r_hi;
  while (f(far) > 0.0) far *= 2.0;
  out.r_plus = bisect(f, far, peak_r);

  const double span = out.r_plus - out.r_minus;
  auto integrate = [&](int n) {
    const auto& rule = gauss_legendre(n);
    const double half = 0.25 * std::numbers::pi;  // u in [0, pi/2]
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double u = half * (rule.nodes[i] + 1.0);
      const double s = std::sin(u), c = std::cos(u);
      const double rr = out.r_minus + span * s * s;
      const double p = std::sqrt(std::max(f(rr), 0.0)) / rr;
      acc += rule.weights[i] * p * 2.0 * span * s * c;
    }
    return 2.0 * half * acc;
  };

  int n = options.initial_nodes;
  double prev = integrate(n);
  const double floor = 1e-14 * std::max(out.actions.j_theta + out.actions.j_phi, 1.0);
  while (true) {
    const int next = 2 * n;
    const double value = integrate(next);
    const double change = std::abs(value - prev);
    n = next;
    prev = value;
    out.error_estimate = change;
    if (change <= options.relative_tol * std::abs(value) || change <= floor) break;
    if (2 * n > options.max_nodes)
      throw QuadratureError("radial action did not converge: change " + format_double(change) +
                            " at " + std::to_string(n) + " nodes");
  }
  out.actions.j_r = prev;
  out.nodes = n;
  return out;
}

double verify_closed_form(const ModelSpec& model, const OrbitSpec& orbit,
                          const QuadratureOptions& options) {
  OrbitSpec o = orbit;
  o.model = model;
  const auto q = action_integrals(o, options);
  const double h = energy_classical(model, q.actions);
  return std::abs(h - orbit.energy) / std::abs(orbit.energy);
}

void RadialGrid::validate() const {
  if (!(r_min > 0.0) || !(r_min < r_max)) throw DomainError("radial grid needs 0 < r_min < r_max");
  if (points < 3) throw DomainError("radial grid needs at least 3 points");
}

std::vector<double> eigensolve_radial(const ModelSpec& model, int l, const RadialGrid& grid,
                                      int count) {
  model.validate();
  grid.validate();
  if (l < 0) throw DomainError("angular quantum number must be non-negative");
  if (count < 1 || count > grid.points) throw DomainError("eigenvalue count out of range");
  const double kin = model.hbar * model.hbar / (2.0 * model.mass);
  const double centrifugal = kin * l * (l + 1.0);
  const auto n = static_cast<Eigen::Index>(grid.points);
  RVector diag(n), sub(n - 1);

  if (grid.spacing == GridSpacing::uniform) {
    // interior points of [r_min, r_max] with Dirichlet ends
    const double h = (grid.r_max - grid.r_min) / (grid.points + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double r = grid.r_min + (i + 1) * h;
      diag(i) = 2.0 * kin / (h * h) + potential(model, r) + centrifugal / (r * r);
    }
    sub.setConstant(-kin / (h * h));
  } else {
    const double x0 = std::log(grid.r_min);
    const double dx = (std::log(grid.r_max) - x0) / (grid.points + 1);
    const double shift = kin * (l + 0.5) * (l + 0.5);
    RVector r(n);
    for (Eigen::Index i = 0; i < n; ++i) r(i) = std::exp(x0 + (i + 1) * dx);
    // -kin v'' + (kin (l + 1/2)^2 + r^2 V) v = E r^2 v, scaled by r^{-1} on both sides
    for (Eigen::Index i = 0; i < n; ++i)
      diag(i) = (2.0 * kin / (dx * dx) + shift + r2_potential(model, r(i))) / (r(i) * r(i));
    for (Eigen::Index i = 0; i + 1 < n; ++i) sub(i) = -kin / (dx * dx) / (r(i) * r(i + 1));
  }

  return lowest_tridiagonal_eigenvalues(diag, sub, count);
}

namespace {

// Outer classical turning point of the effective potential at energy e.
double outer_turning_point(const ModelSpec& m, int l, double e) {
  const double kin = m.hbar * m.hbar / (2.0 * m.mass);
  auto excess = [&](double r) {
    return e - potential(m, r) - kin * l * (l + 1.0) / (r * r);
  };
  double hi = 1.0;
  while (excess(hi) < 0.0 && hi > 1e-12) hi *= 0.5;
  while (excess(hi) >= 0.0 && hi < 1e12) hi *= 2.0;
  double lo = hi / 2;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) >= 0.0 ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

RadialConvergence converged_radial_levels(const ModelSpec& model, int l, int count,
                                          const RadialOptions& options) {
  model.validate();
  if (count < 1) throw DomainError("eigenvalue count must be >= 1");
  const double kin = model.hbar * model.hbar / (2.0 * model.mass);

  double r_max = options.r_max;
  if (r_max <= 0.0) {
    // Start from the natural length scale and enlarge until the outer
    // turning point of the highest requested state sits well inside.
    const double a = is_coulomb(model.kind)
                         ? model.hbar * model.hbar / (model.mass * model.coulomb_k)
                         : std::sqrt(model.hbar / (model.mass * model.omega));
    r_max = 20.0 * a * (count + l + 1);
    for (int iter = 0; iter < 20; ++iter) {
      RadialGrid probe{r_max * 1e-10, r_max, 2000, GridSpacing::log};
      const auto e = eigensolve_radial(model, l, probe, count);
      const double top = e.back();
      const double rt = outer_turning_point(model, l, top);
      const double depth = is_coulomb(model.kind) ? std::max(-top, 1e-300) : top;
      const double kappa = std::sqrt(depth / kin);
      const double want = std::max(2.0 * rt, rt + 20.0 / kappa);
      if (want <= r_max) break;
      r_max = 1.25 * want;
    }
  }

  RadialConvergence out;
  RadialGrid grid;
  grid.spacing = options.spacing;
  grid.r_max = r_max;
  grid.r_min = options.spacing == GridSpacing::log ? r_max * 1e-10 : r_max * 1e-6;
  int points = options.initial_points;
  std::vector<double> prev_extrap;
  for (int k = 0; k <= options.max_refinements; ++k) {
    grid.points = points;
    out.ladder.push_back(eigensolve_radial(model, l, grid, count));
    out.finest = grid;
    if (out.ladder.size() >= 2) {
      const auto& coarse = out.ladder[out.ladder.size() - 2];
      const auto& fine = out.ladder.back();
      std::vector<double> extrap(static_cast<std::size_t>(count));
      for (std::size_t i = 0; i < extrap.size(); ++i)
        extrap[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
      if (!prev_extrap.empty()) {
        double shift = 0.0;
        for (std::size_t i = 0; i < extrap.size(); ++i)
          shift = std::max(shift, std::abs(extrap[i] - prev_extrap[i]) / std::abs(extrap[i]));
        out.max_shift = shift;
        if (shift < options.relative_tol) {
          out.energies = extrap;
          return out;
        }
      }
      prev_extrap = std::move(extrap);
    }
    // halve the spacing: N + 1 intervals -> 2 (N + 1)
    points = 2 * (points + 1) - 1;
  }
  throw ConvergenceError("radial eigenvalues did not converge: last relative shift " +
                         format_double(out.max_shift));
}

std::vector<OrbitSpec> seeded_orbits(const ModelSpec& model, std::size_t count, std::uint64_t seed) {
  model.validate();
  std::mt19937_64 rng(seed);
  auto u = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<OrbitSpec> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    OrbitSpec o;
    o.model = model;
    double l_max = 0.0;
    switch (model.kind) {
      case ModelKind::isotropic_harmonic:
      case ModelKind::anharmonic:
        o.energy = model.hbar * model.omega * (0.5 + 2.5 * u());
        // the quartic term raises the circular-orbit energy; stay inside it
        l_max = (model.kind == ModelKind::anharmonic ? 0.85 : 1.0) * o.energy / model.omega;
        break;
      case ModelKind::coulomb:
      case ModelKind::coulomb_perturbed:
        o.energy = -model.mass * model.coulomb_k * model.coulomb_k * (0.2 + 0.6 * u());
        l_max = model.coulomb_k * std::sqrt(model.mass / (-2.0 * o.energy));
        break;
    }
    const double frac = 0.05 + 0.9 * u();
    const double sign = 2.0 * u() - 1.0;
    if (model.dimension == 1) {
      out.push_back(o);
      continue;
    }
    double l = l_max * frac;
    // effective angular momentum sqrt(L^2 - 2 m beta) plays the Coulomb role
    if (model.kind == ModelKind::coulomb_perturbed) l = std::sqrt(l * l + 2.0 * model.mass * model.beta);
    o.angular_momentum = l;
    o.axial_momentum = model.dimension == 3 ? l * sign : l;
    out.push_back(o);
  }
  return out;
}

}  // namespace actiongate
