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


#include "actiongate/drive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "actiongate/errors.hpp"
#include "actiongate/format.hpp"

namespace actiongate {

Basis::Basis(std::vector<BasisLevel> levels, double hbar) : levels_(std::move(levels)), hbar_(hbar) {
  if (!(hbar_ > 0.0)) throw DomainError("basis needs hbar > 0");
  for (const auto& lv : levels_)
    if (!std::isfinite(lv.energy)) throw DomainError("basis energy of '" + lv.label + "' is not finite");
}

Basis Basis::from_energies(const std::vector<double>& energies, double hbar) {
  std::vector<BasisLevel> levels;
  levels.reserve(energies.size());
  for (std::size_t i = 0; i < energies.size(); ++i) levels.push_back({std::to_string(i), energies[i]});
  return Basis(std::move(levels), hbar);
}

Basis Basis::from_level_set(const LevelSet& set, double hbar) {
  std::vector<BasisLevel> levels;
  levels.reserve(set.levels.size());
  for (const auto& lv : set.levels) levels.push_back({to_string(lv.qn), lv.energy});
  return Basis(std::move(levels), hbar);
}

double Basis::frequency(std::size_t i, std::size_t j) const {
  return (energy(i) - energy(j)) / hbar_;
}

std::size_t Basis::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < levels_.size(); ++i)
    if (levels_[i].label == label) return i;
  throw PairError("level '" + label + "' is not in the basis");
}

RVector Basis::angular_energies() const {
  RVector w(static_cast<Eigen::Index>(levels_.size()));
  for (std::size_t i = 0; i < levels_.size(); ++i) w(static_cast<Eigen::Index>(i)) = levels_[i].energy / hbar_;
  return w;
}

ControlMatrix::ControlMatrix(CMatrix a) : a_(std::move(a)) {
  if (a_.rows() != a_.cols()) throw DimensionMismatch("control matrix must be square");
  if (!is_hermitian(a_, 1e-12)) throw DomainError("control matrix is not Hermitian within 1e-12");
  // store the exactly Hermitian part
  a_ = 0.5 * (a_ + a_.adjoint()).eval();
}

ControlMatrix ControlMatrix::zero(std::size_t n) {
  return ControlMatrix(CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
}

ControlMatrix ControlMatrix::ladder(std::size_t n) {
  ControlMatrix c = zero(n);
  for (std::size_t k = 0; k + 1 < n; ++k) c.set(k + 1, k, std::sqrt(static_cast<double>(k + 1)));
  return c;
}

cplx ControlMatrix::operator()(std::size_t i, std::size_t j) const {
  return a_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
}

double ControlMatrix::max_abs() const { return actiongate::max_abs(a_); }

void ControlMatrix::set(std::size_t i, std::size_t j, cplx v) {
  const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
  if (i == j && v.imag() != 0.0) throw DomainError("diagonal control amplitude must be real");
  a_(ii, jj) = v;
  a_(jj, ii) = std::conj(v);
}

namespace {

void check_dims(const Basis& basis, const ControlMatrix& control) {
  if (basis.size() != control.size())
    throw DimensionMismatch("basis has " + std::to_string(basis.size()) + " levels, control matrix " +
                            std::to_string(control.size()));
}

bool is_upper(const Basis& basis, std::size_t i, std::size_t j) {
  const double ei = basis.energy(i), ej = basis.energy(j);
  return ei > ej || (ei == ej && i > j);
}

// U0^dagger H1 U0 / hbar in angular units: a_{nn'} e^{i w_{nn'} t}
CMatrix rotated_control(const Basis& basis, const ControlMatrix& control, double t) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  const RVector w = basis.angular_energies();
  CMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out(i, j) = control.matrix()(i, j) * std::exp(kI * ((w(i) - w(j)) * t));
  return out;
}

}  // namespace

LevelPair normalized_pair(const Basis& basis, std::size_t a, std::size_t b) {
  if (a >= basis.size() || b >= basis.size())
    throw PairError("pair (" + std::to_string(a) + ", " + std::to_string(b) + ") is outside a basis of " +
                    std::to_string(basis.size()) + " levels");
  if (a == b) throw PairError("pair needs two distinct levels");
  return is_upper(basis, a, b) ? LevelPair{a, b} : LevelPair{b, a};
}

InteractionSplit interaction_split(const Basis& basis, const ControlMatrix& control,
                                   const DriveSpec& drive, double t) {
  check_dims(basis, control);
  const auto n = static_cast<Eigen::Index>(basis.size());
  const double h = basis.hbar();
  const RVector w = basis.angular_energies();
  InteractionSplit s{CMatrix::Zero(n, n), CMatrix::Zero(n, n), CMatrix::Zero(n, n)};
  const cplx half = 0.5 * h * drive.epsilon;
  for (Eigen::Index i = 0; i < n; ++i) {
    s.diagonal(i, i) = h * drive.epsilon * std::cos(drive.omega_d * t + drive.phi) * control.matrix()(i, i);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j || !is_upper(basis, static_cast<std::size_t>(i), static_cast<std::size_t>(j))) continue;
      const cplx a = control.matrix()(i, j);
      const double wij = w(i) - w(j);
      const cplx p = half * a * std::exp(kI * (drive.phi + (wij + drive.omega_d) * t));
      const cplx m = half * a * std::exp(-kI * (drive.phi - (wij - drive.omega_d) * t));
      s.plus(i, j) += p;
      s.plus(j, i) += std::conj(p);
      s.minus(i, j) += m;
      s.minus(j, i) += std::conj(m);
    }
  }
  return s;
}

CMatrix interaction_hamiltonian(const Basis& basis, const ControlMatrix& control,
                                const DriveSpec& drive, double t) {
  check_dims(basis, control);
  return basis.hbar() * drive.epsilon * std::cos(drive.omega_d * t + drive.phi) *
         rotated_control(basis, control, t);
}

UnitaryMatrix rabi_propagator(const Basis& basis, const ControlMatrix& control,
                              const DriveSpec& drive, LevelPair pair, double t) {
  check_dims(basis, control);
  const LevelPair p = normalized_pair(basis, pair.upper, pair.lower);
  const auto m = static_cast<Eigen::Index>(p.upper), mp = static_cast<Eigen::Index>(p.lower);
  const cplx coupling = 0.5 * drive.epsilon * control.matrix()(m, mp) * std::exp(-kI * drive.phi);
  CMatrix g = CMatrix::Zero(2, 2);  // ordering (lower, upper)
  g(1, 0) = coupling;
  g(0, 1) = std::conj(coupling);
  const CMatrix u2 = expm_hermitian(g, t);
  CMatrix u = CMatrix::Identity(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(basis.size()));
  u(mp, mp) = u2(0, 0);
  u(mp, m) = u2(0, 1);
  u(m, mp) = u2(1, 0);
  u(m, m) = u2(1, 1);
  return UnitaryMatrix::checked(std::move(u));
}

CMatrix resonant_generator(const Basis& basis, const ControlMatrix& control, const DriveSpec& drive,
                           double tol) {
  check_dims(basis, control);
  const auto n = static_cast<Eigen::Index>(basis.size());
  CMatrix g = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j || !is_upper(basis, static_cast<std::size_t>(i), static_cast<std::size_t>(j))) continue;
      const cplx a = control.matrix()(i, j);
      if (a == 0.0) continue;
      if (std::abs(basis.frequency(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) - drive.omega_d) > tol)
        continue;
      const cplx c = 0.5 * drive.epsilon * a * std::exp(-kI * drive.phi);
      g(i, j) += c;
      g(j, i) += std::conj(c);
    }
  return g;
}

UnitaryMatrix free_propagator(const Basis& basis, double t) {
  const RVector w = basis.angular_energies();
  CVector phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) phases(i) = std::exp(-kI * (w(i) * t));
  return UnitaryMatrix::unchecked(phases.asDiagonal().toDenseMatrix());
}

namespace {

CMatrix midpoint_run(const Basis& basis, const ControlMatrix& control, const DriveSpec& drive, double t,
                     long steps, const ExactOptions& options) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  const RVector w = basis.angular_energies();
  CMatrix h0 = w.cast<cplx>().asDiagonal();
  if (options.static_perturbation) {
    if (options.static_perturbation->rows() != n)
      throw DimensionMismatch("static perturbation does not match the basis");
    h0 += *options.static_perturbation / basis.hbar();
  }
  const CMatrix& a = control.matrix();
  const double dt = t / static_cast<double>(steps);
  CMatrix u = CMatrix::Identity(n, n);
  CMatrix h(n, n);
  for (long k = 0; k < steps; ++k) {
    const double tm = (static_cast<double>(k) + 0.5) * dt;
    if (options.model == DriveModel::full) {
      h = h0 + (drive.epsilon * std::cos(drive.omega_d * tm + drive.phi)) * a;
    } else {
      h = h0;
      const cplx rot = 0.5 * drive.epsilon * std::exp(-kI * (drive.omega_d * tm + drive.phi));
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
          if (i == j || !is_upper(basis, static_cast<std::size_t>(i), static_cast<std::size_t>(j))) continue;
          const cplx c = rot * a(i, j);
          h(i, j) += c;
          h(j, i) += std::conj(c);
        }
    }
    u = expm_hermitian(h, dt) * u;
  }
  return u;
}

}  // namespace

double observed_order(const CMatrix& coarse, const CMatrix& mid, const CMatrix& fine) {
  const double d1 = max_abs(coarse - mid);
  const double d2 = max_abs(mid - fine);
  return std::log2(d1 / d2);
}

ExactPropagation exact_propagator(const Basis& basis, const ControlMatrix& control, const DriveSpec& drive,
                                  double t, long steps, const ExactOptions& options) {
  check_dims(basis, control);
  if (steps < 1) throw DomainError("exact propagator needs steps >= 1");
  if (!(t >= 0.0)) throw DomainError("propagation time must be non-negative");
  ExactPropagation out;
  CMatrix u = midpoint_run(basis, control, drive, t, steps, options);
  if (options.verify_order) {
    const CMatrix u2 = midpoint_run(basis, control, drive, t, 2 * steps, options);
    const CMatrix u4 = midpoint_run(basis, control, drive, t, 4 * steps, options);
    const double d1 = max_abs(u - u2), d2 = max_abs(u2 - u4);
    out.richardson_error = d2 / 3.0;
    // below this the differences are rounding noise and carry no order
    constexpr double kNoise = 1e-12;
    if (d2 > kNoise) {
      out.observed_order = std::log2(d1 / d2);
      if (std::abs(out.observed_order - 2.0) > 0.5)
        throw ConvergenceError("midpoint stepping shows order " + format_double(out.observed_order) +
                               " instead of 2");
    } else {
      out.observed_order = std::numeric_limits<double>::quiet_NaN();
    }
    u = u4;
  }
  out.u = UnitaryMatrix::checked(std::move(u));
  return out;
}

DysonResult dyson_propagator(const Basis& basis, const ControlMatrix& control, const DriveSpec& drive,
                             int n_max, double t, const DysonOptions& options) {
  check_dims(basis, control);
  if (n_max < 0) throw DomainError("Dyson order must be >= 0");
  if (!(t >= 0.0)) throw DomainError("propagation time must be non-negative");
  const auto n = static_cast<Eigen::Index>(basis.size());

  double fmax = drive.omega_d;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (control.matrix()(i, j) != 0.0)
        fmax = std::max(fmax, std::abs(basis.frequency(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) +
                                  drive.omega_d);
  long points = options.min_points;
  if (fmax > 0.0)
    points = std::max(points, static_cast<long>(std::ceil(t * fmax / (2.0 * kPi) * options.points_per_period)));
  points += points % 2;

  // angular-unit H^I on the grid
  std::vector<CMatrix> hgrid(static_cast<std::size_t>(points + 1));
  const double dt = t / static_cast<double>(points);
  for (long k = 0; k <= points; ++k)
    hgrid[static_cast<std::size_t>(k)] =
        interaction_hamiltonian(basis, control, drive, static_cast<double>(k) * dt) / basis.hbar();

  // Picard iteration; `stride` 2 reuses every other node for the error estimate
  auto run = [&](long stride, int order, std::vector<double>* norms) {
    const long m = points / stride;
    const double h = dt * static_cast<double>(stride);
    std::vector<CMatrix> prev(static_cast<std::size_t>(m + 1), CMatrix::Identity(n, n));
    CMatrix sum = CMatrix::Identity(n, n);
    if (norms) norms->push_back(sum.norm());
    CMatrix last = CMatrix::Identity(n, n);
    for (int k = 1; k <= order; ++k) {
      std::vector<CMatrix> cur(static_cast<std::size_t>(m + 1), CMatrix::Zero(n, n));
      CMatrix f_prev = hgrid[0] * prev[0];
      for (long j = 1; j <= m; ++j) {
        const CMatrix f = hgrid[static_cast<std::size_t>(j * stride)] * prev[static_cast<std::size_t>(j)];
        cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] - kI * (0.5 * h) * (f_prev + f);
        f_prev = f;
      }
      last = cur.back();
      if (k <= n_max) {
        sum += last;
        if (norms) norms->push_back(last.norm());
      }
      prev = std::move(cur);
    }
    return std::pair{sum, last};
  };

  DysonResult out;
  out.points = points;
  auto [sum, next] = run(1, n_max + 1, &out.term_norms);
  out.partial_sum = sum;
  out.next_term_norm = next.norm();
  const auto coarse = run(2, n_max, nullptr).first;
  out.quadrature_error = max_abs(sum - coarse) / 3.0;
  if (out.quadrature_error > options.quadrature_tol)
    throw QuadratureError("Dyson quadrature error " + format_double(out.quadrature_error) +
                          " exceeds " + format_double(options.quadrature_tol) + " at " +
                          std::to_string(points) + " points");
  return out;
}

TwoLevelParams two_level_params(const Basis& basis, const ControlMatrix& control, const DriveSpec& drive,
                                LevelPair pair) {
  check_dims(basis, control);
  const LevelPair p = normalized_pair(basis, pair.upper, pair.lower);
  const cplx a10 = control(p.upper, p.lower);
  TwoLevelParams tp;
  tp.omega_bar = (basis.energy(p.lower) + basis.energy(p.upper)) / basis.hbar();
  tp.omega_tilde = basis.frequency(p.upper, p.lower);
  tp.omega_d = drive.omega_d;
  tp.detuning = drive.omega_d - tp.omega_tilde;
  tp.coupling = std::abs(drive.epsilon) * std::abs(a10);
  tp.phi_tilde = a10 == 0.0 ? 0.0 : -std::arg(a10);
  tp.phi_prime = drive.phi + tp.phi_tilde;
  tp.omega_rabi = std::hypot(tp.detuning, tp.coupling);
  return tp;
}

TwoLevelSolution two_level_analytic(const TwoLevelParams& p, double t, TwoLevelForm form) {
  const double big = p.omega_rabi;
  const double c = std::cos(0.5 * big * t);
  const double s = std::sin(0.5 * big * t);
  const double det_s = big > 0.0 ? p.detuning / big * s : 0.0;
  const double cpl_s = big > 0.0 ? p.coupling / big * s : 0.0;
  const double w = form == TwoLevelForm::rotating_frame ? p.omega_d : p.omega_tilde;
  const cplx global = std::exp(-kI * (0.5 * p.omega_bar * t));
  const cplx up = std::exp(kI * (0.5 * w * t));
  const cplx down = std::conj(up);
  CMatrix u(2, 2);
  u(0, 0) = global * up * cplx(c, -det_s);
  u(0, 1) = global * up * std::exp(kI * p.phi_prime) * cplx(0.0, -cpl_s);
  u(1, 0) = global * down * std::exp(-kI * p.phi_prime) * cplx(0.0, -cpl_s);
  u(1, 1) = global * down * cplx(c, det_s);
  TwoLevelSolution out{UnitaryMatrix::checked(std::move(u)), cpl_s * cpl_s};
  return out;
}

ZeroDriveParams zero_drive_params(const Basis& basis, const ControlMatrix& control, const DriveSpec& drive,
                                  LevelPair pair) {
  check_dims(basis, control);
  const LevelPair p = normalized_pair(basis, pair.upper, pair.lower);
  const cplx a10 = control(p.upper, p.lower);
  const double a00 = control(p.lower, p.lower).real();
  const double a11 = control(p.upper, p.upper).real();
  ZeroDriveParams z;
  z.epsilon0 = drive.epsilon * std::cos(drive.phi);
  z.omega_t = (basis.energy(p.lower) + basis.energy(p.upper)) / basis.hbar() + z.epsilon0 * (a00 + a11);
  z.omega_r = basis.frequency(p.upper, p.lower) + z.epsilon0 * (a11 - a00);
  z.gamma = 2.0 * z.epsilon0 * std::abs(a10);
  z.phi_tilde = a10 == 0.0 ? 0.0 : -std::arg(a10);
  z.omega0 = std::hypot(z.omega_r, z.gamma);
  if (z.omega0 > 0.0)
    z.axis = {z.gamma * std::cos(z.phi_tilde) / z.omega0, -z.gamma * std::sin(z.phi_tilde) / z.omega0,
              -z.omega_r / z.omega0};
  return z;
}

UnitaryMatrix zero_drive_propagator(const ZeroDriveParams& z, double t) {
  const double c = std::cos(0.5 * z.omega0 * t);
  const double s = std::sin(0.5 * z.omega0 * t);
  const auto& n = z.axis;
  const cplx global = std::exp(-kI * (0.5 * z.omega_t * t));
  CMatrix u(2, 2);
  u(0, 0) = global * cplx(c, -s * n[2]);
  u(1, 1) = global * cplx(c, s * n[2]);
  u(0, 1) = global * (-kI * s) * cplx(n[0], -n[1]);
  u(1, 0) = global * (-kI * s) * cplx(n[0], n[1]);
  return UnitaryMatrix::checked(std::move(u));
}

bool RwaReport::all_below_threshold() const {
  return std::none_of(ratios.begin(), ratios.end(), [](const RwaRatio& r) { return r.flagged; });
}

double default_collision_tol(const ControlMatrix& control, const DriveSpec& drive) {
  return 10.0 * std::abs(drive.epsilon) * control.max_abs();
}

RwaReport rwa_validity_report(const Basis& basis, const ControlMatrix& control, const DriveSpec& drive,
                              LevelPair target, const RwaOptions& options, bool throw_on_collision) {
  check_dims(basis, control);
  const LevelPair tgt = normalized_pair(basis, target.upper, target.lower);
  if (!(drive.omega_d > 0.0))
    throw DomainError("rotating-wave report needs omega_d > 0; use the zero-drive construction");
  RwaReport rep;
  rep.target = tgt;
  rep.omega_d = drive.omega_d;
  rep.threshold = options.threshold;
  rep.collision_tol = options.collision_tol >= 0.0 ? options.collision_tol : default_collision_tol(control, drive);
  const double eps = std::abs(drive.epsilon);
  const auto push = [&](LevelPair p, const char* kind, double v) {
    rep.ratios.push_back({p, kind, v, v > options.threshold});
  };
  const auto same = [](LevelPair a, LevelPair b) { return a.upper == b.upper && a.lower == b.lower; };

  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double ad = std::abs(control(i, i));
    if (ad > 0.0) push({i, i}, "diagonal", eps * ad / drive.omega_d);
  }
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (i == j || !is_upper(basis, i, j)) continue;
      const double a = std::abs(control(i, j));
      if (a == 0.0) continue;
      const LevelPair p{i, j};
      const double w = basis.frequency(i, j);
      push(p, "counter_rotating", eps * a / (w + drive.omega_d));
      const bool companion = std::any_of(options.companions.begin(), options.companions.end(),
                                         [&](LevelPair c) { return same(normalized_pair(basis, c.upper, c.lower), p); });
      if (same(p, tgt) || companion) continue;
      const double detuning = std::abs(w - drive.omega_d);
      push(p, "off_resonant", detuning > 0.0 ? eps * a / detuning : std::numeric_limits<double>::infinity());
      if (detuning < rep.collision_tol) rep.collisions.push_back(p);
    }
  if (throw_on_collision && !rep.collisions.empty()) {
    const auto& c = rep.collisions.front();
    throw ResonanceCollision("transition " + basis.label(c.upper) + " -> " + basis.label(c.lower) +
                             " lies within " + format_double(rep.collision_tol) + " of omega_d = " +
                             format_double(drive.omega_d));
  }
  return rep;
}

}  // namespace actiongate
