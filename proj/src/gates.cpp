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


#include "actiongate/gates.hpp"

#include <algorithm>
#include <cmath>

#include "actiongate/errors.hpp"
#include "actiongate/format.hpp"

namespace actiongate {

void Rotation::validate() const {
  const double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (!(std::abs(norm - 1.0) <= 1e-12)) throw DomainError("rotation axis must be a unit vector");
  if (!std::isfinite(angle)) throw DomainError("rotation angle must be finite");
}

Rotation Rotation::in_plane(double alpha, double theta) {
  return {{std::cos(alpha), -std::sin(alpha), 0.0}, theta};
}

UnitaryMatrix rotation_matrix(const Rotation& rot) {
  rot.validate();
  const double c = std::cos(0.5 * rot.angle);
  const double s = std::sin(0.5 * rot.angle);
  const auto& n = rot.axis;
  CMatrix u(2, 2);
  u(0, 0) = cplx(c, -s * n[2]);
  u(1, 1) = cplx(c, s * n[2]);
  u(0, 1) = -kI * s * cplx(n[0], -n[1]);
  u(1, 0) = -kI * s * cplx(n[0], n[1]);
  return UnitaryMatrix::unchecked(std::move(u));
}

std::string to_string(GateName name) {
  switch (name) {
    case GateName::I: return "I";
    case GateName::X: return "X";
    case GateName::Y: return "Y";
    case GateName::Z: return "Z";
    case GateName::H: return "H";
    case GateName::S: return "S";
    case GateName::CSWAP: return "CSWAP";
    case GateName::CU: return "CU";
    case GateName::CNOT_prime: return "CNOT'";
    case GateName::CNOT: return "CNOT";
  }
  return "?";
}

GateName gate_name_from_string(const std::string& name) {
  if (name == "CNOT_prime") return GateName::CNOT_prime;
  for (auto g : {GateName::I, GateName::X, GateName::Y, GateName::Z, GateName::H, GateName::S, GateName::CSWAP,
                 GateName::CU, GateName::CNOT_prime, GateName::CNOT})
    if (to_string(g) == name) return g;
  throw DomainError("unknown gate '" + name + "'");
}

bool is_two_qubit(GateName name) {
  return name == GateName::CSWAP || name == GateName::CU || name == GateName::CNOT_prime ||
         name == GateName::CNOT;
}

namespace {

CMatrix mat2(cplx a, cplx b, cplx c, cplx d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

CMatrix rx(double t) { return rotation_matrix(Rotation::x(t)).matrix(); }
CMatrix ry(double t) { return rotation_matrix(Rotation::y(t)).matrix(); }

CMatrix canonical_matrix(GateName name, const GateArgs& args) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (name) {
    case GateName::I: return CMatrix::Identity(2, 2);
    case GateName::X: return mat2(0, 1, 1, 0);
    case GateName::Y: return mat2(0, -kI, kI, 0);
    case GateName::Z: return mat2(1, 0, 0, -1);
    case GateName::H: return mat2(r, r, r, -r);
    case GateName::S: return mat2(1, 0, 0, kI);
    case GateName::CSWAP: return cswap(args.theta).matrix();
    case GateName::CU:
      if (!args.unitary) throw DomainError("CU needs a single-qubit unitary");
      return controlled(*args.unitary).matrix();
    case GateName::CNOT_prime: return controlled(-kI * mat2(0, 1, 1, 0)).matrix();
    case GateName::CNOT: {
      CMatrix m = CMatrix::Identity(4, 4);
      m(2, 2) = m(3, 3) = 0.0;
      m(2, 3) = m(3, 2) = 1.0;
      return m;
    }
  }
  return {};
}

CMatrix product_matrix(GateName name, const GateArgs& args) {
  constexpr double pi = kPi;
  switch (name) {
    case GateName::I: return rx(0.0);
    case GateName::X: return kI * rx(pi);
    case GateName::Y: return kI * ry(pi);
    case GateName::Z: return rx(pi) * ry(pi);
    case GateName::H: return kI * rx(pi) * ry(pi / 2);
    case GateName::S: return std::exp(-kI * (pi / 4)) * ry(-pi / 2) * rx(pi / 2) * ry(pi / 2);
    case GateName::CSWAP: {
      CMatrix m = CMatrix::Identity(4, 4);
      const CMatrix r = rx(args.theta);
      m.block(1, 1, 2, 2) = r;
      return m;
    }
    case GateName::CU: return canonical_matrix(name, args);
    case GateName::CNOT_prime: return controlled(rx(pi)).matrix();
    case GateName::CNOT:
      return kron(canonical_matrix(GateName::S, {}), CMatrix::Identity(2, 2)) * controlled(rx(pi)).matrix();
  }
  return {};
}

double wrap_phase(double phi) {
  double w = std::remainder(phi, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

}  // namespace

StandardGate standard_gate(GateName name, const GateArgs& args) {
  return {UnitaryMatrix::checked(product_matrix(name, args), 1e-12),
          UnitaryMatrix::checked(canonical_matrix(name, args), 1e-12)};
}

UnitaryMatrix canonical_gate(GateName name, const GateArgs& args) {
  return UnitaryMatrix::checked(canonical_matrix(name, args), 1e-12);
}

UnitaryMatrix cswap(double theta) {
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  CMatrix m = CMatrix::Identity(4, 4);
  m(1, 1) = c;
  m(2, 2) = c;
  m(1, 2) = cplx(0.0, -s);
  m(2, 1) = cplx(0.0, -s);
  return UnitaryMatrix::unchecked(std::move(m));
}

UnitaryMatrix controlled(const CMatrix& u) {
  if (u.rows() != 2 || u.cols() != 2) throw DimensionMismatch("controlled gate needs a 2x2 target");
  CMatrix m = CMatrix::Identity(4, 4);
  m.block(2, 2, 2, 2) = u;
  return UnitaryMatrix::checked(std::move(m));
}

double fidelity(const CMatrix& u, const CMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols())
    throw DimensionMismatch("fidelity needs square matrices of equal size");
  if (u.rows() == 0) throw DimensionMismatch("fidelity of empty matrices");
  const double f = std::abs((u.adjoint() * v).trace()) / static_cast<double>(u.rows());
  return std::min(f, 1.0);
}

std::vector<Rotation> single_qubit_decomposition(GateName name) {
  constexpr double pi = kPi;
  switch (name) {
    case GateName::I: return {};
    case GateName::X: return {Rotation::x(pi)};
    case GateName::Y: return {Rotation::y(pi)};
    case GateName::Z: return {Rotation::y(pi), Rotation::x(pi)};
    case GateName::H: return {Rotation::y(pi / 2), Rotation::x(pi)};
    case GateName::S: return {Rotation::y(pi / 2), Rotation::x(pi / 2), Rotation::y(-pi / 2)};
    default: throw DomainError("gate " + to_string(name) + " is not a single-qubit gate");
  }
}

PulseSegment synthesize_rotation(const Basis& basis, const ControlMatrix& control, LevelPair pair,
                                 const Rotation& target, const SynthesisOptions& options) {
  target.validate();
  if (std::abs(target.axis[2]) > 1e-12) throw DomainError("rotation axis must lie in the xy-plane");
  if (!(options.epsilon > 0.0)) throw DomainError("drive strength must be positive");
  const LevelPair p = normalized_pair(basis, pair.upper, pair.lower);
  double alpha = std::atan2(-target.axis[1], target.axis[0]);
  double theta = target.angle;
  if (theta < 0.0) {
    theta = -theta;
    alpha += kPi;
  }
  theta = std::fmod(theta, 2.0 * kPi);

  const cplx a = control(p.upper, p.lower);
  if (std::abs(a) == 0.0)
    throw ZeroCoupling("no control amplitude between " + basis.label(p.upper) + " and " + basis.label(p.lower));
  const double phi_tilde = -std::arg(a);
  const double w = basis.frequency(p.upper, p.lower);
  const double eps = options.epsilon;

  PulseSegment seg;
  seg.pair = p;
  if (w > 0.0) {
    seg.drive = {eps, w, wrap_phase(alpha - phi_tilde)};
    seg.duration = theta / (eps * std::abs(a));
    if (options.check_rwa) rwa_validity_report(basis, control, seg.drive, p, options.rwa);
    return seg;
  }

  // degenerate pair: static drive, axis fixed by the coupling phase
  const double a00 = control(p.lower, p.lower).real();
  const double a11 = control(p.upper, p.upper).real();
  if (std::abs(a00 - a11) > 1e-12)
    throw DomainError("zero-drive rotation needs equal diagonal amplitudes on the pair");
  const double c = std::cos(alpha - phi_tilde);
  if (std::abs(std::abs(c) - 1.0) > 1e-12)
    throw DomainError("zero-drive rotation reaches only the axis set by the coupling phase");
  seg.drive = {eps, 0.0, c > 0.0 ? 0.0 : kPi};
  seg.duration = theta / (2.0 * eps * std::abs(a));
  return seg;
}

namespace {

long exact_steps(const Basis& basis, const ControlMatrix& control, const PulseSegment& seg,
                 const ExecutionOptions& options) {
  double fmax = seg.drive.omega_d;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (control(i, j) != 0.0) fmax = std::max(fmax, std::abs(basis.frequency(i, j)) + seg.drive.omega_d);
  if (fmax <= 0.0 || seg.drive.epsilon == 0.0) return options.min_steps;
  const double periods = seg.duration * fmax / (2.0 * kPi);
  return std::max(options.min_steps, static_cast<long>(std::ceil(periods * options.steps_per_period)));
}

CMatrix rabi_segment(const Basis& basis, const ControlMatrix& control, const PulseSegment& seg,
                     const ExecutionOptions& options) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  const double tol = options.resonance_tol >= 0.0 ? options.resonance_tol
                                                  : default_collision_tol(control, seg.drive);
  if (seg.drive.omega_d > 0.0)
    return expm_hermitian(resonant_generator(basis, control, seg.drive, tol), seg.duration);
  // static drive: secular part on degenerate blocks, diagonal included
  const double eps0 = seg.drive.epsilon * std::cos(seg.drive.phi);
  CMatrix g = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (std::abs(basis.frequency(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) <= tol)
        g(i, j) = eps0 * control.matrix()(i, j);
  return expm_hermitian(g, seg.duration);
}

}  // namespace

UnitaryMatrix execute_schedule(const Basis& basis, const ControlMatrix& control, const PulseSchedule& schedule,
                               Engine engine, const ExecutionOptions& options) {
  if (basis.size() != control.size()) throw DimensionMismatch("basis and control matrix sizes differ");
  const auto n = static_cast<Eigen::Index>(basis.size());
  CMatrix total = CMatrix::Identity(n, n);
  for (const auto& seg : schedule.segments) {
    normalized_pair(basis, seg.pair.upper, seg.pair.lower);
    if (!(seg.duration >= 0.0) || !std::isfinite(seg.duration))
      throw DomainError("segment duration must be finite and non-negative");
    CMatrix u;
    if (engine == Engine::rabi) {
      u = rabi_segment(basis, control, seg, options);
      if (schedule.frame == Frame::schrodinger) u = free_propagator(basis, seg.duration).matrix() * u;
    } else {
      ExactOptions eo;
      eo.static_perturbation = options.static_perturbation;
      u = exact_propagator(basis, control, seg.drive, seg.duration, exact_steps(basis, control, seg, options), eo)
              .u.matrix();
      if (schedule.frame == Frame::interaction) u = free_propagator(basis, seg.duration).adjoint().matrix() * u;
    }
    total = u * total;
  }
  return UnitaryMatrix::checked(std::move(total));
}

PulseSchedule synthesize_single_qubit_gate(const Basis& basis, const ControlMatrix& control, LevelPair logical,
                                           GateName name, const SynthesisOptions& options) {
  PulseSchedule s;
  for (const auto& rot : single_qubit_decomposition(name))
    s.segments.push_back(synthesize_rotation(basis, control, logical, rot, options));
  return s;
}

PulseSchedule synthesize_cnot(const Basis& basis, const ControlMatrix& control, const RegisterIndices& reg,
                              const SynthesisOptions& options) {
  PulseSchedule s;
  s.segments.push_back(synthesize_rotation(basis, control, {reg[3], reg[2]}, Rotation::x(kPi), options));
  SynthesisOptions local = options;
  local.rwa.companions.push_back({reg[3], reg[1]});
  for (const auto& rot : single_qubit_decomposition(GateName::S))
    s.segments.push_back(synthesize_rotation(basis, control, {reg[2], reg[0]}, rot, local));
  return s;
}

PulseSchedule synthesize_cswap(const Basis& basis, const ControlMatrix& control, const RegisterIndices& reg,
                               double theta, const SynthesisOptions& options) {
  PulseSchedule s;
  s.segments.push_back(synthesize_rotation(basis, control, {reg[2], reg[1]}, Rotation::x(theta), options));
  return s;
}

}  // namespace actiongate
