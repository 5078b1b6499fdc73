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


#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "actiongate/errors.hpp"
#include "actiongate/gates.hpp"

using namespace actiongate;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

CMatrix mat2(cplx a, cplx b, cplx c, cplx d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// Pauli-sum oracle, independent of the closed form in rotation_matrix.
CMatrix rotation_oracle(double nx, double ny, double nz, double theta) {
  const CMatrix sx = mat2(0, 1, 1, 0), sy = mat2(0, -kI, kI, 0), sz = mat2(1, 0, 0, -1);
  const CMatrix gen = 0.5 * theta * (nx * sx + ny * sy + nz * sz);
  Eigen::ComplexEigenSolver<CMatrix> es(-kI * gen);
  return es.eigenvectors() * es.eigenvalues().array().exp().matrix().asDiagonal() * es.eigenvectors().inverse();
}

/// e^{-i arg tr} U so that comparisons can be made entrywise.
CMatrix strip_phase(const CMatrix& u, const CMatrix& reference) {
  const cplx tr = (reference.adjoint() * u).trace();
  return u * std::polar(1.0, -std::arg(tr));
}

Basis anharmonic_ladder(int levels, double c = 0.01, double omega = 1.0) {
  const auto m = ModelSpec::anharmonic_oscillator(c, omega, 1);
  std::vector<double> e;
  for (int n = 0; n < levels; ++n) e.push_back(energy_quantum(m, {n, 0, 0}));
  return Basis::from_energies(e);
}

struct Register {
  Basis basis;
  ControlMatrix control;
  RegisterIndices reg;
};

// Two anharmonic ladders, three levels each. First-qubit transitions are
// driven for b in {0, 1}; the second ladder is addressable only when a = 1.
Register two_ladders() {
  const auto ma = ModelSpec::anharmonic_oscillator(0.01, 1.0, 1);
  const auto mb = ModelSpec::anharmonic_oscillator(0.01, 1.3, 1);
  const int levels = 3;
  std::vector<double> e;
  for (int a = 0; a < levels; ++a)
    for (int b = 0; b < levels; ++b) e.push_back(energy_quantum(ma, {a, 0, 0}) + energy_quantum(mb, {b, 0, 0}));
  Basis basis = Basis::from_energies(e);
  ControlMatrix c = ControlMatrix::zero(e.size());
  auto idx = [&](int a, int b) { return static_cast<std::size_t>(a * levels + b); };
  for (int a = 0; a + 1 < levels; ++a)
    for (int b = 0; b < 2; ++b) c.set(idx(a + 1, b), idx(a, b), std::sqrt(a + 1.0));
  for (int b = 0; b + 1 < levels; ++b) c.set(idx(1, b + 1), idx(1, b), std::sqrt(b + 1.0));
  return {basis, c, {idx(0, 0), idx(0, 1), idx(1, 0), idx(1, 1)}};
}

}  // namespace

TEST_CASE("rotation matrices match the Pauli exponential", "[gates]") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    double x = u(rng), y = u(rng), z = u(rng);
    const double n = std::sqrt(x * x + y * y + z * z);
    x /= n, y /= n, z /= n;
    const double theta = 4.0 * pi * u(rng);
    const CMatrix r = rotation_matrix({{x, y, z}, theta}).matrix();
    CHECK(max_abs(r - rotation_oracle(x, y, z, theta)) < 1e-12);
  }
  CHECK(max_abs(rotation_matrix(Rotation::x(0.0)).matrix() - CMatrix::Identity(2, 2)) < 1e-15);
  CHECK(max_abs(rotation_matrix(Rotation::x(pi)).matrix() - (-kI) * mat2(0, 1, 1, 0)) < 1e-15);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(max_abs(rotation_matrix(Rotation::y(pi / 2)).matrix() - mat2(r, -r, r, r)) < 1e-15);
  CHECK_THROWS_AS(rotation_matrix({{1.0, 1.0, 0.0}, 1.0}), DomainError);
}

TEST_CASE("x rotations compose additively", "[gates][property]") {
  for (double a = -2 * pi; a <= 2 * pi; a += 0.37)
    for (double b = -2 * pi; b <= 2 * pi; b += 0.41) {
      const CMatrix lhs = rotation_matrix(Rotation::x(a)).matrix() * rotation_matrix(Rotation::x(b)).matrix();
      CHECK(max_abs(lhs - rotation_matrix(Rotation::x(a + b)).matrix()) < 1e-12);
    }
}

TEST_CASE("printed products against canonical gates", "[gates]") {
  for (GateName g : {GateName::X, GateName::Y, GateName::H, GateName::CNOT_prime, GateName::CNOT}) {
    const auto s = standard_gate(g);
    INFO(to_string(g));
    CHECK(max_abs(s.product_form.matrix() - s.canonical.matrix()) < 1e-12);
  }
  // Z and S product forms differ from diag(1,-1), diag(1,i) by a global factor -i.
  for (GateName g : {GateName::Z, GateName::S}) {
    const auto s = standard_gate(g);
    INFO(to_string(g));
    CHECK(max_abs(s.product_form.matrix() - (-kI) * s.canonical.matrix()) < 1e-12);
    CHECK_THAT(fidelity(s.product_form, s.canonical), WithinAbs(1.0, 1e-14));
  }
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(max_abs(canonical_gate(GateName::H).matrix() - mat2(r, r, r, -r)) < 1e-15);
}

TEST_CASE("decomposition lists multiply to the printed products", "[gates]") {
  const cplx prefactor[] = {kI, kI, 1.0, kI, std::exp(-kI * (pi / 4))};
  const GateName names[] = {GateName::X, GateName::Y, GateName::Z, GateName::H, GateName::S};
  for (int k = 0; k < 5; ++k) {
    CMatrix u = CMatrix::Identity(2, 2);
    for (const auto& rot : single_qubit_decomposition(names[k])) u = rotation_matrix(rot).matrix() * u;
    CHECK(max_abs(prefactor[k] * u - standard_gate(names[k]).product_form.matrix()) < 1e-12);
  }
  CHECK(single_qubit_decomposition(GateName::I).empty());
  CHECK_THROWS_AS(single_qubit_decomposition(GateName::CNOT), DomainError);
}

TEST_CASE("CSWAP and controlled gates", "[gates]") {
  CHECK(max_abs(cswap(0.0).matrix() - CMatrix::Identity(4, 4)) < 1e-15);
  const CMatrix s = cswap(pi).matrix();
  CHECK(std::abs(s(2, 1) + kI) < 1e-15);
  CHECK(std::abs(s(1, 2) + kI) < 1e-15);
  CHECK(std::abs(s(1, 1)) < 1e-15);
  for (double th = -3.0; th <= 3.0; th += 0.25) {
    const CMatrix m = cswap(th).matrix();
    CHECK(unitarity_defect(m) < 1e-14);
    CHECK(std::abs(m(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(m(3, 3) - 1.0) < 1e-15);
    CHECK(std::abs(m(0, 1)) + std::abs(m(0, 2)) + std::abs(m(3, 1)) + std::abs(m(3, 2)) == 0.0);
    CHECK(max_abs(m.block(1, 1, 2, 2) - rotation_matrix(Rotation::x(th)).matrix()) < 1e-15);
  }
  const CMatrix cnot = canonical_gate(GateName::CNOT).matrix();
  CHECK(max_abs(cnot * cnot - CMatrix::Identity(4, 4)) < 1e-15);
  const CMatrix cu = standard_gate(GateName::CU, {0.0, mat2(0, 1, 1, 0)}).canonical.matrix();
  CHECK(max_abs(cu - cnot) < 1e-15);
  CHECK_THROWS_AS(standard_gate(GateName::CU), DomainError);
  CHECK_THROWS_AS(controlled(CMatrix::Identity(3, 3)), DimensionMismatch);
}

TEST_CASE("gate names round trip", "[gates]") {
  for (GateName g : {GateName::I, GateName::X, GateName::Y, GateName::Z, GateName::H, GateName::S,
                     GateName::CSWAP, GateName::CU, GateName::CNOT_prime, GateName::CNOT})
    CHECK(gate_name_from_string(to_string(g)) == g);
  CHECK(gate_name_from_string("CNOT_prime") == GateName::CNOT_prime);
  CHECK(is_two_qubit(GateName::CSWAP));
  CHECK_FALSE(is_two_qubit(GateName::H));
}

TEST_CASE("fidelity", "[gates]") {
  const CMatrix id = CMatrix::Identity(2, 2);
  CHECK_THAT(fidelity(id, id), WithinAbs(1.0, 1e-15));
  CHECK_THAT(fidelity(id, mat2(0, 1, 1, 0)), WithinAbs(0.0, 1e-15));
  for (double th = 0.0; th < 6.0; th += 0.3)
    CHECK_THAT(fidelity(id, rotation_matrix(Rotation::x(th)).matrix()), WithinAbs(std::abs(std::cos(th / 2)), 1e-15));
  CHECK_THAT(fidelity(id, std::polar(1.0, 0.7) * id), WithinAbs(1.0, 1e-15));
  CHECK_THROWS_AS(fidelity(id, CMatrix::Identity(4, 4)), DimensionMismatch);
}

TEST_CASE("rotation synthesis inverts the Rabi formula", "[gates]") {
  Basis basis = Basis::from_energies({0.0, 1.0, 2.3});
  ControlMatrix c = ControlMatrix::zero(3);
  const cplx a10 = std::polar(0.5, -0.4);  // phi_tilde = 0.4
  c.set(1, 0, a10);
  c.set(2, 1, 0.3);
  SynthesisOptions opt;
  opt.epsilon = 0.01;

  const auto seg = synthesize_rotation(basis, c, {1, 0}, Rotation::x(pi), opt);
  CHECK_THAT(seg.duration, WithinRel(200.0 * pi, 1e-14));
  CHECK_THAT(seg.drive.phi, WithinAbs(-0.4, 1e-15));
  CHECK_THAT(seg.drive.omega_d, WithinAbs(1.0, 1e-15));
  CHECK(synthesize_rotation(basis, c, {1, 0}, Rotation::x(0.0), opt).duration == 0.0);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2 * pi, 2 * pi);
  const std::size_t idx[] = {0, 1};
  for (int k = 0; k < 25; ++k) {
    const Rotation target = Rotation::in_plane(u(rng), u(rng));
    PulseSchedule s{{synthesize_rotation(basis, c, {0, 1}, target, opt)}, Frame::interaction};
    const CMatrix got = restrict_to(execute_schedule(basis, c, s, Engine::rabi).matrix(), idx);
    CHECK(max_abs(got - rotation_matrix(target).matrix()) < 1e-12);
    const double recovered = 2.0 * std::acos(std::clamp(got(0, 0).real(), -1.0, 1.0));
    const double requested = std::abs(std::remainder(target.angle, 4 * pi));
    CHECK_THAT(std::min(recovered, 4 * pi - recovered), WithinAbs(std::min(requested, 4 * pi - requested), 1e-7));
  }

  CHECK_THROWS_AS(synthesize_rotation(basis, c, {2, 0}, Rotation::x(1.0), opt), ZeroCoupling);
  CHECK_THROWS_AS(synthesize_rotation(basis, c, {1, 0}, Rotation::z(1.0), opt), DomainError);
}

TEST_CASE("R_y follows the minus pi/2 route", "[gates]") {
  Basis basis = Basis::from_energies({0.0, 1.0});
  ControlMatrix c = ControlMatrix::zero(2);
  c.set(1, 0, 0.2);
  const auto seg = synthesize_rotation(basis, c, {1, 0}, Rotation::y(pi / 2));
  CHECK_THAT(seg.drive.phi, WithinAbs(-pi / 2, 1e-15));
  const auto p = two_level_params(basis, c, seg.drive, {1, 0});
  CHECK_THAT(p.phi_prime, WithinAbs(-pi / 2, 1e-15));
}

TEST_CASE("static drive synthesis on a degenerate pair", "[gates]") {
  Basis basis = Basis::from_energies({0.5, 0.5});
  ControlMatrix c = ControlMatrix::zero(2);
  c.set(1, 0, 0.25);
  const auto seg = synthesize_rotation(basis, c, {1, 0}, Rotation::x(pi / 3));
  CHECK(seg.drive.omega_d == 0.0);
  CHECK_THAT(seg.duration, WithinRel(pi / 3 / (2 * 0.01 * 0.25), 1e-14));
  PulseSchedule s{{seg}, Frame::interaction};
  const std::size_t idx[] = {0, 1};
  for (Engine e : {Engine::rabi, Engine::exact}) {
    const CMatrix got = restrict_to(execute_schedule(basis, c, s, e).matrix(), idx);
    CHECK(max_abs(got - rotation_matrix(Rotation::x(pi / 3)).matrix()) < 1e-10);
  }
  CHECK_THROWS_AS(synthesize_rotation(basis, c, {1, 0}, Rotation::y(1.0)), DomainError);
}

TEST_CASE("schedules through the rabi engine", "[gates]") {
  const Basis basis = anharmonic_ladder(4);
  const ControlMatrix c = ControlMatrix::ladder(4);
  CHECK(max_abs(execute_schedule(basis, c, {}, Engine::rabi).matrix() - CMatrix::Identity(4, 4)) < 1e-15);
  SynthesisOptions opt;
  opt.epsilon = 1e-3;
  const std::size_t idx[] = {0, 1};
  for (GateName g : {GateName::X, GateName::Y, GateName::Z, GateName::H, GateName::S}) {
    INFO(to_string(g));
    const auto s = synthesize_single_qubit_gate(basis, c, {1, 0}, g, opt);
    const CMatrix u = restrict_to(execute_schedule(basis, c, s, Engine::rabi).matrix(), idx);
    const CMatrix target = canonical_gate(g).matrix();
    CHECK(max_abs(strip_phase(u, target) - target) < 1e-10);
  }
}

TEST_CASE("Hadamard via the exact engine", "[gates][slow]") {
  const Basis basis = anharmonic_ladder(4);
  const ControlMatrix c = ControlMatrix::ladder(4);
  SynthesisOptions opt;
  opt.epsilon = 1e-3 * basis.frequency(1, 0);
  const auto s = synthesize_single_qubit_gate(basis, c, {1, 0}, GateName::H, opt);
  const std::size_t idx[] = {0, 1};
  const CMatrix u = restrict_to(execute_schedule(basis, c, s, Engine::exact).matrix(), idx);
  CHECK(fidelity(u, canonical_gate(GateName::H).matrix()) >= 0.999);
}

TEST_CASE("synthesized CNOT on two anharmonic ladders", "[gates]") {
  const Register r = two_ladders();
  SynthesisOptions opt;
  opt.epsilon = 1e-3;
  const auto s = synthesize_cnot(r.basis, r.control, r.reg, opt);
  REQUIRE(s.segments.size() == 4);
  const CMatrix u = restrict_to(execute_schedule(r.basis, r.control, s, Engine::rabi).matrix(), r.reg);
  const CMatrix cnot = canonical_gate(GateName::CNOT).matrix();
  CHECK_THAT(fidelity(u, cnot), WithinAbs(1.0, 1e-12));
  const CMatrix sq = u * u;
  CHECK(max_abs(strip_phase(sq, CMatrix::Identity(4, 4)) - CMatrix::Identity(4, 4)) < 1e-12);

}

TEST_CASE("CSWAP synthesis on the middle pair", "[gates]") {
  Basis basis = Basis::from_energies({0.0, 1.0, 1.1, 2.1});
  ControlMatrix c = ControlMatrix::zero(4);
  c.set(2, 1, std::polar(0.4, 0.3));
  SynthesisOptions opt;
  opt.epsilon = 1e-3;
  const RegisterIndices reg{0, 1, 2, 3};
  const auto s = synthesize_cswap(basis, c, reg, pi, opt);
  REQUIRE(s.segments.size() == 1);
  CHECK(s.segments[0].pair.upper == 2);
  CHECK(s.segments[0].pair.lower == 1);
  const CMatrix u = execute_schedule(basis, c, s, Engine::rabi).matrix();
  CHECK(max_abs(u - cswap(pi).matrix()) < 1e-12);
}
