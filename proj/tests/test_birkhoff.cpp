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

#include "actiongate/birkhoff.hpp"
#include "actiongate/errors.hpp"
#include "actiongate/gates.hpp"

using namespace actiongate;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

bool has_relation(const std::vector<ResonanceRelation>& rel, std::vector<int> l) {
  for (const auto& r : rel)
    if (r.coefficients == l) return true;
  return false;
}

}  // namespace

TEST_CASE("one-dimensional Coulomb expansion", "[birkhoff]") {
  const auto c = taylor_expand(ModelSpec::coulomb_model(1.0, 1), {2 * pi, 0, 0});
  REQUIRE(c.analytic);
  CHECK_THAT(c.h0, WithinAbs(-0.5, 1e-15));
  CHECK_THAT(c.gradient(0), WithinRel(1.0 / (2 * pi), 1e-14));
  CHECK_THAT(c.gradient(0), WithinAbs(0.159155, 5e-7));
  CHECK_THAT(c.hessian(0, 0), WithinRel(-3.0 / (4 * pi * pi), 1e-14));
  CHECK_THAT(c.hessian(0, 0), WithinAbs(-0.0759909, 5e-8));
  CHECK_THAT(c.numeric_hessian(0, 0), WithinRel(-3.0 / (4 * pi * pi), 1e-6));
  CHECK(c.max_relative_error <= 1e-6);
  CHECK_THAT(nondegeneracy_determinant(c), WithinRel(-3.0 / (4 * pi * pi), 1e-14));
}

TEST_CASE("harmonic Hessian vanishes exactly", "[birkhoff]") {
  for (int dim = 1; dim <= 3; ++dim)
    for (double j : {0.3, 2.0, 17.0}) {
      const ClassicalActions j0{j, dim >= 2 ? 0.5 * j : 0.0, dim >= 3 ? 0.25 * j : 0.0};
      const auto c = taylor_expand(ModelSpec::harmonic(1.3, dim), j0);
      CHECK(c.hessian.cwiseAbs().maxCoeff() == 0.0);
      CHECK(nondegeneracy_determinant(c) == 0.0);
      CHECK_THAT(2 * pi * c.gradient(0), WithinRel(2 * 1.3, 1e-15));
      CHECK(c.max_relative_error <= 1e-5);
    }
}

TEST_CASE("gradients agree with the classical frequencies on every model", "[birkhoff][property]") {
  const ModelSpec models[] = {ModelSpec::harmonic(0.8), ModelSpec::anharmonic_oscillator(0.01),
                              ModelSpec::coulomb_model(1.2), ModelSpec::perturbed_coulomb(0.005)};
  const ClassicalActions points[] = {{1.0, 2.0, 0.5}, {3.0, 1.0, 1.5}, {0.7, 4.0, 2.0}};
  for (const auto& m : models)
    for (const auto& j : points) {
      INFO(to_string(m.kind));
      const auto c = taylor_expand(m, j);
      const auto f = classical_frequencies(m, j);
      for (Eigen::Index i = 0; i < c.gradient.size(); ++i)
        CHECK_THAT(2 * pi * c.gradient(i), WithinRel(f.analytic[static_cast<std::size_t>(i)], 1e-6));
      CHECK((c.hessian - c.hessian.transpose()).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("non-degeneracy", "[birkhoff]") {
  CHECK(nondegeneracy_determinant(taylor_expand(ModelSpec::anharmonic_oscillator(0.01, 1.0, 1), {1.0, 0, 0})) >
        0.0);
  CHECK(nondegeneracy_determinant(taylor_expand(ModelSpec::anharmonic_oscillator(0.05, 1.0, 1), {5.0, 0, 0})) >
        1e-4);
  // Coulomb in three dimensions depends only on J_r + J_theta + J_phi
  CHECK_THAT(nondegeneracy_determinant(taylor_expand(ModelSpec::coulomb_model(), {1.0, 1.0, 1.0})),
             WithinAbs(0.0, 1e-15));
  CHECK_THROWS_AS(taylor_expand(ModelSpec::coulomb_model(1.0, 2), {1.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("incommensurability", "[birkhoff]") {
  const double irr[] = {1.0, std::sqrt(2.0)};
  CHECK(incommensurability_check(irr, 8, 1e-9).empty());
  const double com[] = {2.0, 1.0, 1.0};
  const auto r = incommensurability_check(com, 4, 1e-9);
  CHECK(has_relation(r, {0, 1, -1}));
  CHECK(has_relation(r, {1, -2, 0}));
  const auto coulomb = incommensurability_check(taylor_expand(ModelSpec::coulomb_model(), {1.0, 2.0, 3.0}));
  CHECK(has_relation(coulomb, {1, -1, 0}));
}

TEST_CASE("quantized truncation", "[birkhoff]") {
  const auto c = taylor_expand(ModelSpec::coulomb_model(1.0, 1), {2 * pi, 0, 0});
  const int cut[] = {4};
  const auto q = quantize_truncated(c, cut);
  const int zero[] = {0}, one[] = {1};
  CHECK(q.energy(zero) == c.h0);
  CHECK_THAT(q.c(0), WithinRel(1.0, 1e-14));
  CHECK_THAT(q.c2(0, 0), WithinRel(-3.0, 1e-14));
  CHECK_THAT(q.energy(one), WithinAbs(-1.0, 1e-14));
  CHECK_THAT(exact_shifted_energy(c, one), WithinAbs(-0.125, 1e-15));
  const double gap = std::abs(q.energy(one) - exact_shifted_energy(c, one));
  CHECK_THAT(gap, WithinAbs(0.875, 1e-14));
  // sup of g''' = 12 at s = 0
  CHECK_THAT(taylor_remainder_bound(c, one), WithinRel(1.1 * 2.0, 1e-6));
  CHECK(gap <= taylor_remainder_bound(c, one));

  const auto spec = q.spectrum();
  REQUIRE(spec.size() == 4);
  for (std::size_t k = 2; k < spec.size(); ++k)
    CHECK_THAT(spec[k] - 2 * spec[k - 1] + spec[k - 2], WithinAbs(q.c2(0, 0), 1e-12));

  const int bad[] = {1};
  CHECK_THROWS_AS(quantize_truncated(c, bad), DomainError);
}

TEST_CASE("truncation error is bounded by the third-order remainder", "[birkhoff][property]") {
  const ModelSpec models[] = {ModelSpec::coulomb_model(1.0, 2), ModelSpec::anharmonic_oscillator(0.01, 1.0, 2),
                              ModelSpec::perturbed_coulomb(0.005, 1.0, 2)};
  for (const auto& m : models)
    for (auto conv : {QuantizationConvention::number, QuantizationConvention::oscillator}) {
      const double j = m.kind == ModelKind::anharmonic ? 25.0 : 60.0;
      const auto c = taylor_expand(m, {j, j, 0.0});
      const int cut[] = {2, 2};
      const auto q = quantize_truncated(c, cut, conv);
      for (int a = -3; a <= 3; ++a)
        for (int b = -3; b <= 3; ++b) {
          const int dn[] = {a, b};
          const double gap = std::abs(q.energy(dn) - exact_shifted_energy(c, dn, conv));
          CHECK(gap <= taylor_remainder_bound(c, dn, conv) + 1e-13);
        }
    }
}

TEST_CASE("coupling phase gate", "[birkhoff]") {
  CHECK(max_abs(coupling_phase_gate(0.7, 0.0).matrix() - CMatrix::Identity(4, 4)) == 0.0);
  CMatrix cz = CMatrix::Identity(4, 4);
  cz(3, 3) = -1.0;
  const CMatrix g = coupling_phase_gate(0.5, 2 * pi).matrix();
  CHECK(max_abs(g - cz) <= 1e-12);
  CHECK(max_abs(coupling_phase_gate(1.0, 2.0, 2.0).matrix() - coupling_phase_gate(1.0, 1.0).matrix()) == 0.0);

  const CMatrix h = kron(CMatrix::Identity(2, 2), canonical_gate(GateName::H).matrix());
  const CMatrix cnot = h * g * h;
  CHECK_THAT(fidelity(cnot, canonical_gate(GateName::CNOT).matrix()), WithinAbs(1.0, 1e-12));
  CHECK(max_abs(cnot - canonical_gate(GateName::CNOT).matrix()) <= 1e-12);

  for (double th = -7.0; th < 7.0; th += 0.5) {
    const CMatrix a = coupling_phase_gate(th, 1.0).matrix();
    CHECK(unitarity_defect(a) <= 1e-15);
    CHECK(max_abs(a - coupling_phase_gate(th + 2 * pi, 1.0).matrix()) <= 1e-12);
    CHECK(max_abs(CMatrix(a.diagonal().asDiagonal()) - a) == 0.0);
  }
}
