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


#include "actiongate/encodings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "actiongate/errors.hpp"

namespace actiongate {

std::string to_string(EncodingVariant v) {
  switch (v) {
    case EncodingVariant::single_action: return "single_action";
    case EncodingVariant::two_action: return "two_action";
    case EncodingVariant::three_action: return "three_action";
    case EncodingVariant::two_system: return "two_system";
    case EncodingVariant::three_system: return "three_system";
  }
  return "?";
}

EncodingVariant encoding_variant_from_string(const std::string& name) {
  for (auto v : {EncodingVariant::single_action, EncodingVariant::two_action, EncodingVariant::three_action,
                 EncodingVariant::two_system, EncodingVariant::three_system})
    if (to_string(v) == name) return v;
  throw DomainError("unknown encoding variant '" + name + "'");
}

namespace {

std::size_t expected_subsystems(EncodingVariant v) {
  switch (v) {
    case EncodingVariant::two_system: return 2;
    case EncodingVariant::three_system: return 3;
    default: return 1;
  }
}

int differing_numbers(const QuantumNumbers& a, const QuantumNumbers& b) {
  return (a.n_r != b.n_r) + (a.n_theta != b.n_theta) + (a.n_phi != b.n_phi);
}

void check_label(const ModelSpec& m, const QuantumNumbers& qn) {
  // energy_quantum validates sign and axis admissibility
  energy_quantum(m, qn);
}

std::string state_label(std::span<const QuantumNumbers> state) {
  std::string out;
  for (std::size_t s = 0; s < state.size(); ++s) {
    if (s) out += 'x';
    out += to_string(state[s]);
  }
  return out;
}

}  // namespace

void EncodingSpec::validate() const {
  const std::size_t n = expected_subsystems(variant);
  if (subsystems.size() != n)
    throw DomainError(to_string(variant) + " encoding needs " + std::to_string(n) + " subsystem(s), got " +
                      std::to_string(subsystems.size()));
  if (zero.size() != n || one.size() != n) throw DomainError("logical labels must give one entry per subsystem");
  for (std::size_t s = 0; s < n; ++s) {
    subsystems[s].validate();
    check_label(subsystems[s], zero[s]);
    check_label(subsystems[s], one[s]);
  }
  if (zero == one) throw DomainError("|0>_L and |1>_L must differ");
  if (n == 1) {
    const int want = variant == EncodingVariant::single_action ? 1 : variant == EncodingVariant::two_action ? 2 : 3;
    if (differing_numbers(zero[0], one[0]) != want)
      throw DomainError(to_string(variant) + " encoding must differ in exactly " + std::to_string(want) +
                        " quantum number(s)");
  }
}

EncodingSpec EncodingSpec::single(const ModelSpec& model, QuantumNumbers zero, Axis axis, int step) {
  QuantumNumbers one = zero;
  switch (axis) {
    case Axis::r: one.n_r += step; break;
    case Axis::theta: one.n_theta += step; break;
    case Axis::phi: one.n_phi += step; break;
  }
  EncodingSpec spec;
  spec.variant = EncodingVariant::single_action;
  spec.subsystems = {model};
  spec.zero = {zero};
  spec.one = {one};
  return spec;
}

std::size_t EncodedBasis::index_of(std::span<const QuantumNumbers> state) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (std::equal(labels[i].begin(), labels[i].end(), state.begin(), state.end())) return i;
  throw PairError("state " + state_label(state) + " is not in the basis");
}

RegisterIndices EncodedBasis::register_indices() const {
  if (qubits != 2) throw DomainError("register indices need exactly two logical qubits");
  return {logical[0], logical[1], logical[2], logical[3]};
}

EncodedBasis build_encoding_basis(std::span<const EncodingSpec> qubits, const EncodingOptions& options) {
  if (qubits.empty()) throw DomainError("a register needs at least one logical qubit");
  EncodedBasis out;
  out.qubits = qubits.size();
  std::vector<const QuantumNumbers*> zero, one;
  for (const auto& q : qubits) {
    q.validate();
    for (std::size_t s = 0; s < q.subsystems.size(); ++s) {
      out.subsystems.push_back(q.subsystems[s]);
      zero.push_back(&q.zero[s]);
      one.push_back(&q.one[s]);
    }
  }
  const std::size_t ns = out.subsystems.size();
  if (!options.cutoffs.empty() && options.cutoffs.size() != ns)
    throw DomainError("cutoffs must give one entry per subsystem");

  std::vector<std::vector<Level>> per;
  std::size_t dim = 1;
  std::size_t first = 0;
  for (const auto& q : qubits) {
    for (std::size_t s = 0; s < q.subsystems.size(); ++s) {
      const std::size_t g = first + s;
      const int top = std::max(zero[g]->n(), one[g]->n());
      const int cutoff = options.cutoffs.empty() ? top + 1 : options.cutoffs[g];
      if (top > cutoff)
        throw CutoffError("logical label " + to_string(top == zero[g]->n() ? *zero[g] : *one[g]) +
                          " exceeds cutoff " + std::to_string(cutoff) + " of subsystem " + std::to_string(g));
      per.push_back(enumerate_levels(out.subsystems[g], cutoff, q.form).levels);
      if (dim > options.max_dimension / per.back().size() + 1)
        throw SizeError("encoding basis exceeds " + std::to_string(options.max_dimension) + " states");
      dim *= per.back().size();
    }
    first += q.subsystems.size();
  }
  if (dim > options.max_dimension)
    throw SizeError("encoding basis has " + std::to_string(dim) + " states, above " +
                    std::to_string(options.max_dimension));

  std::vector<BasisLevel> levels;
  levels.reserve(dim);
  out.labels.reserve(dim);
  std::vector<std::size_t> digit(ns, 0);
  for (std::size_t k = 0; k < dim; ++k) {
    std::vector<QuantumNumbers> state(ns);
    double e = 0.0;
    for (std::size_t s = 0; s < ns; ++s) {
      state[s] = per[s][digit[s]].qn;
      e += per[s][digit[s]].energy;
    }
    levels.push_back({state_label(state), e});
    out.labels.push_back(std::move(state));
    for (std::size_t s = ns; s-- > 0;) {
      if (++digit[s] < per[s].size()) break;
      digit[s] = 0;
    }
  }
  out.basis = Basis(std::move(levels), out.subsystems.front().hbar);

  const std::size_t nq = qubits.size();
  for (std::size_t word = 0; word < (std::size_t{1} << nq); ++word) {
    std::vector<QuantumNumbers> state;
    std::size_t g = 0;
    for (std::size_t q = 0; q < nq; ++q) {
      const bool bit = (word >> (nq - 1 - q)) & 1U;
      for (std::size_t s = 0; s < qubits[q].subsystems.size(); ++s, ++g) state.push_back(bit ? *one[g] : *zero[g]);
    }
    out.logical.push_back(out.index_of(state));
  }
  return out;
}

EncodedBasis build_encoding_basis(const EncodingSpec& qubit, const EncodingOptions& options) {
  return build_encoding_basis(std::span<const EncodingSpec>(&qubit, 1), options);
}

ControlMatrix default_control(const EncodedBasis& eb) {
  const std::size_t n = eb.labels.size();
  ControlMatrix c = ControlMatrix::zero(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      int changed = -1;
      bool adjacent = true;
      for (std::size_t s = 0; s < eb.labels[i].size() && adjacent; ++s) {
        if (eb.labels[i][s] == eb.labels[j][s]) continue;
        if (changed >= 0) adjacent = false;
        changed = static_cast<int>(s);
      }
      if (!adjacent || changed < 0) continue;
      const QuantumNumbers& a = eb.labels[i][changed];
      const QuantumNumbers& b = eb.labels[j][changed];
      if (differing_numbers(a, b) != 1) continue;
      const int da = std::abs(a.n_r - b.n_r) + std::abs(a.n_theta - b.n_theta) + std::abs(a.n_phi - b.n_phi);
      if (da != 1) continue;
      const int top = std::max({a.n_r, b.n_r}) * (a.n_r != b.n_r) +
                      std::max({a.n_theta, b.n_theta}) * (a.n_theta != b.n_theta) +
                      std::max({a.n_phi, b.n_phi}) * (a.n_phi != b.n_phi);
      c.set(i, j, std::sqrt(static_cast<double>(top)));
    }
  return c;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::selective: return "selective";
    case Verdict::collision: return "collision";
    case Verdict::needs_zero_drive: return "needs_zero_drive";
  }
  return "?";
}

namespace {

// Differences of summed energies carry rounding of the energy scale; below
// this they are exact equalities.
double frequency_floor(const Basis& basis) {
  double scale = 0.0;
  for (const auto& l : basis.levels()) scale = std::max(scale, std::abs(l.energy));
  return 64.0 * std::numeric_limits<double>::epsilon() * scale / basis.hbar();
}

double clean(double w, double floor) { return std::abs(w) <= floor ? 0.0 : w; }

}  // namespace

SelectivityReport selectivity_check(const Basis& basis, const ControlMatrix& control, LevelPair target,
                                    const SelectivityOptions& options) {
  if (basis.size() != control.size()) throw DimensionMismatch("basis and control matrix sizes differ");
  if (!(options.epsilon > 0.0)) throw DomainError("drive strength must be positive");
  if (!(options.guard > 0.0)) throw DomainError("guard must be positive");
  const LevelPair t = normalized_pair(basis, target.upper, target.lower);
  const double floor = frequency_floor(basis);

  SelectivityReport r;
  r.target = t;
  r.guard = options.guard;
  r.target_frequency = clean(basis.frequency(t.upper, t.lower), floor);
  r.target_coupling = options.epsilon * std::abs(control(t.upper, t.lower));
  r.collision_tol = options.collision_tol >= 0.0 ? options.collision_tol
                                                  : 10.0 * options.epsilon * control.max_abs();

  const std::size_t n = basis.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const bool touches = i == t.upper || i == t.lower || j == t.upper || j == t.lower;
      if (!touches || control(i, j) == 0.0) continue;
      const LevelPair p = normalized_pair(basis, i, j);
      if (p.upper == t.upper && p.lower == t.lower) continue;
      SpuriousTransition s;
      s.pair = p;
      s.frequency = std::abs(clean(basis.frequency(p.upper, p.lower), floor));
      s.detuning = clean(std::abs(s.frequency - r.target_frequency), floor);
      s.coupling = options.epsilon * std::abs(control(i, j));
      s.leakage = s.detuning > 0.0 ? s.coupling / s.detuning : std::numeric_limits<double>::infinity();
      s.collision = s.detuning == 0.0 || s.detuning < r.collision_tol;
      s.leaky = s.leakage >= options.guard;
      r.spurious.push_back(s);
    }
  std::sort(r.spurious.begin(), r.spurious.end(),
            [](const SpuriousTransition& a, const SpuriousTransition& b) { return a.detuning < b.detuning; });

  const bool bad = std::any_of(r.spurious.begin(), r.spurious.end(),
                               [](const SpuriousTransition& s) { return s.collision || s.leaky; });
  if (bad)
    r.verdict = Verdict::collision;
  else if (r.target_frequency == 0.0)
    r.verdict = Verdict::needs_zero_drive;
  else
    r.verdict = Verdict::selective;
  return r;
}

std::string to_string(SwapStrategy s) {
  switch (s) {
    case SwapStrategy::zero_drive: return "zero_drive";
    case SwapStrategy::frequency_selection: return "frequency_selection";
    case SwapStrategy::spaced: return "spaced";
  }
  return "?";
}

namespace {

UnitaryMatrix pair_rotation_target(std::size_t a, std::size_t b, double theta) {
  CMatrix m = CMatrix::Identity(4, 4);
  const CMatrix r = rotation_matrix(Rotation::x(theta)).matrix();
  m(a, a) = r(0, 0);
  m(a, b) = r(0, 1);
  m(b, a) = r(1, 0);
  m(b, b) = r(1, 1);
  return UnitaryMatrix::unchecked(std::move(m));
}

}  // namespace

TwoQubitPlan two_qubit_plan(const EncodedBasis& eb, const ControlMatrix& control, const TwoQubitPlanOptions& options) {
  const RegisterIndices reg = eb.register_indices();
  const Basis& basis = eb.basis;
  const double floor = frequency_floor(basis);
  const double w21 = clean(basis.frequency(reg[2], reg[1]), floor);
  const double w30 = clean(basis.frequency(reg[3], reg[0]), floor);

  SelectivityOptions so;
  so.epsilon = options.epsilon;
  so.guard = options.guard;
  SynthesisOptions syn;
  syn.epsilon = options.epsilon;

  std::vector<StrategyAssessment> assessed;
  std::optional<TwoQubitPlan> chosen;

  auto attempt = [&](SwapStrategy strategy, std::size_t a, std::size_t b, bool precondition,
                     const std::string& failed) {
    StrategyAssessment s{strategy, false, ""};
    if (!precondition) {
      s.reason = failed;
    } else if (control(reg[a], reg[b]) == 0.0) {
      s.reason = "no control amplitude between " + basis.label(reg[a]) + " and " + basis.label(reg[b]);
    } else {
      const auto sel = selectivity_check(basis, control, {reg[a], reg[b]}, so);
      if (sel.verdict == Verdict::collision) {
        s.reason = "spurious transition collides with or leaks from the target";
      } else {
        try {
          PulseSchedule sched;
          sched.segments.push_back(
              synthesize_rotation(basis, control, {reg[a], reg[b]}, Rotation::x(options.theta), syn));
          s.available = true;
          s.reason = "ok";
          if (!chosen) {
            TwoQubitPlan p{strategy, sched.segments.front().pair, sched, pair_rotation_target(b, a, options.theta),
                           0.0, {}};
            const CMatrix u = execute_schedule(basis, control, sched, options.engine, options.execution).matrix();
            p.predicted_fidelity = fidelity(restrict_to(u, reg), p.target.matrix());
            chosen = std::move(p);
          }
        } catch (const DomainError& e) {
          s.reason = e.what();
        } catch (const ResonanceCollision& e) {
          s.reason = e.what();
        }
      }
    }
    assessed.push_back(s);
  };

  attempt(SwapStrategy::zero_drive, 2, 1, w21 == 0.0, "omega~_21 is nonzero");
  attempt(SwapStrategy::spaced, 2, 1, w21 != 0.0, "omega~_21 vanishes");
  attempt(SwapStrategy::frequency_selection, 3, 0, w30 != 0.0, "omega~_30 vanishes");

  if (!chosen) {
    std::string msg = "no two-qubit strategy applies:";
    for (const auto& s : assessed) msg += " " + to_string(s.strategy) + ": " + s.reason + ";";
    throw NoStrategy(msg);
  }
  chosen->assessments = std::move(assessed);
  return *chosen;
}

}  // namespace actiongate
