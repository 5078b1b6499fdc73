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


#include "execute.hpp"

#include <cmath>
#include <sstream>

#include "actiongate/errors.hpp"
#include "actiongate/format.hpp"

namespace actiongate::cli {

namespace {

Json pair_json(LevelPair p) { return Json::array({p.upper, p.lower}); }

Json vector_json(const RVector& v) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v(i));
  return j;
}

Json matrix_json(const RMatrix& m) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) j.push_back(vector_json(m.row(i).transpose()));
  return j;
}

const char* axis_label(Axis a) {
  switch (a) {
    case Axis::r: return "r";
    case Axis::theta: return "theta";
    case Axis::phi: return "phi";
  }
  return "r";
}

std::string engine_name(Engine e) { return e == Engine::exact ? "exact" : "rabi"; }

struct Register {
  EncodedBasis eb;
  ControlMatrix control;
};

Register build_register(const ExperimentConfig& cfg) {
  Register r;
  r.eb = build_encoding_basis(cfg.encoding.qubits, cfg.encoding.options);
  const std::size_t n = r.eb.basis.size();
  r.control = cfg.encoding.replace_control ? ControlMatrix::zero(n) : default_control(r.eb);
  for (std::size_t k = 0; k < cfg.encoding.couplings.size(); ++k) {
    const auto& c = cfg.encoding.couplings[k];
    if (c.i >= n || c.j >= n || c.i == c.j)
      throw ConfigError("encoding.control.couplings[" + std::to_string(k) + "].pair",
                        "needs two distinct indices below the basis size " + std::to_string(n));
    r.control.set(c.i, c.j, c.value);
  }
  return r;
}

/// Flip of qubit k from |0...0~>, first qubit most significant.
LevelPair qubit_pair(const EncodedBasis& eb, std::size_t k) {
  const std::size_t bit = std::size_t{1} << (eb.qubits - 1 - k);
  return normalized_pair(eb.basis, eb.logical[bit], eb.logical[0]);
}

LevelPair resolve_pair(const EncodedBasis& eb, const std::optional<IndexPair>& p, const std::string& path) {
  if (!p) return qubit_pair(eb, 0);
  const std::size_t n = eb.basis.size();
  if ((*p)[0] >= n || (*p)[1] >= n || (*p)[0] == (*p)[1])
    throw ConfigError(path, "needs two distinct indices below the basis size " + std::to_string(n));
  return normalized_pair(eb.basis, (*p)[0], (*p)[1]);
}

Json basis_json(const Register& r) {
  Json states = Json::array();
  for (std::size_t i = 0; i < r.eb.basis.size(); ++i) {
    Json s;
    s["index"] = i;
    s["label"] = r.eb.basis.label(i);
    s["energy"] = r.eb.basis.energy(i);
    states.push_back(std::move(s));
  }
  Json j;
  j["qubits"] = r.eb.qubits;
  j["dimension"] = r.eb.basis.size();
  j["logical"] = r.eb.logical;
  j["states"] = std::move(states);
  return j;
}

Json encoding_plan(const ExperimentConfig& cfg) {
  Json qubits = Json::array();
  for (const auto& q : cfg.encoding.qubits) {
    Json j;
    j["variant"] = to_string(q.variant);
    Json subs = Json::array(), zero = Json::array(), one = Json::array();
    for (const auto& m : q.subsystems) subs.push_back(model_to_json(m));
    for (const auto& z : q.zero) zero.push_back(qn_to_json(z));
    for (const auto& o : q.one) one.push_back(qn_to_json(o));
    j["subsystems"] = std::move(subs);
    j["zero"] = std::move(zero);
    j["one"] = std::move(one);
    j["form"] = q.form == AnharmonicForm::exact ? "exact" : "small_c";
    qubits.push_back(std::move(j));
  }
  Json e;
  e["qubits"] = std::move(qubits);
  e["cutoffs"] = cfg.encoding.options.cutoffs;
  e["max_dimension"] = cfg.encoding.options.max_dimension;
  Json couplings = Json::array();
  for (const auto& c : cfg.encoding.couplings) {
    Json cj;
    cj["pair"] = Json::array({c.i, c.j});
    cj["re"] = c.value.real();
    cj["im"] = c.value.imag();
    couplings.push_back(std::move(cj));
  }
  e["control"] = {{"replace", cfg.encoding.replace_control}, {"couplings", std::move(couplings)}};
  return e;
}

Json selectivity_json(const SelectivityReport& r) {
  Json j;
  j["target"] = pair_json(r.target);
  j["target_frequency"] = r.target_frequency;
  j["target_coupling"] = r.target_coupling;
  j["guard"] = r.guard;
  j["collision_tol"] = r.collision_tol;
  j["verdict"] = to_string(r.verdict);
  Json sp = Json::array();
  for (const auto& s : r.spurious) {
    Json t;
    t["pair"] = pair_json(s.pair);
    t["frequency"] = s.frequency;
    t["detuning"] = s.detuning;
    t["coupling"] = s.coupling;
    t["leakage"] = s.leakage;
    t["collision"] = s.collision;
    t["leaky"] = s.leaky;
    sp.push_back(std::move(t));
  }
  j["spurious"] = std::move(sp);
  return j;
}

Json schedule_json(const PulseSchedule& s) {
  Json segs = Json::array();
  double total = 0.0;
  for (const auto& seg : s.segments) {
    Json j;
    j["pair"] = pair_json(seg.pair);
    j["omega_d"] = seg.drive.omega_d;
    j["phi"] = seg.drive.phi;
    j["epsilon"] = seg.drive.epsilon;
    j["t"] = seg.duration;
    total += seg.duration;
    segs.push_back(std::move(j));
  }
  Json j;
  j["frame"] = s.frame == Frame::interaction ? "interaction" : "schrodinger";
  j["segments"] = std::move(segs);
  j["total_time"] = total;
  return j;
}

SelectivityOptions selectivity_options(const ExperimentConfig& cfg) {
  SelectivityOptions o;
  o.epsilon = cfg.selectivity.epsilon;
  o.guard = cfg.tol.guard;
  o.collision_tol = cfg.tol.collision;
  return o;
}

SynthesisOptions synthesis_options(const ExperimentConfig& cfg, double epsilon) {
  SynthesisOptions o;
  o.epsilon = epsilon;
  o.rwa.threshold = cfg.tol.rwa_threshold;
  o.rwa.collision_tol = cfg.tol.collision;
  return o;
}

ExecutionOptions execution_options(const ExperimentConfig& cfg, int steps_per_period) {
  ExecutionOptions o;
  o.resonance_tol = cfg.tol.collision;
  o.steps_per_period = steps_per_period;
  return o;
}

struct GatePlan {
  PulseSchedule schedule;
  CMatrix target;
  std::vector<std::size_t> logical;
};

GatePlan plan_gate(const ExperimentConfig& cfg, const Register& r, GateName name, double theta, double epsilon,
                   const std::string& path) {
  GatePlan p;
  const auto opts = synthesis_options(cfg, epsilon);
  if (is_two_qubit(name)) {
    if (r.eb.qubits != 2) throw ConfigError(path, to_string(name) + " needs an encoding with two qubits");
    const auto reg = r.eb.register_indices();
    if (name == GateName::CNOT)
      p.schedule = synthesize_cnot(r.eb.basis, r.control, reg, opts);
    else if (name == GateName::CSWAP)
      p.schedule = synthesize_cswap(r.eb.basis, r.control, reg, theta, opts);
    else
      throw ConfigError(path, "no pulse synthesis for " + to_string(name) + "; use CNOT or CSWAP");
    p.logical.assign(reg.begin(), reg.end());
  } else {
    if (r.eb.qubits != 1) throw ConfigError(path, to_string(name) + " needs an encoding with one qubit");
    p.schedule = synthesize_single_qubit_gate(r.eb.basis, r.control, {r.eb.logical[1], r.eb.logical[0]}, name, opts);
    p.logical = r.eb.logical;
  }
  GateArgs args;
  args.theta = theta;
  p.target = canonical_gate(name, args).matrix();
  return p;
}

long drive_steps(const Basis& basis, const ControlMatrix& control, const DriveSpec& drive, double t,
                 int steps_per_period) {
  double fmax = drive.omega_d;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (control(i, j) != 0.0) fmax = std::max(fmax, std::abs(basis.frequency(i, j)) + drive.omega_d);
  const double periods = t * fmax / (2.0 * kPi);
  return std::max(64L, static_cast<long>(std::ceil(periods * steps_per_period)));
}

class Runner {
 public:
  explicit Runner(const ExperimentConfig& cfg) : cfg_(cfg) {}

  RunResult run() {
    const std::string& s = cfg_.subcommand;
    plan_["subcommand"] = s;
    plan_["seed"] = cfg_.seed;
    plan_["out_dir"] = cfg_.out_dir.generic_string();
    plan_["threads"] = cfg_.threads;
    plan_["tolerances"] = cfg_.tol.to_json();
    summary_["subcommand"] = s;
    if (s == "spectrum") spectrum();
    else if (s == "actions") actions();
    else if (s == "drive") drive();
    else if (s == "gate") gate();
    else if (s == "encode") encode();
    else if (s == "selectivity") selectivity();
    else if (s == "birkhoff") birkhoff();
    else if (s == "robustness") robustness();
    else throw ConfigError("subcommand", "unknown subcommand '" + s + "'");

    RunResult out;
    Json names = Json::array();
    for (const auto& f : files_) names.push_back(f.first);
    if (cfg_.dry_run) {
      plan_["dry_run"] = true;
      plan_["outputs"] = std::move(names);
      out.report = std::move(plan_);
      return out;
    }
    for (const auto& [name, content] : files_) {
      const auto path = cfg_.out_dir / name;
      atomic_write(path, content);
      out.outputs.push_back(path);
    }
    summary_["outputs"] = std::move(names);
    out.report = std::move(summary_);
    return out;
  }

 private:
  void declare(const std::string& name) { files_.emplace_back(name, std::string()); }
  void write(std::size_t k, std::string content) { files_[k].second = std::move(content); }

  void spectrum() {
    const auto& sp = cfg_.spectrum;
    plan_["model"] = model_to_json(cfg_.model);
    plan_["spectrum"] = {{"n_max", sp.n_max}, {"form", cfg_.form == AnharmonicForm::exact ? "exact" : "small_c"}};
    declare("spectrum.csv");
    const bool solve = sp.eigensolver_l_max >= 0;
    if (solve) {
      if (cfg_.model.dimension != 3) throw ConfigError("spectrum.eigensolver", "needs a three-dimensional model");
      plan_["spectrum"]["eigensolver"] = {{"l_max", sp.eigensolver_l_max}, {"count", sp.eigensolver_count}};
      declare("spectrum_eigensolver.csv");
    }
    if (cfg_.dry_run) return;

    const LevelSet levels = enumerate_levels(cfg_.model, sp.n_max, cfg_.form, cfg_.tol.degeneracy);
    write(0, level_set_csv(levels));
    summary_["levels"] = levels.levels.size();
    summary_["degeneracy_groups"] = levels.groups.size();
    if (!levels.levels.empty()) summary_["ground_energy"] = levels.levels.front().energy;
    if (!solve) return;

    RadialOptions ro;
    ro.relative_tol = cfg_.tol.eigensolver;
    std::ostringstream os;
    os << "l,n_r,closed_form,eigensolver,relative_error\n";
    double worst = 0.0;
    for (int l = 0; l <= sp.eigensolver_l_max; ++l) {
      const auto conv = converged_radial_levels(cfg_.model, l, sp.eigensolver_count, ro);
      for (int k = 0; k < sp.eigensolver_count; ++k) {
        const double exact = energy_quantum(cfg_.model, {k, l, 0}, cfg_.form);
        const double num = conv.energies[static_cast<std::size_t>(k)];
        const double rel = std::abs(num - exact) / std::abs(exact);
        worst = std::max(worst, rel);
        os << l << ',' << k << ',' << format_double(exact) << ',' << format_double(num) << ',' << format_double(rel)
           << '\n';
      }
    }
    write(1, os.str());
    summary_["eigensolver_max_relative_error"] = worst;
  }

  void actions() {
    plan_["model"] = model_to_json(cfg_.model);
    plan_["actions"] = {{"orbits", cfg_.actions.orbits.size()}, {"seeded", cfg_.actions.seeded}};
    declare("actions.csv");
    if (cfg_.dry_run) return;

    std::vector<OrbitSpec> orbits = cfg_.actions.orbits;
    for (auto& o : orbits) o.model = cfg_.model;
    const auto extra = seeded_orbits(cfg_.model, cfg_.actions.seeded, cfg_.seed);
    orbits.insert(orbits.end(), extra.begin(), extra.end());
    QuadratureOptions qo;
    qo.relative_tol = cfg_.tol.quadrature;
    std::ostringstream os;
    os << "E,L,Lz,Jr,Jtheta,Jphi,residual\n";
    double worst = 0.0;
    for (const auto& o : orbits) {
      const auto q = action_integrals(o, qo);
      const double residual = std::abs(energy_classical(cfg_.model, q.actions) - o.energy) / std::abs(o.energy);
      worst = std::max(worst, residual);
      os << format_double(o.energy) << ',' << format_double(o.angular_momentum) << ','
         << format_double(o.axial_momentum) << ',' << format_double(q.actions.j_r) << ','
         << format_double(q.actions.j_theta) << ',' << format_double(q.actions.j_phi) << ','
         << format_double(residual) << '\n';
    }
    write(0, os.str());
    summary_["orbits"] = orbits.size();
    summary_["max_residual"] = worst;
  }

  void drive() {
    const Register r = build_register(cfg_);
    const auto& d = cfg_.drive;
    const LevelPair pair = resolve_pair(r.eb, d.pair, "drive.pair");
    DriveSpec spec{d.epsilon, d.omega_d ? *d.omega_d : r.eb.basis.frequency(pair.upper, pair.lower), d.phi};
    const double a = std::abs(r.control(pair.upper, pair.lower));
    if (!d.t && a == 0.0) throw ZeroCoupling("target pair has no control amplitude; give drive.t explicitly");
    const double t = d.t ? *d.t : kPi / (d.epsilon * a);
    const long steps = d.steps > 0 ? d.steps : drive_steps(r.eb.basis, r.control, spec, t, d.steps_per_period);
    const long per_sample = std::max(1L, (steps + d.samples - 1) / d.samples);

    plan_["encoding"] = encoding_plan(cfg_);
    plan_["drive"] = {{"pair", pair_json(pair)},
                      {"epsilon", spec.epsilon},
                      {"omega_d", spec.omega_d},
                      {"omega_d_auto", !d.omega_d.has_value()},
                      {"phi", spec.phi},
                      {"t", t},
                      {"samples", d.samples},
                      {"steps_per_sample", per_sample},
                      {"model", d.model == DriveModel::full ? "full" : "rotating_wave"}};
    declare("drive.csv");
    declare("drive_rwa.json");
    if (cfg_.dry_run) return;

    const Basis& basis = r.eb.basis;
    ExactOptions eo;
    eo.model = d.model;
    const auto u_i = static_cast<Eigen::Index>(pair.upper), u_j = static_cast<Eigen::Index>(pair.lower);
    std::ostringstream os;
    os << "t,Re(U_" << pair.upper << '_' << pair.lower << "),Im(U_" << pair.upper << '_' << pair.lower
       << "),P_target\n";
    CMatrix u = CMatrix::Identity(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(basis.size()));
    const double dt = t / d.samples;
    auto row = [&](double tk) {
      const cplx z = u(u_i, u_j);
      os << format_double(tk) << ',' << format_double(z.real()) << ',' << format_double(z.imag()) << ','
         << format_double(std::norm(z)) << '\n';
    };
    row(0.0);
    for (int k = 1; k <= d.samples; ++k) {
      const double tk = t * k / d.samples;
      if (d.model == DriveModel::full) {
        // H(t) depends on t only through the drive phase
        DriveSpec shifted = spec;
        shifted.phi = spec.phi + spec.omega_d * (t * (k - 1) / d.samples);
        u = exact_propagator(basis, r.control, shifted, dt, per_sample, eo).u.matrix() * u;
      } else {
        u = exact_propagator(basis, r.control, spec, tk, per_sample * k, eo).u.matrix();
      }
      row(tk);
    }
    write(0, os.str());

    RwaOptions ro;
    ro.threshold = cfg_.tol.rwa_threshold;
    ro.collision_tol = cfg_.tol.collision;
    const RwaReport rep = rwa_validity_report(basis, r.control, spec, pair, ro, false);
    Json j;
    j["target"] = pair_json(rep.target);
    j["omega_d"] = rep.omega_d;
    j["threshold"] = rep.threshold;
    j["collision_tol"] = rep.collision_tol;
    j["all_below_threshold"] = rep.all_below_threshold();
    Json ratios = Json::array();
    for (const auto& x : rep.ratios)
      ratios.push_back({{"pair", pair_json(x.pair)}, {"kind", x.kind}, {"value", x.value}, {"flagged", x.flagged}});
    j["ratios"] = std::move(ratios);
    Json coll = Json::array();
    for (const auto& c : rep.collisions) coll.push_back(pair_json(c));
    j["collisions"] = std::move(coll);
    const auto tl = two_level_params(basis, r.control, spec, pair);
    j["two_level"] = {{"omega_tilde", tl.omega_tilde},
                      {"detuning", tl.detuning},
                      {"coupling", tl.coupling},
                      {"omega_rabi", tl.omega_rabi},
                      {"P_target_analytic", two_level_analytic(tl, t).transition}};
    const double p_final = std::norm(u(u_i, u_j));
    j["P_target_final"] = p_final;
    write(1, to_text(j));
    summary_["P_target_final"] = p_final;
    summary_["all_below_threshold"] = rep.all_below_threshold();
  }

  void gate() {
    const Register r = build_register(cfg_);
    const auto& g = cfg_.gate;
    const GatePlan p = plan_gate(cfg_, r, g.target, g.theta, g.epsilon, "gate.target");
    Json sched = schedule_json(p.schedule);
    plan_["encoding"] = encoding_plan(cfg_);
    plan_["gate"] = {{"target", to_string(g.target)}, {"engine", engine_name(g.engine)}, {"epsilon", g.epsilon}};
    if (g.target == GateName::CSWAP) plan_["gate"]["theta"] = g.theta;
    plan_["gate"]["schedule"] = sched;
    declare("gate.json");
    if (cfg_.dry_run) return;

    const UnitaryMatrix u =
        execute_schedule(r.eb.basis, r.control, p.schedule, g.engine, execution_options(cfg_, g.steps_per_period));
    const CMatrix restricted = restrict_to(u.matrix(), p.logical);
    const double f = fidelity(restricted, p.target);
    Json j;
    j["target"] = to_string(g.target);
    if (g.target == GateName::CSWAP) j["theta"] = g.theta;
    j["engine"] = engine_name(g.engine);
    j["logical"] = p.logical;
    j["schedule"] = std::move(sched);
    j["fidelity"] = f;
    j["leakage"] = 1.0 - restricted.squaredNorm() / static_cast<double>(restricted.rows());
    write(0, to_text(j));
    summary_["fidelity"] = f;
  }

  void encode() {
    const Register r = build_register(cfg_);
    plan_["encoding"] = encoding_plan(cfg_);
    plan_["selectivity"] = {{"epsilon", cfg_.selectivity.epsilon}};
    declare("encode.json");
    if (cfg_.dry_run) return;

    Json j = basis_json(r);
    Json sel = Json::array();
    const auto so = selectivity_options(cfg_);
    for (std::size_t k = 0; k < r.eb.qubits; ++k)
      sel.push_back(selectivity_json(selectivity_check(r.eb.basis, r.control, qubit_pair(r.eb, k), so)));
    j["selectivity"] = std::move(sel);
    if (r.eb.qubits == 2) {
      TwoQubitPlanOptions po;
      po.epsilon = cfg_.selectivity.epsilon;
      po.guard = cfg_.tol.guard;
      po.execution = execution_options(cfg_, 64);
      Json two;
      try {
        const auto plan = two_qubit_plan(r.eb, r.control, po);
        two["strategy"] = to_string(plan.strategy);
        two["pair"] = pair_json(plan.pair);
        two["schedule"] = schedule_json(plan.schedule);
        two["predicted_fidelity"] = plan.predicted_fidelity;
        Json as = Json::array();
        for (const auto& a : plan.assessments)
          as.push_back({{"strategy", to_string(a.strategy)}, {"available", a.available}, {"reason", a.reason}});
        two["assessments"] = std::move(as);
      } catch (const NoStrategy& e) {
        two["strategy"] = nullptr;
        two["reason"] = e.what();
      }
      j["two_qubit"] = std::move(two);
    }
    write(0, to_text(j));
    summary_["dimension"] = r.eb.basis.size();
    Json verdicts = Json::array();
    for (const auto& s : j["selectivity"]) verdicts.push_back(s["verdict"]);
    summary_["verdicts"] = std::move(verdicts);
  }

  void selectivity() {
    const Register r = build_register(cfg_);
    const LevelPair pair = resolve_pair(r.eb, cfg_.selectivity.pair, "selectivity.pair");
    plan_["encoding"] = encoding_plan(cfg_);
    plan_["selectivity"] = {{"pair", pair_json(pair)}, {"epsilon", cfg_.selectivity.epsilon}};
    declare("selectivity.json");
    if (cfg_.dry_run) return;

    const auto rep = selectivity_check(r.eb.basis, r.control, pair, selectivity_options(cfg_));
    write(0, to_text(selectivity_json(rep)));
    summary_["verdict"] = to_string(rep.verdict);
  }

  void birkhoff() {
    const auto& b = cfg_.birkhoff;
    const std::array<double, 3> j0{b.j0.j_r, b.j0.j_theta, b.j0.j_phi};
    Json j0_json = Json::array();
    for (int i = 0; i < cfg_.model.dimension; ++i) j0_json.push_back(j0[static_cast<std::size_t>(i)]);
    plan_["model"] = model_to_json(cfg_.model);
    plan_["birkhoff"] = {{"J0", j0_json},
                         {"cutoffs", b.cutoffs},
                         {"convention", b.convention == QuantizationConvention::number ? "number" : "oscillator"},
                         {"k_max", b.k_max}};
    declare("birkhoff.json");
    declare("birkhoff_spectrum.csv");
    if (cfg_.dry_run) return;

    const auto c = taylor_expand(cfg_.model, b.j0);
    const auto q = quantize_truncated(c, b.cutoffs, b.convention);
    Json j;
    j["model"] = model_to_json(cfg_.model);
    j["J0"] = std::move(j0_json);
    Json axes = Json::array();
    for (Axis a : c.axes) axes.push_back(axis_label(a));
    j["axes"] = std::move(axes);
    j["h0"] = c.h0;
    j["gradient"] = vector_json(c.gradient);
    j["frequencies"] = vector_json(2.0 * kPi * c.gradient);
    j["hessian"] = matrix_json(c.hessian);
    j["numeric_gradient"] = vector_json(c.numeric_gradient);
    j["numeric_hessian"] = matrix_json(c.numeric_hessian);
    j["analytic"] = c.analytic;
    j["max_relative_error"] = c.max_relative_error;
    const double det = nondegeneracy_determinant(c);
    j["nondegeneracy_determinant"] = det;
    Json rel = Json::array();
    for (const auto& x : incommensurability_check(c, b.k_max, cfg_.tol.resonance))
      rel.push_back({{"coefficients", x.coefficients}, {"residual", x.residual}});
    j["relations"] = std::move(rel);
    j["quantized"] = {{"convention", plan_["birkhoff"]["convention"]},
                      {"hbar", q.hbar},
                      {"cutoffs", q.cutoffs},
                      {"c", vector_json(q.c)},
                      {"c2", matrix_json(q.c2)}};
    write(0, to_text(j));

    std::ostringstream os;
    for (Axis a : c.axes) os << "dn_" << axis_label(a) << ',';
    os << "energy,exact,remainder_bound\n";
    for (const auto& s : q.states()) {
      for (int n : s) os << n << ',';
      os << format_double(q.energy(s));
      for (auto f : {&exact_shifted_energy, &taylor_remainder_bound}) {
        os << ',';
        try {
          os << format_double(f(c, s, b.convention));
        } catch (const DomainError&) {
          os << "nan";  // shifted action leaves the bound-motion domain
        }
      }
      os << '\n';
    }
    write(1, os.str());
    summary_["nondegeneracy_determinant"] = det;
    summary_["h0"] = c.h0;
  }

  void robustness() {
    const Register r = build_register(cfg_);
    const auto& rc = cfg_.robustness;
    const GatePlan p = plan_gate(cfg_, r, rc.gate, kPi, rc.epsilon, "robustness.gate");
    plan_["encoding"] = encoding_plan(cfg_);
    plan_["robustness"] = {{"gate", to_string(rc.gate)},
                           {"epsilon", rc.epsilon},
                           {"structure", to_string(rc.structure)},
                           {"band_width", rc.band_width},
                           {"epsilon2", rc.epsilon2},
                           {"schedule", schedule_json(p.schedule)}};
    declare("robustness.csv");
    declare("robustness.json");
    if (cfg_.dry_run) return;

    PerturbationSpec pert;
    pert.structure = rc.structure;
    pert.band_width = rc.band_width;
    pert.seed = cfg_.seed;
    SweepOptions so;
    so.execution = execution_options(cfg_, rc.steps_per_period);
    so.robustness.max_dimension = rc.max_dimension;
    so.threads = cfg_.threads;
    const auto points = fidelity_sweep(r.eb.basis, r.control, p.schedule, p.logical, p.target, pert, rc.epsilon2, so);
    write(0, sweep_csv(points));
    Json j;
    j["gate"] = to_string(rc.gate);
    j["structure"] = to_string(rc.structure);
    j["band_width"] = rc.band_width;
    j["seed"] = cfg_.seed;
    try {
      j["infidelity_slope"] = infidelity_slope(points);
    } catch (const DomainError&) {
      j["infidelity_slope"] = nullptr;
    }
    double min_f = 1.0;
    for (const auto& pt : points) min_f = std::min(min_f, pt.fidelity);
    j["min_fidelity"] = min_f;
    summary_["infidelity_slope"] = j["infidelity_slope"];
    summary_["min_fidelity"] = min_f;
    write(1, to_text(j));
  }

  const ExperimentConfig& cfg_;
  Json plan_;
  Json summary_;
  std::vector<std::pair<std::string, std::string>> files_;
};

const char* class_name(ErrorClass c) {
  switch (c) {
    case ErrorClass::config: return "config";
    case ErrorClass::domain: return "domain";
    case ErrorClass::convergence: return "convergence";
  }
  return "domain";
}

int exit_code_for(ErrorClass c) {
  switch (c) {
    case ErrorClass::config: return kConfigError;
    case ErrorClass::domain: return kDomainError;
    case ErrorClass::convergence: return kConvergenceError;
  }
  return kDomainError;
}

}  // namespace

Json error_json(const Error& e) {
  Json j;
  j["error"] = e.kind();
  j["class"] = class_name(e.error_class());
  j["message"] = e.what();
  if (const auto* ce = dynamic_cast<const ConfigError*>(&e)) j["path"] = ce->path();
  return j;
}

RunResult execute(const ExperimentConfig& cfg) {
  try {
    return Runner(cfg).run();
  } catch (const Error& e) {
    RunResult r;
    r.exit_code = exit_code_for(e.error_class());
    r.report = error_json(e);
    return r;
  } catch (const std::filesystem::filesystem_error& e) {
    RunResult r;
    r.exit_code = kDomainError;
    r.report = {{"error", "IOError"}, {"class", "domain"}, {"message", e.what()}};
    return r;
  }
}

RunResult execute(const Json& doc, const Overrides& overrides) {
  try {
    return execute(parse_config(doc, overrides));
  } catch (const ConfigError& e) {
    RunResult r;
    r.exit_code = kConfigError;
    r.report = error_json(e);
    return r;
  }
}

}  // namespace actiongate::cli
