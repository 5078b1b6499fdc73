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


#include "config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include "actiongate/errors.hpp"

namespace actiongate::cli {

namespace {

std::string join(const std::string& base, const std::string& key) { return base.empty() ? key : base + "." + key; }

std::string indexed(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

// Typed, path-aware view of one JSON object with a closed key set.
class Section {
 public:
  Section(const Json& j, std::string path, std::initializer_list<const char*> allowed)
      : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "must be an object");
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      const bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; });
      if (!ok) throw ConfigError(join(path_, it.key()), "unknown field");
    }
  }

  bool has(const char* key) const { return j_.contains(key); }
  const Json& raw(const char* key) const { return j_.at(key); }
  std::string path(const char* key) const { return join(path_, key); }

  double number(const char* key, double def) const {
    if (!has(key)) return def;
    const Json& v = raw(key);
    if (!v.is_number()) throw ConfigError(path(key), "must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(path(key), "must be finite");
    return x;
  }
  double positive(const char* key, double def) const {
    const double x = number(key, def);
    if (!(x > 0.0)) throw ConfigError(path(key), "must be positive");
    return x;
  }
  double non_negative(const char* key, double def) const {
    const double x = number(key, def);
    if (!(x >= 0.0)) throw ConfigError(path(key), "must be non-negative");
    return x;
  }
  long long integer(const char* key, long long def, long long lo, long long hi) const {
    if (!has(key)) return def;
    const Json& v = raw(key);
    if (!v.is_number_integer()) throw ConfigError(path(key), "must be an integer");
    if (v.is_number_unsigned() && v.get<unsigned long long>() > static_cast<unsigned long long>(hi))
      throw ConfigError(path(key), "must be at most " + std::to_string(hi));
    const long long x = v.get<long long>();
    if (x < lo || x > hi)
      throw ConfigError(path(key), "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return x;
  }
  std::string string(const char* key, const std::string& def) const {
    if (!has(key)) return def;
    if (!raw(key).is_string()) throw ConfigError(path(key), "must be a string");
    return raw(key).get<std::string>();
  }
  bool boolean(const char* key, bool def) const {
    if (!has(key)) return def;
    if (!raw(key).is_boolean()) throw ConfigError(path(key), "must be a boolean");
    return raw(key).get<bool>();
  }

 private:
  const Json& j_;
  std::string path_;
};

template <class F>
auto as_config(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw ConfigError(path, e.what());
  }
}

QuantumNumbers parse_qn(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty() || j.size() > 3) throw ConfigError(path, "must be an array of 1 to 3 integers");
  int v[3] = {0, 0, 0};
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer() || j[i].get<long long>() < 0 || j[i].get<long long>() > 100000)
      throw ConfigError(indexed(path, i), "must be a non-negative integer");
    v[i] = j[i].get<int>();
  }
  return {v[0], v[1], v[2]};
}

Axis parse_axis(const std::string& s, const std::string& path) {
  if (s == "r") return Axis::r;
  if (s == "theta") return Axis::theta;
  if (s == "phi") return Axis::phi;
  throw ConfigError(path, "must be one of r, theta, phi");
}

AnharmonicForm parse_form(const std::string& s, const std::string& path) {
  if (s == "exact") return AnharmonicForm::exact;
  if (s == "small_c") return AnharmonicForm::small_c;
  throw ConfigError(path, "must be exact or small_c");
}

std::optional<IndexPair> parse_pair(const Section& s, const char* key) {
  if (!s.has(key)) return std::nullopt;
  const Json& j = s.raw(key);
  if (!j.is_array() || j.size() != 2) throw ConfigError(s.path(key), "must be an array of two basis indices");
  IndexPair p{};
  for (std::size_t i = 0; i < 2; ++i) {
    if (!j[i].is_number_integer() || j[i].get<long long>() < 0)
      throw ConfigError(indexed(s.path(key), i), "must be a non-negative integer");
    p[i] = j[i].get<std::size_t>();
  }
  return p;
}

ModelSpec parse_model(const Json& j, const std::string& path) {
  const Section s(j, path, {"kind", "m", "omega", "c", "k", "beta", "hbar", "dimension"});
  if (!s.has("kind")) throw ConfigError(s.path("kind"), "is required");
  ModelSpec m;
  m.kind = as_config(s.path("kind"), [&] { return model_kind_from_string(s.string("kind", "")); });
  m.mass = s.positive("m", 1.0);
  m.hbar = s.positive("hbar", 1.0);
  m.omega = s.positive("omega", 1.0);
  m.anharmonicity = s.non_negative("c", 0.0);
  m.coulomb_k = s.positive("k", 1.0);
  m.beta = s.non_negative("beta", 0.0);
  m.dimension = static_cast<int>(s.integer("dimension", 3, 1, 3));
  as_config(path, [&] {
    m.validate();
    return 0;
  });
  return m;
}

EncodingSpec parse_qubit(const Json& j, const std::string& path, const std::optional<ModelSpec>& model,
                         AnharmonicForm form) {
  const Section s(j, path, {"variant", "model", "subsystems", "axis", "zero", "one", "step", "form"});
  EncodingSpec spec;
  const AnharmonicForm f = s.has("form") ? parse_form(s.string("form", ""), s.path("form")) : form;
  if (!s.has("zero")) throw ConfigError(s.path("zero"), "is required");

  if (!s.has("variant")) {
    // shorthand: one model, |1>_L = |0>_L + step along axis
    for (const char* k : {"subsystems", "one"})
      if (s.has(k)) throw ConfigError(s.path(k), "needs an explicit variant");
    std::optional<ModelSpec> m = model;
    if (s.has("model")) m = parse_model(s.raw("model"), s.path("model"));
    if (!m) throw ConfigError(s.path("model"), "is required when no top-level model is given");
    const Axis axis = parse_axis(s.string("axis", "r"), s.path("axis"));
    const int step = static_cast<int>(s.integer("step", 1, 1, 1000));
    spec = EncodingSpec::single(*m, parse_qn(s.raw("zero"), s.path("zero")), axis, step);
  } else {
    if (s.has("axis") || s.has("step")) throw ConfigError(s.path(s.has("axis") ? "axis" : "step"), "needs the shorthand form");
    spec.variant = as_config(s.path("variant"), [&] { return encoding_variant_from_string(s.string("variant", "")); });
    if (s.has("subsystems")) {
      const Json& subs = s.raw("subsystems");
      if (!subs.is_array() || subs.empty()) throw ConfigError(s.path("subsystems"), "must be a non-empty array");
      for (std::size_t i = 0; i < subs.size(); ++i) spec.subsystems.push_back(parse_model(subs[i], indexed(s.path("subsystems"), i)));
    } else {
      std::optional<ModelSpec> m = model;
      if (s.has("model")) m = parse_model(s.raw("model"), s.path("model"));
      if (!m) throw ConfigError(s.path("subsystems"), "is required when no model is given");
      const std::size_t n = spec.variant == EncodingVariant::two_system     ? 2
                            : spec.variant == EncodingVariant::three_system ? 3
                                                                             : 1;
      spec.subsystems.assign(n, *m);
    }
    if (!s.has("one")) throw ConfigError(s.path("one"), "is required");
    for (const char* key : {"zero", "one"}) {
      const Json& arr = s.raw(key);
      if (!arr.is_array() || arr.empty()) throw ConfigError(s.path(key), "must be an array of labels");
      std::vector<QuantumNumbers>& dst = std::string(key) == "zero" ? spec.zero : spec.one;
      // a single label may be given unwrapped for one subsystem
      if (arr[0].is_number()) {
        dst.push_back(parse_qn(arr, s.path(key)));
      } else {
        for (std::size_t i = 0; i < arr.size(); ++i) dst.push_back(parse_qn(arr[i], indexed(s.path(key), i)));
      }
    }
  }
  spec.form = f;
  as_config(path, [&] {
    spec.validate();
    return 0;
  });
  return spec;
}

EncodingConfig parse_encoding(const Json* j, const std::optional<ModelSpec>& model, AnharmonicForm form) {
  EncodingConfig e;
  if (!j) {
    if (!model) throw ConfigError("encoding", "is required when no model is given");
    e.qubits.push_back(EncodingSpec::single(*model, {}, Axis::r));
    e.qubits.back().form = form;
    return e;
  }
  const Section s(*j, "encoding", {"qubits", "cutoffs", "max_dimension", "control"});
  if (s.has("qubits")) {
    const Json& q = s.raw("qubits");
    if (!q.is_array() || q.empty() || q.size() > 2) throw ConfigError(s.path("qubits"), "must hold one or two qubits");
    for (std::size_t i = 0; i < q.size(); ++i) e.qubits.push_back(parse_qubit(q[i], indexed(s.path("qubits"), i), model, form));
  } else {
    if (!model) throw ConfigError(s.path("qubits"), "is required when no model is given");
    e.qubits.push_back(EncodingSpec::single(*model, {}, Axis::r));
    e.qubits.back().form = form;
  }
  if (s.has("cutoffs")) {
    const Json& c = s.raw("cutoffs");
    if (!c.is_array()) throw ConfigError(s.path("cutoffs"), "must be an array of integers");
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!c[i].is_number_integer() || c[i].get<long long>() < 0 || c[i].get<long long>() > 10000)
        throw ConfigError(indexed(s.path("cutoffs"), i), "must be a non-negative integer");
      e.options.cutoffs.push_back(c[i].get<int>());
    }
  }
  e.options.max_dimension = static_cast<std::size_t>(s.integer("max_dimension", 4096, 1, 1 << 20));
  if (s.has("control")) {
    const Section c(s.raw("control"), s.path("control"), {"replace", "couplings"});
    e.replace_control = c.boolean("replace", false);
    if (c.has("couplings")) {
      const Json& arr = c.raw("couplings");
      if (!arr.is_array()) throw ConfigError(c.path("couplings"), "must be an array");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const Section cp(arr[i], indexed(c.path("couplings"), i), {"pair", "re", "im"});
        const auto p = parse_pair(cp, "pair");
        if (!p) throw ConfigError(cp.path("pair"), "is required");
        e.couplings.push_back({(*p)[0], (*p)[1], cplx(cp.number("re", 0.0), cp.number("im", 0.0))});
      }
    }
  }
  return e;
}

GateName parse_gate(const std::string& s, const std::string& path) {
  return as_config(path, [&] { return gate_name_from_string(s); });
}

Engine parse_engine(const std::string& s, const std::string& path) {
  if (s == "exact") return Engine::exact;
  if (s == "rabi") return Engine::rabi;
  throw ConfigError(path, "must be exact or rabi");
}

std::vector<double> parse_grid(const Section& s, const char* key) {
  const Json& j = s.raw(key);
  if (!j.is_array() || j.empty()) throw ConfigError(s.path(key), "must be a non-empty array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number() || !std::isfinite(j[i].get<double>()) || j[i].get<double>() < 0.0)
      throw ConfigError(indexed(s.path(key), i), "must be a non-negative number");
    out.push_back(j[i].get<double>());
  }
  return out;
}

}  // namespace

void Tolerances::set(const std::string& name, double value) {
  const std::string path = "tolerances." + name;
  if (!std::isfinite(value)) throw ConfigError(path, "must be finite");
  if (name == "collision") {
    collision = value;
    return;
  }
  if (!(value > 0.0)) throw ConfigError(path, "must be positive");
  if (name == "degeneracy") degeneracy = value;
  else if (name == "quadrature") quadrature = value;
  else if (name == "eigensolver") eigensolver = value;
  else if (name == "rwa_threshold") rwa_threshold = value;
  else if (name == "guard") guard = value;
  else if (name == "resonance") resonance = value;
  else throw ConfigError(path, "unknown tolerance");
}

Json Tolerances::to_json() const {
  Json j;
  j["degeneracy"] = degeneracy;
  j["quadrature"] = quadrature;
  j["eigensolver"] = eigensolver;
  j["rwa_threshold"] = rwa_threshold;
  j["collision"] = collision;
  j["guard"] = guard;
  j["resonance"] = resonance;
  return j;
}

Json model_to_json(const ModelSpec& m) {
  Json j;
  j["kind"] = to_string(m.kind);
  j["m"] = m.mass;
  j["hbar"] = m.hbar;
  if (m.kind == ModelKind::isotropic_harmonic || m.kind == ModelKind::anharmonic) j["omega"] = m.omega;
  if (m.kind == ModelKind::anharmonic) j["c"] = m.anharmonicity;
  if (m.kind == ModelKind::coulomb || m.kind == ModelKind::coulomb_perturbed) j["k"] = m.coulomb_k;
  if (m.kind == ModelKind::coulomb_perturbed) j["beta"] = m.beta;
  j["dimension"] = m.dimension;
  return j;
}

Json qn_to_json(const QuantumNumbers& qn) { return Json::array({qn.n_r, qn.n_theta, qn.n_phi}); }

ExperimentConfig parse_config(const Json& doc, const Overrides& ov) {
  const Section top(doc, "", {"$schema", "subcommand", "seed", "threads", "output", "tolerances", "model", "encoding",
                              "spectrum", "actions", "drive", "gate", "selectivity", "birkhoff", "robustness"});
  ExperimentConfig cfg;

  cfg.subcommand = ov.subcommand ? *ov.subcommand : top.string("subcommand", "");
  if (cfg.subcommand.empty()) throw ConfigError("subcommand", "is required");
  if (std::find(kSubcommands.begin(), kSubcommands.end(), cfg.subcommand) == kSubcommands.end())
    throw ConfigError("subcommand", "unknown subcommand '" + cfg.subcommand + "'");

  if (top.has("seed")) {
    const Json& s = top.raw("seed");
    if (!s.is_number_integer() || (!s.is_number_unsigned() && s.get<long long>() < 0))
      throw ConfigError("seed", "must be a non-negative integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  if (ov.seed) cfg.seed = *ov.seed;

  cfg.threads = static_cast<unsigned>(top.integer("threads", 1, 1, 1024));
  if (ov.thread_cap) cfg.threads = std::min(cfg.threads, *ov.thread_cap);

  if (top.has("output")) {
    const Section o(top.raw("output"), "output", {"dir"});
    const std::string dir = o.string("dir", "out");
    if (dir.empty()) throw ConfigError("output.dir", "must not be empty");
    cfg.out_dir = dir;
  }
  if (ov.out_dir) cfg.out_dir = *ov.out_dir;
  cfg.dry_run = ov.dry_run;

  if (top.has("tolerances")) {
    const Json& t = top.raw("tolerances");
    if (!t.is_object()) throw ConfigError("tolerances", "must be an object");
    for (auto it = t.begin(); it != t.end(); ++it) {
      if (!it.value().is_number()) throw ConfigError("tolerances." + it.key(), "must be a number");
      cfg.tol.set(it.key(), it.value().get<double>());
    }
  }
  for (const auto& [name, value] : ov.tolerances) cfg.tol.set(name, value);

  std::optional<ModelSpec> model;
  if (top.has("model")) {
    model = parse_model(top.raw("model"), "model");
    cfg.model = *model;
  }

  const std::string& sub = cfg.subcommand;
  const bool needs_model = sub == "spectrum" || sub == "actions" || sub == "birkhoff";
  if (needs_model && !model) throw ConfigError("model", "is required for " + sub);

  if (top.has("spectrum")) {
    const Section s(top.raw("spectrum"), "spectrum", {"n_max", "form", "eigensolver"});
    cfg.spectrum.n_max = static_cast<int>(s.integer("n_max", 3, 0, 200));
    if (s.has("form")) cfg.form = parse_form(s.string("form", ""), s.path("form"));
    if (s.has("eigensolver")) {
      const Section e(s.raw("eigensolver"), s.path("eigensolver"), {"l_max", "count"});
      cfg.spectrum.eigensolver_l_max = static_cast<int>(e.integer("l_max", 0, 0, 50));
      cfg.spectrum.eigensolver_count = static_cast<int>(e.integer("count", 3, 1, 50));
    }
  }

  const bool needs_encoding =
      sub == "drive" || sub == "gate" || sub == "encode" || sub == "selectivity" || sub == "robustness";
  if (needs_encoding) cfg.encoding = parse_encoding(top.has("encoding") ? &top.raw("encoding") : nullptr, model, cfg.form);
  else if (top.has("encoding")) parse_encoding(&top.raw("encoding"), model, cfg.form);

  if (top.has("actions")) {
    const Section s(top.raw("actions"), "actions", {"orbits", "seeded"});
    cfg.actions.seeded = static_cast<std::size_t>(s.integer("seeded", 0, 0, 100000));
    if (s.has("orbits")) {
      const Json& arr = s.raw("orbits");
      if (!arr.is_array()) throw ConfigError(s.path("orbits"), "must be an array");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const Section o(arr[i], indexed(s.path("orbits"), i), {"E", "L", "Lz"});
        if (!o.has("E")) throw ConfigError(o.path("E"), "is required");
        OrbitSpec orbit;
        orbit.model = cfg.model;
        orbit.energy = o.number("E", 0.0);
        orbit.angular_momentum = o.non_negative("L", 0.0);
        orbit.axial_momentum = o.number("Lz", 0.0);
        if (std::abs(orbit.axial_momentum) > orbit.angular_momentum)
          throw ConfigError(o.path("Lz"), "must satisfy |Lz| <= L");
        cfg.actions.orbits.push_back(orbit);
      }
    }
  }
  if (sub == "actions" && cfg.actions.orbits.empty() && cfg.actions.seeded == 0)
    throw ConfigError("actions", "needs orbits or a seeded count");

  if (top.has("drive")) {
    const Section s(top.raw("drive"), "drive", {"pair", "epsilon", "omega_d", "phi", "t", "steps",
                                                "steps_per_period", "samples", "model"});
    auto& d = cfg.drive;
    d.pair = parse_pair(s, "pair");
    d.epsilon = s.positive("epsilon", d.epsilon);
    if (s.has("omega_d")) {
      const Json& w = s.raw("omega_d");
      if (w.is_string()) {
        if (w.get<std::string>() != "auto") throw ConfigError(s.path("omega_d"), "must be a number or \"auto\"");
      } else {
        d.omega_d = s.non_negative("omega_d", 0.0);
      }
    }
    d.phi = s.number("phi", 0.0);
    if (s.has("t")) d.t = s.positive("t", 1.0);
    d.steps = static_cast<long>(s.integer("steps", 0, 0, 100'000'000));
    d.steps_per_period = static_cast<int>(s.integer("steps_per_period", 64, 4, 1 << 20));
    d.samples = static_cast<int>(s.integer("samples", 50, 1, 100000));
    const std::string model_name = s.string("model", "full");
    if (model_name == "full") d.model = DriveModel::full;
    else if (model_name == "rotating_wave") d.model = DriveModel::rotating_wave;
    else throw ConfigError(s.path("model"), "must be full or rotating_wave");
  }

  if (top.has("gate")) {
    const Section s(top.raw("gate"), "gate", {"target", "theta", "epsilon", "engine", "steps_per_period"});
    auto& g = cfg.gate;
    if (s.has("target")) g.target = parse_gate(s.string("target", ""), s.path("target"));
    g.theta = s.number("theta", g.theta);
    g.epsilon = s.positive("epsilon", g.epsilon);
    g.engine = parse_engine(s.string("engine", "exact"), s.path("engine"));
    g.steps_per_period = static_cast<int>(s.integer("steps_per_period", 64, 4, 1 << 20));
  }

  if (top.has("selectivity")) {
    const Section s(top.raw("selectivity"), "selectivity", {"pair", "epsilon"});
    cfg.selectivity.pair = parse_pair(s, "pair");
    cfg.selectivity.epsilon = s.positive("epsilon", cfg.selectivity.epsilon);
  }

  if (top.has("birkhoff")) {
    const Section s(top.raw("birkhoff"), "birkhoff", {"J0", "cutoffs", "convention", "k_max"});
    auto& b = cfg.birkhoff;
    if (!s.has("J0")) throw ConfigError(s.path("J0"), "is required");
    const Json& j0 = s.raw("J0");
    if (!j0.is_array() || j0.empty() || j0.size() > 3) throw ConfigError(s.path("J0"), "must be an array of 1 to 3 actions");
    double v[3] = {0, 0, 0};
    for (std::size_t i = 0; i < j0.size(); ++i) {
      if (!j0[i].is_number() || !(j0[i].get<double>() > 0.0))
        throw ConfigError(indexed(s.path("J0"), i), "must be a positive number");
      v[i] = j0[i].get<double>();
    }
    if (static_cast<int>(j0.size()) != cfg.model.dimension)
      throw ConfigError(s.path("J0"), "needs one action per model dimension");
    b.j0 = {v[0], v[1], v[2]};
    if (s.has("cutoffs")) {
      const Json& c = s.raw("cutoffs");
      if (!c.is_array() || c.size() != j0.size()) throw ConfigError(s.path("cutoffs"), "needs one cutoff per action");
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (!c[i].is_number_integer() || c[i].get<long long>() < 2 || c[i].get<long long>() > 64)
          throw ConfigError(indexed(s.path("cutoffs"), i), "must be an integer in [2, 64]");
        b.cutoffs.push_back(c[i].get<int>());
      }
    } else {
      b.cutoffs.assign(j0.size(), 4);
    }
    const std::string conv = s.string("convention", "number");
    if (conv == "number") b.convention = QuantizationConvention::number;
    else if (conv == "oscillator") b.convention = QuantizationConvention::oscillator;
    else throw ConfigError(s.path("convention"), "must be number or oscillator");
    b.k_max = static_cast<int>(s.integer("k_max", 6, 1, 20));
  } else if (sub == "birkhoff") {
    throw ConfigError("birkhoff.J0", "is required");
  }

  if (top.has("robustness")) {
    const Section s(top.raw("robustness"), "robustness", {"structure", "band_width", "epsilon2", "gate", "epsilon",
                                                          "steps_per_period", "max_dimension"});
    auto& r = cfg.robustness;
    r.structure = as_config(s.path("structure"),
                            [&] { return perturbation_structure_from_string(s.string("structure", "dense")); });
    r.band_width = static_cast<std::size_t>(s.integer("band_width", 1, 1, 1 << 20));
    if (s.has("epsilon2")) r.epsilon2 = parse_grid(s, "epsilon2");
    if (s.has("gate")) r.gate = parse_gate(s.string("gate", ""), s.path("gate"));
    r.epsilon = s.positive("epsilon", r.epsilon);
    r.steps_per_period = static_cast<int>(s.integer("steps_per_period", 64, 4, 1 << 20));
    r.max_dimension = static_cast<std::size_t>(s.integer("max_dimension", 500, 1, 1 << 16));
  }
  if (sub == "robustness" && cfg.robustness.epsilon2.empty())
    throw ConfigError("robustness.epsilon2", "is required");
  return cfg;
}

Json read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const Json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
}

std::pair<std::string, double> parse_tolerance_flag(const std::string& flag) {
  const auto eq = flag.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("tolerances", "--tol expects NAME=VALUE, got '" + flag + "'");
  const std::string name = flag.substr(0, eq), text = flag.substr(eq + 1);
  std::istringstream is(text);
  is.imbue(std::locale::classic());
  double v = 0.0;
  if (!(is >> v) || !is.eof()) throw ConfigError("tolerances." + name, "value '" + text + "' is not a number");
  return {name, v};
}

std::optional<unsigned> thread_cap_from_env() {
  const char* env = std::getenv("ACTIONGATE_THREADS");
  if (!env || !*env) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(env, &end, 10);
  if (errno || *end || v < 1 || v > 1024) throw ConfigError("ACTIONGATE_THREADS", "must be an integer in [1, 1024]");
  return static_cast<unsigned>(v);
}

}  // namespace actiongate::cli
