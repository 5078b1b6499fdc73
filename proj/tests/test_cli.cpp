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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "config.hpp"
#include "execute.hpp"
#include "json_text.hpp"

using namespace actiongate;
using namespace actiongate::cli;
namespace fs = std::filesystem;

namespace {

fs::path source_dir() { return ACTIONGATE_SOURCE_DIR; }

Json load(const std::string& name) { return read_config_file(source_dir() / "configs" / name); }

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "actiongate_test_cli" / name;
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run(const Json& doc, const fs::path& out, bool dry_run = false) {
  Overrides ov;
  ov.out_dir = out;
  ov.dry_run = dry_run;
  return execute(doc, ov);
}

std::string error_path(const RunResult& r) { return r.report.value("path", std::string("<none>")); }

Json with(Json doc, const Json::json_pointer& at, Json value) {
  doc[at] = std::move(value);
  return doc;
}

}  // namespace

TEST_CASE("spectrum example: Coulomb ground row", "[cli]") {
  const auto out = scratch("spectrum");
  const auto r = run(load("spectrum_coulomb.json"), out);
  REQUIRE(r.exit_code == kOk);
  std::istringstream csv(slurp(out / "spectrum.csv"));
  std::string header, row;
  std::getline(csv, header);
  CHECK(header == "n_r,n_theta,n_phi,l,n,energy,degeneracy_group");
  bool found = false;
  while (std::getline(csv, row)) {
    std::vector<std::string> f;
    std::stringstream ss(row);
    for (std::string x; std::getline(ss, x, ',');) f.push_back(x);
    REQUIRE(f.size() == 7);
    CHECK(std::stoi(f[4]) <= 3);
    if (f[4] == "0") {
      found = true;
      CHECK(std::stod(f[5]) == -0.5);
    }
  }
  CHECK(found);
  CHECK(r.report["eigensolver_max_relative_error"].get<double>() <= 1e-6);
}

TEST_CASE("gate example: Hadamard on an anharmonic ladder", "[cli]") {
  const auto out = scratch("gate_h");
  const auto r = run(load("gate_h_anharmonic.json"), out);
  REQUIRE(r.exit_code == kOk);
  const Json g = Json::parse(slurp(out / "gate.json"));
  CHECK(g["target"] == "H");
  CHECK(g["fidelity"].get<double>() >= 0.999);
  REQUIRE(g["schedule"]["segments"].size() == 2);
  for (const auto& s : g["schedule"]["segments"])
    for (const char* k : {"omega_d", "phi", "epsilon", "t"}) CHECK(s.contains(k));
}

TEST_CASE("negative mass is a config error at model.m", "[cli]") {
  Json doc = load("spectrum_coulomb.json");
  doc["model"]["m"] = -1.0;
  const auto r = run(doc, scratch("neg_mass"));
  CHECK(r.exit_code == kConfigError);
  CHECK(error_path(r) == "model.m");
  CHECK(r.report["error"] == "ConfigError");
  CHECK(!fs::exists(scratch("neg_mass")));
}

TEST_CASE("config violations report their path", "[cli]") {
  const Json base = load("gate_h_anharmonic.json");
  const auto out = scratch("violations");
  struct Case {
    Json doc;
    std::string path;
  };
  const Case cases[] = {
      {with(base, "/model/bogus"_json_pointer, 1), "model.bogus"},
      {with(base, "/model/kind"_json_pointer, "spring"), "model.kind"},
      {with(base, "/model/dimension"_json_pointer, 4), "model.dimension"},
      {with(base, "/model/omega"_json_pointer, "fast"), "model.omega"},
      {with(base, "/subcommand"_json_pointer, "plot"), "subcommand"},
      {with(base, "/gate/target"_json_pointer, "T"), "gate.target"},
      {with(base, "/gate/target"_json_pointer, "CNOT"), "gate.target"},
      {with(base, "/gate/engine"_json_pointer, "magic"), "gate.engine"},
      {with(base, "/gate/epsilon"_json_pointer, 0.0), "gate.epsilon"},
      {with(base, "/encoding/qubits/0/zero"_json_pointer, Json::array({-1})), "encoding.qubits[0].zero[0]"},
      {with(base, "/encoding/qubits/0/axis"_json_pointer, "theta"), "encoding.qubits[0]"},
      {with(base, "/tolerances"_json_pointer, Json{{"wiggle", 1.0}}), "tolerances.wiggle"},
      {with(base, "/seed"_json_pointer, -3), "seed"},
      {with(base, "/threads"_json_pointer, 0), "threads"},
      {with(base, "/drive"_json_pointer, Json{{"omega_d", "soon"}}), "drive.omega_d"},
      {with(load("actions_all_models.json"), "/actions/orbits/0/Lz"_json_pointer, 0.9), "actions.orbits[0].Lz"},
      {with(load("birkhoff_coulomb_1d.json"), "/birkhoff/J0"_json_pointer, Json::array({1.0, 2.0})), "birkhoff.J0"},
      {with(load("robustness_x.json"), "/robustness/epsilon2"_json_pointer, Json::array()), "robustness.epsilon2"},
      {with(load("gate_cnot_ladders.json"), "/encoding/control/couplings/0/pair"_json_pointer,
            Json::array({0, 99})),
       "encoding.control.couplings[0].pair"},
  };
  for (const auto& c : cases) {
    INFO(c.path);
    const auto r = run(c.doc, out);
    CHECK(r.exit_code == kConfigError);
    CHECK(error_path(r) == c.path);
  }
  Json no_model = load("spectrum_coulomb.json");
  no_model.erase("model");
  CHECK(error_path(run(no_model, out)) == "model");
}

TEST_CASE("domain and convergence errors map to exit codes", "[cli]") {
  const auto out = scratch("errors");
  // equally spaced ladder: the next rung collides with the target line
  Json harmonic = load("gate_h_anharmonic.json");
  harmonic["model"] = {{"kind", "isotropic_harmonic"}, {"omega", 1.0}, {"dimension", 1}};
  const auto r = run(harmonic, out);
  CHECK(r.exit_code == kDomainError);
  CHECK(r.report["error"] == "ResonanceCollision");
  CHECK(r.report["class"] == "domain");
  CHECK(!r.report["message"].get<std::string>().empty());

  Json tight = load("spectrum_coulomb.json");
  tight["tolerances"] = {{"eigensolver", 1e-17}};
  tight["spectrum"]["eigensolver"] = {{"l_max", 0}, {"count", 1}};
  const auto c = run(tight, out);
  CHECK(c.exit_code == kConvergenceError);
  CHECK(c.report["class"] == "convergence");
}

TEST_CASE("dry run resolves the plan without computing", "[cli]") {
  for (const auto& entry : fs::directory_iterator(source_dir() / "configs")) {
    INFO(entry.path().filename().string());
    const auto out = scratch("dry");
    const auto r = run(read_config_file(entry.path()), out, true);
    REQUIRE(r.exit_code == kOk);
    CHECK(r.report["dry_run"] == true);
    CHECK(!r.report["outputs"].empty());
    CHECK(r.outputs.empty());
    CHECK(!fs::exists(out));
  }
  const auto r = run(load("drive_anharmonic.json"), scratch("dry"), true);
  const auto m = ModelSpec::anharmonic_oscillator(0.01, 1.0, 1);
  CHECK(r.report["drive"]["omega_d_auto"] == true);
  CHECK_THAT(r.report["drive"]["omega_d"].get<double>(),
             Catch::Matchers::WithinRel(transition_frequency(m, {1, 0, 0}, {0, 0, 0}), 1e-14));
}

TEST_CASE("identical config and seed give identical bytes", "[cli]") {
  for (const char* name : {"spectrum_coulomb.json", "actions_all_models.json", "drive_anharmonic.json",
                           "encode_dual_rail.json", "selectivity_harmonic.json", "birkhoff_coulomb_1d.json",
                           "robustness_x.json"}) {
    INFO(name);
    const auto a = scratch("repro_a"), b = scratch("repro_b");
    const auto ra = run(load(name), a), rb = run(load(name), b);
    REQUIRE(ra.exit_code == kOk);
    REQUIRE(rb.exit_code == kOk);
    REQUIRE(ra.outputs.size() == rb.outputs.size());
    for (std::size_t i = 0; i < ra.outputs.size(); ++i) {
      const std::string x = slurp(ra.outputs[i]);
      CHECK(!x.empty());
      CHECK(x == slurp(rb.outputs[i]));
      CHECK(x.find('\r') == std::string::npos);
    }
    CHECK(to_text(ra.report) == to_text(rb.report));
    // no temporaries left behind
    std::size_t files = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(a)) ++files;
    CHECK(files == ra.outputs.size());
  }
}

TEST_CASE("seed and thread count", "[cli]") {
  const Json doc = load("robustness_x.json");
  const auto a = scratch("seed_a"), b = scratch("seed_b"), c = scratch("seed_c");
  REQUIRE(run(doc, a).exit_code == kOk);
  Json one_thread = doc;
  one_thread["threads"] = 1;
  REQUIRE(run(one_thread, b).exit_code == kOk);
  CHECK(slurp(a / "robustness.csv") == slurp(b / "robustness.csv"));

  Overrides ov;
  ov.out_dir = c;
  ov.seed = 8;
  ov.thread_cap = 2;
  REQUIRE(execute(doc, ov).exit_code == kOk);
  CHECK(slurp(a / "robustness.csv") != slurp(c / "robustness.csv"));
  CHECK(parse_config(doc, ov).threads == 2);
}

TEST_CASE("actions output and seeded orbits", "[cli]") {
  const auto out = scratch("actions");
  const auto r = run(load("actions_all_models.json"), out);
  REQUIRE(r.exit_code == kOk);
  CHECK(r.report["orbits"] == 21);
  CHECK(r.report["max_residual"].get<double>() <= 1e-6);
  const std::string csv = slurp(out / "actions.csv");
  CHECK(csv.rfind("E,L,Lz,Jr,Jtheta,Jphi,residual\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 22);
}

TEST_CASE("tolerance overrides", "[cli]") {
  CHECK(parse_tolerance_flag("guard=0.1") == std::pair<std::string, double>("guard", 0.1));
  CHECK(parse_tolerance_flag("collision=-1").second == -1.0);
  CHECK_THROWS_AS(parse_tolerance_flag("guard"), ConfigError);
  CHECK_THROWS_AS(parse_tolerance_flag("guard=abc"), ConfigError);
  CHECK_THROWS_AS(parse_tolerance_flag("guard=0.1x"), ConfigError);

  Overrides ov;
  ov.tolerances = {{"guard", 1e-9}};
  const Json doc = load("selectivity_harmonic.json");
  CHECK(parse_config(doc, ov).tol.guard == 1e-9);
  ov.tolerances = {{"guard", -1.0}};
  try {
    parse_config(doc, ov);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.path() == "tolerances.guard");
  }
}

TEST_CASE("thread cap from the environment", "[cli]") {
  ::setenv("ACTIONGATE_THREADS", "3", 1);
  CHECK(thread_cap_from_env() == 3U);
  ::setenv("ACTIONGATE_THREADS", "zero", 1);
  CHECK_THROWS_AS(thread_cap_from_env(), ConfigError);
  ::unsetenv("ACTIONGATE_THREADS");
  CHECK(!thread_cap_from_env().has_value());
}

TEST_CASE("JSON text format", "[cli]") {
  Json j;
  j["x"] = 0.1;
  j["n"] = 3;
  j["inf"] = std::numeric_limits<double>::infinity();
  j["nan"] = std::nan("");
  j["list"] = Json::array({1.5, "a"});
  j["empty"] = Json::object();
  const std::string t = to_text(j);
  CHECK(t ==
        "{\n  \"x\": 0.10000000000000001,\n  \"n\": 3,\n  \"inf\": \"inf\",\n  \"nan\": \"nan\",\n"
        "  \"list\": [\n    1.5,\n    \"a\"\n  ],\n  \"empty\": {}\n}\n");
  CHECK(Json::parse(t)["x"].get<double>() == 0.1);
}

TEST_CASE("command-line binary", "[cli]") {
  const auto out = scratch("binary");
  fs::create_directories(out);
  const std::string bin = ACTIONGATE_BIN;
  auto sh = [&](const std::string& args) {
    const int status = std::system((bin + " " + args + " >" + (out / "stdout").string() + " 2>" +
                                    (out / "stderr").string())
                                       .c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  CHECK(sh("spectrum --config " + (source_dir() / "tests/data/negative_mass.json").string()) == kConfigError);
  const Json err = Json::parse(slurp(out / "stderr"));
  CHECK(err["path"] == "model.m");

  const std::string cfg = (source_dir() / "configs/selectivity_harmonic.json").string();
  CHECK(sh("selectivity --config " + cfg + " --out " + (out / "run").string() + " --tol guard=0.2") == kOk);
  CHECK(Json::parse(slurp(out / "stdout"))["verdict"] == "collision");
  CHECK(Json::parse(slurp(out / "run" / "selectivity.json"))["guard"].get<double>() == 0.2);

  CHECK(sh("--dry-run --seed 5 selectivity --config " + cfg) == kOk);
  const Json plan = Json::parse(slurp(out / "stdout"));
  CHECK(plan["seed"] == 5);
  CHECK(plan["dry_run"] == true);

  CHECK(sh("selectivity --config " + cfg + " --tol nothing") == kConfigError);
  CHECK(sh("") == kConfigError);
}
