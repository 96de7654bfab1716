// Copyright 2026 The qthermo Authors
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

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qthermo/errors.hpp"
#include "qthermo/json_io.hpp"
#include "qthermo/output.hpp"
#include "qthermo/qubit_example.hpp"
#include "qthermo/scenario.hpp"
#include "qthermo/verify.hpp"

namespace {

using qthermo::ErrorKind;
using qthermo::Json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitChecksFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

int report_error(const std::string& kind, const std::string& message, int code) {
  Json err{{"error", {{"kind", kind}, {"message", message}}}, {"exit_code", code}};
  std::cerr << err.dump() << '\n';
  return code;
}

std::string file_stem(const std::string& name) {
  std::string out = name.empty() ? "scenario" : name;
  for (char& c : out) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-' || c == '.';
    if (!ok) c = '_';
  }
  return out;
}

Json load_document(const std::string& path, std::optional<std::uint64_t> seed) {
  Json doc = qthermo::read_json_file(path);
  if (seed && doc.is_object()) doc["seed"] = *seed;
  return doc;
}

qthermo::Scenario parse_document(const Json& doc) {
  try {
    return qthermo::parse_scenario(doc);
  } catch (const Json::exception& e) {
    qthermo::fail(ErrorKind::InvalidInput, std::string("scenario: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string scenario;
  std::optional<std::string> out;
  std::optional<int> steps;
  std::optional<std::uint64_t> seed;
};

int run_simulate(const SimulateArgs& a) {
  const qthermo::Scenario sc = parse_document(load_document(a.scenario, a.seed));
  const qthermo::ScenarioResult res = qthermo::run_scenario(sc, a.steps);
  const Json report = qthermo::scenario_report_json(sc, res);

  std::ostringstream csv;
  qthermo::write_trajectory_csv(csv, res.trajectory);
  const fs::path dir = qthermo::resolve_out_dir(a.out);
  const std::string stem = file_stem(sc.name);
  qthermo::StagedOutputs files;
  files.add(dir / (stem + ".report.json"), report.dump(2) + "\n");
  files.add(dir / (stem + ".trajectory.csv"), csv.str());
  files.commit();
  std::cout << report.dump(2) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  int num = 1000;
  std::uint64_t seed = 1;
  int steps = 500;
  std::optional<double> tolerance;
  std::vector<std::string> dims;
  std::optional<std::string> out;
};

std::pair<qthermo::Index, qthermo::Index> parse_dims(const std::string& s) {
  const auto x = s.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument(s);
    std::size_t used_s = 0;
    std::size_t used_e = 0;
    const int d_s = std::stoi(s.substr(0, x), &used_s);
    const int d_e = std::stoi(s.substr(x + 1), &used_e);
    if (used_s != x || used_e != s.size() - x - 1) throw std::invalid_argument(s);
    return {d_s, d_e};
  } catch (const std::exception&) {
    qthermo::fail(ErrorKind::InvalidInput, "--dims entries look like 2x3, got \"" + s + "\"");
  }
}

int run_verify_cmd(const VerifyArgs& a) {
  qthermo::VerifySuiteConfig cfg;
  cfg.num_random_scenarios = a.num;
  cfg.seed = a.seed;
  cfg.steps_per_segment = a.steps;
  cfg.tolerance = a.tolerance;
  if (!a.dims.empty()) {
    cfg.dims.clear();
    for (const std::string& d : a.dims) cfg.dims.push_back(parse_dims(d));
  }
  cfg.validate();
  const qthermo::VerifySummary summary = qthermo::run_verify(cfg);
  std::cout << qthermo::verify_summary_text(summary);
  const bool explicit_dir = a.out || std::getenv(qthermo::kOutDirEnv);
  if (explicit_dir) {
    qthermo::write_file_atomic(qthermo::resolve_out_dir(a.out) / "verify_summary.json",
                               qthermo::verify_summary_json(summary).dump(2) + "\n");
  }
  return summary.all_passed() ? kExitOk : kExitChecksFailed;
}

// ---------------------------------------------------------------------------

struct ExampleArgs {
  std::string grid;
  std::optional<std::string> out;
};

int run_example(const ExampleArgs& a) {
  const Json doc = qthermo::read_json_file(a.grid);
  qthermo::qubit::RegionGrid grid;
  std::string name = "region";
  try {
    grid = qthermo::parse_region_grid(doc);
    if (doc.contains("name")) name = qthermo::require_string(doc, "name", "grid");
  } catch (const Json::exception& e) {
    qthermo::fail(ErrorKind::InvalidInput, std::string("grid: ") + e.what());
  }
  const qthermo::qubit::RegionMap map = qthermo::qubit::emit_region_map(grid);
  std::ostringstream csv;
  qthermo::qubit::write_region_csv(csv, map);
  const Json meta = qthermo::region_metadata_json(name, map);

  const fs::path dir = qthermo::resolve_out_dir(a.out);
  const std::string stem = file_stem(name);
  qthermo::StagedOutputs files;
  files.add(dir / (stem + ".region.csv"), csv.str());
  files.add(dir / (stem + ".region.json"), meta.dump(2) + "\n");
  files.commit();
  std::cout << meta.dump(2) << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct SweepArgs {
  std::string scenario;
  std::string param;
  std::vector<double> values;
  std::optional<std::string> out;
  std::optional<int> steps;
  std::optional<std::uint64_t> seed;
};

int run_sweep(const SweepArgs& a) {
  const Json base = load_document(a.scenario, a.seed);
  Json::json_pointer ptr;
  try {
    ptr = Json::json_pointer(a.param);
  } catch (const Json::exception& e) {
    qthermo::fail(ErrorKind::InvalidInput, "--param must be a JSON pointer such as /policy/beta");
  }
  if (!base.contains(ptr) || !base.at(ptr).is_number()) {
    qthermo::fail(ErrorKind::InvalidInput, "--param " + a.param + " does not name a numeric field");
  }

  std::vector<std::string> header{"param", "value"};
  for (auto& h : qthermo::report_csv_header()) header.push_back(h);
  std::ostringstream csv;
  for (std::size_t i = 0; i < header.size(); ++i) csv << (i ? "," : "") << header[i];
  csv << '\n';

  std::string name;
  for (double v : a.values) {
    Json doc = base;
    doc[ptr] = v;
    const qthermo::Scenario sc = parse_document(doc);
    name = sc.name;
    const qthermo::ScenarioResult res = qthermo::run_scenario(sc, a.steps);
    csv << a.param << ',' << qthermo::format_double(v);
    for (const auto& cell : qthermo::report_csv_values(res.report, &res.bounds)) csv << ',' << cell;
    csv << '\n';
  }
  const fs::path path = qthermo::resolve_out_dir(a.out) / (file_stem(name) + ".sweep.csv");
  qthermo::write_file_atomic(path, csv.str());
  std::cout << csv.str();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qthermo: entropy production in finite system-environment dynamics"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "evolve a scenario; write report JSON and trajectory CSV");
  simulate->add_option("--scenario", sim.scenario, "scenario JSON file")->required();
  simulate->add_option("--out", sim.out, "output directory (default $QTHERMO_OUT_DIR or .)");
  simulate->add_option("--steps", sim.steps, "steps per segment (overrides the scenario)");
  simulate->add_option("--seed", sim.seed, "seed for random matrix fields (overrides the scenario)");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "randomized identity and inequality checks");
  verify->add_option("--num", ver.num, "number of random scenarios")->capture_default_str();
  verify->add_option("--seed", ver.seed, "suite seed")->capture_default_str();
  verify->add_option("--steps", ver.steps, "steps per segment")->capture_default_str();
  verify->add_option("--tolerance", ver.tolerance, "replace every check tolerance");
  verify->add_option("--dims", ver.dims, "d_SxD_E pairs, e.g. 2x2 2x3")->delimiter(',');
  verify->add_option("--out", ver.out, "write verify_summary.json here");

  ExampleArgs ex;
  auto* example = app.add_subcommand("example", "two-level environment region map");
  example->add_option("--grid", ex.grid, "grid JSON file")->required();
  example->add_option("--out", ex.out, "output directory (default $QTHERMO_OUT_DIR or .)");

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "rerun a scenario over values of one numeric field");
  sweep->add_option("--scenario", sw.scenario, "scenario JSON file")->required();
  sweep->add_option("--param", sw.param, "JSON pointer of the swept field, e.g. /policy/beta")->required();
  sweep->add_option("--values", sw.values, "comma-separated values")->required()->delimiter(',');
  sweep->add_option("--out", sw.out, "output directory (default $QTHERMO_OUT_DIR or .)");
  sweep->add_option("--steps", sw.steps, "steps per segment (overrides the scenario)");
  sweep->add_option("--seed", sw.seed, "seed for random matrix fields (overrides the scenario)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("InvalidInput", e.what(), kExitInput);
  }

  try {
    if (*simulate) return run_simulate(sim);
    if (*verify) return run_verify_cmd(ver);
    if (*example) return run_example(ex);
    if (*sweep) return run_sweep(sw);
  } catch (const qthermo::Error& e) {
    const int code = qthermo::is_numerical(e.kind()) ? kExitNumerical : kExitInput;
    return report_error(std::string(qthermo::to_string(e.kind())), e.what(), code);
  } catch (const Json::exception& e) {
    return report_error("InvalidInput", e.what(), kExitInput);
  } catch (const std::exception& e) {
    return report_error("Internal", e.what(), kExitNumerical);
  }
  return kExitInput;
}
