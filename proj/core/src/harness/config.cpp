// Copyright 2026 The PLS Tomography Authors
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

#include "pls/harness/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pls/errors.hpp"

namespace pls::harness {

using nlohmann::json;

namespace {

constexpr std::string_view kExperimentNames[] = {"algo_comparison", "sample_size_sweep", "rank_sweep",
                                                 "dimension_sweep", "single_run"};

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    require(allowed.count(it.key()) != 0, ErrorKind::kConfig,
            "unknown key '" + it.key() + "' in " + where);
}

template <typename T>
T get(const json& obj, const char* key, const T& fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    fail(ErrorKind::kConfig, std::string("bad type for '") + key + "'");
  }
}

template <typename T>
std::vector<T> get_list(const json& obj, const char* key, const std::vector<T>& fallback, bool* given = nullptr) {
  auto it = obj.find(key);
  if (given != nullptr) *given = it != obj.end();
  if (it == obj.end()) return fallback;
  try {
    if (it->is_array()) return it->get<std::vector<T>>();
    return {it->get<T>()};
  } catch (const json::exception&) {
    fail(ErrorKind::kConfig, std::string("bad type for '") + key + "'");
  }
}

Matrix base_unitary(const ChannelConfig& c, int dim) {
  if (c.base == "identity") return identity(dim);
  if (c.base == "qft") return qft_unitary(dim);
  if (c.base == "haar") return haar_unitary(dim, c.seed);
  fail(ErrorKind::kConfig, "unknown channel base '" + c.base + "'");
}

}  // namespace

std::string_view to_string(ExperimentKind kind) { return kExperimentNames[static_cast<int>(kind)]; }

ExperimentKind experiment_from_string(std::string_view name) {
  for (int i = 0; i < 5; ++i)
    if (kExperimentNames[i] == name) return static_cast<ExperimentKind>(i);
  fail(ErrorKind::kConfig, "unknown experiment '" + std::string(name) + "'");
}

ChannelSpec build_channel(const ChannelConfig& c, int dim) {
  if (c.kind == "identity") return ChannelSpec::identity(dim);
  if (c.kind == "qft") return ChannelSpec::unitary_channel(qft_unitary(dim));
  if (c.kind == "haar") return ChannelSpec::random_unitary(dim, c.seed);
  if (c.kind == "noisy_qft") return ChannelSpec::noisy_qft(dim, c.measure_prob);
  if (c.kind == "mixed_unitary") return ChannelSpec::mixed_unitary(dim, c.rank, base_unitary(c, dim));
  if (c.kind == "depolarizing") return ChannelSpec::depolarizing(dim);
  fail(ErrorKind::kConfig, "unknown channel kind '" + c.kind + "'");
}

ExperimentConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::kConfig, std::string("malformed JSON: ") + e.what());
  }
  require(root.is_object(), ErrorKind::kConfig, "config must be a JSON object");
  check_keys(root,
             {"format_version", "experiment", "scenario", "k", "d", "k_list", "channel", "N", "ranks",
              "repetitions", "seed", "scheme", "method", "methods", "projection", "output_dir",
              "record_wall_time"},
             "config");
  ExperimentConfig cfg;
  cfg.format_version = get<int>(root, "format_version", -1);
  require(cfg.format_version == kConfigFormatVersion, ErrorKind::kConfig,
          "format_version must be " + std::to_string(kConfigFormatVersion));
  cfg.experiment = experiment_from_string(get<std::string>(root, "experiment", "single_run"));
  try {
    cfg.scenario = scenario_from_int(get<int>(root, "scenario", 1));
  } catch (const Error& e) {
    fail(ErrorKind::kConfig, e.what());
  }
  cfg.qubits = get<int>(root, "k", 1);
  cfg.dim = get<int>(root, "d", 0);
  if (cfg.dim != 0) {
    int k = 0;
    cfg.qubits = is_power_of_two(cfg.dim, &k) ? k : 0;
  }
  cfg.qubit_list = get_list<int>(root, "k_list", {});
  if (auto it = root.find("channel"); it != root.end()) {
    require(it->is_object(), ErrorKind::kConfig, "'channel' must be an object");
    check_keys(*it, {"kind", "measure_prob", "rank", "base", "seed"}, "channel");
    cfg.channel.kind = get<std::string>(*it, "kind", cfg.channel.kind);
    cfg.channel.measure_prob = get<double>(*it, "measure_prob", cfg.channel.measure_prob);
    cfg.channel.rank = get<int>(*it, "rank", cfg.channel.rank);
    cfg.channel.base = get<std::string>(*it, "base", cfg.channel.base);
    cfg.channel.seed = get<std::uint64_t>(*it, "seed", cfg.channel.seed);
  }
  cfg.shots = get_list<std::int64_t>(root, "N", cfg.shots, &cfg.shots_given);
  cfg.ranks = get_list<int>(root, "ranks", {});
  cfg.repetitions = get<int>(root, "repetitions", 1);
  cfg.seed = get<std::uint64_t>(root, "seed", cfg.seed);
  const std::string scheme = get<std::string>(root, "scheme", "random");
  require(scheme == "random" || scheme == "fixed", ErrorKind::kConfig, "scheme must be 'fixed' or 'random'");
  cfg.scheme = scheme == "fixed" ? SamplingScheme::kFixed : SamplingScheme::kRandom;
  try {
    cfg.method = projection_method_from_string(get<std::string>(root, "method", "HIPswitch"));
    for (const std::string& m : get_list<std::string>(root, "methods", {}))
      cfg.methods.push_back(projection_method_from_string(m));
  } catch (const Error& e) {
    fail(ErrorKind::kConfig, e.what());
  }
  if (auto it = root.find("projection"); it != root.end()) {
    require(it->is_object(), ErrorKind::kConfig, "'projection' must be an object");
    check_keys(*it,
               {"epsilon", "ap_steps", "hip_steps", "max_halfspaces", "max_outer_iterations",
                "dykstra_step_tolerance", "dual_gradient_tolerance", "dual_max_iterations", "direct"},
               "projection");
    ProjectionConfig& p = cfg.projection;
    p.epsilon = get<double>(*it, "epsilon", p.epsilon);
    p.ap_steps = get<int>(*it, "ap_steps", p.ap_steps);
    p.hip_steps = get<int>(*it, "hip_steps", p.hip_steps);
    p.max_halfspaces = get<int>(*it, "max_halfspaces", p.max_halfspaces);
    p.max_outer_iterations = get<int>(*it, "max_outer_iterations", p.max_outer_iterations);
    p.dykstra_step_tolerance = get<double>(*it, "dykstra_step_tolerance", p.dykstra_step_tolerance);
    p.dual.gradient_tolerance = get<double>(*it, "dual_gradient_tolerance", p.dual.gradient_tolerance);
    p.dual.max_iterations = get<int>(*it, "dual_max_iterations", p.dual.max_iterations);
    p.direct = get<bool>(*it, "direct", p.direct);
  }
  cfg.output_dir = get<std::string>(root, "output_dir", "");
  cfg.record_wall_time = get<bool>(root, "record_wall_time", false);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::kIo, "cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json root;
  root["format_version"] = cfg.format_version;
  root["experiment"] = std::string(to_string(cfg.experiment));
  root["scenario"] = to_int(cfg.scenario);
  if (cfg.dim != 0)
    root["d"] = cfg.dim;
  else
    root["k"] = cfg.qubits;
  if (!cfg.qubit_list.empty()) root["k_list"] = cfg.qubit_list;
  root["channel"] = {{"kind", cfg.channel.kind},
                     {"measure_prob", cfg.channel.measure_prob},
                     {"rank", cfg.channel.rank},
                     {"base", cfg.channel.base},
                     {"seed", cfg.channel.seed}};
  if (cfg.shots_given) root["N"] = cfg.shots;
  if (!cfg.ranks.empty()) root["ranks"] = cfg.ranks;
  root["repetitions"] = cfg.repetitions;
  root["seed"] = cfg.seed;
  root["scheme"] = cfg.scheme == SamplingScheme::kFixed ? "fixed" : "random";
  root["method"] = std::string(to_string(cfg.method));
  if (!cfg.methods.empty()) {
    std::vector<std::string> names;
    for (ProjectionMethod m : cfg.methods) names.emplace_back(to_string(m));
    root["methods"] = names;
  }
  const ProjectionConfig& p = cfg.projection;
  root["projection"] = {{"epsilon", p.epsilon},
                        {"ap_steps", p.ap_steps},
                        {"hip_steps", p.hip_steps},
                        {"max_halfspaces", p.max_halfspaces},
                        {"max_outer_iterations", p.max_outer_iterations},
                        {"dykstra_step_tolerance", p.dykstra_step_tolerance},
                        {"dual_gradient_tolerance", p.dual.gradient_tolerance},
                        {"dual_max_iterations", p.dual.max_iterations},
                        {"direct", p.direct}};
  root["output_dir"] = cfg.output_dir;
  root["record_wall_time"] = cfg.record_wall_time;
  return root.dump(2);
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config_to_json(cfg)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void validate(const ExperimentConfig& cfg) {
  require(cfg.repetitions >= 1, ErrorKind::kConfig, "repetitions must be at least 1");
  require(!cfg.shots.empty(), ErrorKind::kConfig, "N must not be empty");
  for (std::int64_t n : cfg.shots) require(n >= 1, ErrorKind::kConfig, "N must be positive");
  require(cfg.projection.epsilon >= 0.0, ErrorKind::kConfig, "epsilon must be nonnegative");
  require(cfg.projection.ap_steps >= 1 && cfg.projection.hip_steps >= 1, ErrorKind::kConfig,
          "ap_steps and hip_steps must be positive");
  require(cfg.projection.max_halfspaces >= 1, ErrorKind::kConfig, "max_halfspaces must be positive");
  require(cfg.projection.max_outer_iterations >= 1, ErrorKind::kConfig,
          "max_outer_iterations must be positive");

  std::vector<int> dims;
  if (cfg.experiment == ExperimentKind::kDimensionSweep) {
    require(!cfg.qubit_list.empty(), ErrorKind::kConfig, "dimension_sweep needs k_list");
    for (int k : cfg.qubit_list) {
      require(k >= 1 && k <= 8, ErrorKind::kConfig, "k_list entries must lie in [1, 8]");
      dims.push_back(1 << k);
    }
  } else {
    require(cfg.dim != 0 || (cfg.qubits >= 1 && cfg.qubits <= 8), ErrorKind::kConfig,
            "k must lie in [1, 8]");
    dims.push_back(cfg.channel_dim());
  }
  if (cfg.experiment == ExperimentKind::kRankSweep) {
    require(!cfg.ranks.empty(), ErrorKind::kConfig, "rank_sweep needs ranks");
    for (int r : cfg.ranks)
      require(r >= 1 && r <= cfg.channel_dim() * cfg.channel_dim(), ErrorKind::kConfig,
              "ranks must lie in [1, d^2]");
  }
  for (int d : dims) {
    const TableLayout layout = TableLayout::of(cfg.scenario, d);
    const bool implicit = cfg.experiment == ExperimentKind::kDimensionSweep && !cfg.shots_given;
    if (cfg.scheme == SamplingScheme::kFixed && !implicit)
      for (std::int64_t n : cfg.shots)
        require(n % layout.contexts() == 0, ErrorKind::kInvalidPlan,
                "fixed scheme needs N divisible by " + std::to_string(layout.contexts()));
    if (cfg.experiment != ExperimentKind::kRankSweep) {
      ChannelConfig c = cfg.channel;
      (void)build_channel(c, d);
    }
  }
}

}  // namespace pls::harness
