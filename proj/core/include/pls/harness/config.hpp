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

#pragma once

// Experiment configuration files. JSON, one object per run, versioned by
// `format_version` (currently 1). Unknown keys are rejected.
//
//   {
//     "format_version": 1,
//     "experiment": "sample_size_sweep",   // algo_comparison | sample_size_sweep |
//                                          // rank_sweep | dimension_sweep | single_run
//     "scenario": 1,
//     "k": 3,                              // or "d": 3 (scenario 4, odd primes)
//     "k_list": [1, 2, 3],                 // dimension_sweep only
//     "channel": {"kind": "noisy_qft", "measure_prob": 0.25},
//     "N": [30000, 100000],                // one value or a list
//     "ranks": [1, 2, 4, 8],               // rank_sweep only
//     "repetitions": 10,
//     "seed": 2021,
//     "scheme": "random",                  // or "fixed"
//     "method": "HIPswitch",
//     "methods": ["AP", "HIPswitch"],      // algo_comparison; default all six
//     "projection": {"epsilon": 1e-7, "ap_steps": 6, "hip_steps": 30,
//                    "max_halfspaces": 30, "max_outer_iterations": 5000,
//                    "dykstra_step_tolerance": 1e-10,
//                    "dual_gradient_tolerance": 1e-8, "dual_max_iterations": 2000,
//                    "direct": false},
//     "output_dir": "out/sweep",
//     "record_wall_time": false
//   }
//
// Channel kinds: identity, qft, haar (seed), noisy_qft (measure_prob),
// mixed_unitary (rank, base: identity | qft | haar, seed), depolarizing.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pls/channel_model.hpp"
#include "pls/designs.hpp"
#include "pls/projections.hpp"
#include "pls/simulator.hpp"

namespace pls::harness {

inline constexpr int kConfigFormatVersion = 1;

enum class ExperimentKind { kAlgoComparison, kSampleSizeSweep, kRankSweep, kDimensionSweep, kSingleRun };

std::string_view to_string(ExperimentKind kind);
ExperimentKind experiment_from_string(std::string_view name);

struct ChannelConfig {
  std::string kind = "qft";
  double measure_prob = 0.25;
  int rank = 1;
  std::string base = "qft";
  std::uint64_t seed = 0;
};

/// Throws kConfig for unknown kinds.
ChannelSpec build_channel(const ChannelConfig& c, int dim);

struct ExperimentConfig {
  int format_version = kConfigFormatVersion;
  ExperimentKind experiment = ExperimentKind::kSingleRun;
  Scenario scenario = Scenario::kPauliAncilla;
  int qubits = 1;
  /// Channel dimension when not a power of two (scenario 4); 0 means 2^qubits.
  int dim = 0;
  std::vector<int> qubit_list;
  ChannelConfig channel;
  std::vector<std::int64_t> shots = {10000};
  bool shots_given = false;
  std::vector<int> ranks;
  int repetitions = 1;
  std::uint64_t seed = 2021;
  SamplingScheme scheme = SamplingScheme::kRandom;
  ProjectionMethod method = ProjectionMethod::kHIPSwitch;
  std::vector<ProjectionMethod> methods;
  ProjectionConfig projection;
  std::string output_dir;
  bool record_wall_time = false;

  int channel_dim() const { return dim != 0 ? dim : 1 << qubits; }
};

ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::string& path);

/// Canonical JSON rendering (sorted keys); parse_config inverts it.
std::string config_to_json(const ExperimentConfig& cfg);

/// FNV-1a 64 of the canonical JSON.
std::uint64_t config_hash(const ExperimentConfig& cfg);

/// Checks every (scenario, dimension) the config will touch before any
/// compute. Throws kConfig / kNotImplemented / kInvalidDimension.
void validate(const ExperimentConfig& cfg);

}  // namespace pls::harness
