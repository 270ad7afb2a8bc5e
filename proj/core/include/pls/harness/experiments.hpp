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

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pls/harness/config.hpp"
#include "pls/projections.hpp"

namespace pls::harness {

/// One line of errors.csv:
///   experiment,scenario,k,d,channel,rank,N,repetition,seed,metric,stage,value,wall_time_ms
struct ErrorRow {
  std::string experiment;
  int scenario = 1;
  int qubits = 0;
  int dim = 2;
  std::string channel;
  int rank = 1;
  std::int64_t shots = 0;
  int repetition = 0;
  std::uint64_t seed = 0;
  std::string metric;
  std::string stage;
  double value = 0.0;
  std::optional<double> wall_time_ms;
};

/// Everything one tomography run produces.
struct TrialResult {
  std::uint64_t seed = 0;
  Matrix ls;
  PlsResult pls;
  double ls_ms = 0.0;
  /// CP1 step plus CPTP projection.
  double pls_ms = 0.0;
};

struct TrialSpec {
  Scenario scenario = Scenario::kPauliAncilla;
  SamplingScheme scheme = SamplingScheme::kRandom;
  std::int64_t shots = 1;
  std::uint64_t seed = 0;
  ProjectionMethod method = ProjectionMethod::kHIPSwitch;
  ProjectionConfig projection;
};

/// sample -> least squares -> PLS for a known channel.
TrialResult run_trial(const ChoiMatrix& truth, const TrialSpec& spec);

/// Runs fn(0), ..., fn(count - 1) on `threads` workers. Results must be
/// written to per-index slots; the first exception is rethrown.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

struct ExperimentOutput {
  std::vector<ErrorRow> errors;
  /// Repetition 0 of each method (algo_comparison) or of the first sweep
  /// point (other experiments).
  std::vector<ProjectionReport> traces;
};

ExperimentOutput run_experiment(const ExperimentConfig& cfg, int threads = 1);

void write_errors_csv(std::ostream& os, const std::vector<ErrorRow>& rows);
void write_lambda_csv(std::ostream& os, const std::vector<ProjectionReport>& traces);

/// Writes errors.csv, lambda_trace.csv and config.json into `dir`
/// (created if missing).
void write_outputs(const std::string& dir, const ExperimentConfig& cfg, const ExperimentOutput& out);

/// Default N for dimension_sweep when the config gives none.
std::int64_t default_shots(Scenario scenario, int dim);

}  // namespace pls::harness
