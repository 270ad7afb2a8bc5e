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

#include <atomic>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "helpers.hpp"
#include "pls/harness/config.hpp"
#include "pls/harness/experiments.hpp"

using namespace pls;
using namespace pls::harness;

namespace {

constexpr const char* kSmall = R"({
  "format_version": 1,
  "experiment": "sample_size_sweep",
  "scenario": 1,
  "k": 1,
  "channel": {"kind": "haar", "seed": 4},
  "N": [500, 2000],
  "repetitions": 2,
  "seed": 7
})";

std::string errors_csv(const ExperimentOutput& out) {
  std::ostringstream os;
  write_errors_csv(os, out.errors);
  return os.str();
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("config parsing") {
    const ExperimentConfig cfg = parse_config(kSmall);
    CHECK(cfg.experiment == ExperimentKind::kSampleSizeSweep);
    CHECK(cfg.scenario == Scenario::kPauliAncilla);
    CHECK(cfg.channel_dim() == 2);
    CHECK(cfg.shots == std::vector<std::int64_t>{500, 2000});
    CHECK(cfg.repetitions == 2);
    CHECK(cfg.seed == 7);
    CHECK(cfg.method == ProjectionMethod::kHIPSwitch);
    CHECK_NOTHROW(validate(cfg));

    const ExperimentConfig again = parse_config(config_to_json(cfg));
    CHECK(config_to_json(again) == config_to_json(cfg));
    CHECK(config_hash(again) == config_hash(cfg));
    ExperimentConfig other = cfg;
    other.seed = 8;
    CHECK(config_hash(other) != config_hash(cfg));

    const ExperimentConfig d5 = parse_config(R"({"format_version": 1, "scenario": 4, "d": 5})");
    CHECK(d5.channel_dim() == 5);
  }

  TEST_CASE("config errors") {
    CHECK(test::error_kind_of([] { parse_config("{"); }) == ErrorKind::kConfig);
    CHECK(test::error_kind_of([] { parse_config("[]"); }) == ErrorKind::kConfig);
    CHECK(test::error_kind_of([] { parse_config(R"({"scenario": 1})"); }) == ErrorKind::kConfig);
    CHECK(test::error_kind_of([] { parse_config(R"({"format_version": 2})"); }) == ErrorKind::kConfig);
    CHECK(test::error_kind_of([] { parse_config(R"({"format_version": 1, "shots": 10})"); }) == ErrorKind::kConfig);
    CHECK(test::error_kind_of([] { parse_config(R"({"format_version": 1, "scenario": 5})"); }) == ErrorKind::kConfig);
    CHECK(test::error_kind_of([] { parse_config(R"({"format_version": 1, "k": "two"})"); }) == ErrorKind::kConfig);
    CHECK(test::error_kind_of([] { parse_config(R"({"format_version": 1, "method": "newton"})"); }) ==
          ErrorKind::kConfig);
    CHECK(test::error_kind_of([] { parse_config(R"({"format_version": 1, "channel": {"colour": 1}})"); }) ==
          ErrorKind::kConfig);
    CHECK(test::error_kind_of([] { load_config("/nonexistent/config.json"); }) == ErrorKind::kIo);

    ExperimentConfig cfg = parse_config(kSmall);
    cfg.repetitions = 0;
    CHECK(test::error_kind_of([&] { validate(cfg); }) == ErrorKind::kConfig);
    cfg = parse_config(R"({"format_version": 1, "experiment": "rank_sweep", "k": 1})");
    CHECK(test::error_kind_of([&] { validate(cfg); }) == ErrorKind::kConfig);
    cfg = parse_config(R"({"format_version": 1, "scheme": "fixed", "N": [1000]})");
    CHECK(test::error_kind_of([&] { validate(cfg); }) == ErrorKind::kInvalidPlan);
    cfg = parse_config(R"({"format_version": 1, "scheme": "fixed", "N": [900]})");
    CHECK_NOTHROW(validate(cfg));
    cfg = parse_config(R"({"format_version": 1, "experiment": "dimension_sweep", "scheme": "fixed", "k_list": [1, 2]})");
    CHECK_NOTHROW(validate(cfg));
    cfg = parse_config(R"({"format_version": 1, "channel": {"kind": "warp"}})");
    CHECK(test::error_kind_of([&] { validate(cfg); }) == ErrorKind::kConfig);
  }

  TEST_CASE("channels from config") {
    ChannelConfig c;
    c.kind = "identity";
    CHECK(build_channel(c, 4).kind == ChannelKind::kIdentity);
    c.kind = "mixed_unitary";
    c.rank = 3;
    CHECK(build_channel(c, 4).declared_rank() == 3);
    c.kind = "depolarizing";
    CHECK(build_channel(c, 2).declared_rank() == 4);
  }

  TEST_CASE("experiment output") {
    const ExperimentConfig cfg = parse_config(kSmall);
    const ExperimentOutput a = run_experiment(cfg, 1);
    const ExperimentOutput b = run_experiment(cfg, 2);
    const std::string csv = errors_csv(a);
    CHECK(csv == errors_csv(b));
    CHECK(csv.rfind("experiment,scenario,k,d,channel,rank,N,repetition,seed,metric,stage,value,wall_time_ms\n", 0) == 0);
    CHECK(csv.find(",NA\n") != std::string::npos);

    // Every (N, repetition) pair reports the trace distance for LS and PLS.
    int ls_trace = 0;
    int pls_trace = 0;
    for (const ErrorRow& r : a.errors) {
      CHECK(r.experiment == "sample_size_sweep");
      if (r.metric == "trace" && r.stage == "LS") ++ls_trace;
      if (r.metric == "trace" && r.stage == "PLS") ++pls_trace;
    }
    CHECK(ls_trace == 4);
    CHECK(pls_trace == 4);
    CHECK_FALSE(a.traces.empty());

    std::ostringstream lam;
    write_lambda_csv(lam, a.traces);
    CHECK(lam.str().rfind("method,iteration,mode,lambda_min,cum_projcp_calls\n", 0) == 0);

    ExperimentConfig reseeded = cfg;
    reseeded.seed = 8;
    CHECK(errors_csv(run_experiment(reseeded, 1)) != csv);
  }

  TEST_CASE("single trial") {
    const ChoiMatrix truth = choi_from_kraus(make_channel(ChannelSpec::random_unitary(2, 1)));
    TrialSpec spec;
    spec.shots = 900;
    spec.seed = 3;
    const TrialResult r = run_trial(truth, spec);
    CHECK(r.pls.estimate.is_physical());
    CHECK(r.ls.rows() == 4);
    CHECK(default_shots(Scenario::kPauliAncilla, 2) == 9000);
    CHECK(default_shots(Scenario::kMubAncilla, 2) == 2000);
  }

  TEST_CASE("parallel_for") {
    std::vector<int> hits(100, 0);
    parallel_for(100, 3, [&](int i) { hits[static_cast<std::size_t>(i)] += 1; });
    for (int h : hits) CHECK(h == 1);
    std::atomic<int> calls{0};
    CHECK_THROWS_AS(parallel_for(10, 2,
                                 [&](int i) {
                                   ++calls;
                                   if (i == 4) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
  }
}
