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

#include "pls/harness/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include "pls/errors.hpp"
#include "pls/estimators.hpp"
#include "pls/rng.hpp"
#include "pls/simulator.hpp"

namespace pls::harness {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string channel_label(const ChannelConfig& c) {
  if (c.kind == "noisy_qft") {
    char buf[64];
    std::snprintf(buf, sizeof buf, "noisy_qft(%g)", c.measure_prob);
    return buf;
  }
  if (c.kind == "mixed_unitary") return "mixed_unitary(r=" + std::to_string(c.rank) + ";base=" + c.base + ")";
  if (c.kind == "haar") return "haar(seed=" + std::to_string(c.seed) + ")";
  return c.kind;
}

// One sweep point: a channel at a dimension and sample size.
struct Point {
  int qubits = 0;
  int dim = 2;
  ChannelConfig channel;
  std::int64_t shots = 1;
};

std::vector<Point> sweep_points(const ExperimentConfig& cfg) {
  std::vector<Point> pts;
  auto add = [&](int qubits, int dim, const ChannelConfig& ch) {
    if (cfg.experiment == ExperimentKind::kDimensionSweep && !cfg.shots_given) {
      pts.push_back({qubits, dim, ch, default_shots(cfg.scenario, dim)});
      return;
    }
    for (std::int64_t n : cfg.shots) pts.push_back({qubits, dim, ch, n});
  };
  switch (cfg.experiment) {
    case ExperimentKind::kDimensionSweep:
      for (int k : cfg.qubit_list) add(k, 1 << k, cfg.channel);
      break;
    case ExperimentKind::kRankSweep:
      for (int r : cfg.ranks) {
        ChannelConfig ch = cfg.channel;
        ch.kind = "mixed_unitary";
        ch.rank = r;
        add(cfg.qubits, cfg.channel_dim(), ch);
      }
      break;
    default:
      add(cfg.qubits, cfg.channel_dim(), cfg.channel);
      break;
  }
  return pts;
}

struct TaskOutput {
  std::vector<ErrorRow> rows;
  std::vector<ProjectionReport> traces;
};

}  // namespace

std::int64_t default_shots(Scenario scenario, int dim) {
  const TableLayout layout = TableLayout::of(scenario, dim);
  return std::max<std::int64_t>(1000 * layout.contexts(), 100 * layout.outcomes);
}

TrialResult run_trial(const ChoiMatrix& truth, const TrialSpec& spec) {
  auto t0 = Clock::now();
  const FrequencyTable table = sample(truth, spec.scenario, {spec.scheme, spec.shots, spec.seed});
  LsEstimate ls = least_squares(table);
  const double ls_ms = ms_since(t0);
  t0 = Clock::now();
  PlsResult pls = pls_pipeline(ls, spec.method, spec.projection);
  const double pls_ms = ms_since(t0);
  return TrialResult{spec.seed, std::move(ls.matrix), std::move(pls), ls_ms, pls_ms};
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first;
  std::mutex mu;
  auto worker = [&] {
    for (int i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first) first = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

ExperimentOutput run_experiment(const ExperimentConfig& cfg, int threads) {
  validate(cfg);
  const std::vector<Point> points = sweep_points(cfg);
  const int reps = cfg.repetitions;
  const int tasks = static_cast<int>(points.size()) * reps;
  const bool compare = cfg.experiment == ExperimentKind::kAlgoComparison;
  const std::vector<ProjectionMethod> methods =
      compare ? (cfg.methods.empty() ? all_projection_methods() : cfg.methods)
              : std::vector<ProjectionMethod>{cfg.method};

  std::vector<ChoiMatrix> truths;
  std::vector<int> ranks;
  for (const Point& p : points) {
    const ChannelSpec spec = build_channel(p.channel, p.dim);
    truths.push_back(choi_from_kraus(make_channel(spec)));
    ranks.push_back(spec.declared_rank());
  }

  std::vector<TaskOutput> results(static_cast<std::size_t>(tasks));
  parallel_for(tasks, threads, [&](int task) {
    const int pi = task / reps;
    const int rep = task % reps;
    const Point& p = points[static_cast<std::size_t>(pi)];
    const ChoiMatrix& truth = truths[static_cast<std::size_t>(pi)];
    const Matrix& phi = truth.matrix();
    TaskOutput& out = results[static_cast<std::size_t>(task)];

    ErrorRow base;
    base.experiment = std::string(to_string(cfg.experiment));
    base.scenario = to_int(cfg.scenario);
    base.qubits = p.qubits;
    base.dim = p.dim;
    base.channel = channel_label(p.channel);
    base.rank = ranks[static_cast<std::size_t>(pi)];
    base.shots = p.shots;
    base.repetition = rep;
    base.seed = derive_seed(cfg.seed, {static_cast<std::uint64_t>(pi), static_cast<std::uint64_t>(rep)});
    auto emit = [&](const std::string& metric, const char* stage, double value, double ms) {
      ErrorRow r = base;
      r.metric = metric;
      r.stage = stage;
      r.value = value;
      if (cfg.record_wall_time) r.wall_time_ms = ms;
      out.rows.push_back(std::move(r));
    };
    auto norms = [&](const Matrix& m, const char* stage, const std::string& suffix, double ms) {
      emit("trace" + suffix, stage, distance(m, phi, Metric::kTrace), ms);
      emit("frobenius" + suffix, stage, distance(m, phi, Metric::kFrobenius), ms);
      emit("operator" + suffix, stage, distance(m, phi, Metric::kOperator), ms);
    };

    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      TrialSpec spec{cfg.scenario, cfg.scheme, p.shots, base.seed, methods[mi], cfg.projection};
      const TrialResult tr = run_trial(truth, spec);
      const std::string suffix = compare ? ":" + std::string(to_string(methods[mi])) : std::string();
      if (mi == 0) {
        norms(tr.ls, "LS", "", tr.ls_ms);
        norms(tr.pls.cp1, "CP1", "", tr.pls_ms);
        emit("rank", "CP1", tr.pls.cp1_rank, tr.pls_ms);
      }
      const Matrix& est = tr.pls.estimate.matrix();
      norms(est, "PLS", suffix, tr.pls_ms);
      emit("fidelity" + suffix, "PLS", fidelity(est, phi), tr.pls_ms);
      emit("mixing_p" + suffix, "PLS", tr.pls.report.mixing_p, tr.pls_ms);
      emit("iterations" + suffix, "PLS", tr.pls.report.iterations, tr.pls_ms);
      emit("proj_cp_calls" + suffix, "PLS", tr.pls.report.proj_cp_calls, tr.pls_ms);
      if (rep == 0 && (compare || pi == 0)) out.traces.push_back(tr.pls.report);
    }
  });

  ExperimentOutput out;
  for (TaskOutput& r : results) {
    for (ErrorRow& row : r.rows) out.errors.push_back(std::move(row));
    for (ProjectionReport& t : r.traces) out.traces.push_back(std::move(t));
  }
  return out;
}

void write_errors_csv(std::ostream& os, const std::vector<ErrorRow>& rows) {
  os << "experiment,scenario,k,d,channel,rank,N,repetition,seed,metric,stage,value,wall_time_ms\n";
  char buf[64];
  for (const ErrorRow& r : rows) {
    os << r.experiment << ',' << r.scenario << ',' << r.qubits << ',' << r.dim << ',' << r.channel << ','
       << r.rank << ',' << r.shots << ',' << r.repetition << ',' << r.seed << ',' << r.metric << ',' << r.stage
       << ',';
    std::snprintf(buf, sizeof buf, "%.17g", r.value);
    os << buf << ',';
    if (r.wall_time_ms) {
      std::snprintf(buf, sizeof buf, "%.3f", *r.wall_time_ms);
      os << buf;
    } else {
      os << "NA";
    }
    os << '\n';
  }
}

void write_lambda_csv(std::ostream& os, const std::vector<ProjectionReport>& traces) {
  os << "method,iteration,mode,lambda_min,cum_projcp_calls\n";
  for (const ProjectionReport& t : traces) t.write_trace(os, false);
}

void write_outputs(const std::string& dir, const ExperimentConfig& cfg, const ExperimentOutput& out) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  require(!ec, ErrorKind::kIo, "cannot create output directory '" + dir + "': " + ec.message());
  auto open = [&](const char* name) {
    std::ofstream f(std::filesystem::path(dir) / name);
    require(static_cast<bool>(f), ErrorKind::kIo, "cannot write " + std::string(name) + " in '" + dir + "'");
    return f;
  };
  {
    std::ofstream f = open("errors.csv");
    write_errors_csv(f, out.errors);
  }
  {
    std::ofstream f = open("lambda_trace.csv");
    write_lambda_csv(f, out.traces);
  }
  {
    std::ofstream f = open("config.json");
    f << config_to_json(cfg) << '\n';
  }
}

}  // namespace pls::harness
