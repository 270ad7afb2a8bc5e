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

// pls_tomo: run experiments, acceptance suites and inspect their CSV output.
//
// Exit codes: 0 success, 2 acceptance failure, 1 error.
// PLS_OUT_DIR sets the output directory when neither --out-dir nor the
// config names one.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "pls/errors.hpp"
#include "pls/harness/config.hpp"
#include "pls/harness/experiments.hpp"
#include "pls/harness/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitFailed = 2;

struct Common {
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::string out_dir;
};

std::string resolve_out_dir(const std::string& flag, const std::string& from_config, const std::string& fallback) {
  if (!flag.empty()) return flag;
  if (!from_config.empty()) return from_config;
  if (const char* env = std::getenv("PLS_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return fallback;
}

int cmd_run(const std::string& path, const Common& c, const std::string& method, std::optional<double> epsilon) {
  using namespace pls::harness;
  ExperimentConfig cfg = load_config(path);
  if (c.seed) cfg.seed = *c.seed;
  if (!method.empty()) cfg.method = pls::projection_method_from_string(method);
  if (epsilon) cfg.projection.epsilon = *epsilon;
  const std::string dir = resolve_out_dir(c.out_dir, cfg.output_dir, "pls_out");
  const ExperimentOutput out = run_experiment(cfg, c.threads);
  write_outputs(dir, cfg, out);
  std::printf("%s: %zu error rows, %zu lambda traces -> %s (config hash %016llx)\n",
              std::string(to_string(cfg.experiment)).c_str(), out.errors.size(), out.traces.size(), dir.c_str(),
              static_cast<unsigned long long>(config_hash(cfg)));
  return kExitOk;
}

int cmd_verify(const std::string& suite, const Common& c) {
  using namespace pls::harness;
  VerifyOptions opt;
  if (c.seed) opt.seed = *c.seed;
  opt.threads = c.threads;
  std::vector<std::string> names;
  if (suite == "all")
    names = suite_names();
  else
    names.push_back(suite);
  std::vector<SuiteReport> reports;
  for (const std::string& n : names) {
    reports.push_back(run_suite(n, opt));
    for (const CheckResult& ch : reports.back().checks)
      std::printf("%s %s/%s measured=%.6g threshold=%.6g %s\n", ch.passed ? "PASS" : "FAIL", n.c_str(),
                  ch.name.c_str(), ch.measured, ch.threshold, ch.detail.c_str());
  }
  const std::string dir = resolve_out_dir(c.out_dir, "", "pls_out");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  pls::require(!ec, pls::ErrorKind::kIo, "cannot create output directory '" + dir + "'");
  const std::filesystem::path file = std::filesystem::path(dir) / ("verify_" + suite + ".csv");
  std::ofstream os(file);
  pls::require(static_cast<bool>(os), pls::ErrorKind::kIo, "cannot write " + file.string());
  write_suite_csv(os, reports);
  const bool ok = std::all_of(reports.begin(), reports.end(), [](const SuiteReport& r) { return r.passed(); });
  std::printf("%s: %s (summary in %s)\n", suite.c_str(), ok ? "PASS" : "FAIL", file.string().c_str());
  return ok ? kExitOk : kExitFailed;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int inspect_errors(std::istream& in) {
  using Key = std::tuple<std::string, std::string, std::string, std::string, long long, std::string, std::string>;
  std::map<Key, std::vector<double>> groups;
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    pls::require(f.size() == 13, pls::ErrorKind::kIo, "malformed errors.csv row: " + line);
    groups[{f[0], f[1], f[3], f[4], std::stoll(f[6]), f[10], f[9]}].push_back(std::stod(f[11]));
    ++rows;
  }
  std::printf("%zu rows\n", rows);
  std::printf("%-18s %-3s %-4s %-30s %-9s %-5s %-24s %-4s %s\n", "experiment", "sc", "d", "channel", "N", "stage",
              "metric", "reps", "median");
  for (const auto& [k, v] : groups)
    std::printf("%-18s %-3s %-4s %-30s %-9lld %-5s %-24s %-4zu %.6g\n", std::get<0>(k).c_str(),
                std::get<1>(k).c_str(), std::get<2>(k).c_str(), std::get<3>(k).c_str(), std::get<4>(k),
                std::get<5>(k).c_str(), std::get<6>(k).c_str(), v.size(), median(v));
  return kExitOk;
}

int inspect_lambda(std::istream& in) {
  struct Last {
    int iterations = 0;
    std::string lambda;
    std::string calls;
  };
  std::vector<std::string> order;
  std::map<std::string, Last> last;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    pls::require(f.size() == 5, pls::ErrorKind::kIo, "malformed lambda_trace.csv row: " + line);
    if (!last.count(f[0])) order.push_back(f[0]);
    Last& l = last[f[0]];
    l.iterations = std::stoi(f[1]);
    l.lambda = f[3];
    l.calls = f[4];
  }
  std::printf("%-10s %-10s %-24s %s\n", "method", "iterations", "final lambda_min", "proj_cp calls");
  for (const std::string& m : order)
    std::printf("%-10s %-10d %-24s %s\n", m.c_str(), last[m].iterations, last[m].lambda.c_str(),
                last[m].calls.c_str());
  return kExitOk;
}

int inspect_verify(std::istream& in) {
  std::string line;
  int pass = 0;
  int fail = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    pls::require(f.size() == 6, pls::ErrorKind::kIo, "malformed verify row: " + line);
    (f[2] == "PASS" ? pass : fail)++;
    std::printf("%s %s/%s measured=%s threshold=%s\n", f[2].c_str(), f[0].c_str(), f[1].c_str(), f[3].c_str(),
                f[4].c_str());
  }
  std::printf("%d passed, %d failed\n", pass, fail);
  return kExitOk;
}

int cmd_inspect(const std::string& path) {
  std::ifstream in(path);
  pls::require(static_cast<bool>(in), pls::ErrorKind::kIo, "cannot open '" + path + "'");
  std::string header;
  std::getline(in, header);
  if (header.rfind("experiment,", 0) == 0) return inspect_errors(in);
  if (header.rfind("method,", 0) == 0) return inspect_lambda(in);
  if (header.rfind("suite,", 0) == 0) return inspect_verify(in);
  pls::fail(pls::ErrorKind::kIo, "unrecognised CSV header in '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Projected least squares channel tomography"};
  app.require_subcommand(1);
  Common common;
  std::string method;
  std::optional<double> epsilon;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "Root seed (overrides the config)");
    sub->add_option("--threads", common.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out-dir", common.out_dir, "Output directory (default: config, then $PLS_OUT_DIR, then pls_out)");
  };

  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("config", config_path, "Config file (JSON)")->required();
  add_common(run);
  run->add_option("--method", method, "Projection method: AP, Dykstra, oneHIP, pureHIP, HIPswitch, dual");
  run->add_option("--epsilon", epsilon, "lambda_min tolerance of the CPTP projection");

  std::string suite;
  CLI::App* verify = app.add_subcommand("verify", "Run an acceptance suite");
  verify->add_option("suite", suite, "Suite name or 'all'")->required();
  add_common(verify);

  std::string csv_path;
  CLI::App* inspect = app.add_subcommand("inspect", "Summarise an errors, lambda-trace or verify CSV");
  inspect->add_option("csv", csv_path, "CSV file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*run) return cmd_run(config_path, common, method, epsilon);
    if (*verify) return cmd_verify(suite, common);
    return cmd_inspect(csv_path);
  } catch (const pls::Error& e) {
    std::fprintf(stderr, "pls_tomo: %s\n", e.what());
    return kExitError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "pls_tomo: %s\n", e.what());
    return kExitError;
  }
}
