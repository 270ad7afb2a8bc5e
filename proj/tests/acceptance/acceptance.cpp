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

// One PASS/FAIL line per acceptance criterion. Usage: acceptance [criterion...]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "pls/harness/verify.hpp"

namespace {

struct Criterion {
  int id;
  const char* suite;
  const char* title;
  double max_seconds;  // 0: no runtime limit
};

constexpr Criterion kCriteria[] = {
    {1, "identifiability", "exact-data identifiability", 10.0},
    {2, "isotropy", "2-design identity", 0.0},
    {3, "projection_oracles", "projection oracles", 60.0},
    {4, "properties", "properties 2 and 3", 0.0},
    {5, "scaling", "N^-1/2 scaling", 0.0},
    {6, "low_rank", "low-rank gain", 0.0},
    {7, "rank_monotonicity", "rank monotonicity", 0.0},
    {8, "hip_superiority", "HIP superiority", 0.0},
    {9, "cross_method", "cross-method agreement", 0.0},
    {10, "bound_validity", "bound validity", 0.0},
    {11, "determinism", "determinism", 0.0},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  pls::harness::VerifyOptions opt;
  int failures = 0;
  for (const Criterion& c : kCriteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    pls::harness::SuiteReport rep;
    std::string error;
    try {
      rep = pls::harness::run_suite(c.suite, opt);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = error.empty() && rep.passed();
    std::string why;
    if (!error.empty()) why = "error: " + error;
    for (const auto& ch : rep.checks) {
      if (ch.passed) continue;
      char buf[256];
      std::snprintf(buf, sizeof buf, "%s%s measured %.6g vs %.6g", why.empty() ? "" : "; ", ch.name.c_str(),
                    ch.measured, ch.threshold);
      why += buf;
    }
    if (c.max_seconds > 0.0 && secs > c.max_seconds) {
      ok = false;
      char buf[96];
      std::snprintf(buf, sizeof buf, "%sruntime %.1f s over %.0f s", why.empty() ? "" : "; ", secs, c.max_seconds);
      why += buf;
    }
    std::printf("%s criterion %d (%s): %zu checks, %.1f s%s%s\n", ok ? "PASS" : "FAIL", c.id, c.title,
                rep.checks.size(), secs, why.empty() ? "" : " - ", why.c_str());
    std::fflush(stdout);
    failures += ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
