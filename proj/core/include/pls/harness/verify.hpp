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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pls::harness {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  /// Deterministic free text; never contains timings.
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool passed() const;
};

struct VerifyOptions {
  std::uint64_t seed = 2021;
  int threads = 1;
};

/// identifiability, isotropy, projection_oracles, properties, scaling,
/// low_rank, rank_monotonicity, hip_superiority, cross_method,
/// bound_validity, determinism. `verify all` runs them in this order.
const std::vector<std::string>& suite_names();

/// Throws kConfig for unknown names; "all" is not accepted here.
SuiteReport run_suite(std::string_view name, const VerifyOptions& opt = {});

/// suite,check,passed,measured,threshold,detail
void write_suite_csv(std::ostream& os, const std::vector<SuiteReport>& reports);

}  // namespace pls::harness
