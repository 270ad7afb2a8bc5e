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

// Closed-form least-squares Choi estimators.
//
// Pauli scenarios are accumulated in the Pauli-string basis: each setting's
// frequency vector is Walsh-Hadamard transformed once, which folds the
// product structure of tensor_i (3|o_i,s_i><o_i,s_i| - 1) into one
// coefficient per Pauli string, and the matrix is rebuilt with a single fast
// inverse transform. MUB scenarios accumulate one basis (or one input) at a
// time. Neither materialises the measurement map.

#include <cstdint>

#include "pls/linalg.hpp"
#include "pls/simulator.hpp"

namespace pls {

struct LsEstimate {
  Matrix matrix;
  Scenario scenario = Scenario::kPauliAncilla;
  int dim = 2;
  std::int64_t shots = 0;
  double nu = 1.0;
  std::uint64_t seed = 0;
};

/// (1/3^{2k}) sum_{s,o} f^s_o tensor_i (3|o_i,s_i><o_i,s_i| - 1).
LsEstimate ls_scenario1(const FrequencyTable& f, int qubits);

/// (1/(3^{2k} d)) sum f^{ab}_{pq} (tensor_i M^{b_i}_{q_i}) (x) (tensor_j M^{a_j}_{p_j})
/// with the measured outcome q on the system factor and the input label p on
/// the ancilla factor.
LsEstimate ls_scenario2(const FrequencyTable& f, int qubits);

/// (d^2 + 1) sum_i f_i |v_i><v_i| - 1.
LsEstimate ls_scenario3(const FrequencyTable& f, int dim);

/// (d+1)/d sum f^k_l |v_l><v_l| (x) |w_k><w_k|
///   - (1/d) sum f^k_l (|v_l><v_l| (x) 1 + 1 (x) |w_k><w_k|) + 1 (x) 1.
/// Tables are used as given; no per-input renormalisation.
LsEstimate ls_scenario4(const FrequencyTable& f, int dim);

/// Dispatch on f.scenario().
LsEstimate least_squares(const FrequencyTable& f);

}  // namespace pls
