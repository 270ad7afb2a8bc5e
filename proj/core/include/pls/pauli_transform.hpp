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

// Fast change of basis between an n-qubit matrix and its Pauli-string
// expansion, O(n 4^n). Pauli strings are indexed by base-4 digits (most
// significant = qubit 0) with 0 = I, 1 = X, 2 = Y, 3 = Z.

#include <vector>

#include "pls/linalg.hpp"

namespace pls {

/// Tr(P M) for every Pauli string P.
std::vector<cplx> pauli_expectations(const Matrix& m, int qubits);

/// sum_P coeffs[P] P.
Matrix from_pauli_coefficients(const std::vector<cplx>& coeffs, int qubits);

/// In-place Walsh-Hadamard transform, out[T] = sum_o (-1)^{|o & T|} in[o].
void walsh_hadamard(std::vector<double>& values);

}  // namespace pls
