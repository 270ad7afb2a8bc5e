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

// Measurement resources: Pauli eigenbases, maximal sets of mutually unbiased
// bases and the POVMs / input states of the four tomography scenarios.
//
// Index conventions. A Pauli setting on n qubits is encoded as an integer in
// [0, 3^n) whose base-3 digits (most significant = qubit 0) map 0 -> x,
// 1 -> y, 2 -> z. Outcomes are n-bit integers, most significant bit = qubit 0,
// bit value 0 meaning eigenvalue +1.
//
// MUB families. D odd prime: computational basis followed by the D bases
// |v_{j,t}> = D^{-1/2} sum_l w^{j l^2 + t l} |l>, j = 0..D-1. D = 2^m: the
// computational basis followed by D bases
// |v_{j,t}> = D^{-1/2} sum_x i^{x^T M_j x} (-1)^{t.x} |x>, where
// M_j[a][b] = tr(j e_a e_b) is the trace form of GF(2^m) in the polynomial
// basis e_a = alpha^a and the exponent x^T M_j x is evaluated over the
// integers mod 4. Irreducible polynomials (m: polynomial):
//   1: x + 1            2: x^2 + x + 1          3: x^3 + x + 1
//   4: x^4 + x + 1      5: x^5 + x^2 + 1        6: x^6 + x + 1
//   7: x^7 + x + 1      8: x^8 + x^4 + x^3 + x + 1

#include <cstdint>
#include <string>
#include <vector>

#include "pls/channel_model.hpp"
#include "pls/linalg.hpp"

namespace pls {

enum class PauliAxis : std::uint8_t { kX = 0, kY = 1, kZ = 2 };

using PauliSetting = std::vector<PauliAxis>;

/// The four data-collection scenarios.
enum class Scenario : int {
  kPauliAncilla = 1,
  kPauliDirect = 2,
  kMubAncilla = 3,
  kMubDirect = 4,
};

Scenario scenario_from_int(int s);
int to_int(Scenario s);

/// |o, s> with sigma_s |o,s> = (-1)^o |o,s>.
Vector pauli_eigenvector(PauliAxis axis, int outcome);

/// tensor_i |o_i, s_i><o_i, s_i|; outcome bits listed per qubit.
Matrix pauli_projector(const PauliSetting& setting, const std::vector<int>& outcome);

/// Decode a setting index in [0, 3^n).
PauliSetting pauli_setting_from_index(std::int64_t index, int qubits);
std::int64_t pauli_setting_index(const PauliSetting& setting);

std::int64_t ipow(std::int64_t base, int exp);

/// (D + 1) orthonormal bases of C^D stored as unitary matrices whose columns
/// are the basis vectors. Basis 0 is the computational basis.
struct MubFamily {
  int dim = 0;
  std::vector<Matrix> bases;

  /// Total number of vectors, (D + 1) D for a maximal family.
  int size() const;
  /// Vector number idx = basis * D + t.
  Vector vector(int idx) const;
};

MubFamily mub_family(int dim);

/// True for the dimensions mub_family supports.
bool mub_supported(int dim);

/// max over a fixed probe set of || sum_k |v_k><v_k| <v_k|A|v_k> - A - Tr(A) 1 ||_inf.
/// Probes: 1, |0><0| and 20 random Hermitian matrices from `seed`.
double near_isotropy_defect(const MubFamily& family, std::uint64_t seed = 2021);

struct Povm {
  std::vector<Matrix> elements;
  std::vector<std::string> labels;
};

/// Scenario 1/2: projective Pauli POVM of `setting` on the measured qubits
/// (2k qubits for scenario 1, k for scenario 2). Scenario 3: the d^2 (d^2 + 1)
/// MUB elements |v><v| / (d^2 + 1). Scenario 4: the d (d + 1) elements
/// |v><v| / (d + 1). `dim` is the channel dimension d.
Povm scenario_povm(Scenario scenario, int dim, const PauliSetting& setting = {});

/// Input states actually fed to the channel. Scenario 2: the 6^k transposed
/// Pauli product projectors ordered by (a, p) with a the setting index and p
/// the outcome bits. Scenario 4: the d (d + 1) transposed MUB projectors.
/// Scenarios 1 and 3: the single maximally entangled state on C^d (x) C^d.
std::vector<DensityMatrix> scenario_inputs(Scenario scenario, int dim);

}  // namespace pls
