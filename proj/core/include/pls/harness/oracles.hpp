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

// Slow reference implementations. None of them share code paths with the
// fast library routines they are compared against.

#include <cstdint>
#include <vector>

#include "pls/channel_model.hpp"
#include "pls/designs.hpp"
#include "pls/linalg.hpp"
#include "pls/simulator.hpp"

namespace pls::oracles {

/// Least-norm correction onto {Y : Tr_sys Y = 1/d}, solved through the
/// explicit constraint matrix (normal equations, LU).
Matrix affine_tp_projection(const Matrix& x);

struct DescentOptions {
  double gradient_tolerance = 1e-11;
  int max_iterations = 400000;
};

/// argmin_{Y >= 0} ||Y - X||_2 by gradient descent on a square factor
/// Y = B B^* with Barzilai-Borwein steps.
Matrix psd_projection_descent(const Matrix& x, const DescentOptions& opt = {});

/// argmin_{Y >= 0, Tr Y = 1} ||Y - X||_2: projected gradient for Y = B B^*
/// with B kept on the unit Frobenius sphere.
Matrix state_projection_descent(const Matrix& x, const DescentOptions& opt = {});

/// Born probabilities from explicit POVM elements and input states:
/// p = Tr[(Phi applied to rho) M] computed through Kraus operators.
std::vector<double> naive_born(const KrausSet& channel, Scenario scenario, std::int64_t context);

/// LS estimate for the Pauli scenarios built from explicit Kronecker products
/// of (3 P - 1) factors.
Matrix naive_pauli_ls(const FrequencyTable& table);

/// max_ij |a_ij - b_ij|.
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace pls::oracles
