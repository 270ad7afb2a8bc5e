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

// Numeric evaluators for the concentration bounds, sample complexities and
// confidence regions of PLS and LS channel estimates. Logarithms are natural.

#include <cstdint>
#include <span>

#include "pls/designs.hpp"

namespace pls {

enum class BoundNorm { kFrobenius, kTrace, kOperator };

struct ErrorBudget {
  Scenario scenario = Scenario::kPauliAncilla;
  int qubits = 1;  // d = 2^k
  double shots = 0;
  int rank = 1;
  double delta = 0.0;
  double eta = 0.05;
  double epsilon = 0.1;

  int dim() const { return 1 << qubits; }
};

/// 1/3^{2k} (Pauli scenarios), 1/(2 4^k) (MUB + ancilla), 1/(4 4^k) (MUB direct).
double g_factor(Scenario scenario, int qubits);

/// g / 4^k: the direct-projection constant.
double f_factor(Scenario scenario, int qubits);

/// Pr[||PLS - Phi|| >= epsilon] bound for Frobenius or trace norm, rank r.
/// Raw value; may exceed one. Throws kDomain for epsilon outside (0, 1).
double pls_failure_bound(const ErrorBudget& budget, BoundNorm norm);

/// min(bound, 1).
double pls_failure_prob(const ErrorBudget& budget, BoundNorm norm);

/// Smallest integer N with N >= (32 r / g) (8 / (3 eps^2)) ln(4^k / eta).
std::int64_t sample_complexity(const ErrorBudget& budget);

struct ConfidenceRegion {
  double frobenius_radius = 0.0;
  double trace_radius = 0.0;
  int chosen_r = 1;
  double chosen_delta = 0.0;
  /// Rank minimising the trace radius (may differ from chosen_r).
  int trace_r = 1;
};

/// Certified delta for a rank-r approximation of a trace-one spectrum given
/// in descending order: zero the tail, shift the top block uniformly to unit
/// trace; delta = max(lambda_{r+1}, |shift|).
double almost_rank_delta(std::span<const double> descending, int r);

/// Frobenius radius for one (r, delta): sqrt(2 r) (delta + 2 t),
/// t = sqrt(8 ln(4^k / eta) / (3 N g)).
double frobenius_radius(const ErrorBudget& budget, int r, double delta);
/// r ((4 sqrt 2 + 2) delta + (4 + 8 sqrt 2) t).
double trace_radius(const ErrorBudget& budget, int r, double delta);

/// Scan r = 1..d^2 over the CP1 spectrum (descending) and keep the smallest
/// radii. Valid simultaneously for all r with probability 1 - eta.
ConfidenceRegion confidence_region(std::span<const double> descending,
                                   const ErrorBudget& budget);

/// LS bounds: operator norm d^2 exp(-(3 N tau^2 / 8) g); Frobenius
/// (argument delta^2) d^2 exp(-(3 N delta^2 / 8) g / d^2). `value` is tau or
/// delta^2 and must lie in [0, 1].
double ls_failure_prob(const ErrorBudget& budget, BoundNorm norm, double value);

struct DirectProjectionBound {
  /// Pr[||PLS - Phi||_2^2 >= epsilon] <= d^2 exp(-(3 N eps / 8) f).
  double failure_prob = 0.0;
  /// N >= (1/f) (8 / (3 eps)) ln(d^2 / eta).
  std::int64_t sample_complexity = 0;
};
DirectProjectionBound direct_projection_bound(const ErrorBudget& budget);

/// Rank at which the two-step Frobenius exponent (3 N eps^2 / 8) g / (8 r)
/// equals the direct-projection exponent (3 N eps^2 / 8) g / d^2 for the same
/// event ||.||_2 >= eps, i.e. d^2 / 8.
double two_step_crossover_rank(int qubits);

/// True iff the two-step bound is strictly tighter than the direct one.
bool two_step_tighter(const ErrorBudget& budget);

}  // namespace pls
