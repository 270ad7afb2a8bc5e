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

#include "pls/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "pls/errors.hpp"

namespace pls {

namespace {

void check_qubits(int qubits) {
  require(qubits >= 1 && qubits <= 15, ErrorKind::kDomain, "qubit count must lie in [1, 15]");
}

void check_open_unit(double v, const char* name) {
  require(v > 0.0 && v < 1.0, ErrorKind::kDomain, std::string(name) + " must lie in (0, 1)");
}

double four_pow(int k) { return std::ldexp(1.0, 2 * k); }

double sampling_term(const ErrorBudget& b) {
  check_open_unit(b.eta, "eta");
  require(b.shots > 0, ErrorKind::kDomain, "sample size must be positive");
  const double g = g_factor(b.scenario, b.qubits);
  return std::sqrt(8.0 * std::log(four_pow(b.qubits) / b.eta) / (3.0 * b.shots * g));
}

}  // namespace

double g_factor(Scenario scenario, int qubits) {
  check_qubits(qubits);
  switch (scenario) {
    case Scenario::kPauliAncilla:
    case Scenario::kPauliDirect:
      return std::pow(3.0, -2.0 * qubits);
    case Scenario::kMubAncilla:
      return 0.5 / four_pow(qubits);
    case Scenario::kMubDirect:
      return 0.25 / four_pow(qubits);
  }
  fail(ErrorKind::kInvalidInput, "unknown scenario");
}

double f_factor(Scenario scenario, int qubits) {
  return g_factor(scenario, qubits) / four_pow(qubits);
}

double pls_failure_bound(const ErrorBudget& b, BoundNorm norm) {
  check_open_unit(b.epsilon, "epsilon");
  require(b.rank >= 1, ErrorKind::kInvalidRank, "rank must be at least 1");
  require(b.shots >= 0, ErrorKind::kDomain, "sample size must be nonnegative");
  const double g = g_factor(b.scenario, b.qubits);
  const double r = b.rank;
  const double eps2 = b.epsilon * b.epsilon;
  switch (norm) {
    case BoundNorm::kFrobenius:
      return four_pow(b.qubits) * std::exp(-(3.0 * b.shots * eps2 / 8.0) * g / (8.0 * r));
    case BoundNorm::kTrace:
      return four_pow(b.qubits) * std::exp(-(3.0 * b.shots * eps2 / 32.0) * g / (8.0 * r * r));
    case BoundNorm::kOperator:
      break;
  }
  fail(ErrorKind::kInvalidInput, "PLS bounds exist for the Frobenius and trace norms only");
}

double pls_failure_prob(const ErrorBudget& b, BoundNorm norm) {
  return std::min(1.0, pls_failure_bound(b, norm));
}

std::int64_t sample_complexity(const ErrorBudget& b) {
  check_open_unit(b.epsilon, "epsilon");
  check_open_unit(b.eta, "eta");
  require(b.rank >= 1, ErrorKind::kInvalidRank, "rank must be at least 1");
  const double g = g_factor(b.scenario, b.qubits);
  const double n = (32.0 * b.rank / g) * (8.0 / (3.0 * b.epsilon * b.epsilon)) *
                   std::log(four_pow(b.qubits) / b.eta);
  return static_cast<std::int64_t>(std::ceil(n));
}

double almost_rank_delta(std::span<const double> descending, int r) {
  require(!descending.empty(), ErrorKind::kInvalidInput, "empty spectrum");
  require(r >= 1 && r <= static_cast<int>(descending.size()), ErrorKind::kInvalidRank,
          "rank must lie in [1, spectrum size]");
  double top = 0.0;
  for (int i = 0; i < r; ++i) top += descending[static_cast<std::size_t>(i)];
  const double shift = std::abs(1.0 - top) / r;
  const double tail =
      r < static_cast<int>(descending.size()) ? std::max(0.0, descending[static_cast<std::size_t>(r)]) : 0.0;
  return std::max(tail, shift);
}

double frobenius_radius(const ErrorBudget& b, int r, double delta) {
  require(r >= 1, ErrorKind::kInvalidRank, "rank must be at least 1");
  require(delta >= 0.0, ErrorKind::kDomain, "delta must be nonnegative");
  return std::sqrt(2.0 * r) * (delta + 2.0 * sampling_term(b));
}

double trace_radius(const ErrorBudget& b, int r, double delta) {
  require(r >= 1, ErrorKind::kInvalidRank, "rank must be at least 1");
  require(delta >= 0.0, ErrorKind::kDomain, "delta must be nonnegative");
  const double s2 = std::sqrt(2.0);
  return r * ((4.0 * s2 + 2.0) * delta + (4.0 + 8.0 * s2) * sampling_term(b));
}

ConfidenceRegion confidence_region(std::span<const double> descending, const ErrorBudget& b) {
  require(!descending.empty(), ErrorKind::kInvalidInput, "empty spectrum");
  check_qubits(b.qubits);
  require(static_cast<double>(descending.size()) == four_pow(b.qubits), ErrorKind::kDimensionMismatch,
          "spectrum length must be d^2");
  for (std::size_t i = 1; i < descending.size(); ++i)
    require(descending[i] <= descending[i - 1], ErrorKind::kInvalidInput,
            "spectrum must be sorted in descending order");
  ConfidenceRegion best;
  best.frobenius_radius = INFINITY;
  best.trace_radius = INFINITY;
  for (int r = 1; r <= static_cast<int>(descending.size()); ++r) {
    const double delta = almost_rank_delta(descending, r);
    const double fr = frobenius_radius(b, r, delta);
    if (fr < best.frobenius_radius) {
      best.frobenius_radius = fr;
      best.chosen_r = r;
      best.chosen_delta = delta;
    }
    const double tr = trace_radius(b, r, delta);
    if (tr < best.trace_radius) {
      best.trace_radius = tr;
      best.trace_r = r;
    }
  }
  return best;
}

double ls_failure_prob(const ErrorBudget& b, BoundNorm norm, double value) {
  require(value >= 0.0 && value <= 1.0, ErrorKind::kDomain, "LS bound argument must lie in [0, 1]");
  require(b.shots >= 0, ErrorKind::kDomain, "sample size must be nonnegative");
  const double g = g_factor(b.scenario, b.qubits);
  const double d2 = four_pow(b.qubits);
  switch (norm) {
    case BoundNorm::kOperator:
      return std::min(1.0, d2 * std::exp(-(3.0 * b.shots * value * value / 8.0) * g));
    case BoundNorm::kFrobenius:
      return std::min(1.0, d2 * std::exp(-(3.0 * b.shots * value / 8.0) * g / d2));
    case BoundNorm::kTrace:
      break;
  }
  fail(ErrorKind::kInvalidInput, "LS bounds exist for the operator and Frobenius norms only");
}

DirectProjectionBound direct_projection_bound(const ErrorBudget& b) {
  check_open_unit(b.epsilon, "epsilon");
  check_open_unit(b.eta, "eta");
  const double f = f_factor(b.scenario, b.qubits);
  const double d2 = four_pow(b.qubits);
  DirectProjectionBound out;
  out.failure_prob = std::min(1.0, d2 * std::exp(-(3.0 * b.shots * b.epsilon / 8.0) * f));
  out.sample_complexity = static_cast<std::int64_t>(
      std::ceil((1.0 / f) * (8.0 / (3.0 * b.epsilon)) * std::log(d2 / b.eta)));
  return out;
}

double two_step_crossover_rank(int qubits) {
  check_qubits(qubits);
  return four_pow(qubits) / 8.0;
}

bool two_step_tighter(const ErrorBudget& b) {
  require(b.rank >= 1, ErrorKind::kInvalidRank, "rank must be at least 1");
  return static_cast<double>(b.rank) < two_step_crossover_rank(b.qubits);
}

}  // namespace pls
