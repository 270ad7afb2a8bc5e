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

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "pls/bounds.hpp"

using namespace pls;

namespace {

ErrorBudget budget(Scenario sc, int k, double shots, int rank = 1, double eps = 0.1, double eta = 0.05) {
  ErrorBudget b;
  b.scenario = sc;
  b.qubits = k;
  b.shots = shots;
  b.rank = rank;
  b.epsilon = eps;
  b.eta = eta;
  return b;
}

// Brute force over every r with the sampling term written out again.
double scan_frobenius(const std::vector<double>& ev, const ErrorBudget& b) {
  const double term = std::sqrt(8.0 * std::log(std::pow(4.0, b.qubits) / b.eta) /
                                (3.0 * b.shots * g_factor(b.scenario, b.qubits)));
  double best = INFINITY;
  for (std::size_t r = 1; r <= ev.size(); ++r) {
    double top = 0.0;
    for (std::size_t i = 0; i < r; ++i) top += ev[i];
    const double tail = r < ev.size() ? std::max(0.0, ev[r]) : 0.0;
    const double delta = std::max(tail, std::abs(1.0 - top) / static_cast<double>(r));
    best = std::min(best, std::sqrt(2.0 * static_cast<double>(r)) * (delta + 2.0 * term));
  }
  return best;
}

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("scenario factors") {
    CHECK(g_factor(Scenario::kPauliAncilla, 1) == doctest::Approx(1.0 / 9.0));
    CHECK(g_factor(Scenario::kPauliDirect, 2) == doctest::Approx(1.0 / 81.0));
    CHECK(g_factor(Scenario::kMubAncilla, 1) == doctest::Approx(1.0 / 8.0));
    CHECK(g_factor(Scenario::kMubDirect, 1) == doctest::Approx(1.0 / 16.0));
    CHECK(f_factor(Scenario::kMubDirect, 1) == doctest::Approx(1.0 / 64.0));
    CHECK(test::error_kind_of([] { g_factor(Scenario::kPauliAncilla, 0); }) == ErrorKind::kDomain);
  }

  TEST_CASE("PLS failure probability") {
    const ErrorBudget b = budget(Scenario::kMubAncilla, 1, 1e5);
    CHECK(pls_failure_bound(b, BoundNorm::kFrobenius) == doctest::Approx(4.0 * std::exp(-375.0 / 64.0)));
    CHECK(pls_failure_prob(b, BoundNorm::kFrobenius) == doctest::Approx(1.14121050679e-2));
    CHECK(pls_failure_prob(budget(Scenario::kMubAncilla, 1, 0), BoundNorm::kFrobenius) == 1.0);

    const double e1 = -std::log(pls_failure_bound(b, BoundNorm::kFrobenius) / 4.0);
    const double e2 = -std::log(pls_failure_bound(budget(Scenario::kMubAncilla, 1, 1e5, 2), BoundNorm::kFrobenius) / 4.0);
    CHECK(e2 == doctest::Approx(e1 / 2.0));
    const double t1 = -std::log(pls_failure_bound(b, BoundNorm::kTrace) / 4.0);
    const double t2 = -std::log(pls_failure_bound(budget(Scenario::kMubAncilla, 1, 1e5, 2), BoundNorm::kTrace) / 4.0);
    CHECK(t2 == doctest::Approx(t1 / 4.0));
    CHECK(t1 == doctest::Approx(e1 / 4.0));

    CHECK(test::error_kind_of([&] { pls_failure_bound(b, BoundNorm::kOperator); }) == ErrorKind::kInvalidInput);
    CHECK(test::error_kind_of([] { pls_failure_bound(budget(Scenario::kMubAncilla, 1, 1e5, 0), BoundNorm::kTrace); }) ==
          ErrorKind::kInvalidRank);
    CHECK(test::error_kind_of([] { pls_failure_bound(budget(Scenario::kMubAncilla, 1, 1e5, 1, 1.5), BoundNorm::kTrace); }) ==
          ErrorKind::kDomain);
  }

  TEST_CASE("sample complexity") {
    CHECK(sample_complexity(budget(Scenario::kPauliAncilla, 1, 0)) == 336540);
    CHECK(sample_complexity(budget(Scenario::kMubAncilla, 1, 0)) == 299147);
    CHECK(sample_complexity(budget(Scenario::kMubAncilla, 1, 0, 1, 0.1, 0.01)) == 409018);
    const double n1 = static_cast<double>(sample_complexity(budget(Scenario::kPauliAncilla, 2, 0, 1, 0.2)));
    const double n2 = static_cast<double>(sample_complexity(budget(Scenario::kPauliAncilla, 2, 0, 1, 0.1)));
    CHECK(n2 / n1 == doctest::Approx(4.0).epsilon(1e-5));
    const double ratio = static_cast<double>(sample_complexity(budget(Scenario::kPauliAncilla, 3, 0))) /
                         static_cast<double>(sample_complexity(budget(Scenario::kMubAncilla, 3, 0)));
    CHECK(ratio == doctest::Approx(0.5 * std::pow(9.0 / 4.0, 3)).epsilon(1e-5));

    // At the sample complexity the failure bound drops to eta.
    for (Scenario sc : {Scenario::kPauliAncilla, Scenario::kPauliDirect, Scenario::kMubAncilla, Scenario::kMubDirect})
      for (int r : {1, 3}) {
        ErrorBudget b = budget(sc, 2, 0, r, 0.05, 0.01);
        b.shots = static_cast<double>(sample_complexity(b));
        CHECK(pls_failure_bound(b, BoundNorm::kFrobenius) <= b.eta * (1.0 + 1e-12));
        if (r == 1) CHECK(pls_failure_bound(b, BoundNorm::kTrace) == doctest::Approx(b.eta).epsilon(1e-4));
      }
  }

  TEST_CASE("almost rank and confidence region") {
    const std::vector<double> pure = {1.0, 0.0, 0.0, 0.0};
    CHECK(almost_rank_delta(pure, 1) == 0.0);
    const std::vector<double> ev = {0.55, 0.35, 0.06, 0.04};
    CHECK(almost_rank_delta(ev, 1) == doctest::Approx(0.45));
    CHECK(almost_rank_delta(ev, 2) == doctest::Approx(0.06));
    CHECK(almost_rank_delta(ev, 4) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(test::error_kind_of([&] { almost_rank_delta(ev, 5); }) == ErrorKind::kInvalidRank);

    const ErrorBudget b = budget(Scenario::kMubAncilla, 1, 1e6);
    const ConfidenceRegion cr = confidence_region(ev, b);
    CHECK(cr.frobenius_radius == doctest::Approx(scan_frobenius(ev, b)));
    CHECK(cr.chosen_delta == doctest::Approx(almost_rank_delta(ev, cr.chosen_r)));
    CHECK(cr.trace_radius <= trace_radius(b, 1, almost_rank_delta(ev, 1)));

    const std::vector<double> unsorted = {0.35, 0.55, 0.06, 0.04};
    CHECK(test::error_kind_of([&] { confidence_region(unsorted, b); }) == ErrorKind::kInvalidInput);
    const std::vector<double> short_spectrum = {1.0, 0.0};
    CHECK(test::error_kind_of([&] { confidence_region(short_spectrum, b); }) == ErrorKind::kDimensionMismatch);
  }

  TEST_CASE("LS bounds") {
    const ErrorBudget b = budget(Scenario::kPauliAncilla, 1, 1e4);
    CHECK(ls_failure_prob(b, BoundNorm::kOperator, 0.1) == doctest::Approx(0.0620154144));
    // The Frobenius form is the operator form with tau^2 replaced by delta^2 / d^2.
    const double delta = 0.3;
    CHECK(ls_failure_prob(b, BoundNorm::kFrobenius, delta * delta) ==
          doctest::Approx(ls_failure_prob(b, BoundNorm::kOperator, delta / 2.0)));
    double prev = 2.0;
    for (double n : {1e3, 1e4, 1e5, 1e6}) {
      const double p = ls_failure_prob(budget(Scenario::kPauliAncilla, 1, n), BoundNorm::kOperator, 0.1);
      CHECK(p <= prev);
      prev = p;
    }
    CHECK(test::error_kind_of([&] { ls_failure_prob(b, BoundNorm::kTrace, 0.1); }) == ErrorKind::kInvalidInput);
    CHECK(test::error_kind_of([&] { ls_failure_prob(b, BoundNorm::kOperator, 1.5); }) == ErrorKind::kDomain);
  }

  TEST_CASE("direct projection versus two-step") {
    const ErrorBudget b = budget(Scenario::kMubDirect, 1, 1e6, 1, 0.01, 0.05);
    const DirectProjectionBound dp = direct_projection_bound(b);
    CHECK(dp.failure_prob == doctest::Approx(std::min(1.0, 4.0 * std::exp(-3.0 * 1e6 * 0.01 / 8.0 / 64.0))));
    ErrorBudget at = b;
    at.shots = static_cast<double>(dp.sample_complexity);
    CHECK(direct_projection_bound(at).failure_prob <= b.eta * (1.0 + 1e-12));

    // The two exponents agree when the two-step squared error r eps^2 equals the direct eps.
    for (int k = 1; k <= 4; ++k) {
      const double rc = two_step_crossover_rank(k);
      CHECK(rc == doctest::Approx(std::pow(4.0, k) / 8.0));
      const double g = g_factor(Scenario::kPauliAncilla, k);
      const double f = f_factor(Scenario::kPauliAncilla, k);
      const double eps = 0.01;
      const double two_step = (3.0 * eps / 8.0) * g / (8.0 * rc);
      const double direct = (3.0 * eps / 8.0) * f;
      CHECK(two_step == doctest::Approx(direct));
    }
    CHECK(two_step_tighter(budget(Scenario::kPauliAncilla, 3, 1e6, 7)));
    CHECK_FALSE(two_step_tighter(budget(Scenario::kPauliAncilla, 3, 1e6, 8)));
  }
}
