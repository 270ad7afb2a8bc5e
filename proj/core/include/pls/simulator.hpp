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

// Born probabilities and multinomial sampling for the four scenarios.
//
// A table row is addressed by a context (setting id, input id) and an
// outcome id:
//   scenario 1: setting = 2k-qubit Pauli setting, input = 0,
//               outcome = 2k-bit string; 3^{2k} contexts.
//   scenario 2: setting = k-qubit measurement setting b, input = a * 2^k + p
//               for the input state (P^a_p)^T, outcome = q;
//               3^{2k} 2^k contexts. Values satisfy sum_q f = 1 per context.
//   scenario 3: one context, outcome = MUB vector index in dimension d^2.
//   scenario 4: setting = 0, input = MUB vector index k in dimension d,
//               outcome = MUB vector index l.
// Frequencies are counts divided by nu, the mean number of shots per context
// (scenario 3: nu = N).

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pls/channel_model.hpp"
#include "pls/designs.hpp"

namespace pls {

enum class SamplingScheme { kFixed, kRandom };

struct SamplingPlan {
  SamplingScheme scheme = SamplingScheme::kRandom;
  std::int64_t shots = 0;
  std::uint64_t seed = 0;
};

/// Shape of a scenario's table for channel dimension d.
struct TableLayout {
  Scenario scenario = Scenario::kPauliAncilla;
  int dim = 2;
  int qubits = 0;  // k, 0 when d is not a power of two
  std::int64_t settings = 1;
  std::int64_t inputs = 1;
  std::int64_t outcomes = 1;

  std::int64_t contexts() const { return settings * inputs; }
  std::int64_t size() const { return contexts() * outcomes; }

  /// Throws kNotImplemented / kInvalidDimension for unsupported (scenario, d).
  static TableLayout of(Scenario scenario, int dim);
};

class FrequencyTable {
 public:
  FrequencyTable() = default;
  FrequencyTable(TableLayout layout, std::vector<double> values, double nu,
                 std::int64_t total_shots, std::uint64_t seed,
                 SamplingScheme scheme);

  const TableLayout& layout() const { return layout_; }
  Scenario scenario() const { return layout_.scenario; }
  int dim() const { return layout_.dim; }
  double nu() const { return nu_; }
  std::int64_t total_shots() const { return total_shots_; }
  std::uint64_t seed() const { return seed_; }
  SamplingScheme scheme() const { return scheme_; }

  const std::vector<double>& values() const { return values_; }
  double at(std::int64_t setting, std::int64_t input, std::int64_t outcome) const;
  double at_context(std::int64_t context, std::int64_t outcome) const {
    return values_[static_cast<std::size_t>(context * layout_.outcomes + outcome)];
  }

  /// Columnar text format:
  ///   # pls-frequency-table v1
  ///   # scenario=<s> dim=<d> qubits=<k> N=<N> nu=<nu> seed=<seed> scheme=<fixed|random>
  ///   setting,input,outcome,frequency
  ///   <rows with nonzero frequency, %.17g>
  void write(std::ostream& os) const;
  static FrequencyTable read(std::istream& is);

 private:
  TableLayout layout_;
  std::vector<double> values_;
  double nu_ = 1.0;
  std::int64_t total_shots_ = 0;
  std::uint64_t seed_ = 0;
  SamplingScheme scheme_ = SamplingScheme::kRandom;
};

/// Probability vector over outcomes for one context; negatives from round-off
/// are clamped and the distribution renormalised. Throws
/// kConstraintViolation for a non-physical Choi matrix.
std::vector<double> born_probabilities(const ChoiMatrix& choi, Scenario scenario,
                                       std::int64_t context);

/// All Born probabilities laid out like a FrequencyTable (context-major).
std::vector<double> all_born_probabilities(const ChoiMatrix& choi, Scenario scenario);

/// Frequencies replaced by exact probabilities (nu = 1, N = 0). Feeding this
/// into the matching estimator must reproduce the Choi matrix.
FrequencyTable exact_table(const ChoiMatrix& choi, Scenario scenario);

/// Deterministic for a fixed (choi, scenario, plan). Fixed scheme: every
/// context receives shots / contexts shots from its own stream. Random
/// scheme: one multinomial over (context, outcome).
FrequencyTable sample(const ChoiMatrix& choi, Scenario scenario, const SamplingPlan& plan);

}  // namespace pls
