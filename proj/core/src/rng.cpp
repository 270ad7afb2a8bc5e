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

#include "pls/rng.hpp"

#include <algorithm>

namespace pls {

std::vector<std::int64_t> multinomial(Rng& rng, std::int64_t trials,
                                      std::span<const double> probs) {
  std::vector<std::int64_t> counts(probs.size(), 0);
  if (probs.empty() || trials <= 0) return counts;
  double remaining_mass = 0.0;
  for (double p : probs) remaining_mass += std::max(p, 0.0);
  std::int64_t remaining = trials;
  for (std::size_t i = 0; i + 1 < probs.size() && remaining > 0; ++i) {
    const double p = std::max(probs[i], 0.0);
    if (p <= 0.0) continue;
    if (remaining_mass <= 0.0) break;
    const double q = std::min(1.0, p / remaining_mass);
    std::int64_t c = remaining;
    if (q < 1.0) {
      std::binomial_distribution<std::int64_t> binom(remaining, q);
      c = binom(rng);
    }
    counts[i] = c;
    remaining -= c;
    remaining_mass -= p;
  }
  if (remaining > 0) {
    // Last cell with positive mass absorbs the remainder.
    for (std::size_t i = probs.size(); i-- > 0;) {
      if (probs[i] > 0.0) {
        counts[i] += remaining;
        break;
      }
    }
  }
  return counts;
}

}  // namespace pls
