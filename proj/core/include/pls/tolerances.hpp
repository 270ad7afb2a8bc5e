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

namespace pls {

/// Numerical tolerances shared by every structural check in the library.
struct Tolerances {
  /// Hermiticity: max |A - A^*| entry.
  double hermiticity = 1e-12;
  /// Unit trace of states.
  double trace = 1e-12;
  /// Trace preservation, partial-trace constraints, Kraus completeness.
  double structural = 1e-10;
  /// Smallest eigenvalue still accepted as positive semidefinite.
  double psd = 1e-10;
  /// Eigenvalues above this count toward numerical rank.
  double rank = 1e-9;
};

inline constexpr Tolerances kTol{};

}  // namespace pls
