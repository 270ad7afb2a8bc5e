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

#include "helpers.hpp"
#include "pls/designs.hpp"
#include "pls/pauli_transform.hpp"

using namespace pls;
using pls::test::gap;
using pls::test::sigma;

namespace {

// Explicit Pauli string for base-4 digits (qubit 0 most significant).
Matrix pauli_string(std::int64_t idx, int n) {
  Matrix m = Matrix::Identity(1, 1);
  for (int q = n - 1; q >= 0; --q) {
    m = kron(sigma(static_cast<int>(idx % 4)), m);
    idx /= 4;
  }
  return m;
}

}  // namespace

TEST_SUITE("pauli_transform") {
  TEST_CASE("expectations match explicit traces") {
    for (int n : {1, 2, 3}) {
      const Matrix m = random_hermitian(1 << n, 40 + static_cast<std::uint64_t>(n));
      const auto e = pauli_expectations(m, n);
      REQUIRE(e.size() == static_cast<std::size_t>(ipow(4, n)));
      for (std::int64_t p = 0; p < ipow(4, n); ++p)
        CHECK(std::abs(e[static_cast<std::size_t>(p)] - (m * pauli_string(p, n)).trace()) < 1e-11);
    }
  }

  TEST_CASE("coefficients round trip") {
    for (int n : {1, 2, 3, 4}) {
      const Matrix m = random_hermitian(1 << n, 50 + static_cast<std::uint64_t>(n));
      std::vector<cplx> c = pauli_expectations(m, n);
      for (cplx& x : c) x /= static_cast<double>(1 << n);
      CHECK(gap(from_pauli_coefficients(c, n), m) < 1e-11);
    }
  }

  TEST_CASE("Walsh-Hadamard transform") {
    std::vector<double> v = {1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<double> expected(8, 0.0);
    for (int t = 0; t < 8; ++t)
      for (int o = 0; o < 8; ++o) expected[static_cast<std::size_t>(t)] += (__builtin_popcount(t & o) % 2 ? -1 : 1) * v[static_cast<std::size_t>(o)];
    walsh_hadamard(v);
    for (int t = 0; t < 8; ++t) CHECK(v[static_cast<std::size_t>(t)] == doctest::Approx(expected[static_cast<std::size_t>(t)]));
  }
}
