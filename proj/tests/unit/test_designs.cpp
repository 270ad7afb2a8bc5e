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
#include <numbers>

#include "helpers.hpp"
#include "pls/designs.hpp"

using namespace pls;
using pls::test::gap;

namespace {

double max_overlap_defect(const MubFamily& f) {
  const double target = 1.0 / f.dim;
  double worst = 0.0;
  for (std::size_t a = 0; a < f.bases.size(); ++a) {
    worst = std::max(worst, gap(f.bases[a].adjoint() * f.bases[a], identity(f.dim)));
    for (std::size_t b = a + 1; b < f.bases.size(); ++b) {
      const Matrix o = f.bases[a].adjoint() * f.bases[b];
      worst = std::max(worst, (o.cwiseAbs2().array() - target).abs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace

TEST_SUITE("designs") {
  TEST_CASE("Pauli eigenvectors and projectors") {
    Matrix z0 = Matrix::Zero(2, 2);
    z0(0, 0) = 1.0;
    CHECK(gap(pauli_projector({PauliAxis::kZ}, {0}), z0) < 1e-15);
    Matrix plus(2, 2);
    plus << 0.5, 0.5, 0.5, 0.5;
    CHECK(gap(pauli_projector({PauliAxis::kX}, {0}), plus) < 1e-15);
    Matrix minus(2, 2);
    minus << 0.5, -0.5, -0.5, 0.5;
    CHECK(gap(pauli_projector({PauliAxis::kZ, PauliAxis::kX}, {0, 1}), kron(z0, minus)) < 1e-15);
    for (PauliAxis a : {PauliAxis::kX, PauliAxis::kY, PauliAxis::kZ})
      CHECK(gap(pauli_projector({a}, {0}) + pauli_projector({a}, {1}), identity(2)) < 1e-15);
  }

  TEST_CASE("setting index codec") {
    for (std::int64_t i = 0; i < 81; ++i) CHECK(pauli_setting_index(pauli_setting_from_index(i, 4)) == i);
    const PauliSetting s = pauli_setting_from_index(5, 2);
    CHECK(s[0] == PauliAxis::kY);
    CHECK(s[1] == PauliAxis::kZ);
    CHECK(test::error_kind_of([] { pauli_setting_from_index(9, 2); }) == ErrorKind::kInvalidInput);
  }

  TEST_CASE("MUB families are unbiased") {
    for (int dim : {2, 3, 4, 5, 7, 8, 16}) {
      CAPTURE(dim);
      const MubFamily f = mub_family(dim);
      CHECK(f.bases.size() == static_cast<std::size_t>(dim + 1));
      CHECK(max_overlap_defect(f) < 1e-12);
    }
  }

  TEST_CASE("D=3 family matches the quadratic-phase formula") {
    const MubFamily f = mub_family(3);
    const double w = 2.0 * std::numbers::pi / 3.0;
    for (int j = 0; j < 3; ++j)
      for (int t = 0; t < 3; ++t)
        for (int l = 0; l < 3; ++l)
          CHECK(std::abs(f.bases[static_cast<std::size_t>(j + 1)](l, t) -
                         std::polar(1.0 / std::sqrt(3.0), w * (j * l * l + t * l))) < 1e-14);
  }

  TEST_CASE("near isotropy") {
    for (int dim : {2, 3, 4, 5, 7, 8, 16}) CHECK(near_isotropy_defect(mub_family(dim)) < 1e-10);
    CHECK(near_isotropy_defect(mub_family(2)) < 1e-12);
    MubFamily broken = mub_family(4);
    broken.bases.pop_back();
    CHECK(near_isotropy_defect(broken) > 0.5);
  }

  TEST_CASE("unsupported dimensions") {
    CHECK_FALSE(mub_supported(6));
    CHECK_FALSE(mub_supported(9));
    CHECK(mub_supported(256));
    CHECK(test::error_kind_of([] { mub_family(6); }) == ErrorKind::kNotImplemented);
  }

  TEST_CASE("scenario POVMs") {
    const Povm s3 = scenario_povm(Scenario::kMubAncilla, 2);
    CHECK(s3.elements.size() == 20);
    Matrix sum = Matrix::Zero(4, 4);
    for (const Matrix& m : s3.elements) {
      CHECK(m.trace().real() == doctest::Approx(0.2));
      sum += m;
    }
    CHECK(gap(sum, identity(4)) < 1e-12);

    const Povm s4 = scenario_povm(Scenario::kMubDirect, 2);
    CHECK(s4.elements.size() == 6);
    sum = Matrix::Zero(2, 2);
    for (const Matrix& m : s4.elements) {
      CHECK(m.trace().real() == doctest::Approx(1.0 / 3.0));
      sum += m;
    }
    CHECK(gap(sum, identity(2)) < 1e-12);

    const Povm s1 = scenario_povm(Scenario::kPauliAncilla, 2, {PauliAxis::kZ, PauliAxis::kZ});
    CHECK(s1.elements.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        CHECK(gap(s1.elements[i] * s1.elements[j], i == j ? s1.elements[i] : Matrix::Zero(4, 4)) < 1e-14);
    CHECK(s1.labels[2] == "10");
    CHECK(test::error_kind_of([] { scenario_povm(Scenario::kPauliAncilla, 2, {PauliAxis::kZ}); }) ==
          ErrorKind::kInvalidInput);
  }

  TEST_CASE("scenario inputs") {
    const auto s2 = scenario_inputs(Scenario::kPauliDirect, 2);
    REQUIRE(s2.size() == 6);
    // Ordered x+, x-, y+, y-, z+, z-; the y states are transposed.
    Matrix y_plus(2, 2);
    y_plus << 0.5, cplx(0, 0.5), cplx(0, -0.5), 0.5;
    CHECK(gap(s2[2].matrix(), y_plus) < 1e-15);
    Matrix zero = Matrix::Zero(2, 2);
    zero(0, 0) = 1.0;
    CHECK(gap(s2[4].matrix(), zero) < 1e-15);

    const auto s4 = scenario_inputs(Scenario::kMubDirect, 2);
    const MubFamily f = mub_family(2);
    REQUIRE(s4.size() == 6);
    for (int i = 0; i < 6; ++i) CHECK(gap(s4[static_cast<std::size_t>(i)].matrix(), outer(f.vector(i)).transpose()) < 1e-15);

    for (Scenario sc : {Scenario::kPauliAncilla, Scenario::kPauliDirect, Scenario::kMubAncilla, Scenario::kMubDirect})
      for (const DensityMatrix& rho : scenario_inputs(sc, 2)) {
        CHECK(rho.matrix().trace().real() == doctest::Approx(1.0));
        CHECK((rho.matrix() * rho.matrix()).trace().real() == doctest::Approx(1.0));
      }
  }
}
