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

#include <doctest.h>

#include "pls/errors.hpp"
#include "pls/linalg.hpp"

namespace pls::test {

inline Matrix diag(std::initializer_list<double> v) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return m;
}

inline Matrix sigma(int which) {
  Matrix m(2, 2);
  switch (which) {
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: m = Matrix::Identity(2, 2); break;
  }
  return m;
}

inline double gap(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

template <typename Fn>
ErrorKind error_kind_of(Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected pls::Error");
  return ErrorKind::kIo;
}

}  // namespace pls::test
