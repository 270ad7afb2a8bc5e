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

#include <algorithm>
#include <numeric>
#include <sstream>

#include "helpers.hpp"
#include "pls/estimators.hpp"
#include "pls/harness/oracles.hpp"
#include "pls/projections.hpp"

using namespace pls;
using pls::test::diag;
using pls::test::gap;

namespace {

ChoiMatrix choi_of(const ChannelSpec& spec) { return choi_from_kraus(make_channel(spec)); }

double tp_defect(const Matrix& m) {
  const int d = checked_sqrt_dim(m.rows());
  return (partial_trace(m, d, PartialTraceOver::kSystem) - identity(d) / static_cast<double>(d)).cwiseAbs().maxCoeff();
}

// Euclidean projection onto the probability simplex by sorting.
std::vector<double> simplex_projection(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.rbegin(), u.rend());
  double cum = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cum += u[j];
    const double t = (cum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  for (double& x : v) x = std::max(x - theta, 0.0);
  return v;
}

Matrix cp1_of_sample(const ChoiMatrix& truth, Scenario sc, std::int64_t shots, std::uint64_t seed) {
  const Matrix x = least_squares(sample(truth, sc, {SamplingScheme::kRandom, shots, seed})).matrix;
  return proj_cp1_thresholded(x, std::max(0.0, -min_eigenvalue(x)));
}

// Unit-norm Hermitian direction with vanishing system partial trace.
Matrix annihilating_direction(int n, std::uint64_t seed) {
  Matrix a = proj_trace_annihilating(random_hermitian(n, seed));
  return a / a.norm();
}

}  // namespace

TEST_SUITE("projections") {
  TEST_CASE("proj_tp") {
    const Matrix omega = maximally_entangled_state(2).matrix();
    CHECK(gap(proj_tp(omega), omega) < 1e-15);
    Matrix e00 = Matrix::Zero(4, 4);
    e00(0, 0) = 1.0;
    CHECK(gap(proj_tp(e00), diag({0.75, 0.25, -0.25, 0.25})) < 1e-15);
    for (std::uint64_t s = 0; s < 10; ++s) {
      const Matrix x = random_hermitian(16, s);
      const Matrix y = choi_of(ChannelSpec::random_unitary(4, s)).matrix();
      const Matrix p = proj_tp(x);
      CHECK(tp_defect(p) < 1e-13);
      CHECK(gap(proj_tp(p), p) < 1e-13);
      CHECK(gap(p, y) <= gap(x, y) + 1e-12);
      CHECK(gap(p, oracles::affine_tp_projection(x)) < 1e-10);
    }
  }

  TEST_CASE("proj_cp") {
    const Matrix psd = choi_of(ChannelSpec::noisy_qft(2, 0.3)).matrix();
    CHECK(gap(proj_cp(psd), psd) < 1e-12);
    const Matrix u = haar_unitary(3, 4);
    const Matrix x = u * diag({0.9, 0.4, -0.3}) * u.adjoint();
    CHECK(gap(proj_cp(x), u * diag({0.9, 0.4, 0.0}) * u.adjoint()) < 1e-12);
    for (std::uint64_t s = 0; s < 5; ++s) {
      const Matrix h = random_hermitian(4, 30 + s);
      CHECK(gap(proj_cp(h), oracles::psd_projection_descent(h)) < 1e-6);
    }
    Matrix skew = Matrix::Zero(2, 2);
    skew(0, 1) = 1.0;
    CHECK(test::error_kind_of([&] { proj_cp(skew); }) == ErrorKind::kInvalidInput);
  }

  TEST_CASE("threshold_spectrum") {
    RealVector ev(3);
    ev << -0.5, 0.3, 1.2;
    const RealVector mu = threshold_spectrum(ev, 0.5);
    CHECK(mu(0) == 0.0);
    CHECK(mu(1) == 0.0);
    CHECK(mu(2) == doctest::Approx(1.0));
    CHECK(test::error_kind_of([&] { threshold_spectrum(ev, -0.1); }) == ErrorKind::kDomain);

    // tau = 0 is the Euclidean simplex projection.
    for (std::uint64_t s = 0; s < 20; ++s) {
      RealVector v = hermitian_eigenvalues(random_hermitian(6, 60 + s)) / 3.0;
      const auto ref = simplex_projection(std::vector<double>(v.data(), v.data() + v.size()));
      const RealVector got = threshold_spectrum(v, 0.0);
      for (Eigen::Index i = 0; i < v.size(); ++i) CHECK(got(i) == doctest::Approx(ref[static_cast<std::size_t>(i)]));
    }
  }

  TEST_CASE("proj_cp1_thresholded") {
    const Matrix rho = choi_of(ChannelSpec::noisy_qft(2, 0.25)).matrix();
    CHECK(gap(proj_cp1_thresholded(rho, 0.0), rho) < 1e-12);

    const ChoiMatrix truth = choi_of(ChannelSpec::random_unitary(2, 5));
    const Matrix ls = least_squares(sample(truth, Scenario::kPauliAncilla, {SamplingScheme::kRandom, 900, 6})).matrix;
    const double tau = std::max(0.0, -min_eigenvalue(ls));
    const Matrix cp1 = proj_cp1_thresholded(ls, tau);
    CHECK(cp1.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(min_eigenvalue(cp1) >= -1e-12);
    const RealVector ev = hermitian_eigenvalues(ls);
    const int kept = static_cast<int>((ev.array() > tau).count());
    const RealVector out = hermitian_eigenvalues(cp1);
    CHECK(static_cast<int>((out.array() > 1e-12).count()) <= kept);

    for (std::uint64_t s = 0; s < 5; ++s) {
      Matrix x = random_hermitian(4, 80 + s);
      x -= ((x.trace().real() - 1.0) / 4.0) * identity(4);
      CHECK(gap(proj_cp1_thresholded(x, 0.0), oracles::state_projection_descent(x)) < 1e-6);
    }
    CHECK(test::error_kind_of([] { proj_cp1_thresholded(identity(4), 0.0); }) == ErrorKind::kConstraintViolation);
    CHECK(test::error_kind_of([&] { proj_cp1_thresholded(rho, -1.0); }) == ErrorKind::kDomain);
  }

  TEST_CASE("hip_inner") {
    const Matrix phi = proj_tp(random_hermitian(4, 90));
    const Matrix a1 = annihilating_direction(4, 91);

    // One violated half-space: the result is the hyperplane projection.
    const HalfSpace h1{a1, frobenius_inner(a1, phi) + 1.0};
    const HipInnerResult one = hip_inner({h1}, phi);
    REQUIRE(one.active.size() == 1);
    CHECK(gap(one.point, phi + a1) < 1e-12);
    CHECK(std::abs(h1.slack(one.point)) < 1e-12);
    CHECK(tp_defect(one.point) < 1e-12);

    // Already inside: nothing is active and phi is returned.
    const HalfSpace inside{a1, frobenius_inner(a1, phi) - 1.0};
    const HipInnerResult none = hip_inner({inside}, phi);
    CHECK(none.active.empty());
    CHECK(gap(none.point, phi) < 1e-15);

    // The joint hyperplane projection would need a negative coefficient for
    // the second half-space, so it is excluded.
    Matrix a2 = a1 + 0.5 * annihilating_direction(4, 92);
    a2 /= a2.norm();
    const HalfSpace h2{a2, frobenius_inner(a2, phi) - 5.0};
    const HipInnerResult two = hip_inner({h1, h2}, phi);
    CHECK(two.active.size() == 1);
    CHECK(h1.slack(two.point) >= -1e-12);
    CHECK(h2.slack(two.point) >= -1e-12);
  }

  TEST_CASE("depolarizing_finalize") {
    const Matrix omega = maximally_entangled_state(4).matrix();
    const Finalized same = depolarizing_finalize(omega);
    CHECK(same.p < 1e-14);
    CHECK(gap(same.choi, omega) < 1e-15);

    Matrix z = Matrix::Zero(4, 4);
    z(0, 0) = 1.0;
    z(1, 1) = -1.0;
    const Matrix y = identity(16) / 16.0 + (1.0 / 16.0 + 1e-7) * kron(z, identity(4));
    const Finalized f = depolarizing_finalize(y);
    CHECK(f.lambda_min == doctest::Approx(-1e-7).epsilon(1e-6));
    CHECK(f.p == doctest::Approx(16e-7 / (1.0 + 16e-7)).epsilon(1e-6));
    CHECK(min_eigenvalue(f.choi) >= -1e-15);
    CHECK(tp_defect(f.choi) < 1e-15);
    CHECK(distance(f.choi, y, Metric::kTrace) <= 2.0 * f.p + 1e-15);

    const Matrix bad = identity(16) / 16.0 + 0.5 * kron(z, identity(4));
    CHECK(test::error_kind_of([&] { depolarizing_finalize(bad); }) == ErrorKind::kNotConverged);
    CHECK_NOTHROW(depolarizing_finalize(bad, true));
    CHECK(test::error_kind_of([] { depolarizing_finalize(identity(4)); }) == ErrorKind::kConstraintViolation);
  }

  TEST_CASE("every method returns a physical channel") {
    for (int d : {2, 4}) {
      const ChoiMatrix truth = choi_of(ChannelSpec::random_unitary(d, 11));
      const Matrix cp1 = cp1_of_sample(truth, Scenario::kPauliAncilla, 2000, 12);
      for (ProjectionMethod m : all_projection_methods()) {
        CAPTURE(to_string(m));
        const ProjectionResult r = project_to_cptp(cp1, m);
        CHECK(r.choi.is_physical());
        CHECK(tp_defect(r.choi.matrix()) < 1e-9);
        CHECK(r.report.converged);
        CHECK(r.report.rows.size() >= 1);
        // Contraction towards every CPTP point, in particular the truth.
        CHECK(gap(r.unfinalized, truth.matrix()) <= gap(cp1, truth.matrix()) + 1e-10);
      }
    }
  }

  TEST_CASE("already physical input is returned unchanged") {
    const Matrix phi = choi_of(ChannelSpec::noisy_qft(2, 0.25)).matrix();
    for (ProjectionMethod m : {ProjectionMethod::kAP, ProjectionMethod::kHIPSwitch, ProjectionMethod::kDykstra}) {
      const ProjectionResult r = project_to_cptp(phi, m);
      CHECK(r.report.iterations <= (m == ProjectionMethod::kDykstra ? 1 : 0));
      CHECK(r.report.mixing_p < 1e-14);
      CHECK(gap(r.choi.matrix(), phi) < 1e-12);
    }
  }

  TEST_CASE("dual ascent") {
    const Matrix x = random_hermitian(4, 3);
    CHECK(gap(dual_relaxed_point(x, Matrix::Zero(2, 2)), proj_cp(x)) < 1e-15);

    const ChoiMatrix truth = choi_of(ChannelSpec::mixed_unitary(4, 2, haar_unitary(4, 13)));
    const Matrix cp1 = cp1_of_sample(truth, Scenario::kPauliAncilla, 3000, 14);
    ProjectionConfig cfg;
    cfg.epsilon = 1e-13;
    cfg.max_outer_iterations = 100000;
    cfg.dykstra_step_tolerance = 1e-12;
    const ProjectionResult dual = project_to_cptp(cp1, ProjectionMethod::kDual, cfg);
    const ProjectionResult dyk = project_to_cptp(cp1, ProjectionMethod::kDykstra, cfg);
    CHECK(dual.report.dual_gradient_norm <= 1e-8);
    CHECK(gap(dual.choi.matrix(), dyk.choi.matrix()) < 1e-6);
  }

  TEST_CASE("iteration cap") {
    const ChoiMatrix truth = choi_of(ChannelSpec::unitary_channel(qft_unitary(4)));
    const Matrix cp1 = cp1_of_sample(truth, Scenario::kPauliAncilla, 5000, 15);
    ProjectionConfig cfg;
    cfg.max_outer_iterations = 2;
    cfg.epsilon = 1e-14;
    const ProjectionResult r = project_to_cptp(cp1, ProjectionMethod::kAP, cfg);
    CHECK_FALSE(r.report.converged);
    CHECK(r.report.iterations == 2);
    CHECK(r.choi.is_physical());
    CHECK(r.report.rows.front().iteration == 0);
  }

  TEST_CASE("configuration and reporting") {
    for (ProjectionMethod m : all_projection_methods()) CHECK(projection_method_from_string(to_string(m)) == m);
    CHECK(projection_method_from_string("hipswitch") == ProjectionMethod::kHIPSwitch);
    CHECK(test::error_kind_of([] { projection_method_from_string("newton"); }) == ErrorKind::kConfig);
    ProjectionConfig bad;
    bad.epsilon = -1.0;
    CHECK(test::error_kind_of([&] { project_to_cptp(identity(4) / 4.0, ProjectionMethod::kAP, bad); }) ==
          ErrorKind::kConfig);

    const ChoiMatrix truth = choi_of(ChannelSpec::random_unitary(2, 20));
    const ProjectionResult r = project_to_cptp(cp1_of_sample(truth, Scenario::kPauliAncilla, 900, 21),
                                               ProjectionMethod::kHIPSwitch);
    std::ostringstream os;
    r.report.write_trace(os);
    const std::string s = os.str();
    CHECK(s.rfind("method,iteration,mode,lambda_min,cum_projcp_calls\nHIPswitch,0,", 0) == 0);
    CHECK(r.report.lambda_min_trace.size() == r.report.rows.size());
    CHECK(r.report.rows.back().cumulative_proj_cp_calls == r.report.proj_cp_calls);
  }

  TEST_CASE("pls_pipeline") {
    const ChoiMatrix phys = choi_of(ChannelSpec::noisy_qft(2, 0.25));
    LsEstimate ls;
    ls.matrix = phys.matrix();
    ls.dim = 2;
    const PlsResult same = pls_pipeline(ls);
    CHECK(gap(same.estimate.matrix(), phys.matrix()) < 1e-10);

    const ChoiMatrix qft = choi_of(ChannelSpec::unitary_channel(qft_unitary(8)));
    const LsEstimate big = least_squares(sample(qft, Scenario::kPauliAncilla, {SamplingScheme::kRandom, 1000000, 22}));
    const PlsResult pls = pls_pipeline(big);
    CHECK(distance(pls.estimate.matrix(), qft.matrix(), Metric::kTrace) <
          distance(big.matrix, qft.matrix(), Metric::kTrace));
    CHECK(pls.tau == doctest::Approx(-min_eigenvalue(big.matrix)));

    ProjectionConfig direct;
    direct.direct = true;
    const LsEstimate small = least_squares(sample(qft, Scenario::kPauliAncilla, {SamplingScheme::kRandom, 200000, 23}));
    const PlsResult d = pls_pipeline(small, ProjectionMethod::kDykstra, direct);
    CHECK(d.estimate.is_physical());
  }
}
