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

// Projections of Hermitian d^2 x d^2 matrices onto the positive cone (CP),
// the trace-preserving affine plane (TP), trace-one states (CP1) and their
// intersection CPTP.
//
// Every iterative method except the dual ascent only ever applies Frobenius
// projections onto convex supersets of CPTP, so each iterate is at least as
// close to every physical Choi matrix as the starting point.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pls/channel_model.hpp"
#include "pls/estimators.hpp"
#include "pls/linalg.hpp"

namespace pls {

enum class ProjectionMethod { kAP, kDykstra, kOneHIP, kPureHIP, kHIPSwitch, kDual };

std::string_view to_string(ProjectionMethod m);
ProjectionMethod projection_method_from_string(std::string_view name);
const std::vector<ProjectionMethod>& all_projection_methods();

/// Closed half-space {X : <normal, X> >= offset} with a unit-Frobenius
/// Hermitian normal.
struct HalfSpace {
  Matrix normal;
  double offset = 0.0;

  /// <normal, x> - offset; nonnegative inside.
  double slack(const Matrix& x) const;
};

struct DualOptions {
  double gradient_tolerance = 1e-8;
  int max_iterations = 2000;
};

struct ProjectionConfig {
  /// Stop once lambda_min of the TP iterate is >= -epsilon.
  double epsilon = 1e-7;
  int ap_steps = 6;
  int hip_steps = 30;
  int max_halfspaces = 30;
  int max_outer_iterations = 5000;
  /// Dykstra additionally waits for successive TP iterates to move less
  /// than this (Frobenius); it then approximates the true projection.
  double dykstra_step_tolerance = 1e-10;
  DualOptions dual;
  /// Skip the CP1 step in pls_pipeline and project the LS estimate directly.
  bool direct = false;
  /// Called with every TP iterate (AP, HIP and Dykstra iterations).
  std::function<void(const Matrix&)> observer;
};

enum class IterationMode { kAP, kHIP, kDykstra, kDual };
std::string_view to_string(IterationMode m);

struct IterationRecord {
  int iteration = 0;
  IterationMode mode = IterationMode::kAP;
  double lambda_min = 0.0;
  int cumulative_proj_cp_calls = 0;
};

struct ProjectionReport {
  ProjectionMethod method = ProjectionMethod::kHIPSwitch;
  int iterations = 0;
  int proj_cp_calls = 0;
  std::vector<double> lambda_min_trace;
  std::vector<IterationRecord> rows;
  /// Weight of the maximally mixed state added by the finalisation.
  double mixing_p = 0.0;
  /// lambda_min of the iterate handed to the finalisation.
  double final_lambda_min = 0.0;
  bool converged = true;
  int mode_switches = 0;
  int dropped_halfspaces = 0;
  /// Dual ascent only.
  double dual_gradient_norm = 0.0;

  /// Row per iteration:
  ///   method,iteration,mode,lambda_min,cum_projcp_calls
  void write_trace(std::ostream& os, bool header = true) const;
};

/// X + (1/d) 1 (x) ((1/d) 1 - Tr_s X).
Matrix proj_tp(const Matrix& x);

/// Linear part of proj_tp: X - (1/d) 1 (x) Tr_s X.
Matrix proj_trace_annihilating(const Matrix& x);

/// sum_i max(0, xi_i) |x_i><x_i|. Throws kInvalidInput for non-Hermitian X.
Matrix proj_cp(const Matrix& x);

/// Same, reusing an eigendecomposition of the input.
Matrix proj_cp(const Eigensystem& eig);

/// Thresholded projection on trace-one PSD matrices. Eigenvalues <= tau are
/// zeroed and the others shifted up by tau; the spectrum is then brought to
/// unit trace either by the water-filling shift x0 (kept mass >= 1) or by
/// restoring the largest discarded eigenvalues, the last one partially.
/// tau = 0 gives the Frobenius projection onto trace-one PSD matrices.
Matrix proj_cp1_thresholded(const Matrix& x, double tau);

/// Spectral core of proj_cp1_thresholded on ascending eigenvalues.
RealVector threshold_spectrum(const RealVector& ascending, double tau);

/// Projection onto TP intersected with the active hyperplanes, keeping a
/// half-space only if the joint Lagrange coefficients stay nonnegative, which
/// certifies that the hyperplane and half-space projections coincide.
/// `halfspaces` is ordered newest first; the returned list keeps that order.
struct HipInnerResult {
  std::vector<HalfSpace> active;
  Matrix point;
  int dropped_singular = 0;
};
HipInnerResult hip_inner(const std::vector<HalfSpace>& halfspaces, const Matrix& phi);

/// (1 - p) Phi' + p 1/d^2 with p = |l| d^2 / (1 + |l| d^2) for
/// l = lambda_min(Phi') < 0, else p = 0. Refuses lambda_min < -0.1 unless
/// `force` is set.
struct Finalized {
  Matrix choi;
  double p = 0.0;
  double lambda_min = 0.0;
};
Finalized depolarizing_finalize(const Matrix& tp_matrix, bool force = false);

struct ProjectionResult {
  ChoiMatrix choi;
  ProjectionReport report;
  /// The TP iterate before finalisation (dual: proj_tp of the dual point).
  Matrix unfinalized;
};

ProjectionResult project_to_cptp(const Matrix& start, ProjectionMethod method,
                                 const ProjectionConfig& cfg = {});

/// Dual ascent point Phi_rel(nu) = proj_cp(X - (1/2) 1 (x) nu).
Matrix dual_relaxed_point(const Matrix& x, const Matrix& nu);

struct PlsResult {
  ChoiMatrix estimate;
  Matrix cp1;
  double tau = 0.0;
  int cp1_rank = 0;
  ProjectionReport report;
};

/// CP1 thresholded at tau = max(0, -lambda_min(LS)), then project_to_cptp.
/// With cfg.direct the LS estimate goes straight to project_to_cptp.
PlsResult pls_pipeline(const LsEstimate& ls, ProjectionMethod method = ProjectionMethod::kHIPSwitch,
                       const ProjectionConfig& cfg = {});

}  // namespace pls
