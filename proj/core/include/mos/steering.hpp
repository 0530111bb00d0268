// SPDX-License-Identifier: Apache-2.0
//
// mos - model order selection for antenna array snapshots
// Copyright (C) 2026 The mos authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <span>
#include <vector>

#include "mos/complex_matrix.hpp"
#include "mos/scenario.hpp"

namespace mos {

/// Response of a uniform circular array (M omnidirectional antennas on a
/// circle of radius R) to a unit planar wavefront from azimuth theta:
///
///   a_m = exp(-j 2 pi (R/lambda) cos(theta - 2 pi m / M)),  m = 0 .. M-1.
///
/// Elevation dependence is neglected; sources lie in the array plane.
std::vector<cplx> steering_vector(double azimuth, int num_antennas, double radius_over_lambda);

/// M x L matrix whose column l is the steering vector for azimuths[l].
/// An empty azimuth list yields an M x 0 matrix (pure-noise scenario).
CMat steering_matrix(std::span<const double> azimuths, const ScenarioConfig& cfg);

/// Mutual-coupling style calibration matrix: 1 on the main diagonal,
/// off_diag on the first super- and sub-diagonals, 0 elsewhere.
CMat tridiagonal_calibration(int size, double off_diag);

/// Calibrated manifold F * A.
CMat apply_calibration(const CMat& manifold, const CMat& calibration);

}  // namespace mos
