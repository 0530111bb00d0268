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

#include <cstdint>
#include <optional>
#include <vector>

#include "mos/complex_matrix.hpp"
#include "mos/errors.hpp"
#include "mos/rng.hpp"

namespace mos {

/// Per-sample SNR distribution. SNR is the dimensionless linear ratio
/// 1/sigma_n^2 (source power is fixed at 1).
struct SnrLaw {
  enum class Kind { UniformLinear, UniformDb, Fixed };

  Kind kind = Kind::UniformDb;
  double lo = 1.0;     // linear-scale bounds (lo == hi == value for Fixed)
  double hi = 1000.0;

  static SnrLaw uniform_linear(double lo, double hi) { return make(Kind::UniformLinear, lo, hi); }
  /// Uniform on the dB scale between linear endpoints lo and hi.
  static SnrLaw uniform_db(double lo, double hi) { return make(Kind::UniformDb, lo, hi); }
  static SnrLaw fixed(double value) { return make(Kind::Fixed, value, value); }
  static SnrLaw fixed_db(double db) { return fixed(std::pow(10.0, db / 10.0)); }

  double draw(Rng& rng) const {
    switch (kind) {
      case Kind::UniformLinear:
        return rng.uniform(lo, hi);
      case Kind::UniformDb:
        return std::pow(10.0, rng.uniform(std::log10(lo), std::log10(hi)));
      case Kind::Fixed:
        return lo;
    }
    throw config_error("invalid SNR law kind");
  }

  void validate() const {
    if (!(lo > 0.0) || !(hi > 0.0) || !(lo <= hi))
      throw config_error("SNR bounds must be strictly positive with lo <= hi");
  }

 private:
  static SnrLaw make(Kind kind, double lo, double hi) {
    SnrLaw law{kind, lo, hi};
    law.validate();
    return law;
  }
};

/// Data-generating model: array geometry, snapshot count, class range, SNR
/// law and optional calibration matrix applied to the array manifold.
struct ScenarioConfig {
  int num_antennas = 9;            // M
  double radius_over_lambda = 1.0; // R / lambda
  int num_snapshots = 10;          // N per sample
  int max_order = 3;               // Lmax; classes are 0 .. Lmax
  SnrLaw snr = SnrLaw::uniform_db(1.0, 1000.0);
  std::optional<CMat> calibration; // M x M matrix multiplying the manifold
  std::uint64_t seed = 0;

  int num_classes() const noexcept { return max_order + 1; }

  void validate() const {
    if (num_antennas < 1) throw config_error("num_antennas must be >= 1");
    if (!(radius_over_lambda > 0.0)) throw config_error("radius_over_lambda must be positive");
    if (num_snapshots < 1) throw config_error("num_snapshots must be >= 1");
    if (max_order < 0) throw config_error("max_order must be >= 0");
    // subspace methods need at least one noise eigenvalue
    if (max_order >= num_antennas) throw config_error("max_order must be < num_antennas");
    snr.validate();
    if (calibration &&
        (calibration->rows() != num_antennas || calibration->cols() != num_antennas))
      throw config_error("calibration matrix must be square with side num_antennas");
  }
};

/// One labeled instance: a block of N received snapshots plus the model
/// order that generated it. snr and azimuths are generator-side metadata;
/// samples read back from a dataset file carry none (snr 0, azimuths empty).
struct Sample {
  CMat snapshots;                // M x N, column t is y(t)
  int label = 0;                 // true model order, in [0, Lmax]
  double snr = 0.0;
  std::vector<double> azimuths;  // radians, length == label for drawn samples
};

}  // namespace mos
