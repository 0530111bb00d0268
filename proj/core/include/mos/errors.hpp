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

#include <stdexcept>

namespace mos {

/// Invalid configuration (bad dimensions, invalid parameter ranges).
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input data (non-Hermitian covariance, NaNs, ...).
struct data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File IO and (de)serialization failures.
struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numerical failure (iteration budget exhausted, divergence).
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// API misuse detectable at runtime (shape or kind mismatch, stale cache).
struct contract_error : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace mos
