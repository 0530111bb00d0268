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

#include <filesystem>
#include <optional>

#include "mos/mlp.hpp"

namespace mos {

// Checkpoint file layout (bit-exact round trip):
//   "MOSNET1\n"
//   header line "<kind>;<d0,d1,...>;<M>;<N_train>;<Lmax>;<steps>;adam=<0|1>[;adam_t=<t>]\n"
//   per layer: weight matrix row-major, then bias vector, little-endian float64
//   if adam=1: all first-moment blocks in the same layer order, then all
//   second-moment blocks.

struct Checkpoint {
  MlpParams params;
  std::optional<AdamState> adam;
};

void save_checkpoint(const MlpParams& params, const AdamState* adam,
                     const std::filesystem::path& path);

Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace mos
