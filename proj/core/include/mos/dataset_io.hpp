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
#include <span>
#include <vector>

#include "mos/scenario.hpp"

namespace mos {

// MOSDATA v1 dataset file:
//   header line  "MOSDATA v1, M, N, Lmax, count\n"
//   per sample   2*M*N little-endian float64 snapshot entries, interleaved
//                (re, im) in column-major order, then one label byte.
// Only snapshots and labels are stored; SNR and azimuth metadata are not
// part of the format.

struct DatasetHeader {
  int num_antennas = 0;
  int num_snapshots = 0;
  int max_order = 0;
  std::size_t count = 0;
};

void write_dataset(const std::filesystem::path& path, const DatasetHeader& header,
                   std::span<const Sample> samples);

/// Reads a dataset dump back. Loaded samples carry snapshots and label only.
std::vector<Sample> read_dataset(const std::filesystem::path& path, DatasetHeader* header = nullptr);

}  // namespace mos
