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

#include "mos/dataset_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "mos/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "dataset format is little-endian; add byte swapping for this platform");

namespace mos {

namespace {

void put_f64(std::ofstream& out, double v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

double get_f64(std::ifstream& in) {
  double v = 0.0;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  return v;
}

}  // namespace

void write_dataset(const std::filesystem::path& path, const DatasetHeader& header,
                   std::span<const Sample> samples) {
  if (header.count != samples.size())
    throw config_error("write_dataset: header count does not match sample count");

  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("write_dataset: cannot open " + path.string());

  out << "MOSDATA v1, " << header.num_antennas << ", " << header.num_snapshots << ", "
      << header.max_order << ", " << header.count << "\n";

  for (const Sample& s : samples) {
    if (s.snapshots.rows() != header.num_antennas || s.snapshots.cols() != header.num_snapshots)
      throw config_error("write_dataset: sample shape does not match header");
    if (s.label < 0 || s.label > header.max_order)
      throw config_error("write_dataset: sample label outside [0, Lmax]");
    for (int t = 0; t < header.num_snapshots; ++t) {
      for (const cplx& v : s.snapshots.column(t)) {
        put_f64(out, v.real());
        put_f64(out, v.imag());
      }
    }
    const auto label = static_cast<unsigned char>(s.label);
    out.write(reinterpret_cast<const char*>(&label), 1);
  }
  if (!out) throw io_error("write_dataset: write failed for " + path.string());
}

std::vector<Sample> read_dataset(const std::filesystem::path& path, DatasetHeader* header_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("read_dataset: cannot open " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw io_error("read_dataset: missing header line");

  DatasetHeader header;
  {
    std::istringstream hs(line);
    std::string magic, version;
    char comma = 0;
    hs >> magic >> version;
    if (magic != "MOSDATA" || version != "v1,")
      throw io_error("read_dataset: bad magic in " + path.string());
    long long count = -1;
    hs >> header.num_antennas >> comma >> header.num_snapshots >> comma >> header.max_order >>
        comma >> count;
    if (!hs || header.num_antennas < 1 || header.num_snapshots < 1 || header.max_order < 0 ||
        count < 0)
      throw io_error("read_dataset: malformed header: " + line);
    header.count = static_cast<std::size_t>(count);
  }

  std::vector<Sample> samples(header.count);
  for (Sample& s : samples) {
    s.snapshots = CMat(header.num_antennas, header.num_snapshots);
    for (int t = 0; t < header.num_snapshots; ++t) {
      for (cplx& v : s.snapshots.column(t)) {
        const double re = get_f64(in);
        const double im = get_f64(in);
        v = {re, im};
      }
    }
    unsigned char label = 0;
    in.read(reinterpret_cast<char*>(&label), 1);
    if (!in) throw io_error("read_dataset: truncated file " + path.string());
    if (label > header.max_order)
      throw io_error("read_dataset: label byte exceeds Lmax in " + path.string());
    s.label = label;
  }
  if (header_out) *header_out = header;
  return samples;
}

}  // namespace mos
