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

#include "mos/checkpoint.hpp"

#include <bit>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mos/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "checkpoint format is little-endian; add byte swapping for this platform");

namespace mos {

namespace {

constexpr std::string_view kMagic = "MOSNET1";

void write_block(std::ofstream& out, std::span<const double> block) {
  out.write(reinterpret_cast<const char*>(block.data()),
            static_cast<std::streamsize>(block.size() * sizeof(double)));
}

void read_block(std::ifstream& in, std::span<double> block, const std::filesystem::path& path) {
  in.read(reinterpret_cast<char*>(block.data()),
          static_cast<std::streamsize>(block.size() * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(block.size() * sizeof(double)))
    throw io_error("load_checkpoint: truncated parameter block in " + path.string());
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> fields;
  std::string item;
  std::istringstream stream(text);
  while (std::getline(stream, item, sep)) fields.push_back(item);
  return fields;
}

long long parse_int(const std::string& text, const char* what) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw io_error(std::string("load_checkpoint: malformed ") + what + " field '" + text + "'");
  return value;
}

}  // namespace

void save_checkpoint(const MlpParams& params, const AdamState* adam,
                     const std::filesystem::path& path) {
  params.validate();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("save_checkpoint: cannot open " + path.string());

  out << kMagic << "\n";
  out << to_string(params.feature_kind) << ";";
  for (std::size_t i = 0; i < params.layer_dims.size(); ++i)
    out << (i ? "," : "") << params.layer_dims[i];
  out << ";" << params.meta.num_antennas << ";" << params.meta.num_snapshots_train << ";"
      << params.meta.max_order << ";" << params.meta.steps << ";adam=" << (adam ? 1 : 0);
  if (adam) out << ";adam_t=" << adam->step;
  out << "\n";

  for (std::size_t l = 0; l < params.layer_count(); ++l) {
    write_block(out, params.weights[l]);
    write_block(out, params.biases[l]);
  }
  if (adam) {
    for (std::size_t l = 0; l < params.layer_count(); ++l) {
      write_block(out, adam->m_weights[l]);
      write_block(out, adam->m_biases[l]);
    }
    for (std::size_t l = 0; l < params.layer_count(); ++l) {
      write_block(out, adam->v_weights[l]);
      write_block(out, adam->v_biases[l]);
    }
  }
  out.flush();
  if (!out) throw io_error("save_checkpoint: write failed for " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("load_checkpoint: cannot open " + path.string());

  std::string magic;
  if (!std::getline(in, magic) || magic != kMagic)
    throw io_error("load_checkpoint: bad magic in " + path.string());

  std::string header;
  if (!std::getline(in, header)) throw io_error("load_checkpoint: missing header line");
  const std::vector<std::string> fields = split(header, ';');
  if (fields.size() < 7) throw io_error("load_checkpoint: malformed header: " + header);

  Checkpoint ckpt;
  MlpParams& params = ckpt.params;
  params.feature_kind = feature_kind_from_string(fields[0]);
  for (const std::string& d : split(fields[1], ','))
    params.layer_dims.push_back(static_cast<int>(parse_int(d, "layer dim")));
  if (params.layer_dims.size() < 2 ||
      std::any_of(params.layer_dims.begin(), params.layer_dims.end(), [](int d) { return d < 1; }))
    throw io_error("load_checkpoint: invalid layer dims in " + path.string());
  params.meta.num_antennas = static_cast<int>(parse_int(fields[2], "antenna count"));
  params.meta.num_snapshots_train = static_cast<int>(parse_int(fields[3], "snapshot count"));
  params.meta.max_order = static_cast<int>(parse_int(fields[4], "max order"));
  params.meta.steps = static_cast<std::uint64_t>(parse_int(fields[5], "step counter"));

  bool has_adam = false;
  std::uint64_t adam_t = 0;
  for (std::size_t i = 6; i < fields.size(); ++i) {
    if (fields[i].rfind("adam=", 0) == 0)
      has_adam = parse_int(fields[i].substr(5), "adam flag") != 0;
    else if (fields[i].rfind("adam_t=", 0) == 0)
      adam_t = static_cast<std::uint64_t>(parse_int(fields[i].substr(7), "adam step"));
    else
      throw io_error("load_checkpoint: unknown header field '" + fields[i] + "'");
  }

  const std::size_t layers = params.layer_dims.size() - 1;
  params.weights.resize(layers);
  params.biases.resize(layers);
  for (std::size_t l = 0; l < layers; ++l) {
    params.weights[l].resize(static_cast<std::size_t>(params.layer_dims[l]) *
                             static_cast<std::size_t>(params.layer_dims[l + 1]));
    params.biases[l].resize(static_cast<std::size_t>(params.layer_dims[l + 1]));
    read_block(in, params.weights[l], path);
    read_block(in, params.biases[l], path);
  }
  if (has_adam) {
    AdamState state = AdamState::zeros_like(params);
    state.step = adam_t;
    for (std::size_t l = 0; l < layers; ++l) {
      read_block(in, state.m_weights[l], path);
      read_block(in, state.m_biases[l], path);
    }
    for (std::size_t l = 0; l < layers; ++l) {
      read_block(in, state.v_weights[l], path);
      read_block(in, state.v_biases[l], path);
    }
    ckpt.adam = std::move(state);
  }

  char extra = 0;
  in.read(&extra, 1);
  if (!in.eof()) throw io_error("load_checkpoint: trailing bytes in " + path.string());

  params.validate();
  return ckpt;
}

}  // namespace mos
