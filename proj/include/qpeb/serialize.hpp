// Copyright 2026 The qpeb developers
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

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qpeb/channels.hpp"
#include "qpeb/types.hpp"

namespace qpeb {

// Channel interchange format (JSON):
//   format_version  "1"
//   d               qudit dimension
//   representation  "kraus" | "choi" | "stinespring"
//   data            kraus: data[α][row][col] = [re, im]
//                   choi: data[row][col] over the A-major flattened index
//                   stinespring: data[row][col] of V, output-major rows
//   env_dim         stinespring only
//   metadata        free-form object, preserved on round trip
// Complex entries are [re, im] number pairs; writing uses the shortest
// round-trip decimal representation, so write→read is bit-exact.

struct ChannelFile {
  std::string format_version = "1";
  Index d = 0;
  std::string representation;  // "kraus" | "choi" | "stinespring"
  std::vector<Matrix> kraus_data;
  Matrix matrix_data;  // choi or stinespring payload
  Index env_dim = 0;   // stinespring only
  nlohmann::json metadata = nlohmann::json::object();
};

ChannelFile to_channel_file(const KrausSet& kraus);
ChannelFile to_channel_file(const ChoiMatrix& choi);
ChannelFile to_channel_file(const StinespringIsometry& v);

/// Validates and converts the payload to a Kraus representation
/// (choi payloads via canonical extraction, stinespring via block reads).
KrausSet file_to_kraus(const ChannelFile& file, double tol = kChannelTol);

/// Validates and converts the payload to a Choi matrix.
ChoiMatrix file_to_choi(const ChannelFile& file, double tol = kChannelTol);

/// Raw Kraus payload without CPTP validation, for diagnostic verification.
/// Choi and stinespring payloads are returned as their raw matrices too.
std::vector<Matrix> file_raw_operators(const ChannelFile& file);

/// Rows of [re, im] pairs.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, const std::string& field);

nlohmann::json channel_file_to_json(const ChannelFile& file);

/// Parses a ChannelFile; malformed input is rejected with a message naming
/// the first invalid field.
ChannelFile channel_file_from_json(const nlohmann::json& j);

ChannelFile load_channel_file(const std::string& path);
void save_channel_file(const ChannelFile& file, const std::string& path);

}  // namespace qpeb
