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

#include "qpeb/serialize.hpp"

#include <fstream>
#include <utility>

#include "qpeb/errors.hpp"

namespace qpeb {

namespace {

using nlohmann::json;

json complex_to_json(const Complex& z) {
  return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number())
    throw InvalidArgument("channel file: field '" + field +
                         "' must be a [re, im] number pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty())
    throw InvalidArgument("channel file: field '" + field +
                         "' must be a nonempty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty())
    throw InvalidArgument("channel file: field '" + field +
                         "' rows must be nonempty arrays");
  const std::size_t cols = j[0].size();
  Matrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw InvalidArgument("channel file: field '" + field +
                           "' has ragged rows");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Index>(r), static_cast<Index>(c)) =
          complex_from_json(j[r][c], field);
  }
  return m;
}

ChannelFile to_channel_file(const KrausSet& kraus) {
  ChannelFile file;
  file.d = kraus.d_in();
  file.representation = "kraus";
  file.kraus_data = kraus.operators();
  return file;
}

ChannelFile to_channel_file(const ChoiMatrix& choi) {
  ChannelFile file;
  file.d = choi.d();
  file.representation = "choi";
  file.matrix_data = choi.matrix();
  return file;
}

ChannelFile to_channel_file(const StinespringIsometry& v) {
  ChannelFile file;
  file.d = v.d_in();
  file.representation = "stinespring";
  file.matrix_data = v.matrix();
  file.env_dim = v.env_dim();
  return file;
}

KrausSet file_to_kraus(const ChannelFile& file, double tol) {
  if (file.representation == "kraus") return KrausSet(file.kraus_data, tol);
  if (file.representation == "choi")
    return choi_to_kraus(ChoiMatrix(file.matrix_data, tol));
  if (file.representation == "stinespring") {
    const Index m = file.env_dim;
    if (m < 1 || file.matrix_data.rows() % m != 0)
      throw InvalidArgument("channel file: env_dim inconsistent with data");
    const Index d_out = file.matrix_data.rows() / m;
    std::vector<Matrix> ops(m, Matrix(d_out, file.matrix_data.cols()));
    for (Index alpha = 0; alpha < m; ++alpha)
      for (Index row = 0; row < d_out; ++row)
        ops[alpha].row(row) = file.matrix_data.row(row * m + alpha);
    return KrausSet(std::move(ops), tol);
  }
  throw InvalidArgument("channel file: unknown representation '" +
                        file.representation + "'");
}

ChoiMatrix file_to_choi(const ChannelFile& file, double tol) {
  if (file.representation == "choi") return ChoiMatrix(file.matrix_data, tol);
  return kraus_to_choi(file_to_kraus(file, tol));
}

std::vector<Matrix> file_raw_operators(const ChannelFile& file) {
  if (file.representation == "kraus") return file.kraus_data;
  return {file.matrix_data};
}

json channel_file_to_json(const ChannelFile& file) {
  json out;
  out["format_version"] = file.format_version;
  out["d"] = file.d;
  out["representation"] = file.representation;
  if (file.representation == "kraus") {
    json data = json::array();
    for (const Matrix& op : file.kraus_data)
      data.push_back(matrix_to_json(op));
    out["data"] = std::move(data);
  } else {
    out["data"] = matrix_to_json(file.matrix_data);
  }
  if (file.representation == "stinespring") out["env_dim"] = file.env_dim;
  out["metadata"] = file.metadata;
  return out;
}

ChannelFile channel_file_from_json(const json& j) {
  if (!j.is_object())
    throw InvalidArgument("channel file: top level must be an object");
  ChannelFile file;

  if (!j.contains("format_version") || !j["format_version"].is_string())
    throw InvalidArgument("channel file: field 'format_version' missing or "
                          "not a string");
  file.format_version = j["format_version"].get<std::string>();
  if (file.format_version != "1")
    throw InvalidArgument("channel file: unsupported format_version '" +
                          file.format_version + "'");

  if (!j.contains("d") || !j["d"].is_number_integer() ||
      j["d"].get<long>() < 1)
    throw InvalidArgument(
        "channel file: field 'd' missing or not a positive integer");
  file.d = j["d"].get<Index>();

  if (!j.contains("representation") || !j["representation"].is_string())
    throw InvalidArgument(
        "channel file: field 'representation' missing or not a string");
  file.representation = j["representation"].get<std::string>();
  if (file.representation != "kraus" && file.representation != "choi" &&
      file.representation != "stinespring")
    throw InvalidArgument("channel file: representation must be one of "
                          "kraus, choi, stinespring");

  if (!j.contains("data"))
    throw InvalidArgument("channel file: field 'data' missing");

  if (file.representation == "kraus") {
    if (!j["data"].is_array() || j["data"].empty())
      throw InvalidArgument(
          "channel file: field 'data' must list >= 1 Kraus operator");
    for (std::size_t a = 0; a < j["data"].size(); ++a) {
      const Matrix op = matrix_from_json(j["data"][a], "data");
      if (op.rows() != file.d || op.cols() != file.d)
        throw InvalidArgument(
            "channel file: field 'data' operator shape disagrees with d");
      file.kraus_data.push_back(op);
    }
  } else if (file.representation == "choi") {
    file.matrix_data = matrix_from_json(j["data"], "data");
    if (file.matrix_data.rows() != file.d * file.d ||
        file.matrix_data.cols() != file.d * file.d)
      throw InvalidArgument(
          "channel file: field 'data' must be d^2 x d^2 for a choi payload");
  } else {
    file.matrix_data = matrix_from_json(j["data"], "data");
    if (!j.contains("env_dim") || !j["env_dim"].is_number_integer() ||
        j["env_dim"].get<long>() < 1)
      throw InvalidArgument(
          "channel file: field 'env_dim' missing or not a positive integer");
    file.env_dim = j["env_dim"].get<Index>();
    if (file.matrix_data.cols() != file.d ||
        file.matrix_data.rows() % file.env_dim != 0)
      throw InvalidArgument(
          "channel file: field 'data' shape disagrees with d and env_dim");
  }

  if (j.contains("metadata")) {
    if (!j["metadata"].is_object())
      throw InvalidArgument("channel file: field 'metadata' must be an object");
    file.metadata = j["metadata"];
  }
  return file;
}

ChannelFile load_channel_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open channel file: " + path);
  json parsed;
  try {
    parsed = json::parse(in);
  } catch (const json::parse_error& err) {
    throw InvalidArgument("channel file: JSON parse error: " +
                          std::string(err.what()));
  }
  return channel_file_from_json(parsed);
}

void save_channel_file(const ChannelFile& file, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write channel file: " + path);
  out << channel_file_to_json(file).dump(2) << '\n';
}

}  // namespace qpeb
