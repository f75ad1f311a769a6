// Copyright 2026 The uwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UWIT_STATE_IO_HPP
#define UWIT_STATE_IO_HPP

// State files are JSON objects
//   { "dim": 4, "re": [16 numbers], "im": [16 numbers] }
// with entries in row-major order over the basis |HH>, |HV>, |VH>, |VV>.

#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "uwit/matrix.hpp"
#include "uwit/states.hpp"

namespace uwit {

/// Malformed or unreadable state file.
class StateFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline ComplexMatrix state_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw StateFormatError("state file: top level must be a JSON object");
  for (const char* key : {"dim", "re", "im"})
    if (!j.contains(key)) throw StateFormatError(std::string("state file: missing key \"") + key + "\"");
  if (!j["dim"].is_number_integer()) throw StateFormatError("state file: \"dim\" must be an integer");
  const auto dim = j["dim"].get<long long>();
  if (dim != 4) throw StateFormatError("state file: \"dim\" must be 4, got " + std::to_string(dim));
  const std::size_t count = 16;
  auto read_array = [&](const char* key) {
    const auto& a = j[key];
    if (!a.is_array() || a.size() != count) {
      throw StateFormatError(std::string("state file: \"") + key + "\" must be an array of 16 numbers");
    }
    std::vector<double> out;
    out.reserve(count);
    for (const auto& v : a) {
      if (!v.is_number()) throw StateFormatError(std::string("state file: non-numeric entry in \"") + key + "\"");
      out.push_back(v.get<double>());
    }
    return out;
  };
  const auto re = read_array("re");
  const auto im = read_array("im");
  std::vector<complex> entries(count);
  for (std::size_t k = 0; k < count; ++k) entries[k] = {re[k], im[k]};
  return ComplexMatrix(4, std::move(entries));
}

inline nlohmann::json state_to_json(const ComplexMatrix& m) {
  if (m.dim() != 4) throw std::invalid_argument("state_to_json: expected a 4x4 matrix");
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (const auto& z : m.entries()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  return {{"dim", 4}, {"re", re}, {"im", im}};
}

inline ComplexMatrix read_state(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw StateFormatError(std::string("state file: malformed JSON (") + e.what() + ")");
  }
  return state_from_json(j);
}

inline ComplexMatrix read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StateFormatError("state file: cannot open '" + path + "'");
  return read_state(in);
}

inline void write_state(std::ostream& out, const ComplexMatrix& m) { out << state_to_json(m).dump(2) << '\n'; }

}  // namespace uwit

#endif  // UWIT_STATE_IO_HPP
