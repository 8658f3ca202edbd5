// Copyright 2026 The fdpcnd Authors
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

#ifndef FDPCND_IO_HPP_
#define FDPCND_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fdp/report.hpp"

#ifndef FDPCND_VERSION
#define FDPCND_VERSION "0.0.0"
#endif

namespace fdp {

inline std::string library_version() { return FDPCND_VERSION; }

inline void write_text(const std::filesystem::path& path,
                       const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << content;
}

/// Every artifact opens with comment lines carrying seed, config, and
/// library version so a run is reproducible from the file alone.
inline std::string csv_header(std::uint64_t seed,
                              const std::map<std::string, std::string>& config) {
  std::ostringstream os;
  os << "# seed=" << seed << "\n# version=" << library_version() << "\n";
  for (const auto& [k, v] : config) os << "# " << k << "=" << v << "\n";
  return os.str();
}

inline std::string table_csv(
    const std::vector<std::string>& columns,
    const std::vector<std::vector<double>>& rows, std::uint64_t seed,
    const std::map<std::string, std::string>& config) {
  std::ostringstream os;
  os << csv_header(seed, config);
  for (std::size_t i = 0; i < columns.size(); ++i)
    os << (i ? "," : "") << columns[i];
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << format_double(row[i]);
    os << "\n";
  }
  return os.str();
}

inline std::string table_json(
    const std::vector<std::string>& columns,
    const std::vector<std::vector<double>>& rows, std::uint64_t seed,
    const std::map<std::string, std::string>& config) {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["version"] = library_version();
  j["config"] = config;
  j["columns"] = columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json jr = nlohmann::ordered_json::array();
    for (double v : row) jr.push_back(format_double(v));
    j["rows"].push_back(jr);
  }
  return j.dump(2) + "\n";
}

inline std::string report_json(const TestReport& report) {
  nlohmann::ordered_json j = report.to_json();
  j["version"] = library_version();
  return j.dump(2) + "\n";
}

}  // namespace fdp

#endif  // FDPCND_IO_HPP_
