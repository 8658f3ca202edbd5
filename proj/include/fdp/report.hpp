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

#ifndef FDPCND_REPORT_HPP_
#define FDPCND_REPORT_HPP_

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fdp {

/// Stable decimal rendering of a double; used everywhere a number enters a
/// serialized artifact so reruns are byte-identical.
inline std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

struct TestEntry {
  std::string name;
  bool pass = false;
  double statistic = 0.0;
  double threshold = 0.0;
  std::string details;
};

struct TestReport {
  std::vector<TestEntry> entries;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> config;

  bool all_pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }

  void add(std::string name, bool pass, double statistic, double threshold,
           std::string details = "") {
    entries.push_back({std::move(name), pass, statistic, threshold,
                       std::move(details)});
  }

  void merge(const TestReport& other, const std::string& prefix = "") {
    for (const auto& e : other.entries) {
      TestEntry copy = e;
      copy.name = prefix + copy.name;
      entries.push_back(std::move(copy));
    }
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["seed"] = seed;
    j["config"] = config;
    j["all_pass"] = all_pass();
    j["entries"] = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
      nlohmann::ordered_json je;
      je["name"] = e.name;
      je["pass"] = e.pass;
      je["statistic"] = format_double(e.statistic);
      je["threshold"] = format_double(e.threshold);
      je["details"] = e.details;
      j["entries"].push_back(je);
    }
    return j;
  }
};

}  // namespace fdp

#endif  // FDPCND_REPORT_HPP_
