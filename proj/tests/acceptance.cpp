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

// Acceptance gate: runs the full criterion list and prints one line per
// criterion. Exit status 0 iff everything passes.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "fdp/suites.hpp"

int main() {
  std::uint64_t seed = 7;
  if (const char* env = std::getenv("FDP_SEED")) seed = std::strtoull(env, nullptr, 10);

  fdp::TestReport report = fdp::run_acceptance(seed);
  for (const auto& e : report.entries) {
    std::printf("%s: %s (stat=%s, threshold=%s)%s%s\n", e.name.c_str(),
                e.pass ? "PASS" : "FAIL",
                fdp::format_double(e.statistic).c_str(),
                fdp::format_double(e.threshold).c_str(),
                e.details.empty() ? "" : " ", e.details.c_str());
  }
  return report.all_pass() ? 0 : 1;
}
