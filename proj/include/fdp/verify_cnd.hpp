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

#ifndef FDPCND_VERIFY_CND_HPP_
#define FDPCND_VERIFY_CND_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "fdp/cnd.hpp"
#include "fdp/report.hpp"
#include "fdp/tradeoff.hpp"
#include "fdp/verify.hpp"

namespace fdp {

/// Checks the four defining properties of a canonical noise distribution
/// against a target tradeoff function:
///   1. T(N, N+m) dominates f for shifts m in [0,1] (Monte Carlo, banded).
///   2. T(N, N+1) equals f (Monte Carlo, two-sided within band).
///   3. cdf identity F(F^-1(alpha) - 1) = f(alpha) (analytic grid).
///   4. cdf symmetry F(x) = 1 - F(-x) (analytic grid).
/// Failures are report entries, not errors.
inline TestReport verify_cnd(const Cnd& F, const TradeoffFunction& f,
                             const std::vector<double>& m_grid, int n_mc,
                             std::uint64_t seed = 7, double level = 0.01,
                             double tol_identity = 1e-8) {
  if (n_mc < 10000)
    throw std::invalid_argument("verify_cnd: n_mc must be >= 10^4");
  TestReport report;
  report.seed = seed;

  double worst_sym = 0.0;
  for (int i = 0; i <= 400; ++i) {
    double x = -6.0 + 12.0 * i / 400.0;
    worst_sym = std::max(worst_sym,
                         std::abs(F.cdf(x) - (1.0 - F.cdf(-x))));
  }
  report.add("property4_symmetry", worst_sym <= 1e-9, worst_sym, 1e-9);

  TradeoffFunction via_cdf = from_cnd_cdf(F);
  double worst_id = 0.0;
  for (int i = 1; i < 400; ++i) {
    double a = static_cast<double>(i) / 400.0;
    worst_id = std::max(worst_id, std::abs(via_cdf(a) - f(a)));
  }
  report.add("property3_cdf_identity", worst_id <= tol_identity, worst_id,
             tol_identity);

  EmpiricalTradeoff at_one = empirical_tradeoff(F, 1.0, n_mc, seed, level);
  TestEntry eq = dominance_check(f, at_one, /*one_sided=*/false);
  eq.name = "property2_equality_at_shift1";
  report.entries.push_back(eq);

  std::uint64_t stream = seed;
  for (double m : m_grid) {
    ++stream;
    if (m <= 0.0) continue;
    EmpiricalTradeoff emp = empirical_tradeoff(F, m, n_mc, stream, level);
    TestEntry dom = dominance_check(f, emp, /*one_sided=*/true);
    dom.name = "property1_dominance_m=" + format_double(m);
    report.entries.push_back(dom);
  }
  return report;
}

/// Rescaling by k must produce a CND for the k-fold composition.
inline TestReport group_scale_check(const Cnd& F, int k, int n,
                                    std::uint64_t seed = 7) {
  Cnd scaled = scale_group(F, k);
  return verify_cnd(scaled, self_compose(F.source_f, k),
                    {0.25, 0.5, 0.75, 1.0}, n, seed);
}

}  // namespace fdp

#endif  // FDPCND_VERIFY_CND_HPP_
