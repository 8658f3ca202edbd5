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

#ifndef FDPCND_PLD_HPP_
#define FDPCND_PLD_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fdp/cnd.hpp"
#include "fdp/verify.hpp"

namespace fdp {

namespace detail {

/// Discretized privacy-loss distribution of one noise coordinate under
/// shift 1: masses of log[dens(y-1)/dens(y)] under the null (y ~ dens) and
/// the alternative (y ~ dens shifted by +1). Support-edge observations
/// carry +-infinity losses and are tracked as atoms.
struct LossDist {
  std::vector<double> losses;  // finite loss values, unsorted
  std::vector<double> m0;      // null mass per loss value
  std::vector<double> m1;      // alternative mass per loss value
  std::vector<double> spread;  // within-cell loss variation per value
  double minf0 = 0.0;          // null mass at loss -infinity
  double pinf1 = 0.0;          // alternative mass at loss +infinity
  double clip = 0.0;           // truncated tail mass (both hypotheses)
  double misplaced = 0.0;      // mass landing on the wrong infinity side
};

inline LossDist discretize_pld(const Cnd& F, int y_cells) {
  const double tail = 1e-10;
  double lo = F.quantile(tail);
  double hi = F.quantile(1.0 - tail) + 1.0;
  LossDist out;
  out.clip = F.cdf(lo) + (1.0 - F.cdf(hi)) + F.cdf(lo - 1.0) +
             (1.0 - F.cdf(hi - 1.0));
  double dy = (hi - lo) / static_cast<double>(y_cells);
  auto loss_at = [&](double y) -> double {
    double d0 = F.density(y);
    double d1 = F.density(y - 1.0);
    if (d0 <= 0.0 && d1 <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    if (d0 <= 0.0) return std::numeric_limits<double>::infinity();
    if (d1 <= 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(d1) - std::log(d0);
  };
  for (int i = 0; i < y_cells; ++i) {
    double a = lo + dy * i;
    double b = a + dy;
    double mass0 = std::max(0.0, F.cdf(b) - F.cdf(a));
    double mass1 = std::max(0.0, F.cdf(b - 1.0) - F.cdf(a - 1.0));
    if (mass0 < 1e-18 && mass1 < 1e-18) continue;
    double lm = loss_at(0.5 * (a + b));
    if (std::isnan(lm)) {
      out.misplaced += mass0 + mass1;
      continue;
    }
    if (std::isinf(lm)) {
      if (lm < 0.0) {
        out.minf0 += mass0;
        out.misplaced += mass1;
      } else {
        out.pinf1 += mass1;
        out.misplaced += mass0;
      }
      continue;
    }
    double la = loss_at(a + 1e-12 * (1.0 + std::abs(a)));
    double lb = loss_at(b - 1e-12 * (1.0 + std::abs(b)));
    double spread = std::numeric_limits<double>::infinity();
    if (std::isfinite(la) && std::isfinite(lb))
      spread = std::max(std::abs(la - lm), std::abs(lb - lm));
    out.losses.push_back(lm);
    out.m0.push_back(mass0);
    out.m1.push_back(mass1);
    out.spread.push_back(spread);
  }
  return out;
}

/// Bins a loss distribution onto the uniform grid with centers
/// -L + k*step, k = 0..bins-1, by nearest center.
struct BinnedPld {
  std::vector<double> p0, p1;
  double minf0 = 0.0, pinf1 = 0.0;
  double err = 0.0;  // clip + misplaced + cells exceeding the bin width
};

inline BinnedPld bin_pld(const LossDist& d, double big_l, double step,
                         int bins) {
  BinnedPld out;
  out.p0.assign(bins, 0.0);
  out.p1.assign(bins, 0.0);
  out.minf0 = d.minf0;
  out.pinf1 = d.pinf1;
  out.err = d.clip + d.misplaced;
  for (std::size_t i = 0; i < d.losses.size(); ++i) {
    int k = static_cast<int>(std::lround((d.losses[i] + big_l) / step));
    k = std::clamp(k, 0, bins - 1);
    out.p0[k] += d.m0[i];
    out.p1[k] += d.m1[i];
    if (d.spread[i] > step) out.err += d.m0[i] + d.m1[i];
  }
  return out;
}

}  // namespace detail

/// Tradeoff curve of the two-coordinate product mechanism via discretized
/// privacy-loss convolution. The returned band is the stated
/// discretization error bound (grid rounding plus clipped tails plus mass
/// in cells whose loss varies by more than one grid step).
inline EmpiricalTradeoff tensor_via_pld(const Cnd& a, const Cnd& b,
                                        int grid_size) {
  if (grid_size < 1000)
    throw std::invalid_argument("tensor_via_pld: grid_size must be >= 10^3");
  int y_cells = std::min(200000, 10 * grid_size);
  detail::LossDist da = detail::discretize_pld(a, y_cells);
  detail::LossDist db = detail::discretize_pld(b, y_cells);

  double big_l = 0.0;
  for (double v : da.losses) big_l = std::max(big_l, std::abs(v));
  for (double v : db.losses) big_l = std::max(big_l, std::abs(v));
  if (big_l == 0.0) big_l = 1.0;
  double step = 2.0 * big_l / static_cast<double>(grid_size);
  big_l += 3.0 * step;
  int bins = static_cast<int>(std::ceil(2.0 * big_l / step)) + 1;

  detail::BinnedPld ba = detail::bin_pld(da, big_l, step, bins);
  detail::BinnedPld bb = detail::bin_pld(db, big_l, step, bins);

  // Joint loss is the sum; bin centers add exactly onto the doubled grid.
  int jbins = 2 * bins - 1;
  std::vector<double> j0(jbins, 0.0), j1(jbins, 0.0);
  for (int i = 0; i < bins; ++i) {
    if (ba.p0[i] < 1e-18 && ba.p1[i] < 1e-18) continue;
    for (int k = 0; k < bins; ++k) {
      j0[i + k] += ba.p0[i] * bb.p0[k];
      j1[i + k] += ba.p1[i] * bb.p1[k];
    }
  }
  // A -infinity loss in either coordinate is -infinity jointly (null side);
  // symmetrically for +infinity under the alternative.
  double minf = 1.0 - (1.0 - ba.minf0) * (1.0 - bb.minf0);
  double pinf = 1.0 - (1.0 - ba.pinf1) * (1.0 - bb.pinf1);

  EmpiricalTradeoff out;
  out.alphas.push_back(0.0);
  out.betas.push_back(0.0);
  if (minf > 0.0) {
    out.alphas.push_back(minf);
    out.betas.push_back(0.0);
  }
  double c0 = minf, c1 = 0.0;
  for (int k = 0; k < jbins; ++k) {
    if (j0[k] < 1e-18 && j1[k] < 1e-18) continue;
    c0 += j0[k];
    c1 += j1[k];
    out.alphas.push_back(std::min(1.0, c0));
    out.betas.push_back(std::min(1.0, c1));
  }
  if (out.alphas.back() < 1.0 || out.betas.back() < 1.0 - pinf) {
    out.alphas.push_back(1.0);
    out.betas.push_back(1.0 - pinf);
  }
  out.alphas.push_back(1.0);
  out.betas.push_back(1.0);

  double bound = 2.0 * (std::exp(step) - 1.0) + ba.err + bb.err;
  out.band = bound;
  out.n_samples = 0;
  if (bound > 0.05)
    throw std::runtime_error(
        "tensor_via_pld: discretization error bound exceeds 0.05; "
        "increase grid_size");
  return out;
}

}  // namespace fdp

#endif  // FDPCND_PLD_HPP_
