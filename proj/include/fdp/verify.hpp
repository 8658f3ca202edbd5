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

#ifndef FDPCND_VERIFY_HPP_
#define FDPCND_VERIFY_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fdp/cnd.hpp"
#include "fdp/report.hpp"
#include "fdp/tradeoff.hpp"

namespace fdp {

/// Monte-Carlo estimate of a tradeoff curve as a polyline of achievable
/// (specificity, type-II error) points, with a uniform DKW confidence
/// half-width. Atoms in the loss distribution become polyline segments
/// (randomized tests), so the full lower curve is traced.
struct EmpiricalTradeoff {
  std::vector<double> alphas;  // polyline knots, non-decreasing
  std::vector<double> betas;   // raw estimates at the knots
  double band = 0.0;
  int n_samples = 0;
  std::uint64_t seed = 0;

  /// Linear interpolation through the knots; clamps outside [0,1].
  double value(double alpha) const {
    double a = std::clamp(alpha, 0.0, 1.0);
    auto it = std::lower_bound(alphas.begin(), alphas.end(), a);
    if (it == alphas.begin()) return betas.front();
    if (it == alphas.end()) return betas.back();
    std::size_t i = static_cast<std::size_t>(it - alphas.begin());
    double a1 = alphas[i], a0 = alphas[i - 1];
    if (a1 <= a0) return std::min(betas[i], betas[i - 1]);
    double t = (a - a0) / (a1 - a0);
    return betas[i - 1] + t * (betas[i] - betas[i - 1]);
  }

  /// Knots of the greatest convex minorant of the raw polyline.
  EmpiricalTradeoff convex_cleanup() const {
    EmpiricalTradeoff out = *this;
    std::vector<std::size_t> hull;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      while (hull.size() >= 2) {
        std::size_t a = hull[hull.size() - 2], b = hull[hull.size() - 1];
        double cross = (alphas[b] - alphas[a]) * (betas[i] - betas[a]) -
                       (betas[b] - betas[a]) * (alphas[i] - alphas[a]);
        if (cross <= 0.0)
          hull.pop_back();
        else
          break;
      }
      hull.push_back(i);
    }
    out.alphas.clear();
    out.betas.clear();
    for (std::size_t i : hull) {
      out.alphas.push_back(alphas[i]);
      out.betas.push_back(betas[i]);
    }
    return out;
  }
};

inline double dkw_band(int n, double level) {
  return std::sqrt(std::log(2.0 / level) / (2.0 * static_cast<double>(n)));
}

/// Builds the empirical tradeoff polyline from privacy-loss samples: one
/// stream drawn under the null, one under the alternative. The curve is
/// the pair of empirical loss cdfs swept over thresholds,
/// (P0(L < t), P1(L < t)); +-infinity losses (support edges) contribute
/// the flat segments at the ends.
inline EmpiricalTradeoff empirical_tradeoff_from_losses(
    std::vector<double> losses0, std::vector<double> losses1, double level,
    std::uint64_t seed) {
  if (losses0.empty() || losses1.empty())
    throw std::invalid_argument("empirical_tradeoff: empty loss stream");
  for (double v : losses0)
    if (std::isnan(v)) throw std::runtime_error("empirical_tradeoff: NaN loss");
  for (double v : losses1)
    if (std::isnan(v)) throw std::runtime_error("empirical_tradeoff: NaN loss");
  // Atoms of the loss distribution come out of the log-density ratio
  // smeared over a few ulps, which would order the two streams
  // systematically inside what is really a tie. Snapping to a coarse grid
  // (2^-30, far above the smear and far below the spacing of continuous
  // losses) restores exact ties so atoms become single polyline segments.
  auto quantize = [](double v) {
    return std::round(v * 1073741824.0) / 1073741824.0;
  };
  for (double& v : losses0) v = quantize(v);
  for (double& v : losses1) v = quantize(v);
  std::sort(losses0.begin(), losses0.end());
  std::sort(losses1.begin(), losses1.end());
  double n0 = static_cast<double>(losses0.size());
  double n1 = static_cast<double>(losses1.size());

  std::vector<double> thresholds;
  thresholds.reserve(losses0.size() + losses1.size());
  thresholds.insert(thresholds.end(), losses0.begin(), losses0.end());
  thresholds.insert(thresholds.end(), losses1.begin(), losses1.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());

  EmpiricalTradeoff out;
  out.alphas.push_back(0.0);
  out.betas.push_back(0.0);
  auto frac_below = [](const std::vector<double>& v, double t, double n) {
    return static_cast<double>(std::lower_bound(v.begin(), v.end(), t) -
                               v.begin()) /
           n;
  };
  for (double t : thresholds) {
    double a = frac_below(losses0, t, n0);
    double b = frac_below(losses1, t, n1);
    if (a > out.alphas.back() || b > out.betas.back()) {
      out.alphas.push_back(a);
      out.betas.push_back(b);
    }
  }
  // Accept unless the loss is +infinity (impossible under the null).
  double a_top =
      frac_below(losses0, std::numeric_limits<double>::infinity(), n0);
  double b_top =
      frac_below(losses1, std::numeric_limits<double>::infinity(), n1);
  if (a_top > out.alphas.back() || b_top > out.betas.back()) {
    out.alphas.push_back(a_top);
    out.betas.push_back(b_top);
  }
  if (out.alphas.back() < 1.0) {
    out.alphas.push_back(1.0);
    out.betas.push_back(out.betas.back());
  }
  out.n_samples = static_cast<int>(std::min(losses0.size(), losses1.size()));
  out.band = dkw_band(out.n_samples, level);
  out.seed = seed;
  return out;
}

/// Loss of an observation x for testing noise N against N + shift:
/// log density(x - shift) / density(x). Stochastically larger under the
/// alternative.
inline double privacy_loss(const std::function<double(double)>& density,
                           double x, double shift) {
  double p1 = density(x - shift);
  double p0 = density(x);
  if (p0 <= 0.0 && p1 <= 0.0) return 0.0;
  if (p0 <= 0.0) return std::numeric_limits<double>::infinity();
  if (p1 <= 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(p1) - std::log(p0);
}

/// Estimates T(N, N + shift) for a one-dimensional CND by two seeded
/// sample streams mapped through the privacy loss.
inline EmpiricalTradeoff empirical_tradeoff(const Cnd& F, double shift, int n,
                                            std::uint64_t seed,
                                            double level = 0.01) {
  if (n < 10000)
    throw std::invalid_argument("empirical_tradeoff: n must be >= 10^4");
  std::mt19937_64 rng(seed);
  std::vector<double> l0(n), l1(n);
  for (int i = 0; i < n; ++i)
    l0[i] = privacy_loss(F.density, F.sample(rng), shift);
  for (int i = 0; i < n; ++i)
    l1[i] = privacy_loss(F.density, F.sample(rng) + shift, shift);
  return empirical_tradeoff_from_losses(std::move(l0), std::move(l1), level,
                                        seed);
}

/// Generic vector-valued variant used by the multivariate module.
inline EmpiricalTradeoff empirical_tradeoff_vec(
    const std::function<double(const std::vector<double>&)>& density,
    const std::function<std::vector<double>(std::mt19937_64&)>& sampler,
    const std::vector<double>& shift, int n, std::uint64_t seed,
    double level = 0.01) {
  if (n < 10000)
    throw std::invalid_argument("empirical_tradeoff: n must be >= 10^4");
  std::mt19937_64 rng(seed);
  auto loss = [&](std::vector<double> x) {
    std::vector<double> xs = x;
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] -= shift[i];
    double p1 = density(xs);
    double p0 = density(x);
    if (p0 <= 0.0 && p1 <= 0.0) return 0.0;
    if (p0 <= 0.0) return std::numeric_limits<double>::infinity();
    if (p1 <= 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(p1) - std::log(p0);
  };
  std::vector<double> l0(n), l1(n);
  for (int i = 0; i < n; ++i) l0[i] = loss(sampler(rng));
  for (int i = 0; i < n; ++i) {
    std::vector<double> x = sampler(rng);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += shift[j];
    l1[i] = loss(std::move(x));
  }
  return empirical_tradeoff_from_losses(std::move(l0), std::move(l1), level,
                                        seed);
}

/// Dominance of an empirical curve over an analytic lower bound, with the
/// confidence band applied in both coordinates (the empirical specificity
/// axis carries the same sampling error as the type-II axis).
inline TestEntry dominance_check(const TradeoffFunction& lower,
                                 const EmpiricalTradeoff& upper,
                                 bool one_sided, int grid = 201) {
  double worst_low = 0.0, worst_high = 0.0;
  double band = upper.band;
  for (int i = 0; i <= grid; ++i) {
    double a = static_cast<double>(i) / grid;
    double v = upper.value(a);
    worst_low = std::max(worst_low, lower(a - band) - band - v);
    if (!one_sided)
      worst_high = std::max(worst_high, v - lower(a + band) - band);
  }
  double stat = std::max(worst_low, worst_high);
  TestEntry e;
  e.name = one_sided ? "dominance_one_sided" : "dominance_two_sided";
  e.pass = stat <= 0.0;
  e.statistic = stat;
  e.threshold = 0.0;
  e.details = "band=" + format_double(band);
  return e;
}

/// Analytic-vs-analytic variant with a fixed tolerance instead of a band.
inline TestEntry dominance_check(const TradeoffFunction& lower,
                                 const TradeoffFunction& upper, bool one_sided,
                                 int grid = 201, double tol = 1e-9) {
  double worst = -1.0;
  for (int i = 0; i <= grid; ++i) {
    double a = static_cast<double>(i) / grid;
    double d = lower(a) - upper(a);
    if (!one_sided) d = std::abs(d);
    worst = std::max(worst, d);
  }
  TestEntry e;
  e.name = one_sided ? "dominance_one_sided" : "dominance_two_sided";
  e.pass = worst <= tol;
  e.statistic = worst;
  e.threshold = tol;
  return e;
}

/// Group privacy versus mechanism composition in the zero-eps family:
/// delta of (f tensor g)^{o k} versus delta of f^{o k} tensor g^{o k}.
/// The first is always the larger delta (weaker guarantee).
inline TestEntry check_otimes_circ(double delta1, double delta2, int k) {
  if (delta1 <= 0.0 || delta1 > 1.0 || delta2 <= 0.0 || delta2 > 1.0)
    throw std::domain_error("check_otimes_circ: deltas must be in (0,1]");
  if (k < 1) throw std::domain_error("check_otimes_circ: k must be >= 1");
  double kk = static_cast<double>(k);
  double delta_l = std::min(1.0, kk * (1.0 - (1.0 - delta1) * (1.0 - delta2)));
  double delta_r = 1.0 - (1.0 - std::min(1.0, kk * delta1)) *
                             (1.0 - std::min(1.0, kk * delta2));
  TestEntry e;
  e.name = "otimes_circ";
  e.pass = delta_l >= delta_r - 1e-15;
  e.statistic = delta_l;
  e.threshold = delta_r;
  e.details = "delta_l=" + format_double(delta_l) +
              " delta_r=" + format_double(delta_r);
  return e;
}

/// Two-sided Kolmogorov-Smirnov test against an analytic cdf.
inline TestEntry ks_test(std::vector<double> samples,
                         const std::function<double(double)>& cdf,
                         double level) {
  if (samples.size() < 1000)
    throw std::invalid_argument("ks_test: need at least 10^3 samples");
  double crit_k;
  if (level == 0.05)
    crit_k = 1.3581;
  else if (level == 0.01)
    crit_k = 1.6276;
  else if (level == 0.001)
    crit_k = 1.9495;
  else
    throw std::domain_error("ks_test: level must be 0.05, 0.01, or 0.001");
  for (double s : samples)
    if (!std::isfinite(s)) throw std::runtime_error("ks_test: non-finite sample");
  std::sort(samples.begin(), samples.end());
  double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double c = cdf(samples[i]);
    d = std::max(d, std::abs(c - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - c));
  }
  double crit = crit_k / std::sqrt(n);
  TestEntry e;
  e.name = "ks_test";
  e.pass = d <= crit;
  e.statistic = d;
  e.threshold = crit;
  return e;
}

}  // namespace fdp

#endif  // FDPCND_VERIFY_HPP_
