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

#ifndef FDPCND_CND_HPP_
#define FDPCND_CND_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fdp/divisible.hpp"
#include "fdp/normal.hpp"
#include "fdp/tradeoff.hpp"

namespace fdp {

enum class CndKind {
  Constructed,
  Tulap,
  GaussianCnd,
  LaplaceCnd,
  UniformCnd,
  LimitCnd
};

inline const char* to_string(CndKind k) {
  switch (k) {
    case CndKind::Constructed: return "constructed";
    case CndKind::Tulap: return "tulap";
    case CndKind::GaussianCnd: return "gaussian";
    case CndKind::LaplaceCnd: return "laplace";
    case CndKind::UniformCnd: return "uniform";
    case CndKind::LimitCnd: return "limit";
  }
  return "unknown";
}

/// One-dimensional canonical noise distribution. Immutable; samplers take
/// the caller's RNG state, so parallel use means independently seeded
/// streams.
struct Cnd {
  CndKind kind;
  std::map<std::string, double> params;
  std::function<double(double)> cdf;
  std::function<double(double)> quantile;
  std::function<double(double)> density;
  TradeoffFunction source_f;

  double sample(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double p = u(rng);
    // Keep away from the open-interval endpoints of the quantile.
    p = std::clamp(p, 1e-15, 1.0 - 1e-15);
    return quantile(p);
  }
};

namespace detail {

/// Generic quantile by expanding bracket then bisection.
inline double quantile_by_bisection(const std::function<double(double)>& cdf,
                                    double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("quantile: alpha must be in (0,1)");
  double lo = -1.0, hi = 1.0;
  for (int i = 0; i < 80 && cdf(lo) > alpha; ++i) lo *= 2.0;
  for (int i = 0; i < 80 && cdf(hi) < alpha; ++i) hi *= 2.0;
  for (int i = 0; i < 80; ++i) {
    double mid = 0.5 * (lo + hi);
    if (cdf(mid) < alpha)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

inline std::function<double(double)> finite_difference_density(
    std::function<double(double)> cdf, double step = 1e-6) {
  return [cdf = std::move(cdf), step](double x) {
    return std::max(0.0, (cdf(x + step) - cdf(x - step)) / (2.0 * step));
  };
}

}  // namespace detail

/// The recursion-based CND for an arbitrary nontrivial symmetric f:
/// linear between c and 1-c on [-1/2,1/2], extended by
/// F(x) = 1 - f(1 - F(x-1)) upward and by symmetry downward.
inline Cnd construct_cnd(const TradeoffFunction& f,
                         std::int64_t max_depth = 1000000) {
  if (!f.symmetric())
    throw std::invalid_argument("construct_cnd: f must be symmetric");
  if (!f.nontrivial())
    throw std::invalid_argument("construct_cnd: f must be nontrivial");
  double c = fixed_point_c(f);
  if (c > 0.5 - 1e-12)
    throw std::invalid_argument("construct_cnd: degenerate fixed point");

  auto cdf = [f, c, max_depth](double x) -> double {
    bool flip = x < 0.0;
    if (flip) x = -x;
    if (x <= 0.5) {
      double v = c * (0.5 - x) + (1.0 - c) * (x + 0.5);
      return flip ? 1.0 - v : v;
    }
    std::int64_t k = static_cast<std::int64_t>(std::ceil(x - 0.5));
    if (k > max_depth)
      throw std::runtime_error("construct_cnd: recursion depth exceeded");
    double base = x - static_cast<double>(k);  // in (-1/2, 1/2]
    double v = c * (0.5 - base) + (1.0 - c) * (base + 0.5);
    for (std::int64_t i = 0; i < k; ++i)
      v = std::clamp(1.0 - f(1.0 - v), 0.0, 1.0);
    return flip ? 1.0 - v : v;
  };

  Cnd out{CndKind::Constructed,
          {{"c", c}},
          cdf,
          [cdf](double a) { return detail::quantile_by_bisection(cdf, a); },
          detail::finite_difference_density(cdf),
          f};
  return out;
}

/// T(N, N+1) of a CND via the cdf identity F(F^-1(alpha) - 1).
inline TradeoffFunction from_cnd_cdf(const Cnd& F) {
  auto cdf = F.cdf;
  auto quantile = F.quantile;
  return TradeoffFunction(
      [cdf, quantile](double a) {
        if (a <= 0.0) return 0.0;
        if (a >= 1.0) return 1.0;
        return cdf(quantile(a) - 1.0);
      },
      /*symmetric=*/true, FamilyTag{Family::FromCdf});
}

/// Tulap(0, e^-eps, 0): uniform core on (-1/2,1/2] with geometric tails.
/// The unique CND for f_{eps,0}.
inline Cnd tulap(double eps) {
  if (eps <= 0.0) throw std::domain_error("tulap: eps must be > 0");
  double ee = std::exp(eps);
  double c = 1.0 / (1.0 + ee);              // tail cell mass scale
  double t = (ee - 1.0) / (ee + 1.0);       // density on the core cell

  auto cdf = [=](double x) -> double {
    bool flip = x < 0.0;
    if (flip) x = -x;
    double k = std::floor(x + 0.5);
    double v;
    if (k == 0.0) {
      v = 0.5 + t * x;
    } else {
      v = 1.0 - c * std::exp(-(k - 1.0) * eps) +
          t * std::exp(-k * eps) * (x - k + 0.5);
    }
    v = std::clamp(v, 0.0, 1.0);
    return flip ? 1.0 - v : v;
  };
  auto quantile = [=](double a) -> double {
    if (!(a > 0.0 && a < 1.0))
      throw std::domain_error("tulap quantile: alpha must be in (0,1)");
    bool flip = a < 0.5;
    if (flip) a = 1.0 - a;
    double x;
    if (a <= 1.0 - c) {
      x = (a - 0.5) / t;
    } else {
      double k = std::ceil(-std::log((1.0 - a) / c) / eps);
      x = (k - 0.5) +
          (a - (1.0 - c * std::exp(-(k - 1.0) * eps))) /
              (t * std::exp(-k * eps));
    }
    return flip ? -x : x;
  };
  auto density = [=](double x) {
    double k = std::floor(std::abs(x) + 0.5);
    return t * std::exp(-k * eps);
  };
  return Cnd{CndKind::Tulap, {{"eps", eps}}, cdf, quantile, density,
             make_eps_delta(eps, 0.0)};
}

/// Geometric-difference sampler for Tulap: U + G1 - G2 with
/// G ~ Geometric(1 - e^-eps). Faster than inverse-cdf; validated against
/// the cdf by KS test in the suite.
inline double tulap_fast_sample(double eps, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::geometric_distribution<int> g(1.0 - std::exp(-eps));
  double uu = u(rng);
  int g1 = g(rng);
  int g2 = g(rng);
  return uu + static_cast<double>(g1 - g2);
}

/// N(0, 1/mu^2): the log-concave CND for G_mu. cdf(x) = Phi(mu x).
inline Cnd gaussian_cnd(double mu) {
  if (mu <= 0.0) throw std::domain_error("gaussian_cnd: mu must be > 0");
  return Cnd{CndKind::GaussianCnd,
             {{"mu", mu}},
             [mu](double x) { return norm_cdf(mu * x); },
             [mu](double a) { return norm_quantile(a) / mu; },
             [mu](double x) { return mu * norm_pdf(mu * x); },
             make_gdp(mu)};
}

/// Laplace(0, 1/eps): the log-concave CND for L_eps.
inline Cnd laplace_cnd(double eps) {
  if (eps <= 0.0) throw std::domain_error("laplace_cnd: eps must be > 0");
  return Cnd{CndKind::LaplaceCnd,
             {{"eps", eps}},
             [eps](double x) { return laplace_cdf_std(eps * x); },
             [eps](double a) { return laplace_quantile_std(a) / eps; },
             [eps](double x) { return 0.5 * eps * std::exp(-eps * std::abs(x)); },
             make_laplace_tf(eps)};
}

/// U(-1/(2 delta), 1/(2 delta)): the log-concave CND for f_{0,delta}.
inline Cnd uniform_cnd(double delta) {
  if (delta <= 0.0 || delta > 1.0)
    throw std::domain_error("uniform_cnd: delta must be in (0,1]");
  double half = 0.5 / delta;
  return Cnd{CndKind::UniformCnd,
             {{"delta", delta}},
             [=](double x) { return std::clamp(delta * x + 0.5, 0.0, 1.0); },
             [=](double a) { return (a - 0.5) / delta; },
             [=](double x) { return std::abs(x) <= half ? delta : 0.0; },
             make_eps_delta(0.0, delta)};
}

/// F(k x) is a CND for f^{o k}: the group-privacy rescaling.
inline Cnd scale_group(const Cnd& F, int k) {
  if (k < 1) throw std::domain_error("scale_group: k must be >= 1");
  if (k == 1) return F;
  double kk = static_cast<double>(k);
  auto cdf = F.cdf;
  auto quantile = F.quantile;
  auto density = F.density;
  Cnd out{F.kind,
          F.params,
          [cdf, kk](double x) { return cdf(kk * x); },
          [quantile, kk](double a) { return quantile(a) / kk; },
          [density, kk](double x) { return kk * density(kk * x); },
          self_compose(F.source_f, k)};
  out.params["group_k"] = kk;
  return out;
}

/// Convergence trace of the log-concave limit construction. The error
/// bound is the proof's sup-gap bound, reported verbatim; the returned cdf
/// is within it of the true limit in sup norm.
struct LimitDiagnostics {
  std::vector<double> scales_used;
  std::vector<double> sup_gap;
  bool converged = false;
  double error_bound = 0.0;
};

namespace detail {

inline double sup_identity_gap(const TradeoffFunction& f, int grid = 1001) {
  double g = 0.0;
  for (int i = 0; i <= grid; ++i) {
    double a = static_cast<double>(i) / grid;
    g = std::max(g, std::abs(a - f(a)));
  }
  return g;
}

/// Monotone piecewise-linear cdf table for fast evaluation of the limit
/// candidate.
struct CdfTable {
  double lo, hi, step;
  std::vector<double> values;

  double cdf(double x) const {
    if (x <= lo) return 0.0;
    if (x >= hi) return 1.0;
    double p = (x - lo) / step;
    std::size_t i = static_cast<std::size_t>(p);
    if (i + 1 >= values.size()) return values.back();
    double t = p - static_cast<double>(i);
    return values[i] + t * (values[i + 1] - values[i]);
  }

  double quantile(double a) const {
    auto it = std::lower_bound(values.begin(), values.end(), a);
    if (it == values.begin()) return lo;
    if (it == values.end()) return hi;
    std::size_t i = static_cast<std::size_t>(it - values.begin());
    double v1 = values[i], v0 = values[i - 1];
    double x0 = lo + step * static_cast<double>(i - 1);
    if (v1 <= v0) return x0;
    return x0 + step * (a - v0) / (v1 - v0);
  }
};

}  // namespace detail

/// Builds the unique log-concave CND of an infinitely divisible family as
/// the scaled limit of recursion-constructed CNDs at dyadic scales
/// s_n = 2^-n, stopping once the sup-gap bound meets target_gap.
inline std::pair<Cnd, LimitDiagnostics> logconcave_limit(
    const DivisibleFamily& family, double target_gap) {
  if (!(target_gap > 0.0 && target_gap <= 0.1))
    throw std::domain_error("logconcave_limit: target_gap must be in (0,0.1]");

  LimitDiagnostics diag;
  double s = 1.0;
  int n = 0;
  for (;; ++n, s *= 0.5) {
    if (n > 40)
      throw std::runtime_error("logconcave_limit: scale budget exhausted");
    TradeoffFunction fs = family.at(s);
    double gap = detail::sup_identity_gap(fs);
    diag.scales_used.push_back(s);
    diag.sup_gap.push_back(gap);
    std::size_t m = diag.sup_gap.size();
    if (m >= 6 && diag.sup_gap[m - 1] >= diag.sup_gap[m - 6] - 1e-12)
      throw std::runtime_error(
          "logconcave_limit: sup gap stagnated; family is not divisible");
    if (gap <= target_gap) break;
  }
  diag.converged = true;
  diag.error_bound = diag.sup_gap.back();

  TradeoffFunction fs = family.at(s);
  Cnd base = construct_cnd(fs);
  auto base_cdf = base.cdf;
  auto candidate = [base_cdf, s](double t) { return base_cdf(t / s); };

  // Tabulate over a range wide enough that both tails are < 1e-12.
  double hi = 1.0;
  while (candidate(hi) < 1.0 - 1e-12 && hi < 1e6) hi *= 1.5;
  auto table = std::make_shared<detail::CdfTable>();
  const std::size_t npts = 8192;
  table->lo = -hi;
  table->hi = hi;
  table->step = 2.0 * hi / static_cast<double>(npts - 1);
  table->values.resize(npts);
  for (std::size_t i = 0; i < npts; ++i) {
    double x = table->lo + table->step * static_cast<double>(i);
    table->values[i] = candidate(x);
  }
  // Enforce monotonicity and symmetric endpoints.
  for (std::size_t i = 1; i < npts; ++i)
    table->values[i] = std::max(table->values[i], table->values[i - 1]);
  table->values.front() = 0.0;
  table->values.back() = 1.0;

  Cnd out{CndKind::LimitCnd,
          {{"scale", s}, {"error_bound", diag.error_bound}},
          [table](double x) { return table->cdf(x); },
          [table](double a) { return table->quantile(a); },
          detail::finite_difference_density(
              [table](double x) { return table->cdf(x); }, 1e-4),
          family.at(1.0)};
  return {out, diag};
}

}  // namespace fdp

#endif  // FDPCND_CND_HPP_
