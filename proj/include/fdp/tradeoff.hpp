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

#ifndef FDPCND_TRADEOFF_HPP_
#define FDPCND_TRADEOFF_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "fdp/normal.hpp"

namespace fdp {

enum class Family { EpsDelta, Gdp, LaplaceTf, FromCdf, Composite };

/// Closed-form family tag. `a` holds eps (EpsDelta, LaplaceTf) or mu (Gdp);
/// `b` holds delta (EpsDelta).
struct FamilyTag {
  Family family;
  double a = 0.0;
  double b = 0.0;
};

/// A tradeoff function: convex, continuous, non-decreasing map
/// [0,1] -> [0,1] with f(alpha) <= alpha. Immutable; evaluation is pure.
class TradeoffFunction {
 public:
  TradeoffFunction(std::function<double(double)> eval, bool symmetric,
                   std::optional<FamilyTag> tag = std::nullopt)
      : eval_(std::move(eval)), symmetric_(symmetric), tag_(tag) {}

  double operator()(double alpha) const {
    double a = std::clamp(alpha, 0.0, 1.0);
    return std::clamp(eval_(a), 0.0, 1.0);
  }

  bool symmetric() const { return symmetric_; }
  const std::optional<FamilyTag>& tag() const { return tag_; }

  /// Nontrivial means f(alpha) < alpha strictly somewhere in (0,1).
  bool nontrivial(double tol = 1e-9) const {
    for (int i = 1; i < 100; ++i) {
      double a = i / 100.0;
      if ((*this)(a) < a - tol) return true;
    }
    return false;
  }

 private:
  std::function<double(double)> eval_;
  bool symmetric_;
  std::optional<FamilyTag> tag_;
};

/// f_{eps,delta}(alpha) = max{0, 1-delta-e^eps+e^eps*alpha, e^-eps(alpha-delta)}
inline TradeoffFunction make_eps_delta(double eps, double delta) {
  if (eps < 0.0) throw std::domain_error("make_eps_delta: eps must be >= 0");
  if (delta < 0.0 || delta > 1.0)
    throw std::domain_error("make_eps_delta: delta must be in [0,1]");
  double ee = std::exp(eps);
  double ie = std::exp(-eps);
  return TradeoffFunction(
      [=](double a) {
        return std::max({0.0, 1.0 - delta - ee + ee * a, ie * (a - delta)});
      },
      /*symmetric=*/true, FamilyTag{Family::EpsDelta, eps, delta});
}

/// G_mu(alpha) = Phi(Phi^-1(alpha) - mu)
inline TradeoffFunction make_gdp(double mu) {
  if (mu < 0.0) throw std::domain_error("make_gdp: mu must be >= 0");
  return TradeoffFunction(
      [=](double a) {
        if (a <= 0.0) return 0.0;
        if (a >= 1.0) return 1.0;
        return norm_cdf(norm_quantile(a) - mu);
      },
      /*symmetric=*/true, FamilyTag{Family::Gdp, mu});
}

inline double laplace_cdf_std(double x) {
  return x < 0.0 ? 0.5 * std::exp(x) : 1.0 - 0.5 * std::exp(-x);
}

inline double laplace_quantile_std(double p) {
  return p < 0.5 ? std::log(2.0 * p) : -std::log(2.0 * (1.0 - p));
}

/// L_eps = T(N, N+eps) with N ~ Laplace(0,1); equivalently F(F^-1(alpha)-1)
/// with F the Laplace(0,1/eps) cdf.
inline TradeoffFunction make_laplace_tf(double eps) {
  if (eps <= 0.0) throw std::domain_error("make_laplace_tf: eps must be > 0");
  return TradeoffFunction(
      [=](double a) {
        if (a <= 0.0) return 0.0;
        if (a >= 1.0) return 1.0;
        // Laplace(0, 1/eps) cdf/quantile in standardized coordinates.
        return laplace_cdf_std(laplace_quantile_std(a) - eps);
      },
      /*symmetric=*/true, FamilyTag{Family::LaplaceTf, eps});
}

inline TradeoffFunction identity_tradeoff() {
  return TradeoffFunction([](double a) { return a; }, /*symmetric=*/true,
                          FamilyTag{Family::EpsDelta, 0.0, 0.0});
}

/// Grid validation of the tradeoff-function axioms. Throws on violation.
inline void validate_tradeoff(const TradeoffFunction& f, int grid = 101,
                              double tol_id = 1e-12, double tol_cvx = 1e-10) {
  double prev = f(0.0);
  for (int i = 0; i <= grid; ++i) {
    double a = static_cast<double>(i) / grid;
    double v = f(a);
    if (v > a + tol_id)
      throw std::invalid_argument("tradeoff: f(alpha) > alpha");
    if (v < prev - tol_cvx)
      throw std::invalid_argument("tradeoff: not non-decreasing");
    prev = std::max(prev, v);
  }
  for (int i = 0; i + 2 <= grid; i += 2) {
    double a = static_cast<double>(i) / grid;
    double b = static_cast<double>(i + 2) / grid;
    double mid = f(0.5 * (a + b));
    if (mid > 0.5 * (f(a) + f(b)) + tol_cvx)
      throw std::invalid_argument("tradeoff: not convex");
  }
}

/// Functional composition f(g(alpha)) -- the group-privacy combinator.
inline TradeoffFunction compose(const TradeoffFunction& f,
                                const TradeoffFunction& g) {
  TradeoffFunction h([f, g](double a) { return f(g(a)); },
                     f.symmetric() && g.symmetric(),
                     FamilyTag{Family::Composite});
  validate_tradeoff(h);
  return h;
}

inline TradeoffFunction self_compose(const TradeoffFunction& f, int k) {
  if (k < 1) throw std::domain_error("self_compose: k must be >= 1");
  TradeoffFunction h = f;
  for (int i = 1; i < k; ++i) h = compose(f, h);
  return h;
}

/// Solves f(1-c) = c by bisection on [0, 1/2]; the map c -> f(1-c) - c is
/// monotone decreasing.
inline double fixed_point_c(const TradeoffFunction& f) {
  double lo = 0.0, hi = 0.5;
  // h(lo) = f(1) >= 0, h(hi) = f(1/2) - 1/2 <= 0.
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (f(1.0 - mid) - mid >= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double c = 0.5 * (lo + hi);
  if (std::abs(f(1.0 - c) - c) > 1e-12)
    throw std::runtime_error("fixed_point_c: bisection did not converge");
  return c;
}

/// Mechanism-composition closed forms. Only the identities with a known
/// closed form are supported; anything else yields nullopt and must go
/// through the PLD path.
inline std::optional<TradeoffFunction> tensor_closed_form(
    const TradeoffFunction& f, const TradeoffFunction& g) {
  if (!f.tag() || !g.tag()) return std::nullopt;
  const FamilyTag& tf = *f.tag();
  const FamilyTag& tg = *g.tag();

  auto is_identity = [](const FamilyTag& t) {
    return (t.family == Family::EpsDelta && t.a == 0.0 && t.b == 0.0) ||
           (t.family == Family::Gdp && t.a == 0.0);
  };
  if (is_identity(tf)) return g;
  if (is_identity(tg)) return f;

  if (tf.family == Family::Gdp && tg.family == Family::Gdp)
    return make_gdp(std::hypot(tf.a, tg.a));

  auto is_zero_delta = [](const FamilyTag& t) {
    return t.family == Family::EpsDelta && t.a == 0.0;
  };
  auto is_pure = [](const FamilyTag& t) {
    return t.family == Family::EpsDelta && t.b == 0.0;
  };
  if (is_zero_delta(tf) && is_zero_delta(tg))
    return make_eps_delta(0.0, 1.0 - (1.0 - tf.b) * (1.0 - tg.b));
  if (is_pure(tf) && is_zero_delta(tg)) return make_eps_delta(tf.a, tg.b);
  if (is_zero_delta(tf) && is_pure(tg)) return make_eps_delta(tg.a, tf.b);

  return std::nullopt;
}

}  // namespace fdp

#endif  // FDPCND_TRADEOFF_HPP_
