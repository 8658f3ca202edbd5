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

#ifndef FDPCND_PIECEWISE_HPP_
#define FDPCND_PIECEWISE_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fdp/tradeoff.hpp"

namespace fdp {

/// Piecewise-linear convex tradeoff function given by its knots.
/// Knots are sorted in alpha with endpoints at alpha=0 and alpha=1; segment
/// slopes must be non-decreasing (convexity).
class PiecewiseLinearTf {
 public:
  struct Knot {
    double alpha;
    double beta;
  };

  explicit PiecewiseLinearTf(std::vector<Knot> knots)
      : knots_(std::move(knots)) {
    if (knots_.size() < 2)
      throw std::invalid_argument("piecewise: need at least two knots");
    if (std::abs(knots_.front().alpha) > 1e-12 ||
        std::abs(knots_.back().alpha - 1.0) > 1e-12)
      throw std::invalid_argument("piecewise: endpoints must be 0 and 1");
    if (knots_.back().beta > 1.0 + 1e-12)
      throw std::invalid_argument("piecewise: f(1) > 1");
    double prev_slope = -1.0;
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
      double da = knots_[i + 1].alpha - knots_[i].alpha;
      if (da <= 0.0)
        throw std::invalid_argument("piecewise: knots not strictly sorted");
      double s = (knots_[i + 1].beta - knots_[i].beta) / da;
      if (s < prev_slope - 1e-9)
        throw std::invalid_argument("piecewise: slopes decrease (non-convex)");
      prev_slope = std::max(prev_slope, s);
    }
  }

  double operator()(double alpha) const {
    double a = std::clamp(alpha, 0.0, 1.0);
    auto it = std::upper_bound(
        knots_.begin(), knots_.end(), a,
        [](double x, const Knot& k) { return x < k.alpha; });
    if (it == knots_.begin()) return knots_.front().beta;
    if (it == knots_.end()) return knots_.back().beta;
    const Knot& hi = *it;
    const Knot& lo = *(it - 1);
    double t = (a - lo.alpha) / (hi.alpha - lo.alpha);
    return lo.beta + t * (hi.beta - lo.beta);
  }

  const std::vector<Knot>& knots() const { return knots_; }

  TradeoffFunction as_tradeoff(bool symmetric = false) const {
    PiecewiseLinearTf copy = *this;
    return TradeoffFunction([copy](double a) { return copy(a); }, symmetric);
  }

  /// Interior knots where the slope strictly increases.
  std::vector<double> breakpoint_locations(double tol = 1e-9) const {
    std::vector<double> out;
    for (std::size_t i = 1; i + 1 < knots_.size(); ++i) {
      double sl = (knots_[i].beta - knots_[i - 1].beta) /
                  (knots_[i].alpha - knots_[i - 1].alpha);
      double sr = (knots_[i + 1].beta - knots_[i].beta) /
                  (knots_[i + 1].alpha - knots_[i].alpha);
      if (sr > sl + tol) out.push_back(knots_[i].alpha);
    }
    return out;
  }

  /// Smallest alpha with f(alpha) > 0 staying 0 before it, or 0 if f > 0
  /// immediately. Used for the nth-root hypothesis f(x)=0 => x=0.
  bool positive_on_unit_interval(double tol = 1e-12) const {
    for (const Knot& k : knots_)
      if (k.alpha > tol && k.beta <= tol) return false;
    // Also catch a segment hitting zero past alpha=0.
    return (*this)(1e-6) > 0.0 || knots_.size() == 0;
  }

 private:
  std::vector<Knot> knots_;
};

inline int breakpoints(const PiecewiseLinearTf& f) {
  return static_cast<int>(f.breakpoint_locations().size());
}

/// f_{eps,delta} as an explicit piecewise-linear function.
inline PiecewiseLinearTf make_eps_delta_pwl(double eps, double delta) {
  TradeoffFunction f = make_eps_delta(eps, delta);
  std::vector<PiecewiseLinearTf::Knot> knots;
  knots.push_back({0.0, f(0.0)});
  double ee = std::exp(eps);
  // Crossings between the three linear branches, kept when interior.
  std::vector<double> xs;
  if (eps > 0.0) {
    // e^-eps(a - delta) = 1 - delta - e^eps + e^eps a
    double x = (ee + delta - 1.0 - std::exp(-eps) * delta) /
               (ee - std::exp(-eps));
    xs.push_back(x);
  }
  xs.push_back(delta);                       // zero branch meets e^-eps branch
  if (eps > 0.0) xs.push_back(1.0 - (1.0 - delta) / ee);  // zero meets e^eps
  std::sort(xs.begin(), xs.end());
  for (double x : xs)
    if (x > 1e-12 && x < 1.0 - 1e-12) knots.push_back({x, f(x)});
  knots.push_back({1.0, f(1.0)});
  // Deduplicate nearly-equal knots.
  std::vector<PiecewiseLinearTf::Knot> dedup;
  for (const auto& k : knots)
    if (dedup.empty() || k.alpha > dedup.back().alpha + 1e-12)
      dedup.push_back(k);
  return PiecewiseLinearTf(std::move(dedup));
}

/// Functional composition of piecewise-linear tradeoff functions.
/// The knots of f(g(.)) are g^{-1}(knots of f) united with the knots of g.
inline PiecewiseLinearTf compose_pwl(const PiecewiseLinearTf& f,
                                     const PiecewiseLinearTf& g) {
  std::vector<double> alphas;
  for (const auto& k : g.knots()) alphas.push_back(k.alpha);
  // Pull back each f-knot ordinate through g where g is strictly increasing.
  for (const auto& kf : f.knots()) {
    double target = kf.alpha;
    const auto& gk = g.knots();
    for (std::size_t i = 0; i + 1 < gk.size(); ++i) {
      double b0 = gk[i].beta, b1 = gk[i + 1].beta;
      if (b1 > b0 && target >= b0 - 1e-15 && target <= b1 + 1e-15) {
        double t = (target - b0) / (b1 - b0);
        alphas.push_back(gk[i].alpha + t * (gk[i + 1].alpha - gk[i].alpha));
      }
    }
  }
  std::sort(alphas.begin(), alphas.end());
  std::vector<PiecewiseLinearTf::Knot> knots;
  for (double a : alphas) {
    a = std::clamp(a, 0.0, 1.0);
    if (!knots.empty() && a <= knots.back().alpha + 1e-12) continue;
    knots.push_back({a, f(g(a))});
  }
  if (std::abs(knots.front().alpha) > 1e-12)
    knots.insert(knots.begin(), {0.0, f(g(0.0))});
  if (std::abs(knots.back().alpha - 1.0) > 1e-12)
    knots.push_back({1.0, f(g(1.0))});
  knots.front().alpha = 0.0;
  knots.back().alpha = 1.0;
  return PiecewiseLinearTf(std::move(knots));
}

enum class RootDecision { Impossible, Unknown };

struct NthRootResult {
  RootDecision decision;
  std::string reason;
};

/// Whether a nontrivial g with g^{on} = f can exist. Only the upper bound
/// from the breakpoint count is decidable: with k breakpoints no root of
/// order >= k+1 exists; below that the answer is open, never "possible".
inline NthRootResult decide_nth_root_exists(const PiecewiseLinearTf& f,
                                            int n) {
  if (n < 1) throw std::domain_error("decide_nth_root_exists: n must be >= 1");
  if (!f.positive_on_unit_interval())
    return {RootDecision::Unknown, "hypothesis f(x)=0 => x=0 violated"};
  int k = breakpoints(f);
  if (k < 1)
    return {RootDecision::Unknown, "f is trivial (no breakpoints)"};
  if (n >= k + 1) return {RootDecision::Impossible, ""};
  return {RootDecision::Unknown, "no decision procedure for n <= breakpoints"};
}

}  // namespace fdp

#endif  // FDPCND_PIECEWISE_HPP_
