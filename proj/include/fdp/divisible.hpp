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

#ifndef FDPCND_DIVISIBLE_HPP_
#define FDPCND_DIVISIBLE_HPP_

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "fdp/tradeoff.hpp"

namespace fdp {

enum class FamilyLabel { GdpFamily, LaplaceFamily, ZeroDeltaFamily, Custom };

/// One-parameter monoid of tradeoff functions under functional composition:
/// at(s) o at(t) = at(s+t), at(0) = Id, at(s) nontrivial for s > 0.
class DivisibleFamily {
 public:
  DivisibleFamily(FamilyLabel label, double param,
                  std::function<TradeoffFunction(double)> at)
      : label_(label), param_(param), at_(std::move(at)) {}

  TradeoffFunction at(double t) const {
    if (t < 0.0) throw std::domain_error("DivisibleFamily: t must be >= 0");
    return at_(t);
  }

  FamilyLabel label() const { return label_; }
  double param() const { return param_; }

  static DivisibleFamily gdp(double mu) {
    if (mu <= 0.0) throw std::domain_error("gdp family: mu must be > 0");
    return DivisibleFamily(FamilyLabel::GdpFamily, mu,
                           [mu](double t) { return make_gdp(t * mu); });
  }

  static DivisibleFamily laplace(double eps) {
    if (eps <= 0.0)
      throw std::domain_error("laplace family: eps must be > 0");
    return DivisibleFamily(FamilyLabel::LaplaceFamily, eps, [eps](double t) {
      return t == 0.0 ? identity_tradeoff() : make_laplace_tf(t * eps);
    });
  }

  static DivisibleFamily zero_delta(double delta) {
    if (delta <= 0.0 || delta > 1.0)
      throw std::domain_error("zero-delta family: delta must be in (0,1]");
    return DivisibleFamily(
        FamilyLabel::ZeroDeltaFamily, delta, [delta](double t) {
          return make_eps_delta(0.0, std::min(t * delta, 1.0));
        });
  }

 private:
  FamilyLabel label_;
  double param_;
  std::function<TradeoffFunction(double)> at_;
};

}  // namespace fdp

#endif  // FDPCND_DIVISIBLE_HPP_
