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

#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "fdp/divisible.hpp"
#include "fdp/tradeoff.hpp"

namespace {

double grid_gap(const fdp::TradeoffFunction& a, const fdp::TradeoffFunction& b,
                int grid = 1001) {
  double worst = 0.0;
  for (int i = 0; i <= grid; ++i) {
    double x = static_cast<double>(i) / grid;
    worst = std::max(worst, std::abs(a(x) - b(x)));
  }
  return worst;
}

}  // namespace

TEST_CASE("eps-delta closed form", "[tradeoff]") {
  auto id = fdp::make_eps_delta(0.0, 0.0);
  CHECK(id(0.3) == Catch::Approx(0.3).margin(1e-15));

  double eps = std::log(2.0);
  auto f = fdp::make_eps_delta(eps, 0.0);
  double c = 1.0 / 3.0;  // 1/(1+e^eps)
  CHECK(f(1.0 - c) == Catch::Approx(c).margin(1e-14));

  auto g = fdp::make_eps_delta(1.0, 0.05);
  CHECK(g(0.5) == Catch::Approx(0.45 / std::exp(1.0)).margin(1e-15));
  CHECK(g(0.5) == Catch::Approx(0.16554574852714905).margin(1e-14));

  CHECK_THROWS_AS(fdp::make_eps_delta(-0.1, 0.0), std::domain_error);
  CHECK_THROWS_AS(fdp::make_eps_delta(1.0, 1.5), std::domain_error);
  CHECK_THROWS_AS(fdp::make_eps_delta(1.0, -0.1), std::domain_error);
}

TEST_CASE("gdp closed form", "[tradeoff]") {
  auto id = fdp::make_gdp(0.0);
  CHECK(id(0.7) == Catch::Approx(0.7).margin(1e-12));

  auto g1 = fdp::make_gdp(1.0);
  CHECK(g1(0.5) == Catch::Approx(0.15865525393145707).margin(1e-12));
  // Symmetric fixed point: f(1-c) = c at c = Phi(-mu/2).
  for (double mu : {0.5, 1.0, 3.0}) {
    auto g = fdp::make_gdp(mu);
    double c = fdp::norm_cdf(-mu / 2.0);
    CHECK(g(1.0 - c) == Catch::Approx(c).margin(1e-12));
  }
  CHECK_THROWS_AS(fdp::make_gdp(-1.0), std::domain_error);
}

TEST_CASE("laplace tradeoff closed form", "[tradeoff]") {
  for (double eps : {0.3, 1.0, 2.0}) {
    auto l = fdp::make_laplace_tf(eps);
    CHECK(l(0.5) == Catch::Approx(0.5 * std::exp(-eps)).margin(1e-14));
    CHECK(l(1.0) == Catch::Approx(1.0).margin(1e-14));
    // L_eps dominates f_{eps,0} everywhere.
    auto f = fdp::make_eps_delta(eps, 0.0);
    double worst = 0.0;
    for (int i = 0; i <= 400; ++i) {
      double a = i / 400.0;
      worst = std::min(worst, l(a) - f(a));
    }
    CHECK(worst >= -1e-12);
  }
  CHECK_THROWS_AS(fdp::make_laplace_tf(0.0), std::domain_error);
}

TEST_CASE("axioms hold on grid for all families", "[tradeoff]") {
  CHECK_NOTHROW(fdp::validate_tradeoff(fdp::make_eps_delta(1.0, 0.05), 1001));
  CHECK_NOTHROW(fdp::validate_tradeoff(fdp::make_gdp(1.5), 1001));
  CHECK_NOTHROW(fdp::validate_tradeoff(fdp::make_laplace_tf(0.7), 1001));
  CHECK_NOTHROW(fdp::validate_tradeoff(fdp::identity_tradeoff(), 1001));

  // A non-tradeoff function must be rejected.
  fdp::TradeoffFunction bad([](double a) { return a * a + 0.5; }, true);
  CHECK_THROWS_AS(fdp::validate_tradeoff(bad), std::invalid_argument);
}

TEST_CASE("compose and self_compose", "[tradeoff]") {
  auto f = fdp::make_eps_delta(1.0, 0.05);
  CHECK(grid_gap(fdp::compose(fdp::identity_tradeoff(), f), f) <= 1e-12);
  CHECK(grid_gap(fdp::compose(f, fdp::identity_tradeoff()), f) <= 1e-12);

  auto d1 = fdp::make_eps_delta(0.0, 0.1);
  auto d2 = fdp::make_eps_delta(0.0, 0.2);
  CHECK(grid_gap(fdp::compose(d1, d1), d2) <= 1e-12);
  CHECK(grid_gap(fdp::self_compose(d1, 2), d2) <= 1e-12);
  CHECK(grid_gap(fdp::self_compose(f, 1), f) == 0.0);

  // Gaussian shift additivity: G_mu^{ok} = G_{k mu}.
  CHECK(grid_gap(fdp::self_compose(fdp::make_gdp(0.6), 3),
                 fdp::make_gdp(1.8)) <= 1e-9);

  // Associativity is exact for functional composition.
  auto g = fdp::make_gdp(0.5);
  auto l = fdp::make_laplace_tf(0.8);
  CHECK(grid_gap(fdp::compose(fdp::compose(f, g), l),
                 fdp::compose(f, fdp::compose(g, l))) <= 1e-12);

  // Pure-DP composition strictly dominates the summed-epsilon form; the
  // two are not equal (the composition has two breakpoints).
  auto p1 = fdp::make_eps_delta(1.0, 0.0);
  auto p2 = fdp::make_eps_delta(0.7, 0.0);
  auto sum = fdp::make_eps_delta(1.7, 0.0);
  auto comp = fdp::compose(p1, p2);
  double min_gap = 1.0, max_gap = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    double a = i / 1000.0;
    min_gap = std::min(min_gap, comp(a) - sum(a));
    max_gap = std::max(max_gap, comp(a) - sum(a));
  }
  CHECK(min_gap >= -1e-12);
  CHECK(max_gap > 0.05);

  CHECK_THROWS_AS(fdp::self_compose(f, 0), std::domain_error);
}

TEST_CASE("divisible-family commutation within a family", "[tradeoff]") {
  // f_s o f_t = f_t o f_s = f_{s+t} holds inside each registered family.
  CHECK(grid_gap(fdp::compose(fdp::make_gdp(0.4), fdp::make_gdp(0.9)),
                 fdp::compose(fdp::make_gdp(0.9), fdp::make_gdp(0.4))) <=
        1e-10);
  CHECK(grid_gap(fdp::compose(fdp::make_gdp(0.4), fdp::make_gdp(0.9)),
                 fdp::make_gdp(1.3)) <= 1e-10);
  CHECK(grid_gap(
            fdp::compose(fdp::make_laplace_tf(0.4), fdp::make_laplace_tf(0.9)),
            fdp::make_laplace_tf(1.3)) <= 1e-12);
}

TEST_CASE("fixed point c", "[tradeoff]") {
  CHECK(fdp::fixed_point_c(fdp::identity_tradeoff()) ==
        Catch::Approx(0.5).margin(1e-12));
  for (double eps : {0.5, 1.0, 3.0}) {
    CHECK(fdp::fixed_point_c(fdp::make_eps_delta(eps, 0.0)) ==
          Catch::Approx(1.0 / (1.0 + std::exp(eps))).margin(1e-12));
  }
  for (double delta : {0.1, 0.5, 0.9}) {
    CHECK(fdp::fixed_point_c(fdp::make_eps_delta(0.0, delta)) ==
          Catch::Approx((1.0 - delta) / 2.0).margin(1e-12));
  }
}

TEST_CASE("tensor closed forms", "[tradeoff]") {
  auto g = fdp::tensor_closed_form(fdp::make_gdp(1.0), fdp::make_gdp(1.0));
  REQUIRE(g.has_value());
  CHECK(grid_gap(*g, fdp::make_gdp(std::sqrt(2.0))) <= 1e-12);

  auto z = fdp::tensor_closed_form(fdp::make_eps_delta(0.0, 0.1),
                                   fdp::make_eps_delta(0.0, 0.1));
  REQUIRE(z.has_value());
  CHECK(grid_gap(*z, fdp::make_eps_delta(0.0, 0.19)) <= 1e-12);

  auto m = fdp::tensor_closed_form(fdp::make_eps_delta(1.0, 0.0),
                                   fdp::make_eps_delta(0.0, 0.05));
  REQUIRE(m.has_value());
  CHECK(grid_gap(*m, fdp::make_eps_delta(1.0, 0.05)) <= 1e-12);

  // Tensoring with perfect privacy of one coordinate changes nothing.
  auto f = fdp::make_laplace_tf(2.0);
  auto t = fdp::tensor_closed_form(f, fdp::identity_tradeoff());
  REQUIRE(t.has_value());
  CHECK(grid_gap(*t, f) == 0.0);

  // No closed form across families.
  CHECK_FALSE(fdp::tensor_closed_form(fdp::make_laplace_tf(1.0),
                                      fdp::make_gdp(1.0))
                  .has_value());
  // Untagged inputs are unsupported.
  fdp::TradeoffFunction untagged([](double a) { return a * a; }, true);
  CHECK_FALSE(fdp::tensor_closed_form(untagged, f).has_value());
}

TEST_CASE("divisible family laws", "[tradeoff]") {
  auto check_family = [&](const fdp::DivisibleFamily& fam) {
    CHECK(grid_gap(fam.at(0.0), fdp::identity_tradeoff()) <= 1e-12);
    for (double s : {0.25, 1.0})
      for (double t : {0.5, 2.0}) {
        CHECK(grid_gap(fdp::compose(fam.at(s), fam.at(t)), fam.at(s + t)) <=
              1e-9);
      }
    CHECK(fam.at(0.5).nontrivial());
    CHECK_THROWS_AS(fam.at(-1.0), std::domain_error);
  };
  check_family(fdp::DivisibleFamily::gdp(1.0));
  check_family(fdp::DivisibleFamily::laplace(1.0));
  check_family(fdp::DivisibleFamily::zero_delta(0.2));
}
