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

#include "fdp/piecewise.hpp"

TEST_CASE("piecewise eps-delta matches closed form", "[piecewise]") {
  for (double eps : {0.0, 0.5, 1.0, 2.0})
    for (double delta : {0.0, 0.05, 0.3}) {
      auto pwl = fdp::make_eps_delta_pwl(eps, delta);
      auto f = fdp::make_eps_delta(eps, delta);
      for (int i = 0; i <= 1000; ++i) {
        double a = i / 1000.0;
        REQUIRE(pwl(a) == Catch::Approx(f(a)).margin(1e-12));
      }
    }
}

TEST_CASE("breakpoint counts", "[piecewise]") {
  // Pure DP: a single kink at 1 - c, c = 1/(1+e^eps).
  auto p = fdp::make_eps_delta_pwl(1.0, 0.0);
  auto locs = p.breakpoint_locations();
  REQUIRE(locs.size() == 1);
  CHECK(locs[0] ==
        Catch::Approx(1.0 - 1.0 / (1.0 + std::exp(1.0))).margin(1e-9));

  // The identity line has no breakpoints.
  CHECK(fdp::breakpoints(fdp::make_eps_delta_pwl(0.0, 0.0)) == 0);

  // f_{0,delta} kinks once, where the zero branch meets the slope-1 branch.
  auto zd = fdp::make_eps_delta_pwl(0.0, 0.3);
  auto zlocs = zd.breakpoint_locations();
  REQUIRE(zlocs.size() == 1);
  CHECK(zlocs[0] == Catch::Approx(0.3).margin(1e-12));

  // Composing two one-kink functions yields two kinks.
  auto c = fdp::compose_pwl(fdp::make_eps_delta_pwl(1.0, 0.0),
                            fdp::make_eps_delta_pwl(1.0, 0.0));
  CHECK(fdp::breakpoints(c) == 2);
}

TEST_CASE("compose_pwl matches functional composition", "[piecewise]") {
  auto f = fdp::make_eps_delta_pwl(1.0, 0.05);
  auto g = fdp::make_eps_delta_pwl(0.7, 0.0);
  auto fg = fdp::compose_pwl(f, g);
  for (int i = 0; i <= 2000; ++i) {
    double a = i / 2000.0;
    REQUIRE(fg(a) == Catch::Approx(f(g(a))).margin(1e-10));
  }
}

TEST_CASE("nth root decision", "[piecewise]") {
  // One breakpoint: no square root (or higher) can exist.
  auto f1 = fdp::make_eps_delta_pwl(1.0, 0.0);
  CHECK(fdp::decide_nth_root_exists(f1, 2).decision ==
        fdp::RootDecision::Impossible);
  CHECK(fdp::decide_nth_root_exists(f1, 5).decision ==
        fdp::RootDecision::Impossible);
  // n = 1 trivially has the root f itself, but the procedure only rules
  // out; for n <= breakpoints it must stay undecided.
  CHECK(fdp::decide_nth_root_exists(f1, 1).decision ==
        fdp::RootDecision::Unknown);

  // Triple composition has >= 3 breakpoints, so order-4 roots are out.
  auto f3 = fdp::compose_pwl(f1, fdp::compose_pwl(f1, f1));
  int k = fdp::breakpoints(f3);
  CHECK(k >= 3);
  CHECK(fdp::decide_nth_root_exists(f3, k + 1).decision ==
        fdp::RootDecision::Impossible);
  CHECK(fdp::decide_nth_root_exists(f3, k).decision ==
        fdp::RootDecision::Unknown);

  // f_{0,delta} violates the hypothesis f(x)=0 => x=0.
  auto z = fdp::decide_nth_root_exists(fdp::make_eps_delta_pwl(0.0, 0.3), 2);
  CHECK(z.decision == fdp::RootDecision::Unknown);
  CHECK(z.reason == "hypothesis f(x)=0 => x=0 violated");

  CHECK_THROWS_AS(fdp::decide_nth_root_exists(f1, 0), std::domain_error);
}

TEST_CASE("knot validation", "[piecewise]") {
  using K = fdp::PiecewiseLinearTf::Knot;
  // Non-convex knot sequences are rejected.
  CHECK_THROWS_AS(fdp::PiecewiseLinearTf({K{0.0, 0.0}, K{0.5, 0.5}, K{1.0, 0.6}}),
                  std::invalid_argument);
  // Endpoints must span [0,1].
  CHECK_THROWS_AS(fdp::PiecewiseLinearTf({K{0.1, 0.0}, K{1.0, 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(fdp::PiecewiseLinearTf({K{0.0, 0.0}}), std::invalid_argument);
  // A valid convex polyline passes and evaluates by interpolation.
  fdp::PiecewiseLinearTf ok({K{0.0, 0.0}, K{0.5, 0.1}, K{1.0, 1.0}});
  CHECK(ok(0.25) == Catch::Approx(0.05).margin(1e-15));
  CHECK(ok(0.75) == Catch::Approx(0.55).margin(1e-15));
}
