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
#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "fdp/cnd.hpp"
#include "fdp/verify.hpp"

namespace {

std::vector<double> draw(const fdp::Cnd& F, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = F.sample(rng);
  return out;
}

}  // namespace

TEST_CASE("tulap closed form", "[cnd]") {
  double eps = 1.0;
  auto F = fdp::tulap(eps);
  double ee = std::exp(eps);
  double t = (ee - 1.0) / (ee + 1.0);
  double c = 1.0 / (1.0 + ee);

  CHECK(F.density(0.0) == Catch::Approx(t).margin(1e-15));
  CHECK(F.cdf(0.0) == Catch::Approx(0.5).margin(1e-15));
  CHECK(F.cdf(0.5) == Catch::Approx(1.0 - c).margin(1e-14));
  CHECK(F.cdf(0.5) == Catch::Approx(0.7310585786300049).margin(1e-14));

  // Symmetry and quantile roundtrip.
  for (double x : {-3.7, -1.2, -0.4, 0.0, 0.3, 1.9, 4.6}) {
    CHECK(F.cdf(x) + F.cdf(-x) == Catch::Approx(1.0).margin(1e-14));
    double p = F.cdf(x);
    if (p > 0.0 && p < 1.0)
      CHECK(F.quantile(p) == Catch::Approx(x).margin(1e-9));
  }
  for (double p : {0.001, 0.1, 0.5, 0.73, 0.999}) {
    CHECK(F.cdf(F.quantile(p)) == Catch::Approx(p).margin(1e-12));
  }
  CHECK_THROWS_AS(fdp::tulap(0.0), std::domain_error);
  CHECK_THROWS_AS(F.quantile(0.0), std::domain_error);
}

TEST_CASE("tulap recurrence and cdf identity", "[cnd]") {
  for (double eps : {0.5, 1.0, 5.0}) {
    auto F = fdp::tulap(eps);
    auto f = fdp::make_eps_delta(eps, 0.0);
    // The defining recurrence F(x) = 1 - f(1 - F(x - 1)).
    for (int i = 0; i <= 120; ++i) {
      double x = -6.0 + 12.0 * i / 120.0;
      REQUIRE(F.cdf(x) ==
              Catch::Approx(1.0 - f(1.0 - F.cdf(x - 1.0))).margin(1e-12));
    }
    // T(N, N+1) recovers f_{eps,0} exactly.
    auto via = fdp::from_cnd_cdf(F);
    for (int i = 0; i <= 400; ++i) {
      double a = i / 400.0;
      REQUIRE(via(a) == Catch::Approx(f(a)).margin(1e-9));
    }
  }
}

TEST_CASE("construct_cnd reproduces tulap", "[cnd]") {
  double eps = 1.0;
  auto built = fdp::construct_cnd(fdp::make_eps_delta(eps, 0.0));
  auto F = fdp::tulap(eps);
  for (int i = 0; i <= 240; ++i) {
    double x = -6.0 + 12.0 * i / 240.0;
    REQUIRE(built.cdf(x) == Catch::Approx(F.cdf(x)).margin(1e-9));
  }
  double t = (std::exp(eps) - 1.0) / (std::exp(eps) + 1.0);
  CHECK(built.density(0.1) == Catch::Approx(t).margin(1e-5));
  CHECK(built.quantile(0.5) == Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("construct_cnd for gdp", "[cnd]") {
  auto f = fdp::make_gdp(1.0);
  auto built = fdp::construct_cnd(f);
  double c = fdp::fixed_point_c(f);
  CHECK(built.cdf(0.0) == Catch::Approx(0.5).margin(1e-12));
  CHECK(built.cdf(0.5) == Catch::Approx(1.0 - c).margin(1e-9));
  CHECK(built.cdf(-0.5) == Catch::Approx(c).margin(1e-9));
  // The recursion respects the recurrence one cell out.
  CHECK(built.cdf(1.5) ==
        Catch::Approx(1.0 - f(1.0 - built.cdf(0.5))).margin(1e-12));
  // T(N, N+1) of the construction recovers f.
  auto via = fdp::from_cnd_cdf(built);
  for (int i = 1; i < 100; ++i) {
    double a = i / 100.0;
    REQUIRE(via(a) == Catch::Approx(f(a)).margin(1e-7));
  }

  // Perfect privacy has no nontrivial CND.
  CHECK_THROWS_AS(fdp::construct_cnd(fdp::identity_tradeoff()),
                  std::invalid_argument);
}

TEST_CASE("scale_group", "[cnd]") {
  auto F = fdp::tulap(1.0);
  // k = 1 is the distribution itself.
  auto same = fdp::scale_group(F, 1);
  CHECK(same.cdf(0.37) == Catch::Approx(F.cdf(0.37)).margin(0.0));

  auto half = fdp::scale_group(F, 2);
  CHECK(half.cdf(0.25) == Catch::Approx(F.cdf(0.5)).margin(1e-15));
  CHECK(half.quantile(0.7) == Catch::Approx(F.quantile(0.7) / 2.0).margin(1e-15));
  CHECK(half.density(0.25) == Catch::Approx(2.0 * F.density(0.5)).margin(1e-15));

  // The scaled distribution is a CND for the 2-fold composition.
  auto via = fdp::from_cnd_cdf(half);
  auto target = fdp::self_compose(fdp::make_eps_delta(1.0, 0.0), 2);
  for (int i = 0; i <= 400; ++i) {
    double a = i / 400.0;
    REQUIRE(via(a) == Catch::Approx(target(a)).margin(1e-9));
  }

  // Gaussian rescaling stays inside the family: N(0,1) scaled by 3 is
  // N(0,1/9), the CND for G_3.
  auto g3 = fdp::scale_group(fdp::gaussian_cnd(1.0), 3);
  auto direct = fdp::gaussian_cnd(3.0);
  for (double x : {-1.0, -0.2, 0.0, 0.4, 1.3}) {
    CHECK(g3.cdf(x) == Catch::Approx(direct.cdf(x)).margin(1e-12));
  }
  auto via3 = fdp::from_cnd_cdf(g3);
  auto gdp3 = fdp::make_gdp(3.0);
  for (int i = 1; i < 100; ++i) {
    double a = i / 100.0;
    REQUIRE(via3(a) == Catch::Approx(gdp3(a)).margin(1e-9));
  }

  CHECK_THROWS_AS(fdp::scale_group(F, 0), std::domain_error);
}

TEST_CASE("samplers match their cdfs", "[cnd]") {
  const int n = 100000;
  auto check = [&](const fdp::Cnd& F, std::uint64_t seed) {
    auto e = fdp::ks_test(draw(F, n, seed), F.cdf, 0.001);
    INFO(fdp::to_string(F.kind) << " stat=" << e.statistic
                                << " crit=" << e.threshold);
    CHECK(e.pass);
  };
  check(fdp::tulap(1.0), 11);
  check(fdp::gaussian_cnd(1.0), 12);
  check(fdp::laplace_cnd(2.0), 13);
  check(fdp::uniform_cnd(0.2), 14);
  check(fdp::scale_group(fdp::tulap(0.5), 2), 15);

  // The geometric-difference sampler agrees with the inverse-cdf one.
  auto F = fdp::tulap(1.0);
  std::mt19937_64 rng(16);
  std::vector<double> fast(n);
  for (int i = 0; i < n; ++i) fast[i] = fdp::tulap_fast_sample(1.0, rng);
  auto e = fdp::ks_test(fast, F.cdf, 0.001);
  INFO("tulap_fast stat=" << e.statistic << " crit=" << e.threshold);
  CHECK(e.pass);
}
