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
#include "fdp/verify_cnd.hpp"

TEST_CASE("dkw band", "[verify]") {
  CHECK(fdp::dkw_band(100000, 0.01) ==
        Catch::Approx(std::sqrt(std::log(200.0) / 200000.0)).margin(1e-15));
  CHECK(fdp::dkw_band(400, 0.05) > fdp::dkw_band(1600, 0.05));
}

TEST_CASE("empirical curve at shift zero is the identity", "[verify]") {
  auto emp = fdp::empirical_tradeoff(fdp::tulap(1.0), 0.0, 10000, 3);
  for (int i = 0; i <= 100; ++i) {
    double a = i / 100.0;
    REQUIRE(emp.value(a) == Catch::Approx(a).margin(1e-12));
  }
}

TEST_CASE("empirical curve matches closed forms", "[verify]") {
  const int n = 100000;
  {
    auto emp = fdp::empirical_tradeoff(fdp::tulap(1.0), 1.0, n, 31);
    auto e = fdp::dominance_check(fdp::make_eps_delta(1.0, 0.0), emp,
                                  /*one_sided=*/false);
    INFO("tulap stat=" << e.statistic << " band=" << emp.band);
    CHECK(e.pass);
  }
  {
    auto emp = fdp::empirical_tradeoff(fdp::gaussian_cnd(1.0), 0.5, n, 32);
    auto e = fdp::dominance_check(fdp::make_gdp(0.5), emp,
                                  /*one_sided=*/false);
    INFO("gauss stat=" << e.statistic << " band=" << emp.band);
    CHECK(e.pass);
  }
  CHECK_THROWS_AS(fdp::empirical_tradeoff(fdp::tulap(1.0), 1.0, 100, 1),
                  std::invalid_argument);
}

TEST_CASE("same seed reproduces the curve bit for bit", "[verify]") {
  auto a = fdp::empirical_tradeoff(fdp::laplace_cnd(1.0), 1.0, 20000, 9);
  auto b = fdp::empirical_tradeoff(fdp::laplace_cnd(1.0), 1.0, 20000, 9);
  REQUIRE(a.alphas == b.alphas);
  REQUIRE(a.betas == b.betas);
  CHECK(a.seed == 9);
}

TEST_CASE("analytic dominance checks", "[verify]") {
  auto pure = fdp::make_eps_delta(1.0, 0.0);
  auto lap = fdp::make_laplace_tf(1.0);
  // Laplace testing is harder than the pure-DP envelope at every alpha ...
  CHECK(fdp::dominance_check(pure, lap, /*one_sided=*/true).pass);
  // ... but they are not the same function.
  CHECK_FALSE(fdp::dominance_check(pure, lap, /*one_sided=*/false).pass);
  CHECK(fdp::dominance_check(pure, pure, /*one_sided=*/false).pass);
  CHECK(fdp::dominance_check(fdp::make_eps_delta(0.0, 0.2),
                             fdp::make_eps_delta(0.0, 0.19),
                             /*one_sided=*/true)
            .pass);
}

TEST_CASE("otimes versus circ deltas", "[verify]") {
  auto e = fdp::check_otimes_circ(0.1, 0.1, 2);
  CHECK(e.pass);
  CHECK(e.statistic == Catch::Approx(0.38).margin(1e-12));
  CHECK(e.threshold == Catch::Approx(0.36).margin(1e-12));

  auto sat = fdp::check_otimes_circ(0.5, 0.5, 3);
  CHECK(sat.pass);
  CHECK(sat.statistic == Catch::Approx(1.0).margin(0.0));
  CHECK(sat.threshold == Catch::Approx(1.0).margin(0.0));

  // k = 1 makes both sides the plain tensor delta.
  auto one = fdp::check_otimes_circ(0.2, 0.3, 1);
  CHECK(one.pass);
  CHECK(one.statistic == Catch::Approx(one.threshold).margin(1e-15));

  CHECK_THROWS_AS(fdp::check_otimes_circ(0.0, 0.1, 2), std::domain_error);
  CHECK_THROWS_AS(fdp::check_otimes_circ(0.1, 0.1, 0), std::domain_error);
}

TEST_CASE("ks test", "[verify]") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> samples(50000);
  for (auto& s : samples) s = gauss(rng);
  CHECK(fdp::ks_test(samples, [](double x) { return fdp::norm_cdf(x); }, 0.01)
            .pass);
  // A shifted reference cdf must be rejected.
  CHECK_FALSE(
      fdp::ks_test(samples, [](double x) { return fdp::norm_cdf(x - 0.5); },
                   0.01)
          .pass);
  CHECK_THROWS_AS(
      fdp::ks_test(samples, [](double x) { return fdp::norm_cdf(x); }, 0.2),
      std::domain_error);
  std::vector<double> tiny(10, 0.0);
  CHECK_THROWS_AS(
      fdp::ks_test(tiny, [](double x) { return fdp::norm_cdf(x); }, 0.05),
      std::invalid_argument);
}

TEST_CASE("convex cleanup", "[verify]") {
  fdp::EmpiricalTradeoff raw;
  raw.alphas = {0.0, 0.25, 0.5, 0.75, 1.0};
  raw.betas = {0.0, 0.2, 0.2, 0.4, 1.0};
  auto hull = raw.convex_cleanup();
  // The hull stays at or below the raw polyline and is convex.
  for (int i = 0; i <= 100; ++i) {
    double a = i / 100.0;
    REQUIRE(hull.value(a) <= raw.value(a) + 1e-12);
  }
  for (std::size_t i = 1; i + 1 < hull.alphas.size(); ++i) {
    double sl = (hull.betas[i] - hull.betas[i - 1]) /
                (hull.alphas[i] - hull.alphas[i - 1]);
    double sr = (hull.betas[i + 1] - hull.betas[i]) /
                (hull.alphas[i + 1] - hull.alphas[i]);
    CHECK(sr >= sl - 1e-12);
  }
  CHECK(hull.value(0.0) == 0.0);
  CHECK(hull.value(1.0) == 1.0);
}

TEST_CASE("full cnd verification", "[verify]") {
  auto report = fdp::verify_cnd(fdp::tulap(1.0), fdp::make_eps_delta(1.0, 0.0),
                                {0.25, 0.5, 0.75, 1.0}, 20000, 7);
  for (const auto& e : report.entries) {
    INFO(e.name << " stat=" << e.statistic << " threshold=" << e.threshold);
    CHECK(e.pass);
  }
  // Rescaled distributions verify against the composed tradeoff.
  auto scaled = fdp::group_scale_check(fdp::tulap(0.5), 2, 20000, 8);
  for (const auto& e : scaled.entries) {
    INFO(e.name << " stat=" << e.statistic << " threshold=" << e.threshold);
    CHECK(e.pass);
  }
}
