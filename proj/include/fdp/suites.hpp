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

#ifndef FDPCND_SUITES_HPP_
#define FDPCND_SUITES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fdp/cnd.hpp"
#include "fdp/divisible.hpp"
#include "fdp/io.hpp"
#include "fdp/multivariate.hpp"
#include "fdp/pld.hpp"
#include "fdp/report.hpp"
#include "fdp/tradeoff.hpp"
#include "fdp/verify.hpp"
#include "fdp/verify_cnd.hpp"

namespace fdp {

namespace suites_detail {

/// Worst recurrence violation of a CND over x in [-6,6]: the cdf must
/// step through its tradeoff function in both directions.
inline double recurrence_gap(const Cnd& F, int grid = 241) {
  const TradeoffFunction& f = F.source_f;
  double worst = 0.0;
  for (int i = 0; i <= grid; ++i) {
    double x = -6.0 + 12.0 * i / grid;
    double up = F.cdf(x + 1.0);
    if (up < 1.0 - 1e-12)
      worst = std::max(worst, std::abs(F.cdf(x) - f(up)));
    double dn = F.cdf(x - 1.0);
    if (dn > 1e-12)
      worst = std::max(worst, std::abs(F.cdf(x) - (1.0 - f(1.0 - dn))));
  }
  return worst;
}

inline double cdf_gap(const std::function<double(double)>& a,
                      const std::function<double(double)>& b, double lo,
                      double hi, int grid) {
  double worst = 0.0;
  for (int i = 0; i <= grid; ++i) {
    double x = lo + (hi - lo) * i / grid;
    worst = std::max(worst, std::abs(a(x) - b(x)));
  }
  return worst;
}

inline double curve_gap(const EmpiricalTradeoff& curve,
                        const TradeoffFunction& f, int grid = 1001) {
  double worst = 0.0;
  for (int i = 0; i <= grid; ++i) {
    double a = static_cast<double>(i) / grid;
    worst = std::max(worst, std::abs(curve.value(a) - f(a)));
  }
  return worst;
}

inline std::vector<std::vector<double>> random_ball_shifts(
    const NormSpec& norm, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::vector<double>> out;
  for (int i = 0; i < count; ++i) {
    std::vector<double> v(norm.dim);
    for (double& x : v) x = gauss(rng);
    double n = norm(v);
    for (double& x : v) x /= n;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace suites_detail

/// Closed-form inequality checks plus the i.i.d.-Laplace l1 dominance run.
inline TestReport run_inequalities(std::uint64_t seed, int n_mc = 100000) {
  TestReport report;
  report.seed = seed;
  report.config["suite"] = "inequalities";
  report.config["n_mc"] = std::to_string(n_mc);

  TestEntry example = check_otimes_circ(0.1, 0.1, 2);
  example.name = "doesnt_commute_038_036";
  example.pass = example.pass && std::abs(example.statistic - 0.38) < 1e-12 &&
                 std::abs(example.threshold - 0.36) < 1e-12;
  report.entries.push_back(example);

  // Tensor beats composition in the zero-eps family: the tensored delta
  // never exceeds the composed delta.
  double worst = -1.0;
  for (int i = 1; i <= 50; ++i)
    for (int j = 1; j <= 50; ++j) {
      double d1 = static_cast<double>(i) / 50.0;
      double d2 = static_cast<double>(j) / 50.0;
      double tensor = 1.0 - (1.0 - d1) * (1.0 - d2);
      double comp = std::min(1.0, d1 + d2);
      worst = std::max(worst, tensor - comp);
    }
  report.add("otimes_le_circ_grid_50x50", worst <= 0.0, worst, 0.0);

  MvCnd mech = iid_l1_cnd(laplace_cnd(1.0), 2);
  auto shifts =
      suites_detail::random_ball_shifts(mech.norm, 20, seed ^ 0x11ull);
  std::uint64_t stream = seed + 100;
  bool all = true;
  double worst_dom = 0.0;
  for (const auto& v : shifts) {
    ++stream;
    EmpiricalTradeoff emp = empirical_tradeoff_vec(mech.density, mech.sampler,
                                                   v, n_mc, stream);
    TestEntry dom = dominance_check(mech.target_f, emp, /*one_sided=*/true);
    all = all && dom.pass;
    worst_dom = std::max(worst_dom, dom.statistic);
  }
  report.add("iid_laplace_l1_dominance_20_shifts", all, worst_dom, 0.0);
  return report;
}

/// Convergence of the scaled-limit construction for the three divisible
/// families, checked against their known log-concave limits.
inline TestReport run_limits(std::uint64_t seed, double gap = 0.01) {
  TestReport report;
  report.seed = seed;
  report.config["suite"] = "limits";
  report.config["target_gap"] = format_double(gap);

  {
    auto [cnd, diag] = logconcave_limit(DivisibleFamily::gdp(1.0), gap);
    double worst = suites_detail::cdf_gap(
        cnd.cdf, [](double x) { return norm_cdf(x); }, -5.0, 5.0, 1001);
    report.add("limit_gdp_vs_normal", diag.converged && worst <= gap, worst,
               gap, "error_bound=" + format_double(diag.error_bound));
  }
  {
    auto [cnd, diag] = logconcave_limit(DivisibleFamily::laplace(1.0), gap);
    double worst = suites_detail::cdf_gap(
        cnd.cdf, [](double x) { return laplace_cdf_std(x); }, -5.0, 5.0, 1001);
    report.add("limit_laplace_vs_laplace", diag.converged && worst <= gap,
               worst, gap, "error_bound=" + format_double(diag.error_bound));
  }
  {
    auto [cnd, diag] = logconcave_limit(DivisibleFamily::zero_delta(0.2), gap);
    double worst = suites_detail::cdf_gap(
        cnd.cdf,
        [](double x) { return std::clamp(0.2 * x + 0.5, 0.0, 1.0); }, -5.0,
        5.0, 1001);
    report.add("limit_zero_delta_vs_uniform", diag.converged && worst <= gap,
               worst, gap, "error_bound=" + format_double(diag.error_bound));
  }
  return report;
}

/// End-to-end acceptance run: one entry per criterion.
inline TestReport run_acceptance(std::uint64_t seed, int n_mc = 100000) {
  TestReport report;
  report.seed = seed;
  report.config["suite"] = "acceptance";
  report.config["n_mc"] = std::to_string(n_mc);

  {  // 1: the recursion construction reproduces Tulap exactly.
    double worst_cdf = 0.0, worst_den = 0.0;
    for (double eps : {0.5, 1.0, 5.0}) {
      Cnd built = construct_cnd(make_eps_delta(eps, 0.0));
      Cnd tl = tulap(eps);
      worst_cdf = std::max(
          worst_cdf, suites_detail::cdf_gap(built.cdf, tl.cdf, -6.0, 6.0, 2000));
      double t = (std::exp(eps) - 1.0) / (std::exp(eps) + 1.0);
      for (int i = 1; i < 100; ++i) {
        double x = -0.5 + static_cast<double>(i) / 100.0;
        worst_den = std::max(worst_den, std::abs(tl.density(x) - t));
      }
    }
    report.add("criterion_01_tulap_uniqueness",
               worst_cdf <= 1e-9 && worst_den <= 1e-10, worst_cdf, 1e-9,
               "density_gap=" + format_double(worst_den));
  }

  {  // 2: cdf recurrence for every shipped distribution kind.
    double worst = 0.0;
    std::string worst_kind = "none";
    std::vector<Cnd> shipped = {tulap(1.0), tulap(0.5), gaussian_cnd(1.0),
                                laplace_cnd(1.0), uniform_cnd(0.2),
                                construct_cnd(make_gdp(1.0)),
                                construct_cnd(make_laplace_tf(0.7))};
    for (const Cnd& F : shipped) {
      double g = suites_detail::recurrence_gap(F);
      if (g > worst) {
        worst = g;
        worst_kind = to_string(F.kind);
      }
    }
    report.add("criterion_02_cnd_recurrence", worst <= 1e-8, worst, 1e-8,
               "worst_kind=" + worst_kind);
  }

  {  // 3: limit construction against the three closed-form limits.
    TestReport limits = run_limits(seed);
    double worst = 0.0;
    for (const auto& e : limits.entries) worst = std::max(worst, e.statistic);
    report.add("criterion_03_logconcave_limits", limits.all_pass(), worst,
               0.01);
  }

  {  // 4: group-then-compose versus compose-then-group deltas.
    TestEntry e = check_otimes_circ(0.1, 0.1, 2);
    bool exact = std::abs(e.statistic - 0.38) < 1e-12 &&
                 std::abs(e.threshold - 0.36) < 1e-12;
    report.add("criterion_04_doesnt_commute", e.pass && exact, e.statistic,
               e.threshold, e.details);
  }

  {  // 5: sup-norm mechanism identities across dimensions.
    bool all = true;
    double worst = 0.0;
    std::string details;
    std::uint64_t stream = seed + 500;
    for (int d : {2, 3, 5}) {
      MvCnd mech = linf_mechanism(1.0, d);
      std::mt19937_64 rng(seed ^ static_cast<std::uint64_t>(d));
      std::vector<double> stat(static_cast<std::size_t>(n_mc));
      for (int i = 0; i < n_mc; ++i) {
        std::vector<double> x = mech.sampler(rng);
        auto [mn, mx] = std::minmax_element(x.begin(), x.end());
        stat[static_cast<std::size_t>(i)] = *mn + *mx;
      }
      TestEntry ks = ks_test(stat, [](double s) {
        return s < 0.0 ? 0.5 * std::exp(0.5 * s) : 1.0 - 0.5 * std::exp(-0.5 * s);
      }, 0.01);
      all = all && ks.pass;

      EmpiricalTradeoff at_ones = empirical_tradeoff_vec(
          mech.density, mech.sampler, mech.worst_shift, n_mc, ++stream);
      TestEntry eq = dominance_check(mech.target_f, at_ones, false);
      all = all && eq.pass;
      worst = std::max(worst, eq.statistic);

      auto shifts = suites_detail::random_ball_shifts(
          mech.norm, 20, seed ^ (0x50ull + static_cast<std::uint64_t>(d)));
      for (const auto& v : shifts) {
        EmpiricalTradeoff emp = empirical_tradeoff_vec(
            mech.density, mech.sampler, v, n_mc, ++stream);
        TestEntry dom = dominance_check(mech.target_f, emp, true);
        all = all && dom.pass;
      }
      details += "d" + std::to_string(d) + "_ks=" + format_double(ks.statistic) +
                 " ";
    }
    report.add("criterion_05_linf_mechanism", all, worst, 0.0, details);
  }

  {  // 6: Gaussian multivariate CND, identity covariance, sup norm.
    Eigen::MatrixXd sigma = Eigen::MatrixXd::Identity(3, 3);
    MvCnd g = gaussian_mv_cnd(sigma, NormSpec::linf(3), seed);
    double vs_gap = 0.0;
    for (double v : g.worst_shift) vs_gap = std::max(vs_gap, std::abs(v - 1.0));
    double mu = std::sqrt(3.0);
    WorstShiftResult ws = worst_shift_gaussian(sigma, NormSpec::linf(3), seed);
    double mu_gap = std::abs(ws.objective - mu);
    EmpiricalTradeoff emp = empirical_tradeoff_vec(
        g.density, g.sampler, g.worst_shift, n_mc, seed + 600);
    TestEntry eq = dominance_check(g.target_f, emp, false);
    report.add("criterion_06_gaussian_mv",
               vs_gap <= 1e-10 && mu_gap <= 1e-10 && eq.pass, eq.statistic,
               0.0,
               "vstar_gap=" + format_double(vs_gap) +
                   " mu_gap=" + format_double(mu_gap));
  }

  {  // 7: uniform cube against the total-variation tradeoff.
    double delta = 0.2;
    int d = 3;
    MvCnd cube = uniform_cube_cnd(delta, d, NormSpec::linf(d), seed);
    double a_expect = std::pow(1.0 - delta, d);
    double a_got = 1.0;
    for (double v : cube.worst_shift)
      a_got *= 1.0 - delta * std::abs(v);
    EmpiricalTradeoff emp = empirical_tradeoff_vec(
        cube.density, cube.sampler, cube.worst_shift, n_mc, seed + 700);
    TestEntry eq = dominance_check(cube.target_f, emp, false);
    report.add("criterion_07_uniform_cube",
               std::abs(a_got - a_expect) <= 1e-12 && eq.pass, eq.statistic,
               0.0, "A=" + format_double(a_got));
  }

  {  // 8: numeric privacy-loss convolution against the closed forms.
    EmpiricalTradeoff t1 = tensor_via_pld(tulap(1.0), uniform_cnd(0.05), 10000);
    double g1 = suites_detail::curve_gap(t1, make_eps_delta(1.0, 0.05));
    EmpiricalTradeoff t2 =
        tensor_via_pld(gaussian_cnd(1.0), gaussian_cnd(1.0), 10000);
    double g2 = suites_detail::curve_gap(t2, make_gdp(kSqrt2));
    bool pass = g1 <= t1.band && t1.band <= 0.01 && g2 <= t2.band &&
                t2.band <= 0.01;
    report.add("criterion_08_tensor_pld", pass, std::max(g1, g2),
               std::min(t1.band, t2.band),
               "bound1=" + format_double(t1.band) +
                   " bound2=" + format_double(t2.band));
  }

  {  // 9: inequality suite.
    TestReport ineq = run_inequalities(seed, n_mc);
    double worst = 0.0;
    for (const auto& e : ineq.entries) worst = std::max(worst, e.statistic);
    report.add("criterion_09_inequalities", ineq.all_pass(), worst, 0.0);
  }

  {  // 10: negative controls must fail exactly where the theory says.
    TestReport lap =
        verify_cnd(laplace_cnd(1.0), make_eps_delta(1.0, 0.0), {0.5, 1.0},
                   n_mc, seed + 1000);
    bool prop1_pass = true, prop2_fail = false;
    for (const auto& e : lap.entries) {
      if (e.name.rfind("property1", 0) == 0) prop1_pass = prop1_pass && e.pass;
      if (e.name.rfind("property2", 0) == 0) prop2_fail = !e.pass;
    }
    bool rejected = false;
    try {
      iid_l1_cnd(tulap(1.0), 2);
    } catch (const std::invalid_argument&) {
      rejected = true;
    }
    report.add("criterion_10_negative_controls",
               prop1_pass && prop2_fail && rejected,
               prop1_pass ? 1.0 : 0.0, 1.0,
               std::string("laplace_prop2_fails=") +
                   (prop2_fail ? "yes" : "no") + " tulap_l1_rejected=" +
                   (rejected ? "yes" : "no"));
  }

  {  // 11: determinism of a full sub-suite rerun, byte for byte.
    std::string first = report_json(run_inequalities(seed, 10000));
    std::string second = report_json(run_inequalities(seed, 10000));
    report.add("criterion_11_determinism", first == second,
               first == second ? 0.0 : 1.0, 0.0);
  }

  return report;
}

}  // namespace fdp

#endif  // FDPCND_SUITES_HPP_
