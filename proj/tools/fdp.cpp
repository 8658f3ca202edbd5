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

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Dense>

#include "fdp/cnd.hpp"
#include "fdp/divisible.hpp"
#include "fdp/io.hpp"
#include "fdp/multivariate.hpp"
#include "fdp/suites.hpp"
#include "fdp/tradeoff.hpp"
#include "fdp/verify_cnd.hpp"

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("FDP_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw CLI::ValidationError("FDP_SEED", "not an unsigned integer");
    }
  }
  return 7;
}

struct CommonOpts {
  std::uint64_t seed = default_seed();
  std::string output_dir = ".";
  std::string format = "csv";

  void attach(CLI::App* app) {
    app->add_option("--seed", seed, "RNG seed (default: FDP_SEED env or 7)");
    app->add_option("--output-dir", output_dir, "artifact directory");
    app->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  std::filesystem::path path(const std::string& stem) const {
    std::filesystem::create_directories(output_dir);
    return std::filesystem::path(output_dir) /
           (stem + (format == "json" ? ".json" : ".csv"));
  }

  void write_table(const std::string& stem,
                   const std::vector<std::string>& cols,
                   const std::vector<std::vector<double>>& rows,
                   const std::map<std::string, std::string>& config) const {
    std::string body = format == "json"
                           ? fdp::table_json(cols, rows, seed, config)
                           : fdp::table_csv(cols, rows, seed, config);
    auto p = path(stem);
    fdp::write_text(p, body);
    std::cout << p.string() << "\n";
  }

  void write_report(const std::string& stem, const fdp::TestReport& r) const {
    std::filesystem::create_directories(output_dir);
    auto p = std::filesystem::path(output_dir) / (stem + ".json");
    fdp::write_text(p, fdp::report_json(r));
    std::cout << p.string() << (r.all_pass() ? " PASS" : " FAIL") << "\n";
  }
};

struct FamilyOpts {
  std::string family = "eps-delta";
  double eps = 1.0;
  double delta = 0.0;
  double mu = 1.0;

  void attach(CLI::App* app) {
    app->add_option("--family", family, "eps-delta, gdp, or laplace")
        ->check(CLI::IsMember({"eps-delta", "gdp", "laplace"}));
    app->add_option("--eps", eps, "epsilon parameter");
    app->add_option("--delta", delta, "delta parameter");
    app->add_option("--mu", mu, "GDP parameter");
  }

  fdp::TradeoffFunction make() const {
    if (family == "gdp") return fdp::make_gdp(mu);
    if (family == "laplace") return fdp::make_laplace_tf(eps);
    return fdp::make_eps_delta(eps, delta);
  }

  std::map<std::string, std::string> config() const {
    return {{"family", family},
            {"eps", fdp::format_double(eps)},
            {"delta", fdp::format_double(delta)},
            {"mu", fdp::format_double(mu)}};
  }
};

fdp::Cnd make_cnd(const std::string& kind, double eps, double delta,
                  double mu) {
  if (kind == "tulap") return fdp::tulap(eps);
  if (kind == "gaussian") return fdp::gaussian_cnd(mu);
  if (kind == "laplace") return fdp::laplace_cnd(eps);
  if (kind == "uniform") return fdp::uniform_cnd(delta);
  throw CLI::ValidationError("--kind", "unknown CND kind " + kind);
}

Eigen::MatrixXd parse_sigma(const std::string& spec, int dim) {
  if (spec == "identity") return Eigen::MatrixXd::Identity(dim, dim);
  std::vector<double> vals;
  std::string cur;
  for (char c : spec + ",") {
    if (c == ',') {
      if (!cur.empty()) vals.push_back(std::stod(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  Eigen::MatrixXd m(dim, dim);
  if (static_cast<int>(vals.size()) == dim) {
    m = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) m(i, i) = vals[static_cast<std::size_t>(i)];
  } else if (static_cast<int>(vals.size()) == dim * dim) {
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        m(i, j) = vals[static_cast<std::size_t>(i * dim + j)];
  } else {
    throw CLI::ValidationError(
        "--sigma", "expected 'identity', a diagonal, or a full row-major matrix");
  }
  return m;
}

fdp::NormSpec parse_norm(const std::string& name, int dim) {
  if (name == "l1") return fdp::NormSpec::l1(dim);
  if (name == "l2") return fdp::NormSpec::l2(dim);
  if (name == "linf") return fdp::NormSpec::linf(dim);
  throw CLI::ValidationError("--norm", "unknown norm " + name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"canonical noise distributions for f-differential privacy"};
  app.require_subcommand(1);

  // --- tradeoff ---
  auto* tr = app.add_subcommand("tradeoff", "tabulate a tradeoff function");
  CommonOpts tr_common;
  FamilyOpts tr_family;
  int tr_grid = 201;
  tr_common.attach(tr);
  tr_family.attach(tr);
  tr->add_option("--grid", tr_grid, "number of alpha points");
  tr->callback([&] {
    fdp::TradeoffFunction f = tr_family.make();
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < tr_grid; ++i) {
      double a = static_cast<double>(i) / (tr_grid - 1);
      rows.push_back({a, f(a)});
    }
    tr_common.write_table("tradeoff", {"alpha", "beta"}, rows,
                          tr_family.config());
  });

  // --- cnd ---
  auto* cnd = app.add_subcommand("cnd", "one-dimensional CNDs");
  cnd->require_subcommand(1);

  auto* cb = cnd->add_subcommand("build", "construct a CND from a tradeoff");
  CommonOpts cb_common;
  FamilyOpts cb_family;
  int cb_grid = 401;
  double cb_lo = -6.0, cb_hi = 6.0;
  cb_common.attach(cb);
  cb_family.attach(cb);
  cb->add_option("--grid", cb_grid, "number of x points");
  cb->add_option("--lo", cb_lo, "grid lower end");
  cb->add_option("--hi", cb_hi, "grid upper end");
  cb->callback([&] {
    fdp::Cnd F = fdp::construct_cnd(cb_family.make());
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < cb_grid; ++i) {
      double x = cb_lo + (cb_hi - cb_lo) * i / (cb_grid - 1);
      rows.push_back({x, F.cdf(x), F.density(x)});
    }
    cb_common.write_table("cnd_build", {"x", "cdf", "density"}, rows,
                          cb_family.config());
  });

  auto* cs = cnd->add_subcommand("sample", "draw from a CND");
  CommonOpts cs_common;
  std::string cs_kind = "tulap";
  double cs_eps = 1.0, cs_delta = 0.3, cs_mu = 1.0;
  int cs_n = 1000;
  cs_common.attach(cs);
  cs->add_option("--kind", cs_kind, "tulap, gaussian, laplace, or uniform");
  cs->add_option("--eps", cs_eps, "epsilon");
  cs->add_option("--delta", cs_delta, "delta");
  cs->add_option("--mu", cs_mu, "mu");
  cs->add_option("--n", cs_n, "number of draws");
  cs->callback([&] {
    fdp::Cnd F = make_cnd(cs_kind, cs_eps, cs_delta, cs_mu);
    std::mt19937_64 rng(cs_common.seed);
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < cs_n; ++i) rows.push_back({F.sample(rng)});
    cs_common.write_table("cnd_samples", {"draw"},
                          rows, {{"kind", cs_kind}});
  });

  auto* cv = cnd->add_subcommand("verify", "check CND properties");
  CommonOpts cv_common;
  std::string cv_kind = "tulap";
  double cv_eps = 1.0, cv_delta = 0.3, cv_mu = 1.0;
  int cv_n = 100000;
  cv_common.attach(cv);
  cv->add_option("--kind", cv_kind, "tulap, gaussian, laplace, or uniform");
  cv->add_option("--eps", cv_eps, "epsilon");
  cv->add_option("--delta", cv_delta, "delta");
  cv->add_option("--mu", cv_mu, "mu");
  cv->add_option("--n", cv_n, "Monte-Carlo draws per check");
  int cv_exit = 0;
  cv->callback([&] {
    fdp::Cnd F = make_cnd(cv_kind, cv_eps, cv_delta, cv_mu);
    fdp::TestReport r = fdp::verify_cnd(F, F.source_f, {0.25, 0.5, 0.75, 1.0},
                                        cv_n, cv_common.seed);
    r.config["kind"] = cv_kind;
    cv_common.write_report("cnd_verify", r);
    cv_exit = r.all_pass() ? 0 : 1;
  });

  auto* cl = cnd->add_subcommand("limit", "log-concave limit construction");
  CommonOpts cl_common;
  std::string cl_family = "gdp";
  double cl_eps = 1.0, cl_delta = 0.2, cl_mu = 1.0, cl_gap = 0.01;
  cl_common.attach(cl);
  cl->add_option("--family", cl_family, "gdp, laplace, or zero-delta")
      ->check(CLI::IsMember({"gdp", "laplace", "zero-delta"}));
  cl->add_option("--eps", cl_eps, "epsilon");
  cl->add_option("--delta", cl_delta, "delta");
  cl->add_option("--mu", cl_mu, "mu");
  cl->add_option("--gap", cl_gap, "target sup gap");
  cl->callback([&] {
    fdp::DivisibleFamily fam =
        cl_family == "gdp"       ? fdp::DivisibleFamily::gdp(cl_mu)
        : cl_family == "laplace" ? fdp::DivisibleFamily::laplace(cl_eps)
                                 : fdp::DivisibleFamily::zero_delta(cl_delta);
    auto [F, diag] = fdp::logconcave_limit(fam, cl_gap);
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < 401; ++i) {
      double x = -6.0 + 12.0 * i / 400.0;
      rows.push_back({x, F.cdf(x), F.density(x)});
    }
    cl_common.write_table("cnd_limit", {"x", "cdf", "density"}, rows,
                          {{"family", cl_family}});
    nlohmann::ordered_json j;
    j["seed"] = cl_common.seed;
    j["version"] = fdp::library_version();
    j["converged"] = diag.converged;
    j["error_bound"] = fdp::format_double(diag.error_bound);
    j["scales_used"] = nlohmann::ordered_json::array();
    j["sup_gap"] = nlohmann::ordered_json::array();
    for (double s : diag.scales_used)
      j["scales_used"].push_back(fdp::format_double(s));
    for (double g : diag.sup_gap) j["sup_gap"].push_back(fdp::format_double(g));
    auto p = std::filesystem::path(cl_common.output_dir) /
             "cnd_limit_diagnostics.json";
    fdp::write_text(p, j.dump(2) + "\n");
    std::cout << p.string() << "\n";
  });

  // --- mv ---
  auto* mv = app.add_subcommand("mv", "multivariate CNDs");
  mv->require_subcommand(1);

  struct MvOpts {
    std::string kind = "linf";
    double eps = 1.0, delta = 0.05, mu = 1.0;
    int dim = 2, k = 1;
    std::string sigma = "identity";
    std::string norm = "linf";
    void attach(CLI::App* a) {
      a->add_option("--kind", kind,
                    "linf, gauss, approx-dp, uniform-cube, or iid-laplace");
      a->add_option("--eps", eps, "epsilon");
      a->add_option("--delta", delta, "delta");
      a->add_option("--mu", mu, "mu");
      a->add_option("--dim", dim, "dimension");
      a->add_option("--k", k, "number of auxiliary coordinates / copies");
      a->add_option("--sigma", sigma, "covariance: identity, diag, or full");
      a->add_option("--norm", norm, "sensitivity norm: l1, l2, or linf");
    }
    fdp::MvCnd make(std::uint64_t seed) const {
      if (kind == "linf") return fdp::linf_mechanism(eps, dim);
      if (kind == "gauss")
        return fdp::gaussian_mv_cnd(parse_sigma(sigma, dim),
                                    parse_norm(norm, dim), seed);
      if (kind == "approx-dp") return fdp::approx_dp_cnd(eps, delta, k);
      if (kind == "uniform-cube")
        return fdp::uniform_cube_cnd(delta, dim, parse_norm(norm, dim), seed);
      if (kind == "iid-laplace")
        return fdp::iid_l1_cnd(fdp::laplace_cnd(eps), k);
      throw CLI::ValidationError("--kind", "unknown mv kind " + kind);
    }
  };

  auto* mb = mv->add_subcommand("build", "construct and describe an MvCnd");
  CommonOpts mb_common;
  MvOpts mb_opts;
  mb_common.attach(mb);
  mb_opts.attach(mb);
  mb->callback([&] {
    fdp::MvCnd m = mb_opts.make(mb_common.seed);
    nlohmann::ordered_json j;
    j["seed"] = mb_common.seed;
    j["version"] = fdp::library_version();
    j["kind"] = fdp::to_string(m.kind);
    j["dim"] = m.dim;
    j["norm"] = fdp::to_string(m.norm.kind);
    j["v_star"] = nlohmann::ordered_json::array();
    for (double v : m.worst_shift)
      j["v_star"].push_back(fdp::format_double(v));
    if (auto tag = m.target_f.tag()) {
      auto family_name = [](fdp::Family f) {
        switch (f) {
          case fdp::Family::EpsDelta: return "eps-delta";
          case fdp::Family::Gdp: return "gdp";
          case fdp::Family::LaplaceTf: return "laplace";
          case fdp::Family::FromCdf: return "from-cdf";
          case fdp::Family::Composite: return "composite";
        }
        return "unknown";
      };
      j["target_family"] = family_name(tag->family);
      j["target_a"] = fdp::format_double(tag->a);
      j["target_b"] = fdp::format_double(tag->b);
    }
    std::filesystem::create_directories(mb_common.output_dir);
    auto p = std::filesystem::path(mb_common.output_dir) / "mv_build.json";
    fdp::write_text(p, j.dump(2) + "\n");
    std::cout << p.string() << "\n";
  });

  auto* ms = mv->add_subcommand("sample", "draw from an MvCnd");
  CommonOpts ms_common;
  MvOpts ms_opts;
  int ms_n = 1000;
  ms_common.attach(ms);
  ms_opts.attach(ms);
  ms->add_option("--n", ms_n, "number of draws");
  ms->callback([&] {
    fdp::MvCnd m = ms_opts.make(ms_common.seed);
    std::mt19937_64 rng(ms_common.seed);
    std::vector<std::string> cols;
    for (int i = 0; i < m.dim; ++i) cols.push_back("x" + std::to_string(i));
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < ms_n; ++i) rows.push_back(m.sampler(rng));
    ms_common.write_table("mv_samples", cols, rows,
                          {{"kind", ms_opts.kind}});
  });

  auto* mverify = mv->add_subcommand("verify", "check MvCnd properties");
  CommonOpts mverify_common;
  MvOpts mverify_opts;
  int mverify_n = 100000;
  int mverify_exit = 0;
  mverify_common.attach(mverify);
  mverify_opts.attach(mverify);
  mverify->add_option("--n", mverify_n, "Monte-Carlo draws per check");
  mverify->callback([&] {
    fdp::MvCnd m = mverify_opts.make(mverify_common.seed);
    auto shifts = fdp::suites_detail::random_ball_shifts(
        m.norm, 5, mverify_common.seed ^ 0x77ull);
    fdp::TestReport r =
        fdp::verify_mv_cnd(m, mverify_n, shifts, mverify_common.seed);
    r.config["kind"] = mverify_opts.kind;
    mverify_common.write_report("mv_verify", r);
    mverify_exit = r.all_pass() ? 0 : 1;
  });

  // --- report ---
  auto* rp = app.add_subcommand("report", "run a verification suite");
  CommonOpts rp_common;
  std::string rp_suite = "acceptance";
  int rp_n = 100000;
  int rp_exit = 0;
  rp_common.attach(rp);
  rp->add_option("--suite", rp_suite, "acceptance, inequalities, or limits")
      ->check(CLI::IsMember({"acceptance", "inequalities", "limits"}));
  rp->add_option("--n", rp_n, "Monte-Carlo draws per check");
  rp->callback([&] {
    fdp::TestReport r = rp_suite == "acceptance"
                            ? fdp::run_acceptance(rp_common.seed, rp_n)
                        : rp_suite == "inequalities"
                            ? fdp::run_inequalities(rp_common.seed, rp_n)
                            : fdp::run_limits(rp_common.seed);
    rp_common.write_report("report_" + rp_suite, r);
    rp_exit = r.all_pass() ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return cv_exit + mverify_exit + rp_exit;
}
