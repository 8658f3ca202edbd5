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

#ifndef FDPCND_MULTIVARIATE_HPP_
#define FDPCND_MULTIVARIATE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fdp/cnd.hpp"
#include "fdp/pld.hpp"
#include "fdp/tradeoff.hpp"
#include "fdp/verify.hpp"

namespace fdp {

/// Sensitivity norm on R^d.
struct NormSpec {
  enum class Kind { L1, L2, Linf, Elliptical, Custom };
  Kind kind = Kind::L2;
  int dim = 1;
  Eigen::MatrixXd ellip;  // ball {u : u' ellip u <= 1} for Elliptical
  std::function<double(const std::vector<double>&)> custom;

  double operator()(const std::vector<double>& v) const {
    switch (kind) {
      case Kind::L1: {
        double s = 0.0;
        for (double x : v) s += std::abs(x);
        return s;
      }
      case Kind::L2: {
        double s = 0.0;
        for (double x : v) s += x * x;
        return std::sqrt(s);
      }
      case Kind::Linf: {
        double s = 0.0;
        for (double x : v) s = std::max(s, std::abs(x));
        return s;
      }
      case Kind::Elliptical: {
        Eigen::Map<const Eigen::VectorXd> u(v.data(),
                                            static_cast<Eigen::Index>(v.size()));
        return std::sqrt(u.dot(ellip * u));
      }
      case Kind::Custom:
        return custom(v);
    }
    return 0.0;
  }

  static NormSpec l1(int d) { return {Kind::L1, d, {}, nullptr}; }
  static NormSpec l2(int d) { return {Kind::L2, d, {}, nullptr}; }
  static NormSpec linf(int d) { return {Kind::Linf, d, {}, nullptr}; }
  static NormSpec elliptical(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols())
      throw std::invalid_argument("elliptical norm: matrix must be square");
    return {Kind::Elliptical, static_cast<int>(m.rows()), m, nullptr};
  }
  static NormSpec custom_norm(
      int d, std::function<double(const std::vector<double>&)> fn) {
    return {Kind::Custom, d, {}, std::move(fn)};
  }
};

inline const char* to_string(NormSpec::Kind k) {
  switch (k) {
    case NormSpec::Kind::L1: return "l1";
    case NormSpec::Kind::L2: return "l2";
    case NormSpec::Kind::Linf: return "linf";
    case NormSpec::Kind::Elliptical: return "elliptical";
    case NormSpec::Kind::Custom: return "custom";
  }
  return "unknown";
}

enum class ShiftMethod { ClosedForm, VertexEnumeration, ProjectedSearch };

struct WorstShiftResult {
  std::vector<double> v_star;
  double objective = 0.0;
  ShiftMethod method = ShiftMethod::ClosedForm;
  double certificate_slack = 0.0;  // best tested competitor minus objective
};

namespace detail {

inline std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

inline Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                           static_cast<Eigen::Index>(v.size()));
}

/// Tie-break among equally good candidates: prefer fewer negative
/// components, then lexicographically smaller.
inline bool nicer_candidate(const std::vector<double>& a,
                            const std::vector<double>& b) {
  auto negatives = [](const std::vector<double>& v) {
    int n = 0;
    for (double x : v)
      if (x < -1e-12) ++n;
    return n;
  };
  int na = negatives(a), nb = negatives(b);
  if (na != nb) return na < nb;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Maximum of `objective` over the vertices of the unit ball of a
/// polytope norm (L1 cross-polytope or Linf cube).
inline WorstShiftResult maximize_over_vertices(
    const std::function<double(const std::vector<double>&)>& objective,
    const NormSpec& norm) {
  std::vector<std::vector<double>> vertices;
  int d = norm.dim;
  if (norm.kind == NormSpec::Kind::L1) {
    for (int i = 0; i < d; ++i)
      for (double s : {1.0, -1.0}) {
        std::vector<double> v(d, 0.0);
        v[i] = s;
        vertices.push_back(std::move(v));
      }
  } else if (norm.kind == NormSpec::Kind::Linf) {
    if (d > 20)
      throw std::invalid_argument("vertex enumeration: dimension too large");
    for (std::uint64_t mask = 0; mask < (1ull << d); ++mask) {
      std::vector<double> v(d);
      for (int i = 0; i < d; ++i) v[i] = (mask >> i) & 1 ? -1.0 : 1.0;
      vertices.push_back(std::move(v));
    }
  } else {
    throw std::invalid_argument("vertex enumeration: not a polytope norm");
  }
  WorstShiftResult best;
  best.method = ShiftMethod::VertexEnumeration;
  best.objective = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices) {
    double obj = objective(v);
    if (obj > best.objective + 1e-10 ||
        (obj > best.objective - 1e-10 && nicer_candidate(v, best.v_star))) {
      best.objective = std::max(best.objective, obj);
      best.v_star = v;
    }
  }
  best.objective = objective(best.v_star);
  return best;
}

/// Multi-start sampling search over the ball boundary. No global
/// guarantee; the certificate slack records the margin over every other
/// tested candidate.
inline WorstShiftResult maximize_by_search(
    const std::function<double(const std::vector<double>&)>& objective,
    const NormSpec& norm, std::uint64_t seed, int n_candidates = 10000,
    const std::vector<std::vector<double>>& seeds = {}) {
  int d = norm.dim;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto on_boundary = [&](std::vector<double> v) {
    double n = norm(v);
    if (n <= 0.0) return std::vector<double>(d, 0.0);
    for (double& x : v) x /= n;
    return v;
  };
  std::vector<std::vector<double>> pool = seeds;
  // Structured candidates: sparse symmetric sign patterns.
  for (int m = 1; m <= d; ++m) {
    std::vector<double> v(d, 0.0);
    for (int i = 0; i < m; ++i) v[i] = 1.0;
    pool.push_back(v);
  }
  for (int i = 0; i < n_candidates; ++i) {
    std::vector<double> v(d);
    for (double& x : v) x = gauss(rng);
    pool.push_back(std::move(v));
  }
  WorstShiftResult best;
  best.method = ShiftMethod::ProjectedSearch;
  best.objective = -std::numeric_limits<double>::infinity();
  double second = best.objective;
  for (auto& raw : pool) {
    std::vector<double> v = on_boundary(std::move(raw));
    double obj = objective(v);
    if (obj > best.objective) {
      second = best.objective;
      best.objective = obj;
      best.v_star = v;
    } else {
      second = std::max(second, obj);
    }
  }
  best.certificate_slack =
      std::isfinite(second) ? second - best.objective : 0.0;
  return best;
}

}  // namespace detail

/// argmax of ||Sigma^{-1/2} u||_2 over the unit ball of `norm`.
inline WorstShiftResult worst_shift_gaussian(const Eigen::MatrixXd& sigma,
                                             const NormSpec& norm,
                                             std::uint64_t seed = 7) {
  int d = norm.dim;
  if (sigma.rows() != d || sigma.cols() != d)
    throw std::invalid_argument("worst_shift_gaussian: dimension mismatch");
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument(
        "worst_shift_gaussian: sigma must be positive definite");
  Eigen::MatrixXd prec = sigma.inverse();
  auto objective = [&prec, d](const std::vector<double>& v) {
    Eigen::Map<const Eigen::VectorXd> u(v.data(), d);
    return std::sqrt(u.dot(prec * u));
  };

  if (norm.kind == NormSpec::Kind::L2 ||
      norm.kind == NormSpec::Kind::Elliptical) {
    // u'Qu over {u' A u <= 1} peaks at the top generalized eigenvector;
    // reduce to an ordinary symmetric problem through A^{-1/2}.
    Eigen::MatrixXd a = norm.kind == NormSpec::Kind::L2
                            ? Eigen::MatrixXd::Identity(d, d)
                            : norm.ellip;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ea(a);
    Eigen::MatrixXd a_isqrt =
        ea.eigenvectors() *
        ea.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
        ea.eigenvectors().transpose();
    Eigen::MatrixXd m = a_isqrt * prec * a_isqrt;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> em(m);
    double top = em.eigenvalues().maxCoeff();
    // Tie-break within the top eigenspace: project e1 (then e2, ...) onto
    // it so Sigma = I returns e1.
    Eigen::MatrixXd basis(d, 0);
    for (int i = 0; i < d; ++i)
      if (em.eigenvalues()(i) > top - 1e-10 * std::abs(top) - 1e-300) {
        basis.conservativeResize(d, basis.cols() + 1);
        basis.col(basis.cols() - 1) = em.eigenvectors().col(i);
      }
    Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
    for (int j = 0; j < d; ++j) {
      w = basis * (basis.transpose() * Eigen::VectorXd::Unit(d, j));
      if (w.norm() > 1e-8) break;
    }
    w.normalize();
    Eigen::VectorXd u = a_isqrt * w;
    // Boundary scaling and sign normalization.
    std::vector<double> v = detail::to_std(u);
    double nv = norm(v);
    for (double& x : v) x /= nv;
    for (double x : v) {
      if (x > 1e-12) break;
      if (x < -1e-12) {
        for (double& y : v) y = -y;
        break;
      }
    }
    WorstShiftResult res;
    res.v_star = v;
    res.objective = objective(v);
    res.method = ShiftMethod::ClosedForm;
    return res;
  }

  if (norm.kind == NormSpec::Kind::L1 ||
      (norm.kind == NormSpec::Kind::Linf && d <= 20))
    return detail::maximize_over_vertices(objective, norm);

  return detail::maximize_by_search(objective, norm, seed);
}

enum class MvKind { Product, IidL1, GaussianMv, UniformCube, ApproxDp, LinfMech };

inline const char* to_string(MvKind k) {
  switch (k) {
    case MvKind::Product: return "product";
    case MvKind::IidL1: return "iid_l1";
    case MvKind::GaussianMv: return "gaussian_mv";
    case MvKind::UniformCube: return "uniform_cube";
    case MvKind::ApproxDp: return "approx_dp";
    case MvKind::LinfMech: return "linf_mech";
  }
  return "unknown";
}

/// Multivariate canonical noise distribution.
struct MvCnd {
  MvKind kind;
  int dim;
  std::function<double(const std::vector<double>&)> density;
  std::function<std::vector<double>(std::mt19937_64&)> sampler;
  NormSpec norm;
  std::vector<double> worst_shift;
  TradeoffFunction target_f;
  double target_band = 0.0;  // nonzero when target_f is a PLD estimate
};

namespace detail {

inline MvCnd independent_product(MvKind kind, std::vector<Cnd> comps,
                                 NormSpec norm, std::vector<double> shift,
                                 TradeoffFunction target, double band) {
  int d = static_cast<int>(comps.size());
  auto comps_ptr = std::make_shared<std::vector<Cnd>>(std::move(comps));
  MvCnd out{kind,
            d,
            [comps_ptr](const std::vector<double>& x) {
              double p = 1.0;
              for (std::size_t i = 0; i < comps_ptr->size(); ++i)
                p *= (*comps_ptr)[i].density(x[i]);
              return p;
            },
            [comps_ptr, d](std::mt19937_64& rng) {
              std::vector<double> x(d);
              for (int i = 0; i < d; ++i) x[i] = (*comps_ptr)[i].sample(rng);
              return x;
            },
            std::move(norm),
            std::move(shift),
            std::move(target),
            band};
  return out;
}

/// Greedy closed-form fold of a tensor product list: repeatedly replace
/// any pair with its closed form until one function remains.
inline std::optional<TradeoffFunction> tensor_fold(
    std::vector<TradeoffFunction> fs) {
  while (fs.size() > 1) {
    bool folded = false;
    for (std::size_t i = 0; i < fs.size() && !folded; ++i)
      for (std::size_t j = i + 1; j < fs.size() && !folded; ++j) {
        auto t = tensor_closed_form(fs[i], fs[j]);
        if (t) {
          fs[i] = *t;
          fs.erase(fs.begin() + static_cast<std::ptrdiff_t>(j));
          folded = true;
        }
      }
    if (!folded) return std::nullopt;
  }
  return fs.front();
}

inline TradeoffFunction tradeoff_from_polyline(const EmpiricalTradeoff& curve) {
  auto shared = std::make_shared<EmpiricalTradeoff>(curve);
  return TradeoffFunction([shared](double a) { return shared->value(a); },
                          /*symmetric=*/true, FamilyTag{Family::Composite});
}

}  // namespace detail

/// Product of independent one-dimensional CNDs: a CND for the tensor
/// product tradeoff under the sup norm.
inline MvCnd product_cnd(std::vector<Cnd> comps, int pld_grid = 10000) {
  if (comps.empty())
    throw std::invalid_argument("product_cnd: empty component list");
  int d = static_cast<int>(comps.size());
  std::vector<TradeoffFunction> fs;
  for (const Cnd& c : comps) fs.push_back(c.source_f);
  std::optional<TradeoffFunction> target = detail::tensor_fold(fs);
  double band = 0.0;
  if (!target) {
    if (comps.size() != 2)
      throw std::invalid_argument(
          "product_cnd: no closed-form tensor and numeric path only "
          "supports two components");
    EmpiricalTradeoff curve = tensor_via_pld(comps[0], comps[1], pld_grid);
    band = curve.band;
    target = detail::tradeoff_from_polyline(curve);
  }
  return detail::independent_product(MvKind::Product, std::move(comps),
                                     NormSpec::linf(d),
                                     std::vector<double>(d, 1.0),
                                     std::move(*target), band);
}

/// k i.i.d. copies of a log-concave CND form a CND for the same tradeoff
/// under the l1 norm. Non-log-concave inputs (Tulap, general constructed
/// CNDs) are rejected: the result relies on log-concavity.
inline MvCnd iid_l1_cnd(const Cnd& F, int k) {
  if (k < 1) throw std::domain_error("iid_l1_cnd: k must be >= 1");
  switch (F.kind) {
    case CndKind::GaussianCnd:
    case CndKind::LaplaceCnd:
    case CndKind::UniformCnd:
    case CndKind::LimitCnd:
      break;
    default:
      throw std::invalid_argument(
          "iid_l1_cnd: component must be log-concave");
  }
  std::vector<double> shift(k, 0.0);
  shift[0] = 1.0;
  return detail::independent_product(MvKind::IidL1, std::vector<Cnd>(static_cast<std::size_t>(k), F),
                                     NormSpec::l1(k), std::move(shift),
                                     F.source_f, 0.0);
}

/// N(0, Sigma) as a CND for GDP with mu = ||Sigma^{-1/2} v*||_2 under the
/// given sensitivity norm.
inline MvCnd gaussian_mv_cnd(const Eigen::MatrixXd& sigma,
                             const NormSpec& norm, std::uint64_t seed = 7) {
  int d = norm.dim;
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (sigma.rows() != d || sigma.cols() != d || llt.info() != Eigen::Success)
    throw std::invalid_argument(
        "gaussian_mv_cnd: sigma must be positive definite with matching dim");
  WorstShiftResult ws = worst_shift_gaussian(sigma, norm, seed);
  Eigen::MatrixXd chol = llt.matrixL();
  Eigen::MatrixXd prec = sigma.inverse();
  double logdet = 0.0;
  for (int i = 0; i < d; ++i) logdet += 2.0 * std::log(chol(i, i));
  double lognorm = -0.5 * (d * std::log(2.0 * M_PI) + logdet);
  MvCnd out{MvKind::GaussianMv,
            d,
            [prec, lognorm, d](const std::vector<double>& x) {
              Eigen::Map<const Eigen::VectorXd> u(x.data(), d);
              return std::exp(lognorm - 0.5 * u.dot(prec * u));
            },
            [chol, d](std::mt19937_64& rng) {
              std::normal_distribution<double> g(0.0, 1.0);
              Eigen::VectorXd z(d);
              for (int i = 0; i < d; ++i) z(i) = g(rng);
              return detail::to_std(chol * z);
            },
            norm,
            ws.v_star,
            make_gdp(ws.objective),
            0.0};
  return out;
}

/// Worst shift of the uniform cube: minimizes prod(1 - delta |v_i|) over
/// the unit ball. The log-objective is concave in |v|, so polytope norms
/// attain the minimum at a vertex; other norms use the sampling search.
inline WorstShiftResult worst_shift_uniform_cube(double delta,
                                                 const NormSpec& norm,
                                                 std::uint64_t seed = 7) {
  auto a_value = [delta](const std::vector<double>& v) {
    double a = 1.0;
    for (double x : v) a *= 1.0 - delta * std::min(1.0, std::abs(x));
    return a;
  };
  auto objective = [a_value](const std::vector<double>& v) {
    return -a_value(v);
  };
  WorstShiftResult res;
  if (norm.kind == NormSpec::Kind::L1 ||
      (norm.kind == NormSpec::Kind::Linf && norm.dim <= 20))
    res = detail::maximize_over_vertices(objective, norm);
  else
    res = detail::maximize_by_search(objective, norm, seed);
  res.objective = a_value(res.v_star);
  return res;
}

/// i.i.d. U(-1/(2 delta), 1/(2 delta)) coordinates: a CND for
/// f_{0, 1 - A} with A = prod(1 - delta |v*_i|).
inline MvCnd uniform_cube_cnd(double delta, int d, const NormSpec& norm,
                              std::uint64_t seed = 7) {
  if (delta <= 0.0 || delta > 1.0)
    throw std::domain_error("uniform_cube_cnd: delta must be in (0,1]");
  if (norm.dim != d)
    throw std::invalid_argument("uniform_cube_cnd: norm dimension mismatch");
  WorstShiftResult ws = worst_shift_uniform_cube(delta, norm, seed);
  std::vector<Cnd> comps(static_cast<std::size_t>(d), uniform_cnd(delta));
  return detail::independent_product(
      MvKind::UniformCube, std::move(comps), norm, ws.v_star,
      make_eps_delta(0.0, 1.0 - ws.objective), 0.0);
}

/// One Tulap coordinate plus k uniform coordinates: a CND for
/// f_{eps,delta} under the sup norm. The per-coordinate deltas satisfy
/// prod(1 - delta_i) = 1 - delta (equal split by default).
inline MvCnd approx_dp_cnd(double eps, double delta, int k,
                           std::vector<double> delta_split = {}) {
  if (eps <= 0.0) throw std::domain_error("approx_dp_cnd: eps must be > 0");
  if (delta <= 0.0 || delta > 1.0)
    throw std::domain_error("approx_dp_cnd: delta must be in (0,1]");
  if (k < 1) throw std::domain_error("approx_dp_cnd: k must be >= 1");
  if (delta_split.empty()) {
    double di = 1.0 - std::pow(1.0 - delta, 1.0 / static_cast<double>(k));
    delta_split.assign(static_cast<std::size_t>(k), di);
  }
  if (static_cast<int>(delta_split.size()) != k)
    throw std::invalid_argument("approx_dp_cnd: delta split size mismatch");
  double prod = 1.0;
  for (double di : delta_split) {
    if (di <= 0.0 || di >= 1.0)
      throw std::domain_error("approx_dp_cnd: split deltas must be in (0,1)");
    prod *= 1.0 - di;
  }
  if (std::abs(prod - (1.0 - delta)) > 1e-9)
    throw std::invalid_argument(
        "approx_dp_cnd: split does not multiply to 1 - delta");
  std::vector<Cnd> comps;
  comps.push_back(tulap(eps));
  for (double di : delta_split) comps.push_back(uniform_cnd(di));
  int d = k + 1;
  return detail::independent_product(MvKind::ApproxDp, std::move(comps),
                                     NormSpec::linf(d),
                                     std::vector<double>(d, 1.0),
                                     make_eps_delta(eps, delta), 0.0);
}

/// Noise with density exp(-eps ||x||_inf) / (d! (2/eps)^d): a CND for the
/// Laplace tradeoff L_eps under the sup norm. Sampled as R*U with
/// R a sum of d+1 Exp(eps) variates and U uniform on the cube.
inline MvCnd linf_mechanism(double eps, int d) {
  if (eps <= 0.0) throw std::domain_error("linf_mechanism: eps must be > 0");
  if (d < 1) throw std::domain_error("linf_mechanism: d must be >= 1");
  double log_c = -std::lgamma(static_cast<double>(d) + 1.0) -
                 d * std::log(2.0 / eps);
  MvCnd out{MvKind::LinfMech,
            d,
            [eps, log_c](const std::vector<double>& x) {
              double m = 0.0;
              for (double v : x) m = std::max(m, std::abs(v));
              return std::exp(log_c - eps * m);
            },
            [eps, d](std::mt19937_64& rng) {
              std::exponential_distribution<double> ex(eps);
              std::uniform_real_distribution<double> un(-1.0, 1.0);
              double r = 0.0;
              for (int i = 0; i <= d; ++i) r += ex(rng);
              std::vector<double> x(d);
              for (int i = 0; i < d; ++i) x[i] = r * un(rng);
              return x;
            },
            NormSpec::linf(d),
            std::vector<double>(static_cast<std::size_t>(d), 1.0),
            make_laplace_tf(eps),
            0.0};
  return out;
}

/// Privacy loss of the sup-norm mechanism at shift (1,...,1):
/// eps * clamp(1 - (max(x) + min(x)), -1, 1).
inline double linf_plrv(const std::vector<double>& x, double eps) {
  if (x.empty()) throw std::invalid_argument("linf_plrv: empty vector");
  double mx = -std::numeric_limits<double>::infinity();
  double mn = std::numeric_limits<double>::infinity();
  for (double v : x) {
    if (!std::isfinite(v)) throw std::invalid_argument("linf_plrv: non-finite");
    mx = std::max(mx, v);
    mn = std::min(mn, v);
  }
  return eps * std::clamp(1.0 - (mx + mn), -1.0, 1.0);
}

/// Checks the four multivariate CND properties against the target
/// tradeoff function. Failures are report entries, not errors.
inline TestReport verify_mv_cnd(const MvCnd& m, int n_mc,
                                const std::vector<std::vector<double>>& shift_grid,
                                std::uint64_t seed = 7, double level = 0.01) {
  if (n_mc < 10000)
    throw std::invalid_argument("verify_mv_cnd: n_mc must be >= 10^4");
  TestReport report;
  report.seed = seed;
  std::mt19937_64 rng(seed);

  double worst_sym = 0.0;
  for (int i = 0; i < 200; ++i) {
    std::vector<double> x = m.sampler(rng);
    std::vector<double> nx = x;
    for (double& v : nx) v = -v;
    double p = m.density(x), q = m.density(nx);
    if (p > 0.0 || q > 0.0)
      worst_sym = std::max(worst_sym,
                           std::abs(p - q) / std::max({p, q, 1e-300}));
  }
  report.add("property4_density_symmetry", worst_sym <= 1e-9, worst_sym, 1e-9);

  // Monotone likelihood ratio along v*.
  double worst_mlr = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> w = m.sampler(rng);
    double prev = -std::numeric_limits<double>::infinity();
    for (int ti = 0; ti <= 40; ++ti) {
      double t = -2.0 + 4.0 * ti / 40.0;
      std::vector<double> num(m.dim), den(m.dim);
      for (int i = 0; i < m.dim; ++i) {
        den[i] = w[i] + t * m.worst_shift[i];
        num[i] = den[i] - m.worst_shift[i];
      }
      double pn = m.density(num), pd = m.density(den);
      if (pn <= 0.0 || pd <= 0.0) continue;
      double ratio = pn / pd;
      worst_mlr = std::max(worst_mlr, (prev - ratio) / std::max(ratio, 1e-300));
      prev = ratio;
    }
  }
  report.add("property3_monotone_ratio", worst_mlr <= 1e-7, worst_mlr, 1e-7);

  EmpiricalTradeoff at_vstar =
      empirical_tradeoff_vec(m.density, m.sampler, m.worst_shift, n_mc,
                             seed + 1, level);
  at_vstar.band += m.target_band;
  TestEntry eq = dominance_check(m.target_f, at_vstar, /*one_sided=*/false);
  eq.name = "property2_equality_at_vstar";
  report.entries.push_back(eq);

  std::uint64_t stream = seed + 1;
  int idx = 0;
  for (const auto& v : shift_grid) {
    ++stream;
    ++idx;
    EmpiricalTradeoff emp =
        empirical_tradeoff_vec(m.density, m.sampler, v, n_mc, stream, level);
    emp.band += m.target_band;
    TestEntry dom = dominance_check(m.target_f, emp, /*one_sided=*/true);
    dom.name = "property1_dominance_shift" + std::to_string(idx);
    report.entries.push_back(dom);
  }
  return report;
}

}  // namespace fdp

#endif  // FDPCND_MULTIVARIATE_HPP_
