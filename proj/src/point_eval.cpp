#include "arfs/point_eval.hpp"

#include <random>

#include <Eigen/Dense>

#include "arfs/nelder_mead.hpp"

namespace arfs {

namespace {

constexpr int kGridPoints = 3000;

/// Rows are (exp(-alpha_k s_j))_k on a grid refined towards s = 0.
Eigen::MatrixXd sample_basis(const ExponentSet& exponents, double t) {
  const double horizon = std::max(2.0 * t, t + 40.0 / exponents.min());
  Eigen::MatrixXd basis(kGridPoints + 1, static_cast<Eigen::Index>(exponents.size()));
  for (int j = 0; j <= kGridPoints; ++j) {
    const double u = static_cast<double>(j) / kGridPoints;
    const double s = horizon * u * u;
    for (std::size_t k = 0; k < exponents.size(); ++k) basis(j, static_cast<Eigen::Index>(k)) = std::exp(-exponents[k] * s);
  }
  return basis;
}

}  // namespace

PointEvalResult point_eval_extremal(const ExponentSet& exponents, double t, const PointEvalOptions& options) {
  if (!(t >= 0) || !std::isfinite(t)) throw Error(ErrorKind::PreconditionViolated, "evaluation point must be >= 0");
  if (exponents.size() > options.dimension_cap)
    throw Error(ErrorKind::DimensionCap, "exponent set exceeds the point-evaluation dimension cap");
  PointEvalResult out;
  if (exponents.empty()) return out;

  const auto n = static_cast<Eigen::Index>(exponents.size());
  if (n == 1) {
    out.extremal = ExpSum::single(1.0, exponents[0]);
    out.norm = {1.0, 1.0, 0.0, 0.0, 1};
    out.value = std::exp(-exponents[0] * t);
    return out;
  }

  const Eigen::MatrixXd basis = sample_basis(exponents, t);
  Eigen::VectorXd at_t(n);
  for (Eigen::Index k = 0; k < n; ++k) at_t[k] = std::exp(-exponents[static_cast<std::size_t>(k)] * t);

  // Negative ratio |f(t)| / max_j |f(s_j)|; scale invariant.
  auto objective = [&](const Eigen::VectorXd& a) {
    const double denom = (basis * a).lpNorm<Eigen::Infinity>();
    if (!(denom > 0)) return 0.0;
    return -std::abs(at_t.dot(a)) / denom;
  };

  std::vector<Eigen::VectorXd> starts;
  for (Eigen::Index k = 0; k < n; ++k) starts.push_back(Eigen::VectorXd::Unit(n, k));
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss;
  for (std::size_t s = 0; s < options.random_starts; ++s) {
    Eigen::VectorXd v(n);
    for (Eigen::Index k = 0; k < n; ++k) v[k] = gauss(rng);
    starts.push_back(v.normalized());
  }

  std::vector<NelderMeadResult> runs(starts.size());
  for_each_index(options.execution, starts.size(), [&](std::size_t i) {
    auto normalized = [&](const Eigen::VectorXd& a) {
      const double norm = a.norm();
      return norm > 0 ? objective(a / norm) : 0.0;
    };
    NelderMeadResult r = nelder_mead(normalized, starts[i], 0.25, 1e-12, 1e-15, 4000);
    r = nelder_mead(normalized, r.x.normalized(), 0.05, 1e-13, 1e-16, 4000);
    r.x.normalize();
    runs[i] = std::move(r);
  });
  const ArgBest best = arg_min(Execution::Serial, runs.size(), [&](std::size_t i) { return runs[i].value; });
  const Eigen::VectorXd& a = runs[best.index].x;

  const double discrete_norm = (basis * a).lpNorm<Eigen::Infinity>();
  std::vector<ExpSum::Term> terms;
  for (Eigen::Index k = 0; k < n; ++k) terms.push_back({a[k] / discrete_norm, exponents[static_cast<std::size_t>(k)]});
  out.extremal = ExpSum(std::move(terms));
  out.norm = sup_norm(out.extremal, options.tol);
  out.value = out.norm.lower > 0 ? std::abs(out.extremal(t)) / out.norm.lower : 0.0;
  return out;
}

double point_eval_restriction_norm(const ExponentSet& exponents, double t, double tol, std::size_t dimension_cap) {
  PointEvalOptions options;
  options.tol = tol;
  options.dimension_cap = dimension_cap;
  return point_eval_extremal(exponents, t, options).value;
}

}  // namespace arfs
