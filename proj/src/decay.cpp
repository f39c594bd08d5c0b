#include "arfs/decay.hpp"

#include <limits>
#include <numbers>

#include "arfs/point_eval.hpp"
#include "arfs/sup_norm.hpp"

namespace arfs {

namespace {

constexpr long double kLn2 = std::numbers::ln2_v<long double>;

void require_positive(double v, const char* what) {
  if (!(v > 0) || !std::isfinite(v)) throw Error(ErrorKind::PreconditionViolated, std::string(what) + " must be positive");
}

void check_hypotheses(const ExponentSet& exponents, double delta, double M) {
  if (exponents.empty()) return;
  if (!gap_check(exponents, delta))
    throw Error(ErrorKind::HypothesisViolated, "exponents violate the delta-gap condition");
  if (exponents.beta() > M * (1.0 + 1e-12))
    throw Error(ErrorKind::HypothesisViolated, "sum of reciprocal exponents exceeds M");
}

double finite_or_max(long double v) {
  if (v > std::numeric_limits<double>::max()) return std::numeric_limits<double>::max();
  if (v < -std::numeric_limits<double>::max()) return -std::numeric_limits<double>::max();
  return static_cast<double>(v);
}

double coefficient_scale(const ExpSum& f) {
  double s = 0;
  for (const auto& term : f.terms()) s += std::abs(term.coef);
  return s;
}

}  // namespace

double nu(double x, double y) {
  if (!(x >= 0) || !(y >= 0)) throw Error(ErrorKind::PreconditionViolated, "nu requires nonnegative arguments");
  if (x == y) throw Error(ErrorKind::DegenerateInput, "nu(x, x) is undefined");
  return (x + y) / std::abs(x - y);
}

NuProductBound nu_product_bound(double x, std::span<const double> ys, double delta) {
  require_positive(x, "x");
  require_positive(delta, "delta");
  const double slack = delta * (1.0 - 1e-12);
  NuProductBound out;
  long double lhs = 1;
  long double reciprocal_sum = 0;
  for (std::size_t k = 0; k < ys.size(); ++k) {
    require_positive(ys[k], "y_k");
    if (std::abs(x - ys[k]) < slack) throw Error(ErrorKind::GapViolated, "|x - y_k| < delta");
    for (std::size_t l = 0; l < k; ++l)
      if (std::abs(ys[k] - ys[l]) < slack) throw Error(ErrorKind::GapViolated, "|y_k - y_l| < delta");
    lhs *= (static_cast<long double>(x) + ys[k]) / std::abs(static_cast<long double>(x) - ys[k]);
    reciprocal_sum += 1.0L / ys[k];
  }
  out.lhs = finite_or_max(lhs);
  out.rhs = finite_or_max(std::exp((4.0L * reciprocal_sum + 5.0L * kLn2 / delta) * x + 3.0L * kLn2));
  return out;
}

CoefficientConstants coef_bound_constants(double delta, double M) {
  require_positive(delta, "delta");
  require_positive(M, "M");
  const long double d = delta;
  const long double mm = M;
  CoefficientConstants out;
  out.a = finite_or_max(std::exp(2.0L * mm + 5.0L * kLn2 / (2.0L * d) + 3.0L * kLn2));
  out.b = static_cast<double>(4.0L * mm + 5.0L * kLn2 / d + 1.0L);
  return out;
}

BoundConstants decay_constants(double delta, double M) {
  const CoefficientConstants ab = coef_bound_constants(delta, M);
  const long double d = delta;
  const long double mm = M;
  BoundConstants out;
  out.delta = delta;
  out.M = M;
  out.m = 1.0 / M;
  out.a = ab.a;
  out.b = ab.b;
  out.c = finite_or_max(mm * std::exp(2.0L * mm + 2.0L / mm + 5.0L * kLn2 / (2.0L * d) + 5.0L * kLn2 / (d * mm) +
                                      3.0L * kLn2 + 3.0L));
  return out;
}

double BoundConstants::identity_residual() const {
  const long double via_ab =
      static_cast<long double>(a) * M * std::exp(static_cast<long double>(m) * (static_cast<long double>(b) + 1) - 1);
  return static_cast<double>(std::abs(static_cast<long double>(c) - via_ab) / c);
}

Report verify_coefficient_bound(const ExpSum& f, double delta, double M, double tol) {
  require_positive(delta, "delta");
  require_positive(M, "M");
  const ExponentSet exponents(f.exponents());
  check_hypotheses(exponents, delta, M);
  const CoefficientConstants ab = coef_bound_constants(delta, M);

  Report r;
  r.check = "coefficient_bound";
  r.margin = std::numeric_limits<double>::max();
  if (f.empty()) return r;
  const SupNormEstimate norm = sup_norm(f, tol * coefficient_scale(f));
  Json rows = Json::array();
  for (const auto& term : f.terms()) {
    const long double allowed = static_cast<long double>(ab.a) * std::exp(static_cast<long double>(ab.b) * term.alpha) *
                                norm.lower;
    const double margin = finite_or_max(allowed - std::abs(term.coef));
    r.margin = std::min(r.margin, margin);
    rows.push_back({{"alpha", term.alpha}, {"coef", term.coef}, {"margin", margin}});
  }
  r.pass = r.margin >= -tol;
  r.witness = {{"a", ab.a}, {"b", ab.b}, {"norm_lower", norm.lower}, {"norm_upper", norm.upper}, {"terms", rows}};
  return r;
}

Report verify_decay(const ExpSum& f, double delta, double M, std::span<const double> ts, double tol) {
  require_positive(delta, "delta");
  require_positive(M, "M");
  const ExponentSet exponents(f.exponents());
  check_hypotheses(exponents, delta, M);
  const BoundConstants k = decay_constants(delta, M);
  for (double t : ts)
    if (!(t >= k.threshold() * (1.0 - 1e-15)))
      throw Error(ErrorKind::ThresholdViolated, "decay bound asserted only for t >= 4M + 5ln2/delta + 2");

  Report r;
  r.check = "decay_bound";
  r.margin = std::numeric_limits<double>::max();
  const SupNormEstimate norm = f.empty() ? SupNormEstimate{} : sup_norm(f, tol * coefficient_scale(f));
  Json rows = Json::array();
  for (double t : ts) {
    const double value = std::abs(f(t));
    const double allowed = k.c * std::exp(-k.m * t) * norm.lower;
    const double margin = allowed - value;
    r.margin = std::min(r.margin, margin);
    rows.push_back({{"t", t}, {"value", value}, {"bound", allowed}, {"margin", margin}});
  }
  r.pass = r.margin >= -tol * norm.upper;
  r.witness = {{"c", k.c}, {"m", k.m}, {"threshold", k.threshold()}, {"norm_lower", norm.lower}, {"rows", rows}};
  return r;
}

Report family_pt_bound(std::span<const ExponentSet> families, double delta, double M, double t, double tol,
                       std::size_t dimension_cap) {
  require_positive(delta, "delta");
  require_positive(M, "M");
  const BoundConstants k = decay_constants(delta, M);
  if (!(t >= k.threshold() * (1.0 - 1e-15)))
    throw Error(ErrorKind::ThresholdViolated, "point-evaluation bound asserted only for t >= 4M + 5ln2/delta + 2");
  for (const auto& family : families) {
    if (family.size() > dimension_cap) throw Error(ErrorKind::DimensionCap, "family exceeds dimension cap");
    check_hypotheses(family, delta, M);
  }

  const double bound = k.c * std::exp(-k.m * t);
  double worst = 0;
  std::size_t worst_index = 0;
  Json values = Json::array();
  for (std::size_t i = 0; i < families.size(); ++i) {
    const double v = point_eval_restriction_norm(families[i], t, tol, dimension_cap);
    values.push_back(v);
    if (v > worst) {
      worst = v;
      worst_index = i;
    }
  }
  Report r;
  r.check = "family_point_evaluation_bound";
  r.margin = bound - worst;
  r.pass = worst <= bound;
  r.witness = {{"t", t}, {"max", worst}, {"bound", bound}, {"argmax", worst_index}, {"values", values}};
  return r;
}

}  // namespace arfs
