#include "arfs/muntz.hpp"

#include <sstream>

namespace arfs {

namespace {

void validate_power_exponents(double gamma, std::span<const double> gammas) {
  auto admissible = [](double g) { return std::isfinite(g) && g > -0.5; };
  if (!admissible(gamma)) throw Error(ErrorKind::PreconditionViolated, "exponent must exceed -1/2");
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    if (!admissible(gammas[i])) throw Error(ErrorKind::PreconditionViolated, "exponent must exceed -1/2");
    if (exponents_coincide(gamma, gammas[i]))
      throw Error(ErrorKind::DegenerateInput, "target exponent coincides with a spanning exponent");
    for (std::size_t j = 0; j < i; ++j)
      if (exponents_coincide(gammas[i], gammas[j]))
        throw Error(ErrorKind::DegenerateInput, "spanning exponents must be distinct");
  }
}

using Column = std::vector<Precise>;
using SquareMatrix = std::vector<Column>;

/// Lower-triangular L with G = L L^T; throws IllConditioned if G is not
/// numerically positive definite.
SquareMatrix cholesky(const SquareMatrix& g) {
  const std::size_t n = g.size();
  SquareMatrix l(n, Column(n, Precise(0)));
  for (std::size_t j = 0; j < n; ++j) {
    Precise d = g[j][j];
    for (std::size_t k = 0; k < j; ++k) d -= l[j][k] * l[j][k];
    if (!(d > 0)) throw Error(ErrorKind::IllConditioned, "Gram matrix is not numerically positive definite");
    l[j][j] = sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      Precise s = g[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      l[i][j] = s / l[j][j];
    }
  }
  return l;
}

Column cholesky_solve(const SquareMatrix& l, Column b) {
  const std::size_t n = l.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) b[i] -= l[i][k] * b[k];
    b[i] /= l[i][i];
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t k = i + 1; k < n; ++k) b[i] -= l[k][i] * b[k];
    b[i] /= l[i][i];
  }
  return b;
}

/// 1-norm condition number, with the inverse formed column by column.
Precise condition_1norm(const SquareMatrix& g, const SquareMatrix& l) {
  const std::size_t n = g.size();
  Precise norm_g = 0;
  Precise norm_inv = 0;
  for (std::size_t j = 0; j < n; ++j) {
    Column e(n, Precise(0));
    e[j] = 1;
    const Column col = cholesky_solve(l, e);
    Precise sg = 0;
    Precise si = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sg += abs(g[i][j]);
      si += abs(col[i]);
    }
    norm_g = std::max(norm_g, sg);
    norm_inv = std::max(norm_inv, si);
  }
  return norm_g * norm_inv;
}

}  // namespace

double l2_distance_closed_form(double gamma, std::span<const double> gammas) {
  validate_power_exponents(gamma, gammas);
  double d = 1.0 / std::sqrt(2.0 * gamma + 1.0);
  for (double g : gammas) d *= std::abs(gamma - g) / (gamma + g + 1.0);
  return d;
}

double l2_distance_gram_oracle(double gamma, std::span<const double> gammas) {
  validate_power_exponents(gamma, gammas);
  if (gammas.size() > kGramSizeCap)
    throw Error(ErrorKind::DimensionCap, "Gram oracle accepts at most 12 spanning exponents");
  const Precise target_sq = Precise(1) / (2 * Precise(gamma) + 1);
  if (gammas.empty()) return static_cast<double>(sqrt(target_sq));

  const std::size_t n = gammas.size();
  SquareMatrix gram(n, Column(n));
  Column cross(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) gram[i][j] = Precise(1) / (Precise(gammas[i]) + gammas[j] + 1);
    cross[i] = Precise(1) / (Precise(gamma) + gammas[i] + 1);
  }
  const SquareMatrix l = cholesky(gram);
  const Precise cond = condition_1norm(gram, l);
  if (cond > kGramConditionCap) {
    std::ostringstream msg;
    msg << "Gram condition estimate " << static_cast<double>(cond) << " exceeds cap";
    throw Error(ErrorKind::IllConditioned, msg.str());
  }
  const Column coef = cholesky_solve(l, cross);
  Precise projected = 0;
  for (std::size_t i = 0; i < n; ++i) projected += cross[i] * coef[i];
  const Precise residual = target_sq - projected;
  return residual > 0 ? static_cast<double>(sqrt(residual)) : 0.0;
}

GolitschekResult golitschek_approximant(double alpha, const ExponentSet& exponents, double tol) {
  if (!(alpha > 0) || !std::isfinite(alpha))
    throw Error(ErrorKind::PreconditionViolated, "alpha must be finite and positive");
  if (exponents.empty()) throw Error(ErrorKind::PreconditionViolated, "exponent set must be nonempty");
  for (double a : exponents.alphas())
    if (exponents_coincide(a, alpha))
      throw Error(ErrorKind::NearCoincidentExponents, "alpha belongs to the exponent set");

  constexpr double kDenominatorGuard = 1e-10;
  GolitschekResult out;
  PreciseExpSum current = PreciseExpSum::single(Precise(1), Precise(alpha));
  out.chain.push_back(current.convert<double>());
  out.bound = 1.0;

  for (double alpha_k : exponents.alphas()) {
    const Precise ak = alpha_k;
    const Precise scale = ak - Precise(alpha);
    std::vector<PreciseExpSum::Term> next;
    next.reserve(current.size() + 1);
    Precise new_coef = 0;
    // int_0^t exp(-a_k (t - v)) exp(-b v) dv = (exp(-b t) - exp(-a_k t)) / (a_k - b)
    for (const auto& term : current.terms()) {
      const Precise denom = ak - term.alpha;
      if (abs(denom) < kDenominatorGuard)
        throw Error(ErrorKind::NearCoincidentExponents, "recursion denominator below 1e-10");
      const Precise c = term.coef * scale / denom;
      next.push_back({c, term.alpha});
      new_coef -= c;
    }
    next.push_back({new_coef, ak});
    current = PreciseExpSum(std::move(next));
    out.chain.push_back(current.convert<double>());
    out.bound *= std::abs(1.0 - alpha / alpha_k);
  }

  out.remainder = current;
  out.approximant = (PreciseExpSum::single(Precise(1), Precise(alpha)) - current).convert<double>();
  out.error = sup_norm(out.remainder, tol);
  return out;
}

double sup_distance_bound(double alpha, const ExponentSet& exponents) {
  double product = 1.0;
  for (double a : exponents.alphas()) {
    if (exponents_coincide(a, alpha)) {
      warn("sup_distance_bound: alpha coincides with an exponent; distance is 0");
      return 0.0;
    }
    product *= std::abs(1.0 - alpha / a);
  }
  return product;
}

double density_gap_bound(double alpha, const ExponentSet& exponents) {
  for (double a : exponents.alphas())
    if (a < alpha) throw Error(ErrorKind::PreconditionViolated, "every exponent must be >= alpha");
  if (exponents.empty()) return 1.0;
  return std::exp(-alpha * exponents.beta());
}

}  // namespace arfs
