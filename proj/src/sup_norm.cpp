#include "arfs/sup_norm.hpp"

#include <limits>
#include <queue>

namespace arfs {

namespace {

struct Sample {
  double value = 0;  // |f(t)|
  double slope = 0;  // |f'(t)|
  double value_err = 0;
  double slope_err = 0;
};

struct Interval {
  double left;
  double right;
  double bound;
  bool operator<(const Interval& other) const { return bound < other.bound; }
};

template <class Real>
class Bracketer {
 public:
  Bracketer(const BasicExpSum<Real>& f, double tol) : f_(f), tol_(tol) {
    const double n = static_cast<double>(f.size());
    unit_roundoff_ = static_cast<double>(std::numeric_limits<Real>::epsilon());
    double alpha_sum = 0;
    for (const auto& term : f.terms()) {
      const double a = std::abs(static_cast<double>(term.coef));
      const double alpha = static_cast<double>(term.alpha);
      abs_coef_.push_back(a);
      alpha_.push_back(alpha);
      alpha_sum += alpha;
    }
    newman_sq_ = 81.0 * alpha_sum * alpha_sum;
    slack_ = n + 4.0;
  }

  Sample sample(double t) const {
    using std::exp;
    Real value = 0;
    Real slope = 0;
    double err0 = 0;
    double err1 = 0;
    const Real rt = t;
    for (std::size_t k = 0; k < f_.size(); ++k) {
      const auto& term = f_.terms()[k];
      const Real e = exp(-term.alpha * rt);
      value += term.coef * e;
      slope -= term.alpha * term.coef * e;
      const double mag = abs_coef_[k] * static_cast<double>(e) * (slack_ + alpha_[k] * t);
      err0 += mag;
      err1 += alpha_[k] * mag;
    }
    using std::abs;
    return {static_cast<double>(abs(value)), static_cast<double>(abs(slope)), unit_roundoff_ * err0,
            unit_roundoff_ * err1};
  }

  double tail(double t) const {
    double s = 0;
    for (std::size_t k = 0; k < alpha_.size(); ++k) s += abs_coef_[k] * std::exp(-alpha_[k] * t);
    return s * (1.0 + 1e-12);
  }

  double coef_second_derivative(double left) const {
    double s = 0;
    for (std::size_t k = 0; k < alpha_.size(); ++k)
      s += abs_coef_[k] * alpha_[k] * alpha_[k] * std::exp(-alpha_[k] * left);
    return s * (1.0 + 1e-12);
  }

  double horizon() const {
    const double target = 0.5 * tol_;
    if (tail(0) <= target) return 0;
    double hi = 1.0 / alpha_.front();
    while (tail(hi) > target) hi *= 2;
    double lo = 0;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (tail(mid) > target ? lo : hi) = mid;
    }
    return hi;
  }

  /// Bound on sup |f| over [left, right], valid at the location of the
  /// global maximum (the Newman branch refers to ||f|| itself).
  double interval_bound(double left, double right, const Sample& mid) const {
    const double h = right - left;
    const double first = mid.value + mid.value_err + (mid.slope + mid.slope_err) * 0.5 * h;
    const double coef = first + coef_second_derivative(left) * h * h / 8.0;
    const double q = newman_sq_ * h * h / 8.0;
    const double newman = q < 1.0 ? first / (1.0 - q) : std::numeric_limits<double>::infinity();
    return std::min(coef, newman) * (1.0 + 8 * std::numeric_limits<double>::epsilon());
  }

 private:
  const BasicExpSum<Real>& f_;
  double tol_;
  double unit_roundoff_ = 0;
  double newman_sq_ = 0;
  double slack_ = 0;
  std::vector<double> abs_coef_;
  std::vector<double> alpha_;
};

}  // namespace

template <class Real>
SupNormEstimate sup_norm(const BasicExpSum<Real>& f, double tol, std::size_t budget) {
  if (!(tol > 0)) throw Error(ErrorKind::PreconditionViolated, "sup_norm requires tol > 0");
  SupNormEstimate est;
  if (f.empty()) return est;

  const Bracketer<Real> bracket(f, tol);
  est.horizon = bracket.horizon();
  const double tail = bracket.tail(est.horizon);

  auto observe = [&](double t, const Sample& s) {
    const double lo = std::max(0.0, s.value - s.value_err);
    if (lo > est.lower || est.samples == 0) {
      est.lower = std::max(est.lower, lo);
      est.witness_t = t;
    }
    ++est.samples;
  };

  observe(0.0, bracket.sample(0.0));
  if (est.horizon == 0) {
    est.upper = std::max(tail, est.lower);
    return est;
  }
  observe(est.horizon, bracket.sample(est.horizon));

  std::priority_queue<Interval> queue;
  auto push = [&](double left, double right) {
    const double mid = 0.5 * (left + right);
    const Sample s = bracket.sample(mid);
    observe(mid, s);
    queue.push({left, right, bracket.interval_bound(left, right, s)});
  };

  constexpr int kInitialPieces = 32;
  for (int i = 0; i < kInitialPieces; ++i)
    push(est.horizon * i / kInitialPieces, est.horizon * (i + 1) / kInitialPieces);

  while (true) {
    const Interval top = queue.top();
    est.upper = std::max({top.bound, tail, est.lower});
    if (est.upper - est.lower <= tol) break;
    if (est.samples + 2 > budget)
      throw Error(ErrorKind::TolTooSmall, "sup_norm exceeded its sample budget");
    const double mid = 0.5 * (top.left + top.right);
    if (!(mid > top.left && mid < top.right) || top.right - top.left < 1e-14 * std::max(1.0, top.right))
      throw Error(ErrorKind::TolTooSmall, "sup_norm tolerance below evaluation accuracy");
    queue.pop();
    push(top.left, mid);
    push(mid, top.right);
  }
  return est;
}

template SupNormEstimate sup_norm(const BasicExpSum<double>&, double, std::size_t);
template SupNormEstimate sup_norm(const BasicExpSum<Precise>&, double, std::size_t);

}  // namespace arfs
