#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "arfs/error.hpp"

namespace arfs {

/// 50 significant decimal digits; used where exponential sums carry large
/// cancelling coefficients.
using Precise = boost::multiprecision::cpp_bin_float_50;

/// Exponents closer than this (relative) are treated as one exponent.
inline constexpr double kExponentMergeTol = 1e-12;

inline bool exponents_coincide(double x, double y) noexcept {
  return std::abs(x - y) <= kExponentMergeTol * std::max({1.0, std::abs(x), std::abs(y)});
}

/**
 * Sorted, pairwise distinct positive exponents alpha_1 < ... < alpha_n.
 *
 * Construction sorts the input and rejects non-positive, non-finite and
 * coincident entries with DegenerateInput.
 */
class ExponentSet {
 public:
  ExponentSet() = default;
  explicit ExponentSet(std::vector<double> alphas);

  std::span<const double> alphas() const noexcept { return alphas_; }
  std::size_t size() const noexcept { return alphas_.size(); }
  bool empty() const noexcept { return alphas_.empty(); }
  double operator[](std::size_t i) const { return alphas_[i]; }
  double min() const { return alphas_.front(); }
  double max() const { return alphas_.back(); }

  /// Sum of reciprocals.
  double beta() const;
  /// Smallest consecutive difference; +inf for fewer than two exponents.
  double gap() const noexcept;

  /// First `count` exponents (nested sub-family).
  ExponentSet prefix(std::size_t count) const;

  friend bool operator==(const ExponentSet&, const ExponentSet&) = default;

 private:
  std::vector<double> alphas_;
};

double beta(const ExponentSet& exponents);
bool gap_check(const ExponentSet& exponents, double delta);

template <class Real>
struct BasicTerm {
  Real coef;
  Real alpha;
};

/**
 * f(t) = sum_k a_k exp(-alpha_k t) on [0, inf).
 *
 * Always canonical: exponents strictly increasing, duplicates (relative
 * 1e-12) merged, zero coefficients dropped.
 */
template <class Real>
class BasicExpSum {
 public:
  using Term = BasicTerm<Real>;

  BasicExpSum() = default;
  explicit BasicExpSum(std::vector<Term> terms) : terms_(std::move(terms)) { canonicalize(); }

  static BasicExpSum single(Real coef, Real alpha) { return BasicExpSum({Term{coef, alpha}}); }

  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  Real operator()(const Real& t) const {
    using std::exp;
    Real sum = 0;
    for (const auto& term : terms_) sum += term.coef * exp(-term.alpha * t);
    return sum;
  }

  /// f' as an exponential sum over the same exponents.
  BasicExpSum derivative() const {
    BasicExpSum out;
    out.terms_.reserve(terms_.size());
    for (const auto& term : terms_) out.terms_.push_back({-term.alpha * term.coef, term.alpha});
    return out;
  }

  /// Coefficient of exp(-alpha t), zero if absent.
  Real coefficient_of(double alpha) const {
    for (const auto& term : terms_)
      if (exponents_coincide(static_cast<double>(term.alpha), alpha)) return term.coef;
    return Real(0);
  }

  std::vector<double> exponents() const {
    std::vector<double> out;
    out.reserve(terms_.size());
    for (const auto& term : terms_) out.push_back(static_cast<double>(term.alpha));
    return out;
  }

  BasicExpSum scaled(const Real& s) const {
    std::vector<Term> out(terms_.begin(), terms_.end());
    for (auto& term : out) term.coef *= s;
    return BasicExpSum(std::move(out));
  }

  friend BasicExpSum operator+(const BasicExpSum& f, const BasicExpSum& g) {
    std::vector<Term> out(f.terms_.begin(), f.terms_.end());
    out.insert(out.end(), g.terms_.begin(), g.terms_.end());
    return BasicExpSum(std::move(out));
  }
  friend BasicExpSum operator-(const BasicExpSum& f, const BasicExpSum& g) {
    return f + g.scaled(Real(-1));
  }

  friend bool operator==(const BasicExpSum& f, const BasicExpSum& g) {
    if (f.terms_.size() != g.terms_.size()) return false;
    for (std::size_t i = 0; i < f.terms_.size(); ++i)
      if (f.terms_[i].coef != g.terms_[i].coef || f.terms_[i].alpha != g.terms_[i].alpha) return false;
    return true;
  }

  template <class Other>
  BasicExpSum<Other> convert() const {
    std::vector<BasicTerm<Other>> out;
    out.reserve(terms_.size());
    for (const auto& term : terms_) out.push_back({static_cast<Other>(term.coef), static_cast<Other>(term.alpha)});
    return BasicExpSum<Other>(std::move(out));
  }

 private:
  void canonicalize() {
    using std::isfinite;
    for (const auto& term : terms_) {
      if (!(term.alpha > 0) || !isfinite(term.alpha))
        throw Error(ErrorKind::DegenerateInput, "exponential sum exponents must be finite and positive");
      if (!isfinite(term.coef)) throw Error(ErrorKind::DegenerateInput, "non-finite coefficient");
    }
    std::stable_sort(terms_.begin(), terms_.end(),
                     [](const Term& x, const Term& y) { return x.alpha < y.alpha; });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (const auto& term : terms_) {
      if (!merged.empty() && exponents_coincide(static_cast<double>(merged.back().alpha),
                                                static_cast<double>(term.alpha))) {
        merged.back().coef += term.coef;
      } else {
        merged.push_back(term);
      }
    }
    std::erase_if(merged, [](const Term& term) { return term.coef == 0; });
    terms_ = std::move(merged);
  }

  std::vector<Term> terms_;
};

using ExpSum = BasicExpSum<double>;
using PreciseExpSum = BasicExpSum<Precise>;

inline double eval(const ExpSum& f, double t) {
  if (t < 0) throw Error(ErrorKind::PreconditionViolated, "eval requires t >= 0");
  return f(t);
}

}  // namespace arfs
