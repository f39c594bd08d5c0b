#pragma once

#include <cstddef>

#include "arfs/expsum.hpp"

namespace arfs {

inline constexpr std::size_t kDefaultSampleBudget = 10'000'000;

/// Certified bracket lower <= sup_{t>=0} |f(t)| <= upper.
struct SupNormEstimate {
  double lower = 0;
  double upper = 0;
  double witness_t = 0;     ///< sample attaining `lower`
  double horizon = 0;       ///< beyond this the tail bound is below tol/2
  std::size_t samples = 0;  ///< evaluations spent

  double width() const noexcept { return upper - lower; }
};

/**
 * Branch-and-bound bracket of the uniform norm of an exponential sum.
 *
 * [0, T] is chosen so that sum |a_k| exp(-alpha_k T) <= tol/2. On each
 * subinterval with midpoint c and width h,
 *
 *   |f(t)| <= |f(c)| + |f'(c)| h/2 + K h^2/8,
 *
 * where K bounds |f''| either from the coefficients,
 * sum |a_k| alpha_k^2 exp(-alpha_k l), or from Newman's inequality
 * ||f''|| <= (9 sum alpha_k)^2 ||f||; the latter does not see cancelling
 * coefficients. Evaluation rounding is folded into both bounds.
 *
 * Throws TolTooSmall once more than `budget` samples would be needed.
 */
template <class Real>
SupNormEstimate sup_norm(const BasicExpSum<Real>& f, double tol, std::size_t budget = kDefaultSampleBudget);

extern template SupNormEstimate sup_norm(const BasicExpSum<double>&, double, std::size_t);
extern template SupNormEstimate sup_norm(const BasicExpSum<Precise>&, double, std::size_t);

}  // namespace arfs
