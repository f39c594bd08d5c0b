#pragma once

#include <cstdint>

#include "arfs/expsum.hpp"
#include "arfs/parallel.hpp"
#include "arfs/sup_norm.hpp"

namespace arfs {

struct PointEvalOptions {
  double tol = 1e-6;                 ///< relative accuracy of the final certification
  std::size_t dimension_cap = 6;
  std::size_t random_starts = 24;
  std::uint64_t seed = 0x5eedULL;
  Execution execution = Execution::Parallel;
};

struct PointEvalResult {
  double value = 0;       ///< |f(t)| / certified lower bound of ||f||
  ExpSum extremal;        ///< best f found
  SupNormEstimate norm;   ///< certificate for ||extremal||
};

/**
 * sup{ |f(t)| : f in span{exp(-alpha_k s)}, ||f|| <= 1 } for the point
 * evaluation p_t(f) = f(t).
 *
 * Multistart Nelder-Mead over coefficient directions against a discretized
 * uniform norm, then the winner is re-normalized with a certified sup_norm.
 * The reported ratio divides by the certified lower bound, so it errs high.
 */
PointEvalResult point_eval_extremal(const ExponentSet& exponents, double t, const PointEvalOptions& options = {});

double point_eval_restriction_norm(const ExponentSet& exponents, double t, double tol = 1e-6,
                                   std::size_t dimension_cap = 6);

}  // namespace arfs
