#pragma once

#include <span>
#include <vector>

#include "arfs/expsum.hpp"
#include "arfs/sup_norm.hpp"

namespace arfs {

/// Largest exponent list the Gram oracle accepts.
inline constexpr std::size_t kGramSizeCap = 12;
/// Condition-number cap for the Gram oracle; its 50-digit arithmetic keeps
/// at least 20 correct digits below this.
inline constexpr double kGramConditionCap = 1e30;

/// L2[0,1] distance from x^gamma to span{x^gamma_k}, closed product form.
double l2_distance_closed_form(double gamma, std::span<const double> gammas);

/// Same distance from the normal equations of the Gram matrix
/// <x^p, x^q> = 1/(p+q+1), solved by Cholesky in extended precision.
double l2_distance_gram_oracle(double gamma, std::span<const double> gammas);

/**
 * Output of the von Golitschek recursion
 *
 *   f_0 = exp(-alpha t),
 *   f_k(t) = (alpha_k - alpha) int_0^t exp(-alpha_k (t - v)) f_{k-1}(v) dv.
 *
 * Each f_k is exp(-alpha t) plus an element of span{exp(-alpha_j t), j <= k}
 * and ||f_k|| <= |1 - alpha/alpha_k| ||f_{k-1}||.
 */
struct GolitschekResult {
  ExpSum approximant;          ///< e^{-alpha t} - f_N, rounded to double
  std::vector<ExpSum> chain;   ///< f_0 ... f_N, rounded to double
  PreciseExpSum remainder;     ///< f_N as computed (50 digits)
  double bound = 0;            ///< prod |1 - alpha/alpha_k|
  SupNormEstimate error;       ///< certified sup norm of `remainder`
};

/// Runs the recursion and certifies ||f_N|| to within `tol`.
GolitschekResult golitschek_approximant(double alpha, const ExponentSet& exponents, double tol = 1e-7);

/// prod_k |1 - alpha/alpha_k|; 0 (with a warning) if alpha is one of the exponents.
double sup_distance_bound(double alpha, const ExponentSet& exponents);

/// exp(-alpha * beta(E)); requires every exponent >= alpha.
double density_gap_bound(double alpha, const ExponentSet& exponents);

}  // namespace arfs
