#pragma once

#include <span>
#include <vector>

#include "arfs/expsum.hpp"
#include "arfs/report.hpp"

namespace arfs {

/// nu(x, y) = (x + y) / |x - y| for x, y >= 0, x != y.
double nu(double x, double y);

struct NuProductBound {
  double lhs = 1;  ///< prod_k nu(x, y_k)
  double rhs = 0;  ///< exp((4 sum 1/y_k + 5 ln2 / delta) x + 3 ln2)
  bool holds() const noexcept { return lhs <= rhs; }
};

/// Both sides of the product estimate; GapViolated unless |x - y_k| >= delta
/// and the y_k are delta-separated.
NuProductBound nu_product_bound(double x, std::span<const double> ys, double delta);

struct CoefficientConstants {
  double a = 0;
  double b = 0;
};

/// a = exp(2M + 5 ln2/(2 delta) + 3 ln2),  b = 4M + 5 ln2/delta + 1.
CoefficientConstants coef_bound_constants(double delta, double M);

/// Explicit constants for exponent sets with a delta-gap and sum 1/alpha_k <= M.
struct BoundConstants {
  double delta = 0;
  double M = 0;
  double m = 0;  ///< 1/M
  double a = 0;
  double b = 0;
  double c = 0;  ///< M exp(2M + 2/M + 5ln2/(2 delta) + 5ln2/(delta M) + 3 ln2 + 3)

  /// Smallest t for which |f(t)| <= c e^{-mt} ||f|| is asserted: b + 1.
  double threshold() const noexcept { return b + 1.0; }
  /// |c - a M e^{m(b+1) - 1}| / c.
  double identity_residual() const;
};

BoundConstants decay_constants(double delta, double M);

/// Coefficient bound |a_k| <= a e^{b alpha_k} ||f||, one margin per term.
Report verify_coefficient_bound(const ExpSum& f, double delta, double M, double tol = 1e-9);

/// Decay bound |f(t)| <= c e^{-mt} ||f|| at each t (all t >= threshold).
Report verify_decay(const ExpSum& f, double delta, double M, std::span<const double> ts, double tol = 1e-9);

/// sup over families of ||p_t restricted to span(E)|| against c e^{-mt}.
Report family_pt_bound(std::span<const ExponentSet> families, double delta, double M, double t, double tol = 1e-6,
                       std::size_t dimension_cap = 6);

}  // namespace arfs
