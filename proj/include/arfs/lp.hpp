#pragma once

#include <vector>

#include "arfs/normed_space.hpp"

namespace arfs {

/// minimize c.x  subject to  A_ub x <= b_ub,  A_eq x = b_eq,
/// x_j >= 0 unless free_vars[j]. Empty matrices mean no constraints of
/// that type; an empty free_vars means all variables are free.
struct LinearProgram {
  Vector c;
  Matrix a_ub;
  Vector b_ub;
  Matrix a_eq;
  Vector b_eq;
  std::vector<bool> free_vars;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Vector x;
  double value = 0;
};

/// Dense two-phase simplex with Bland's rule. Meant for the small programs
/// that arise here (a few hundred columns at most). Throws NoConvergence
/// past max_pivots.
LpSolution solve_lp(const LinearProgram& lp, double tol = 1e-10, int max_pivots = 200000);

}  // namespace arfs
