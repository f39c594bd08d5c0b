#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arfs/finite.hpp"

namespace arfs {

struct Part {
  std::string label;
  Vector vector;
  double norm = 0;
};

/// x = sum of parts (up to `residual`), each part in its labelled member.
struct Decomposition {
  std::vector<Part> parts;
  double cost = 0;      ///< sum of part norms
  double residual = 0;  ///< ||x - sum of parts||
  double lower_bound = 0;  ///< min_cost_decompose: certified lower bound on the optimal cost
  int steps = 0;           ///< greedy_decompose: number of steps taken
  bool schedule_met = true;  ///< greedy_decompose: every step beat eps / 2^(m+2)
};

/// Step m+1 subtracts the best single-member approximation of the residual.
/// When every step beats eps / 2^(m+2) the cost is at most ||x|| + eps + tol.
Decomposition greedy_decompose(const Vector& x, const SubspaceFamily& family, double eps, double tol = 1e-10,
                               int max_steps = 50000);

/// Minimizes sum ||x_l|| subject to sum x_l = x. L1/LInf: exact LP.
/// L2: smoothed Newton continuation with a dual certificate; NoConvergence
/// if the certified gap stays above tol.
Decomposition min_cost_decompose(const Vector& x, const SubspaceFamily& family, double tol = 1e-8);

struct RepresentationConstant {
  double value = 0;
  Vector worst;  ///< sampled unit direction attaining the value
};

/// Max of min_cost_decompose(x).cost over seeded random unit directions.
RepresentationConstant representation_constant_detail(const SubspaceFamily& family, double tol, std::size_t samples,
                                                      std::uint64_t seed, Execution execution = Execution::Parallel);
double representation_constant(const SubspaceFamily& family, double tol, std::size_t samples, std::uint64_t seed);

}  // namespace arfs
