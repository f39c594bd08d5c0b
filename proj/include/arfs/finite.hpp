#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "arfs/normed_space.hpp"
#include "arfs/parallel.hpp"
#include "arfs/report.hpp"

namespace arfs {

inline constexpr int kFiniteDimensionCap = 6;

/// sup |phi(y)| over the unit ball of Y. Exact: closed form in L2, vertex
/// enumeration of the unit ball of Y for L1/LInf. Zero subspace gives 0.
double restriction_norm(const DualFunctional& phi, const Subspace& Y, const NormedSpace& space, double tol = 1e-9);

/// sup over unit y in Y of d(y, Z). rho0(0, Z) = 0.
double rho0(const Subspace& Y, const Subspace& Z, const NormedSpace& space, double tol = 1e-9);

/// Per-member data for repeated evaluation of phi -> ||phi restricted to X_l||.
class FamilyEvaluator {
 public:
  explicit FamilyEvaluator(const SubspaceFamily& family);

  double restriction(std::size_t member, const Vector& phi) const;
  /// Largest restriction norm; ties go to the earliest member.
  double max_restriction(const Vector& phi, std::size_t* argmax = nullptr) const;
  /// max_restriction(u) / ||u||_*; scale invariant.
  double ratio(const Vector& u) const;

  const SubspaceFamily& family() const noexcept { return family_; }

 private:
  const SubspaceFamily& family_;
  std::vector<Matrix> vertices_;
};

struct EpsilonOptions {
  double tol = 1e-6;
  Execution execution = Execution::Parallel;
  std::size_t grid_points = 20000;
  std::size_t refine_starts = 16;
  std::uint64_t seed = 0x5eedf00d;
  int dimension_cap = kFiniteDimensionCap;
};

struct EpsilonStar {
  double value = 0;
  Vector phi;  ///< dual-unit functional attaining the value
  bool spanning = false;
};

/// inf over dual-unit phi of max over members of ||phi restricted to X_l||.
EpsilonStar epsilon_star_detail(const SubspaceFamily& family, const EpsilonOptions& options = {});
double epsilon_star(const SubspaceFamily& family, double tol = 1e-6);

/// (eps - r) / (1 + r); RTooLarge if r >= eps.
double stability_floor(double eps, double r);

/// Tilts every member by a seeded random perturbation so that
/// rho0(X_l, perturbed X_l) <= r.
SubspaceFamily perturb_family(const SubspaceFamily& family, double r, std::uint64_t seed);

struct SubadditiveFunctional {
  enum class Kind { Seminorm, DistanceToSubspace };
  Kind kind = Kind::Seminorm;
  Vector u;    ///< f(x) = |<u, x>|
  Subspace w;  ///< f(x) = d(x, W)

  static SubadditiveFunctional seminorm(Vector u);
  static SubadditiveFunctional distance_to(Subspace w);
  std::string describe() const;
};

/// sup_l ||f restricted to X_l|| >= eps_hat ||f|| with eps_hat = eps* / (1 + tol).
/// NotAnARFS if eps* <= tol.
Report subadditive_bound_check(const SubspaceFamily& family, const SubadditiveFunctional& f, double tol = 1e-3);

/// Images A(X_l) in the target space; NotSurjective unless rank A = target.dim.
SubspaceFamily pushforward_family(const SubspaceFamily& family, const Matrix& A, const NormedSpace& target,
                                  double tol = Subspace::kRankTol);

/// Removes the named members and reports whether the rest still spans and
/// its eps*. NotAnARFS if the original family is not one.
Report subfamily_delete_check(const SubspaceFamily& family, const std::set<std::string>& deleted, double tol = 1e-6);

/// One-dimensional spans labelled v0, v1, ...; ZeroVector on a zero vector.
SubspaceFamily family_from_vectors(const std::vector<Vector>& vectors, const NormedSpace& space);

}  // namespace arfs
