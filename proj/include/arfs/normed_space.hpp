#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

#include "arfs/error.hpp"

namespace arfs {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class NormKind { L1, L2, LInf };

/// L1 <-> LInf, L2 <-> L2.
NormKind conjugate(NormKind kind) noexcept;
std::string to_string(NormKind kind);
/// Accepts "l1", "l2", "linf" (case-insensitive).
NormKind parse_norm_kind(std::string_view text);

double norm(const Vector& v, NormKind kind);

struct NormedSpace {
  int dim = 1;
  NormKind kind = NormKind::L2;

  NormedSpace() = default;
  NormedSpace(int dim, NormKind kind);

  double norm(const Vector& v) const { return arfs::norm(v, kind); }
  double dual_norm(const Vector& v) const { return arfs::norm(v, conjugate(kind)); }
};

struct DualFunctional {
  Vector coeffs;

  double operator()(const Vector& x) const { return coeffs.dot(x); }
};

double dual_norm(const DualFunctional& phi, const NormedSpace& space);

/// A subspace of R^n given by a basis of linearly independent columns.
/// Keeps an orthonormal basis alongside the user-facing one.
class Subspace {
 public:
  static constexpr double kRankTol = 1e-10;

  Subspace() = default;
  /// Columns of `basis` span the subspace; n x 0 gives the zero subspace.
  explicit Subspace(Matrix basis);
  Subspace(int ambient_dim, const std::vector<Vector>& basis);

  static Subspace zero(int ambient_dim);
  static Subspace whole(int ambient_dim);
  /// Span of the columns of `spanning`, which may be dependent.
  static Subspace span_of(const Matrix& spanning, double tol = kRankTol);

  int ambient_dim() const noexcept { return static_cast<int>(basis_.rows()); }
  int dim() const noexcept { return static_cast<int>(basis_.cols()); }
  bool is_zero() const noexcept { return basis_.cols() == 0; }

  const Matrix& basis() const noexcept { return basis_; }
  const Matrix& orthonormal() const noexcept { return q_; }
  /// Orthonormal basis of the Euclidean orthogonal complement.
  Matrix complement() const;

  Vector project(const Vector& v) const { return q_ * (q_.transpose() * v); }
  bool contains(const Vector& v, double tol = 1e-10) const;

 private:
  Matrix basis_;
  Matrix q_;
};

/// Rank of a matrix with singular values below tol * sigma_max dropped.
int numerical_rank(const Matrix& m, double tol = Subspace::kRankTol);

struct Member {
  std::string label;
  Subspace subspace;
};

struct SubspaceFamily {
  NormedSpace space;
  std::vector<Member> members;

  SubspaceFamily() = default;
  SubspaceFamily(NormedSpace space, std::vector<Member> members);

  std::size_t size() const noexcept { return members.size(); }
  /// The columns of all member bases side by side.
  Matrix stacked_basis() const;
  bool spans() const;
};

}  // namespace arfs
