#include "arfs/normed_space.hpp"

#include <algorithm>
#include <cctype>

namespace arfs {

NormKind conjugate(NormKind kind) noexcept {
  switch (kind) {
    case NormKind::L1:
      return NormKind::LInf;
    case NormKind::LInf:
      return NormKind::L1;
    case NormKind::L2:
      break;
  }
  return NormKind::L2;
}

std::string to_string(NormKind kind) {
  switch (kind) {
    case NormKind::L1:
      return "l1";
    case NormKind::L2:
      return "l2";
    case NormKind::LInf:
      return "linf";
  }
  return "?";
}

NormKind parse_norm_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "l1") return NormKind::L1;
  if (lower == "l2") return NormKind::L2;
  if (lower == "linf") return NormKind::LInf;
  throw Error(ErrorKind::ConfigInvalid, "unknown norm '" + std::string(text) + "'");
}

double norm(const Vector& v, NormKind kind) {
  switch (kind) {
    case NormKind::L1:
      return v.lpNorm<1>();
    case NormKind::L2:
      return v.norm();
    case NormKind::LInf:
      return v.size() == 0 ? 0.0 : v.lpNorm<Eigen::Infinity>();
  }
  return 0;
}

NormedSpace::NormedSpace(int dim, NormKind kind) : dim(dim), kind(kind) {
  if (dim < 1) throw Error(ErrorKind::PreconditionViolated, "space dimension must be at least 1");
}

double dual_norm(const DualFunctional& phi, const NormedSpace& space) {
  if (phi.coeffs.size() != space.dim) throw Error(ErrorKind::PreconditionViolated, "functional has wrong dimension");
  return space.dual_norm(phi.coeffs);
}

int numerical_rank(const Matrix& m, double tol) {
  if (m.size() == 0) return 0;
  const Eigen::JacobiSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol * s(0)) ++rank;
  return rank;
}

Subspace::Subspace(Matrix basis) : basis_(std::move(basis)) {
  if (!basis_.allFinite()) throw Error(ErrorKind::DegenerateInput, "basis has non-finite entries");
  if (basis_.cols() > basis_.rows()) throw Error(ErrorKind::DegenerateInput, "more basis vectors than the dimension");
  if (basis_.cols() == 0) {
    q_.resize(basis_.rows(), 0);
    return;
  }
  if (numerical_rank(basis_) < basis_.cols())
    throw Error(ErrorKind::DegenerateInput, "basis vectors are linearly dependent");
  const Eigen::HouseholderQR<Matrix> qr(basis_);
  q_ = qr.householderQ() * Matrix::Identity(basis_.rows(), basis_.cols());
}

Subspace::Subspace(int ambient_dim, const std::vector<Vector>& basis) {
  Matrix m(ambient_dim, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (basis[j].size() != ambient_dim) throw Error(ErrorKind::PreconditionViolated, "basis vector has wrong dimension");
    m.col(static_cast<Eigen::Index>(j)) = basis[j];
  }
  *this = Subspace(std::move(m));
}

Subspace Subspace::zero(int ambient_dim) { return Subspace(Matrix(ambient_dim, 0)); }

Subspace Subspace::whole(int ambient_dim) { return Subspace(Matrix::Identity(ambient_dim, ambient_dim)); }

Subspace Subspace::span_of(const Matrix& spanning, double tol) {
  const int rank = numerical_rank(spanning, tol);
  if (rank == 0) return zero(static_cast<int>(spanning.rows()));
  const Eigen::ColPivHouseholderQR<Matrix> qr(spanning);
  Matrix q = qr.householderQ() * Matrix::Identity(spanning.rows(), rank);
  return Subspace(std::move(q));
}

Matrix Subspace::complement() const {
  const auto n = basis_.rows();
  if (dim() == 0) return Matrix::Identity(n, n);
  const Eigen::HouseholderQR<Matrix> qr(basis_);
  const Matrix full = qr.householderQ() * Matrix::Identity(n, n);
  return full.rightCols(n - dim());
}

bool Subspace::contains(const Vector& v, double tol) const {
  return (v - project(v)).norm() <= tol * std::max(1.0, v.norm());
}

SubspaceFamily::SubspaceFamily(NormedSpace space, std::vector<Member> members)
    : space(space), members(std::move(members)) {
  for (const auto& m : this->members)
    if (m.subspace.ambient_dim() != space.dim)
      throw Error(ErrorKind::PreconditionViolated, "member '" + m.label + "' lives in the wrong dimension");
}

Matrix SubspaceFamily::stacked_basis() const {
  Eigen::Index cols = 0;
  for (const auto& m : members) cols += m.subspace.dim();
  Matrix out(space.dim, cols);
  Eigen::Index at = 0;
  for (const auto& m : members) {
    out.middleCols(at, m.subspace.dim()) = m.subspace.orthonormal();
    at += m.subspace.dim();
  }
  return out;
}

bool SubspaceFamily::spans() const { return numerical_rank(stacked_basis()) == space.dim; }

}  // namespace arfs
