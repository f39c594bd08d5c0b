#include "arfs/representation.hpp"

#include <random>

#include "arfs/lp.hpp"

namespace arfs {

namespace {

void require_spanning(const Vector& x, const SubspaceFamily& family) {
  if (x.size() != family.space.dim) throw Error(ErrorKind::PreconditionViolated, "vector has wrong dimension");
  if (family.members.empty() || !family.spans())
    throw Error(ErrorKind::NotSpanning, "members do not span the ambient space");
}

// Adds |B c| <= t (L1, one t per coordinate) or |B c|_inf <= s (LInf) rows.
// Columns: c at c_at (k of them), norm variables at t_at.
void add_norm_rows(Matrix& a_ub, Eigen::Index& row, const Matrix& b, Eigen::Index c_at, Eigen::Index t_at,
                   NormKind kind) {
  const Eigen::Index n = b.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index t = kind == NormKind::L1 ? t_at + i : t_at;
    for (int sign : {1, -1}) {
      a_ub.block(row, c_at, 1, b.cols()) = sign * b.row(i);
      a_ub(row, t) = -1.0;
      ++row;
    }
  }
}

Vector best_lp_approximation(const Vector& r, const Matrix& q, NormKind kind) {
  const Eigen::Index n = q.rows();
  const Eigen::Index k = q.cols();
  const Eigen::Index extra = kind == NormKind::L1 ? n : 1;
  LinearProgram lp;
  lp.c = Vector::Zero(k + extra);
  lp.c.tail(extra).setOnes();
  lp.free_vars.assign(static_cast<std::size_t>(k + extra), false);
  for (Eigen::Index j = 0; j < k; ++j) lp.free_vars[static_cast<std::size_t>(j)] = true;
  // |r - Q c| <= t  <=>  -Q c - t <= -r  and  Q c - t <= r
  lp.a_ub = Matrix::Zero(2 * n, k + extra);
  lp.b_ub.resize(2 * n);
  Eigen::Index row = 0;
  add_norm_rows(lp.a_ub, row, q, 0, k, kind);
  for (Eigen::Index i = 0; i < n; ++i) {
    lp.b_ub(2 * i) = r(i);
    lp.b_ub(2 * i + 1) = -r(i);
  }
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) throw Error(ErrorKind::NoConvergence, "best-approximation LP failed");
  return q * sol.x.head(k);
}

// Best approximation of r from one member; ties between the LP optimum and
// the orthogonal projection go to the projection.
Vector best_approximation(const Vector& r, const Subspace& member, NormKind kind) {
  if (member.is_zero()) return Vector::Zero(r.size());
  const Vector projection = member.project(r);
  if (kind == NormKind::L2) return projection;
  const Vector lp = best_lp_approximation(r, member.orthonormal(), kind);
  const double via_projection = norm(r - projection, kind);
  const double via_lp = norm(r - lp, kind);
  return via_lp < via_projection * (1 - 1e-12) ? lp : projection;
}

Decomposition assemble(const Vector& x, const SubspaceFamily& family, const std::vector<Vector>& pieces) {
  Decomposition d;
  Vector total = Vector::Zero(x.size());
  const double floor = 1e-15 * std::max(1.0, family.space.norm(x));
  for (std::size_t i = 0; i < family.size(); ++i) {
    const double size = family.space.norm(pieces[i]);
    if (!(size > floor)) continue;
    d.parts.push_back({family.members[i].label, pieces[i], size});
    d.cost += size;
    total += pieces[i];
  }
  d.residual = family.space.norm(x - total);
  return d;
}

Decomposition min_cost_lp(const Vector& x, const SubspaceFamily& family, double tol) {
  const Eigen::Index n = family.space.dim;
  const NormKind kind = family.space.kind;
  const Eigen::Index extra = kind == NormKind::L1 ? n : 1;
  std::vector<Eigen::Index> c_at;
  Eigen::Index cols = 0;
  for (const auto& m : family.members) {
    c_at.push_back(cols);
    cols += m.subspace.dim() + (m.subspace.is_zero() ? 0 : extra);
  }
  LinearProgram lp;
  lp.c = Vector::Zero(cols);
  lp.free_vars.assign(static_cast<std::size_t>(cols), false);
  lp.a_ub = Matrix::Zero(2 * n * static_cast<Eigen::Index>(family.size()), cols);
  lp.a_eq = Matrix::Zero(n, cols);
  lp.b_eq = x;
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Subspace& s = family.members[i].subspace;
    if (s.is_zero()) continue;
    const Eigen::Index k = s.dim();
    for (Eigen::Index j = 0; j < k; ++j) lp.free_vars[static_cast<std::size_t>(c_at[i] + j)] = true;
    lp.c.segment(c_at[i] + k, extra).setOnes();
    lp.a_eq.middleCols(c_at[i], k) = s.orthonormal();
    add_norm_rows(lp.a_ub, row, s.orthonormal(), c_at[i], c_at[i] + k, kind);
  }
  lp.a_ub.conservativeResize(row, cols);
  lp.b_ub = Vector::Zero(row);
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) throw Error(ErrorKind::NoConvergence, "minimum-cost LP failed");

  std::vector<Vector> pieces;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Subspace& s = family.members[i].subspace;
    pieces.push_back(s.is_zero() ? Vector::Zero(n) : Vector(s.orthonormal() * sol.x.segment(c_at[i], s.dim())));
  }
  Decomposition d = assemble(x, family, pieces);
  d.lower_bound = std::max(family.space.norm(x), sol.value - tol);
  return d;
}

// Sum_l sqrt(|c_l|^2 + mu^2) over c = c0 + N w, minimized by Newton's method
// while mu shrinks. The final gradient gives a dual certificate.
Decomposition min_cost_l2(const Vector& x, const SubspaceFamily& family, double tol) {
  const Eigen::Index n = family.space.dim;
  std::vector<std::size_t> active;
  std::vector<Eigen::Index> at;
  Eigen::Index total = 0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family.members[i].subspace.is_zero()) continue;
    active.push_back(i);
    at.push_back(total);
    total += family.members[i].subspace.dim();
  }
  Matrix q(n, total);
  for (std::size_t b = 0; b < active.size(); ++b)
    q.middleCols(at[b], family.members[active[b]].subspace.dim()) = family.members[active[b]].subspace.orthonormal();
  auto block = [&](const Vector& c, std::size_t b) {
    return c.segment(at[b], family.members[active[b]].subspace.dim());
  };

  const Vector c0 = q.completeOrthogonalDecomposition().solve(x);
  const Eigen::JacobiSVD<Matrix> svd(q, Eigen::ComputeFullV);
  const Matrix null = svd.matrixV().rightCols(total - n);
  const double scale = std::max(x.norm(), 1e-300);

  Vector w = Vector::Zero(null.cols());
  double mu = 0.1 * scale;
  auto objective = [&](const Vector& ww, double m) {
    const Vector c = c0 + null * ww;
    double f = 0;
    for (std::size_t b = 0; b < active.size(); ++b) f += std::sqrt(block(c, b).squaredNorm() + m * m);
    return f;
  };
  if (null.cols() > 0) {
    for (; mu >= 1e-13 * scale; mu *= 0.1) {
      for (int it = 0; it < 60; ++it) {
        const Vector c = c0 + null * w;
        Vector grad = Vector::Zero(w.size());
        Matrix hess = Matrix::Zero(w.size(), w.size());
        for (std::size_t b = 0; b < active.size(); ++b) {
          const Vector cb = block(c, b);
          const double s = std::sqrt(cb.squaredNorm() + mu * mu);
          const auto nb = null.middleRows(at[b], cb.size());
          grad += nb.transpose() * (cb / s);
          const Matrix inner = Matrix::Identity(cb.size(), cb.size()) / s - cb * cb.transpose() / (s * s * s);
          hess += nb.transpose() * inner * nb;
        }
        hess.diagonal().array() += 1e-14 * hess.diagonal().cwiseAbs().maxCoeff() + 1e-300;
        const Vector step = -hess.ldlt().solve(grad);
        const double decrement = -grad.dot(step);
        if (!(decrement > 1e-24 * scale)) break;
        double t = 1;
        const double f0 = objective(w, mu);
        while (t > 1e-12 && objective(w + t * step, mu) > f0 - 0.25 * t * decrement) t *= 0.5;
        if (t <= 1e-12) break;
        w += t * step;
      }
    }
  }
  const Vector c = c0 + null * w;
  mu = 1e-13 * scale;

  std::vector<Vector> pieces(family.size(), Vector::Zero(n));
  Vector g(total);
  for (std::size_t b = 0; b < active.size(); ++b) {
    const Vector cb = block(c, b);
    pieces[active[b]] = family.members[active[b]].subspace.orthonormal() * cb;
    g.segment(at[b], cb.size()) = cb / std::sqrt(cb.squaredNorm() + mu * mu);
  }
  Decomposition d = assemble(x, family, pieces);

  // phi with Q^T phi ~ g, scaled so every restriction has norm <= 1. The
  // smoothed gradient is refined by pinning the clearly nonzero blocks to
  // their exact unit directions.
  const Vector phi_g = q.transpose().colPivHouseholderQr().solve(g);
  auto certify = [&](const Vector& phi) {
    const Vector r = q.transpose() * phi;
    double worst = 0;
    for (std::size_t b = 0; b < active.size(); ++b) worst = std::max(worst, block(r, b).norm());
    return worst > 0 ? phi.dot(x) / worst : 0.0;
  };
  double certified = certify(phi_g);
  for (double cut : {1e-10, 1e-8, 1e-6, 1e-4}) {
    std::vector<std::size_t> pinned;
    Eigen::Index rows = 0;
    for (std::size_t b = 0; b < active.size(); ++b)
      if (block(c, b).norm() > cut * scale) {
        pinned.push_back(b);
        rows += block(c, b).size();
      }
    if (pinned.empty()) continue;
    Matrix a(rows, n);
    Vector u(rows);
    Eigen::Index r = 0;
    for (std::size_t b : pinned) {
      const Vector cb = block(c, b);
      a.middleRows(r, cb.size()) = q.middleCols(at[b], cb.size()).transpose();
      u.segment(r, cb.size()) = cb.normalized();
      r += cb.size();
    }
    const Vector phi = phi_g + a.completeOrthogonalDecomposition().solve(u - a * phi_g);
    certified = std::max(certified, certify(phi));
  }
  d.lower_bound = std::max(x.norm(), certified);
  if (d.cost - d.lower_bound > tol * std::max(1.0, d.cost))
    throw Error(ErrorKind::NoConvergence, "minimum-cost decomposition did not close its duality gap");
  return d;
}

}  // namespace

Decomposition greedy_decompose(const Vector& x, const SubspaceFamily& family, double eps, double tol, int max_steps) {
  require_spanning(x, family);
  if (!(eps > 0)) throw Error(ErrorKind::PreconditionViolated, "eps must be positive");
  if (!(family.space.norm(x) > 0)) throw Error(ErrorKind::PreconditionViolated, "x must be nonzero");
  const NormKind kind = family.space.kind;

  std::vector<Vector> sums(family.size(), Vector::Zero(x.size()));
  Vector residual = x;
  double size = family.space.norm(residual);
  bool met = true;
  bool euclidean = false;
  int steps = 0;
  while (size > tol) {
    if (steps >= max_steps) throw Error(ErrorKind::ScheduleStall, "greedy step budget exhausted");
    std::size_t pick = 0;
    Vector best_z;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < family.size() && !euclidean; ++i) {
      Vector z = best_approximation(residual, family.members[i].subspace, kind);
      const double d = norm(residual - z, kind);
      if (d < best) {
        best = d;
        pick = i;
        best_z = std::move(z);
      }
    }
    if (!(best < size * (1 - 1e-12))) {
      // No member beats the residual in the ambient norm (possible off L2).
      // From here on take the largest orthogonal projection; it shrinks the
      // Euclidean residual geometrically, so the iteration cannot stall.
      euclidean = true;
      double largest = 0;
      for (std::size_t i = 0; i < family.size(); ++i) {
        Vector z = family.members[i].subspace.project(residual);
        if (z.norm() > largest) {
          largest = z.norm();
          pick = i;
          best_z = std::move(z);
        }
      }
      if (!(largest > 0)) throw Error(ErrorKind::ScheduleStall, "no member reduces the residual");
    }
    sums[pick] += best_z;
    residual -= best_z;
    size = family.space.norm(residual);
    if (!(size < eps * std::ldexp(1.0, -(steps + 2)) || size <= tol)) met = false;
    ++steps;
  }
  Decomposition d = assemble(x, family, sums);
  d.steps = steps;
  d.schedule_met = met;
  return d;
}

Decomposition min_cost_decompose(const Vector& x, const SubspaceFamily& family, double tol) {
  require_spanning(x, family);
  if (!(family.space.norm(x) > 0)) return assemble(x, family, std::vector<Vector>(family.size(), Vector::Zero(x.size())));
  return family.space.kind == NormKind::L2 ? min_cost_l2(x, family, tol) : min_cost_lp(x, family, tol);
}

RepresentationConstant representation_constant_detail(const SubspaceFamily& family, double tol, std::size_t samples,
                                                      std::uint64_t seed, Execution execution) {
  if (family.members.empty() || !family.spans())
    throw Error(ErrorKind::NotSpanning, "members do not span the ambient space");
  if (samples == 0) throw Error(ErrorKind::PreconditionViolated, "need at least one sample");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<Vector> directions;
  while (directions.size() < samples) {
    Vector v(family.space.dim);
    for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = gauss(rng);
    const double size = family.space.norm(v);
    if (size > 0) directions.push_back(v / size);
  }
  const ArgBest best = arg_max(execution, samples,
                               [&](std::size_t i) { return min_cost_decompose(directions[i], family, tol).cost; });
  return {best.value, directions[best.index]};
}

double representation_constant(const SubspaceFamily& family, double tol, std::size_t samples, std::uint64_t seed) {
  return representation_constant_detail(family, tol, samples, seed).value;
}

}  // namespace arfs
