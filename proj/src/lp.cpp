#include "arfs/lp.hpp"

#include <limits>

namespace arfs {

namespace {

class Tableau {
 public:
  Tableau(const Matrix& a, const Vector& b, double tol) : rows_(a.rows()), tol_(tol) {
    const Eigen::Index n = a.cols();
    t_ = Matrix::Zero(rows_ + 1, n + rows_ + 1);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const double sign = b(i) < 0 ? -1.0 : 1.0;
      t_.row(i).head(n) = sign * a.row(i);
      t_(i, n + i) = 1.0;
      t_(i, rhs()) = sign * b(i);
    }
    columns_ = n;
    basis_.resize(static_cast<std::size_t>(rows_));
    for (Eigen::Index i = 0; i < rows_; ++i) basis_[static_cast<std::size_t>(i)] = n + i;
  }

  // Phase one: minimize the sum of artificials. Returns that minimum.
  double phase_one(int& budget) {
    t_.row(rows_).setZero();
    for (Eigen::Index i = 0; i < rows_; ++i) t_.row(rows_) -= t_.row(i);
    for (Eigen::Index i = 0; i < rows_; ++i) t_(rows_, columns_ + i) = 0;
    run(columns_ + rows_, budget);
    return -t_(rows_, rhs());
  }

  void drive_out_artificials() {
    for (Eigen::Index i = 0; i < rows_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < columns_) continue;
      for (Eigen::Index j = 0; j < columns_; ++j) {
        if (std::abs(t_(i, j)) > tol_) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  // Phase two on cost vector c (length = columns_). Returns false if unbounded.
  bool phase_two(const Vector& c, int& budget) {
    t_.row(rows_).setZero();
    t_.row(rows_).head(columns_) = c.transpose();
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const Eigen::Index j = basis_[static_cast<std::size_t>(i)];
      if (j < columns_ && c(j) != 0) t_.row(rows_) -= c(j) * t_.row(i);
    }
    return run(columns_, budget);
  }

  Vector solution() const {
    Vector x = Vector::Zero(columns_);
    for (Eigen::Index i = 0; i < rows_; ++i) {
      const Eigen::Index j = basis_[static_cast<std::size_t>(i)];
      if (j < columns_) x(j) = t_(i, rhs());
    }
    return x;
  }

 private:
  Eigen::Index rhs() const { return t_.cols() - 1; }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0) t_.row(i) -= f * t_.row(r);
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  // Bland's rule over columns [0, allowed). Returns false when unbounded.
  bool run(Eigen::Index allowed, int& budget) {
    while (true) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < allowed; ++j) {
        if (t_(rows_, j) < -tol_) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < rows_; ++i) {
        if (t_(i, enter) <= tol_) continue;
        const double ratio = t_(i, rhs()) / t_(i, enter);
        if (ratio < best - tol_ ||
            (ratio <= best + tol_ && leave >= 0 && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
      if (leave < 0) return false;
      if (--budget < 0) throw Error(ErrorKind::NoConvergence, "simplex pivot budget exhausted");
      pivot(leave, enter);
    }
  }

  Eigen::Index rows_;
  Eigen::Index columns_ = 0;
  double tol_;
  Matrix t_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, double tol, int max_pivots) {
  const Eigen::Index n = lp.c.size();
  const Eigen::Index m_ub = lp.a_ub.rows();
  const Eigen::Index m_eq = lp.a_eq.rows();
  if ((m_ub > 0 && lp.a_ub.cols() != n) || (m_eq > 0 && lp.a_eq.cols() != n) || lp.b_ub.size() != m_ub ||
      lp.b_eq.size() != m_eq || (!lp.free_vars.empty() && static_cast<Eigen::Index>(lp.free_vars.size()) != n))
    throw Error(ErrorKind::PreconditionViolated, "linear program has inconsistent shapes");

  // Columns: x+ (n), x- (one per free variable), slacks (m_ub).
  std::vector<Eigen::Index> negative_part(static_cast<std::size_t>(n), -1);
  Eigen::Index cols = n;
  for (Eigen::Index j = 0; j < n; ++j)
    if (lp.free_vars.empty() || lp.free_vars[static_cast<std::size_t>(j)]) negative_part[static_cast<std::size_t>(j)] = cols++;
  const Eigen::Index slack0 = cols;
  cols += m_ub;

  Matrix a = Matrix::Zero(m_ub + m_eq, cols);
  Vector b(m_ub + m_eq);
  Vector c = Vector::Zero(cols);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index neg = negative_part[static_cast<std::size_t>(j)];
    c(j) = lp.c(j);
    if (m_ub > 0) a.block(0, j, m_ub, 1) = lp.a_ub.col(j);
    if (m_eq > 0) a.block(m_ub, j, m_eq, 1) = lp.a_eq.col(j);
    if (neg >= 0) {
      c(neg) = -lp.c(j);
      a.col(neg) = -a.col(j);
    }
  }
  for (Eigen::Index i = 0; i < m_ub; ++i) a(i, slack0 + i) = 1.0;
  if (m_ub > 0) b.head(m_ub) = lp.b_ub;
  if (m_eq > 0) b.tail(m_eq) = lp.b_eq;

  LpSolution out;
  int budget = max_pivots;
  Tableau tableau(a, b, tol);
  const double scale = std::max(1.0, b.lpNorm<1>());
  if (tableau.phase_one(budget) > 1e-9 * scale) {
    out.status = LpStatus::Infeasible;
    return out;
  }
  tableau.drive_out_artificials();
  if (!tableau.phase_two(c, budget)) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  const Vector z = tableau.solution();
  out.x = z.head(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index neg = negative_part[static_cast<std::size_t>(j)];
    if (neg >= 0) out.x(j) -= z(neg);
  }
  out.value = lp.c.dot(out.x);
  out.status = LpStatus::Optimal;
  return out;
}

}  // namespace arfs
