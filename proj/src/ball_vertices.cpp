#include "arfs/ball_vertices.hpp"

#include <cmath>

namespace arfs {

namespace {

constexpr double kFeasibleSlack = 1e-9;
constexpr double kSameVertex = 1e-9;

class VertexSet {
 public:
  explicit VertexSet(Eigen::Index n) : n_(n) {}

  void add(Vector v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (std::abs(v(i)) > 1e-12) {
        if (v(i) < 0) v = -v;
        break;
      }
    }
    for (const auto& w : points_)
      if ((w - v).lpNorm<Eigen::Infinity>() <= kSameVertex) return;
    points_.push_back(std::move(v));
  }

  Matrix matrix() const {
    Matrix out(n_, static_cast<Eigen::Index>(points_.size()));
    for (std::size_t j = 0; j < points_.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = points_[j];
    return out;
  }

 private:
  Eigen::Index n_;
  std::vector<Vector> points_;
};

// Calls fn(rows) for every k-subset of {0..n-1}.
template <class Fn>
void for_each_combination(int n, int k, Fn&& fn) {
  std::vector<int> rows(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) rows[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(rows);
    int i = k - 1;
    while (i >= 0 && rows[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++rows[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) rows[static_cast<std::size_t>(j)] = rows[static_cast<std::size_t>(j - 1)] + 1;
  }
}

// Vertices sit where k of the constraints |y_i| <= 1 are tight.
Matrix linf_vertices(const Matrix& q) {
  const int n = static_cast<int>(q.rows());
  const int k = static_cast<int>(q.cols());
  VertexSet out(n);
  for_each_combination(n, k, [&](const std::vector<int>& rows) {
    Matrix m(k, k);
    for (int i = 0; i < k; ++i) m.row(i) = q.row(rows[static_cast<std::size_t>(i)]);
    Eigen::FullPivLU<Matrix> lu(m);
    lu.setThreshold(1e-10);
    if (lu.rank() < k) return;
    for (unsigned mask = 0; mask < (1u << (k - 1)); ++mask) {
      Vector s = Vector::Ones(k);
      for (int i = 1; i < k; ++i)
        if (mask & (1u << (i - 1))) s(i) = -1;
      const Vector y = q * lu.solve(s);
      const double size = y.lpNorm<Eigen::Infinity>();
      if (size <= 1.0 + kFeasibleSlack) out.add(y / size);
    }
  });
  return out.matrix();
}

// A point y of Y on the L1 sphere is extreme iff the part of Y supported
// inside supp(y) is one-dimensional.
Matrix l1_vertices(const Matrix& q) {
  const int n = static_cast<int>(q.rows());
  const int k = static_cast<int>(q.cols());
  VertexSet out(n);
  for (unsigned support = 1; support < (1u << n); ++support) {
    std::vector<int> outside;
    for (int i = 0; i < n; ++i)
      if (!(support & (1u << i))) outside.push_back(i);
    Vector c;
    if (outside.empty()) {
      if (k != 1) continue;
      c = Vector::Ones(1);
    } else {
      Matrix m(static_cast<Eigen::Index>(outside.size()), k);
      for (std::size_t i = 0; i < outside.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = q.row(outside[i]);
      Eigen::FullPivLU<Matrix> lu(m);
      lu.setThreshold(1e-10);
      if (k - lu.rank() != 1) continue;
      c = lu.kernel().col(0);
    }
    const Vector y = q * c;
    const double size = y.lpNorm<1>();
    if (size > 1e-12) out.add(y / size);
  }
  return out.matrix();
}

}  // namespace

Matrix ball_vertices(const Subspace& Y, NormKind kind) {
  if (Y.is_zero()) return Matrix(Y.ambient_dim(), 0);
  switch (kind) {
    case NormKind::L1:
      return l1_vertices(Y.orthonormal());
    case NormKind::LInf:
      return linf_vertices(Y.orthonormal());
    case NormKind::L2:
      break;
  }
  throw Error(ErrorKind::PreconditionViolated, "the L2 ball has no vertices");
}

double max_abs_pairing(const Vector& phi, const Matrix& vertices) {
  if (vertices.cols() == 0) return 0;
  return (vertices.transpose() * phi).lpNorm<Eigen::Infinity>();
}

}  // namespace arfs
