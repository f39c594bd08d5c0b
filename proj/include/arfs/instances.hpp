#pragma once

// Seeded random instance generators shared by the property tests and the
// acceptance suite.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "arfs/expsum.hpp"
#include "arfs/normed_space.hpp"

namespace arfs::instances {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Sorted values in [lo, hi] with consecutive separation >= sep (rejection).
inline std::vector<double> separated_values(Rng& rng, std::size_t count, double lo, double hi, double sep) {
  while (true) {
    std::vector<double> v(count);
    for (auto& x : v) x = uniform(rng, lo, hi);
    std::sort(v.begin(), v.end());
    bool ok = true;
    for (std::size_t i = 1; i < v.size(); ++i) ok = ok && v[i] - v[i - 1] >= sep;
    if (ok) return v;
  }
}

inline ExpSum random_expsum(Rng& rng, std::size_t max_terms, double alpha_lo = 0.3, double alpha_hi = 8.0) {
  const auto n = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(max_terms)));
  const auto alphas = separated_values(rng, n, alpha_lo, alpha_hi, 0.05);
  std::vector<ExpSum::Term> terms;
  for (double a : alphas) terms.push_back({uniform(rng, -1.0, 1.0), a});
  return ExpSum(std::move(terms));
}

/// Exponents with a delta-gap; M is beta times a random factor >= 1.
struct AdmissibleSet {
  std::vector<double> alphas;
  double delta;
  double M;
};

inline AdmissibleSet random_admissible(Rng& rng, std::size_t max_terms) {
  AdmissibleSet out;
  out.delta = uniform(rng, 0.5, 2.0);
  const auto n = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(max_terms)));
  double a = uniform(rng, 0.5, 3.0);
  for (std::size_t k = 0; k < n; ++k) {
    out.alphas.push_back(a);
    a += out.delta + uniform(rng, 0.0, 2.0);
  }
  double beta = 0;
  for (double x : out.alphas) beta += 1.0 / x;
  out.M = beta * uniform(rng, 1.0, 1.5);
  return out;
}

inline Vector gaussian_vector(Rng& rng, int n) {
  std::normal_distribution<double> gauss;
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = gauss(rng);
  return v;
}

inline Matrix gaussian_matrix(Rng& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j) m.col(j) = gaussian_vector(rng, rows);
  return m;
}

inline Subspace random_subspace(Rng& rng, int n, int k) { return Subspace(gaussian_matrix(rng, n, k)); }

/// Spanning family of `members` random subspaces of dimension 1..max_member_dim.
inline SubspaceFamily random_spanning_family(Rng& rng, int n, NormKind kind, int members, int max_member_dim) {
  if (members * std::min(n, max_member_dim) < n)
    throw Error(ErrorKind::PreconditionViolated, "too few or too small members to span");
  while (true) {
    std::vector<Member> list;
    for (int i = 0; i < members; ++i) {
      const int k = uniform_int(rng, 1, std::min(n, max_member_dim));
      list.push_back({"X" + std::to_string(i), random_subspace(rng, n, k)});
    }
    SubspaceFamily family(NormedSpace(n, kind), std::move(list));
    if (family.spans()) return family;
  }
}

}  // namespace arfs::instances
