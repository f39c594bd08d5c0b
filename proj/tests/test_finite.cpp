#include "doctest.h"

#include <cmath>
#include <numbers>

#include "arfs/ball_vertices.hpp"
#include "arfs/finite.hpp"
#include "arfs/lp.hpp"
#include "generators.hpp"

using namespace arfs;
using arfs::testing::Rng;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an arfs::Error");
  return ErrorKind::CheckFailed;
}

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

Subspace line(std::initializer_list<double> xs) { return Subspace(Matrix(vec(xs))); }

SubspaceFamily axes(int n, NormKind kind) {
  std::vector<Member> members;
  for (int i = 0; i < n; ++i) members.push_back({"e" + std::to_string(i + 1), Subspace(Matrix(Vector::Unit(n, i)))});
  return SubspaceFamily(NormedSpace(n, kind), members);
}

// Scan of the unit sphere of a subspace of dimension <= 2.
template <class Fn>
double scan_unit_sphere(const Subspace& y, NormKind kind, Fn&& fn, int points = 100000) {
  const Matrix& q = y.orthonormal();
  double best = 0;
  for (int i = 0; i < points; ++i) {
    Vector c(q.cols());
    if (q.cols() == 1) {
      c(0) = 1;
    } else {
      const double th = std::numbers::pi * i / points;
      c << std::cos(th), std::sin(th);
    }
    const Vector v = q * c;
    best = std::max(best, fn(Vector(v / norm(v, kind))));
    if (q.cols() == 1) break;
  }
  return best;
}

// d(y, Z) by linear programming: min |y - Q c| in L1 or LInf.
double lp_distance(const Vector& y, const Subspace& z, NormKind kind) {
  if (z.is_zero()) return norm(y, kind);
  const Matrix& q = z.orthonormal();
  const Eigen::Index n = q.rows();
  const Eigen::Index k = q.cols();
  const Eigen::Index extra = kind == NormKind::L1 ? n : 1;
  LinearProgram lp;
  lp.c = Vector::Zero(k + extra);
  lp.c.tail(extra).setOnes();
  lp.free_vars.assign(static_cast<std::size_t>(k + extra), false);
  for (Eigen::Index j = 0; j < k; ++j) lp.free_vars[static_cast<std::size_t>(j)] = true;
  lp.a_ub = Matrix::Zero(2 * n, k + extra);
  lp.b_ub.resize(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index t = kind == NormKind::L1 ? k + i : k;
    lp.a_ub.block(2 * i, 0, 1, k) = -q.row(i);
    lp.a_ub(2 * i, t) = -1;
    lp.b_ub(2 * i) = -y(i);
    lp.a_ub.block(2 * i + 1, 0, 1, k) = q.row(i);
    lp.a_ub(2 * i + 1, t) = -1;
    lp.b_ub(2 * i + 1) = y(i);
  }
  return solve_lp(lp).value;
}

// 1/eps* = max ||phi||_* subject to ||phi|X_l|| <= 1, where the restriction
// norm is the least dual norm of an extension psi_l of phi|X_l.
double epsilon_star_lp_oracle(const SubspaceFamily& family) {
  const int n = family.space.dim;
  const bool l1 = family.space.kind == NormKind::L1;
  const auto members = static_cast<Eigen::Index>(family.size());
  // variables: phi (n), psi_l (n each), and for LInf ambient a_l (n each)
  const Eigen::Index per = l1 ? n : 2 * n;
  const Eigen::Index cols = n + members * per;
  std::vector<Vector> objectives;
  if (l1) {
    for (int i = 0; i < n; ++i) objectives.push_back(Vector::Unit(n, i));
  } else {
    for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
      Vector s = Vector::Ones(n);
      for (int i = 1; i < n; ++i)
        if (mask & (1u << (i - 1))) s(i) = -1;
      objectives.push_back(s);
    }
  }
  double best = 0;
  for (const Vector& e : objectives) {
    LinearProgram lp;
    lp.c = Vector::Zero(cols);
    lp.c.head(n) = -e;
    lp.free_vars.assign(static_cast<std::size_t>(cols), true);
    Eigen::Index eq_rows = 0;
    for (const auto& m : family.members) eq_rows += m.subspace.dim();
    lp.a_eq = Matrix::Zero(eq_rows, cols);
    lp.b_eq = Vector::Zero(eq_rows);
    const Eigen::Index ub_rows = l1 ? 2 * n * members : (2 * n + 1) * members;
    lp.a_ub = Matrix::Zero(ub_rows, cols);
    lp.b_ub = Vector::Zero(ub_rows);
    Eigen::Index er = 0;
    Eigen::Index ur = 0;
    for (Eigen::Index l = 0; l < members; ++l) {
      const Matrix& q = family.members[static_cast<std::size_t>(l)].subspace.orthonormal();
      const Eigen::Index psi = n + l * per;
      lp.a_eq.block(er, 0, q.cols(), n) = -q.transpose();
      lp.a_eq.block(er, psi, q.cols(), n) = q.transpose();
      er += q.cols();
      for (int i = 0; i < n; ++i) {
        if (l1) {
          lp.a_ub(ur, psi + i) = 1;
          lp.b_ub(ur++) = 1;
          lp.a_ub(ur, psi + i) = -1;
          lp.b_ub(ur++) = 1;
        } else {
          const Eigen::Index a = psi + n + i;
          lp.free_vars[static_cast<std::size_t>(a)] = false;
          lp.a_ub(ur, psi + i) = 1;
          lp.a_ub(ur++, a) = -1;
          lp.a_ub(ur, psi + i) = -1;
          lp.a_ub(ur++, a) = -1;
        }
      }
      if (!l1) {
        lp.a_ub.block(ur, psi + n, 1, n).setOnes();
        lp.b_ub(ur++) = 1;
      }
    }
    const LpSolution sol = solve_lp(lp);
    if (sol.status == LpStatus::Unbounded) return 0;
    REQUIRE(sol.status == LpStatus::Optimal);
    best = std::max(best, -sol.value);
  }
  return 1.0 / best;
}

// L2, one-dimensional members v_l: 1/eps* = max |phi| over the polytope
// |v_l . phi| <= 1, attained at a vertex.
double epsilon_star_vertex_oracle(const std::vector<Vector>& lines) {
  const int n = static_cast<int>(lines[0].size());
  const int m = static_cast<int>(lines.size());
  double best = 0;
  std::vector<int> pick(static_cast<std::size_t>(n));
  std::function<void(int, int)> choose = [&](int start, int depth) {
    if (depth == n) {
      Matrix a(n, n);
      for (int i = 0; i < n; ++i) a.row(i) = lines[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])].normalized();
      Eigen::FullPivLU<Matrix> lu(a);
      if (lu.rank() < n) return;
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        Vector s(n);
        for (int i = 0; i < n; ++i) s(i) = (mask & (1u << i)) ? -1 : 1;
        const Vector phi = lu.solve(s);
        bool feasible = true;
        for (const auto& v : lines) feasible = feasible && std::abs(v.normalized().dot(phi)) <= 1 + 1e-9;
        if (feasible) best = std::max(best, phi.norm());
      }
      return;
    }
    for (int i = start; i < m; ++i) {
      pick[static_cast<std::size_t>(depth)] = i;
      choose(i + 1, depth + 1);
    }
  };
  choose(0, 0);
  return 1.0 / best;
}

}  // namespace

TEST_CASE("linear programs") {
  // max x + y  s.t.  x + 2y <= 4, 3x + y <= 6, x, y >= 0  ->  (8/5, 6/5)
  LinearProgram lp;
  lp.c = vec({-1, -1});
  lp.a_ub = (Matrix(2, 2) << 1, 2, 3, 1).finished();
  lp.b_ub = vec({4, 6});
  lp.free_vars = {false, false};
  const auto sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.x(0) == doctest::Approx(1.6));
  CHECK(sol.x(1) == doctest::Approx(1.2));
  CHECK(sol.value == doctest::Approx(-2.8));

  LinearProgram infeasible;
  infeasible.c = vec({1});
  infeasible.a_ub = Matrix::Ones(1, 1);
  infeasible.b_ub = vec({-1});
  infeasible.free_vars = {false};
  CHECK(solve_lp(infeasible).status == LpStatus::Infeasible);

  LinearProgram unbounded;
  unbounded.c = vec({-1, 0});
  unbounded.a_eq = (Matrix(1, 2) << 1, -1).finished();
  unbounded.b_eq = vec({0});
  CHECK(solve_lp(unbounded).status == LpStatus::Unbounded);

  // free variables pinned by equalities: x + y = 3, x - y = 1
  LinearProgram eq;
  eq.c = vec({0, 0});
  eq.a_eq = (Matrix(2, 2) << 1, 1, 1, -1).finished();
  eq.b_eq = vec({3, 1});
  const auto e = solve_lp(eq);
  REQUIRE(e.status == LpStatus::Optimal);
  CHECK(e.x(0) == doctest::Approx(2));
  CHECK(e.x(1) == doctest::Approx(1));
}

TEST_CASE("norms and dual norms") {
  CHECK(dual_norm({vec({1, 0})}, NormedSpace(2, NormKind::L2)) == 1.0);
  CHECK(dual_norm({vec({1, 1})}, NormedSpace(2, NormKind::L1)) == 1.0);
  CHECK(dual_norm({vec({3, 4})}, NormedSpace(2, NormKind::L2)) == 5.0);
  CHECK(dual_norm({vec({1, -2})}, NormedSpace(2, NormKind::LInf)) == 3.0);
  CHECK(conjugate(NormKind::L1) == NormKind::LInf);
  CHECK(conjugate(NormKind::LInf) == NormKind::L1);
  CHECK(conjugate(NormKind::L2) == NormKind::L2);
  CHECK(parse_norm_kind("LInf") == NormKind::LInf);
  CHECK(kind_of([] { parse_norm_kind("l3"); }) == ErrorKind::ConfigInvalid);
  CHECK(kind_of([] { Subspace(Matrix((Matrix(2, 2) << 1, 2, 2, 4).finished())); }) == ErrorKind::DegenerateInput);
  CHECK(Subspace::zero(3).is_zero());
}

TEST_CASE("unit-ball vertices of subspaces") {
  const Matrix sq = ball_vertices(Subspace::whole(2), NormKind::LInf);
  CHECK(sq.cols() == 2);
  const Matrix octa = ball_vertices(Subspace::whole(3), NormKind::L1);
  CHECK(octa.cols() == 3);
  CHECK(ball_vertices(Subspace::whole(3), NormKind::LInf).cols() == 4);

  Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = testing::uniform_int(rng, 2, 5);
    const int k = testing::uniform_int(rng, 1, n);
    const Subspace y = testing::random_subspace(rng, n, k);
    for (NormKind kind : {NormKind::L1, NormKind::LInf}) {
      const Matrix v = ball_vertices(y, kind);
      REQUIRE(v.cols() >= 1);
      for (Eigen::Index j = 0; j < v.cols(); ++j) {
        CHECK(norm(v.col(j), kind) == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(y.contains(v.col(j), 1e-9));
      }
    }
  }
}

TEST_CASE("restriction norm anchors") {
  for (NormKind kind : {NormKind::L1, NormKind::L2, NormKind::LInf}) {
    const NormedSpace space(3, kind);
    const DualFunctional phi{vec({0.3, -1.2, 0.5})};
    CHECK(restriction_norm(phi, Subspace::whole(3), space) == doctest::Approx(space.dual_norm(phi.coeffs)));
    CHECK(restriction_norm(phi, Subspace::zero(3), space) == 0.0);
  }
  const NormedSpace plane(2, NormKind::L2);
  CHECK(restriction_norm({vec({0, 1})}, line({1, 1}), plane) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("restriction norm matches a unit-sphere scan in L1 and LInf") {
  Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = testing::uniform_int(rng, 2, 4);
    const int k = testing::uniform_int(rng, 1, 2);
    const Subspace y = testing::random_subspace(rng, n, k);
    const Vector phi = testing::gaussian_vector(rng, n);
    for (NormKind kind : {NormKind::L1, NormKind::LInf}) {
      const double exact = restriction_norm({phi}, y, NormedSpace(n, kind));
      const double scanned = scan_unit_sphere(y, kind, [&](const Vector& v) { return std::abs(phi.dot(v)); });
      CHECK(scanned <= exact * (1 + 1e-12));
      // the maximizer is a vertex, so the scan error is first order in the step
      CHECK(scanned >= exact * (1 - 1e-4));
    }
  }
}

TEST_CASE("rho0 anchors") {
  const NormedSpace plane(2, NormKind::L2);
  const Subspace e1 = line({1, 0});
  const Subspace e2 = line({0, 1});
  CHECK(rho0(e1, e1, plane) == doctest::Approx(0.0));
  CHECK(rho0(e1, e2, plane) == doctest::Approx(1.0));
  for (double th : {0.1, 0.7, 1.3, 2.5}) {
    const Subspace tilted = line({std::cos(th), std::sin(th)});
    CHECK(rho0(e1, tilted, plane) == doctest::Approx(std::abs(std::sin(th))).epsilon(1e-12));
  }
  CHECK(rho0(Subspace::zero(2), e2, plane) == 0.0);
  CHECK(rho0(e1, Subspace::zero(2), plane) == doctest::Approx(1.0));
  CHECK(rho0(e1, Subspace::whole(2), plane) == 0.0);
  for (NormKind kind : {NormKind::L1, NormKind::LInf}) {
    const NormedSpace s(2, kind);
    CHECK(rho0(e1, e1, s) == doctest::Approx(0.0));
    CHECK(rho0(e1, e2, s) == doctest::Approx(1.0));
  }
}

TEST_CASE("rho0 matches a scan with LP distances in L1 and LInf") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = testing::uniform_int(rng, 2, 4);
    const Subspace y = testing::random_subspace(rng, n, testing::uniform_int(rng, 1, 2));
    const Subspace z = testing::random_subspace(rng, n, testing::uniform_int(rng, 1, n - 1));
    for (NormKind kind : {NormKind::L1, NormKind::LInf}) {
      const double exact = rho0(y, z, NormedSpace(n, kind));
      const double scanned =
          scan_unit_sphere(y, kind, [&](const Vector& v) { return lp_distance(v, z, kind); }, 2000);
      CHECK(scanned <= exact * (1 + 1e-9) + 1e-12);
      CHECK(scanned >= exact * (1 - 1e-3));
    }
  }
}

TEST_CASE("kernel observation: rho0(Z, ker phi) = ||phi|Z|| for unit phi") {
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = testing::uniform_int(rng, 2, 5);
    const NormKind kind = trial % 3 == 0 ? NormKind::L2 : (trial % 3 == 1 ? NormKind::L1 : NormKind::LInf);
    const NormedSpace space(n, kind);
    Vector phi = testing::gaussian_vector(rng, n);
    phi /= space.dual_norm(phi);
    const Subspace z = testing::random_subspace(rng, n, testing::uniform_int(rng, 1, n));
    const Subspace kernel(Subspace(Matrix(phi)).complement());
    CHECK(std::abs(rho0(z, kernel, space) - restriction_norm({phi}, z, space)) <= 1e-9);
  }
}

TEST_CASE("epsilon star anchors") {
  const auto ax = axes(2, NormKind::L2);
  CHECK(epsilon_star(ax) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-8));
  const SubspaceFamily whole(NormedSpace(3, NormKind::L2), {{"X", Subspace::whole(3)}});
  CHECK(epsilon_star(whole) == doctest::Approx(1.0).epsilon(1e-12));
  for (NormKind kind : {NormKind::L1, NormKind::LInf}) {
    const SubspaceFamily w(NormedSpace(3, kind), {{"X", Subspace::whole(3)}});
    CHECK(epsilon_star(w) == doctest::Approx(1.0).epsilon(1e-9));
  }
  const SubspaceFamily flat(NormedSpace(3, NormKind::L2), {{"a", line({1, 0, 0})}, {"b", line({1, 1, 0})}});
  const auto detail = epsilon_star_detail(flat);
  CHECK(detail.value == 0.0);
  CHECK_FALSE(detail.spanning);
  CHECK(std::abs(detail.phi(2)) == doctest::Approx(1.0));
  CHECK(kind_of([] { epsilon_star(axes(7, NormKind::L2)); }) == ErrorKind::DimensionCap);
  // Axes in L1: the coordinate functionals restrict with norm |phi_i|, dual is LInf, eps* = 1.
  CHECK(epsilon_star(axes(3, NormKind::L1)) == doctest::Approx(1.0).epsilon(1e-9));
  // Axes in LInf: dual is L1, eps* = 1/n.
  CHECK(epsilon_star(axes(3, NormKind::LInf)) == doctest::Approx(1.0 / 3).epsilon(1e-6));
}

TEST_CASE("epsilon star agrees with a vertex-enumeration oracle for L2 lines") {
  Rng rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = testing::uniform_int(rng, 2, 3);
    const int m = testing::uniform_int(rng, n, n + 3);
    std::vector<Vector> lines;
    for (int i = 0; i < m; ++i) lines.push_back(testing::gaussian_vector(rng, n));
    const auto family = family_from_vectors(lines, NormedSpace(n, NormKind::L2));
    if (!family.spans()) continue;
    const double oracle = epsilon_star_vertex_oracle(lines);
    CHECK(epsilon_star(family) == doctest::Approx(oracle).epsilon(1e-5));
  }
}

TEST_CASE("epsilon star agrees with an LP oracle in L1 and LInf") {
  Rng rng(202);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = testing::uniform_int(rng, 2, 3);
    const NormKind kind = trial % 2 ? NormKind::L1 : NormKind::LInf;
    const auto family = testing::random_spanning_family(rng, n, kind, testing::uniform_int(rng, 1, 4), n);
    const double oracle = epsilon_star_lp_oracle(family);
    CHECK(epsilon_star(family) == doctest::Approx(oracle).epsilon(1e-5));
  }
}

TEST_CASE("epsilon star: serial reference and parallel kernel agree exactly") {
  Rng rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 2 + trial % 3;
    const auto family = testing::random_spanning_family(rng, n, static_cast<NormKind>(trial % 3), 3, 2);
    EpsilonOptions serial;
    serial.execution = Execution::Serial;
    serial.grid_points = 4000;
    EpsilonOptions parallel = serial;
    parallel.execution = Execution::Parallel;
    const auto a = epsilon_star_detail(family, serial);
    const auto b = epsilon_star_detail(family, parallel);
    CHECK(a.value == b.value);
    CHECK(a.phi == b.phi);
  }
}

TEST_CASE("epsilon star properties") {
  Rng rng(55);
  const double tol = 1e-6;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = testing::uniform_int(rng, 2, 3);
    const NormKind kind = static_cast<NormKind>(trial % 3);
    auto family = testing::random_spanning_family(rng, n, kind, testing::uniform_int(rng, 1, 3), n);
    const double eps = epsilon_star(family);
    CHECK(eps > 0);
    CHECK(eps <= 1 + 1e-12);

    // monotone under adding a member
    auto bigger = family;
    bigger.members.push_back({"extra", testing::random_subspace(rng, n, testing::uniform_int(rng, 1, n))});
    CHECK(epsilon_star(bigger) >= eps - 2 * tol);

    // geometric criterion against random proper subspaces
    for (int k = 0; k < 5; ++k) {
      const Subspace y = testing::random_subspace(rng, n, testing::uniform_int(rng, 1, n - 1));
      double sup = 0;
      for (const auto& m : family.members) sup = std::max(sup, rho0(m.subspace, y, family.space));
      CHECK(sup >= eps - 2 * tol);
    }

    if (kind == NormKind::L2) {
      const Eigen::HouseholderQR<Matrix> qr(testing::gaussian_matrix(rng, n, n));
      const Matrix rot = qr.householderQ();
      auto rotated = family;
      for (auto& m : rotated.members) m.subspace = Subspace(Matrix(rot * m.subspace.basis()));
      CHECK(epsilon_star(rotated) == doctest::Approx(eps).epsilon(2 * tol));
    }
  }
}

TEST_CASE("stability floor") {
  CHECK(stability_floor(0.5, 0) == 0.5);
  CHECK(stability_floor(0.5, 0.25) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(kind_of([] { stability_floor(0.5, 0.5); }) == ErrorKind::RTooLarge);
  CHECK(kind_of([] { stability_floor(0.5, -0.1); }) == ErrorKind::PreconditionViolated);
}

TEST_CASE("perturbation generator") {
  Rng rng(9);
  const auto family = testing::random_spanning_family(rng, 3, NormKind::L2, 3, 2);
  const auto same = perturb_family(family, 0.0, 1);
  for (std::size_t i = 0; i < family.size(); ++i) CHECK(same.members[i].subspace.basis() == family.members[i].subspace.basis());

  const auto a = perturb_family(family, 0.05, 42);
  const auto b = perturb_family(family, 0.05, 42);
  for (std::size_t i = 0; i < family.size(); ++i) {
    CHECK(a.members[i].subspace.basis() == b.members[i].subspace.basis());
    const double r = rho0(family.members[i].subspace, a.members[i].subspace, family.space);
    CHECK(r <= 0.05);
    CHECK(r >= 0.04);
  }
  for (NormKind kind : {NormKind::L1, NormKind::LInf}) {
    const auto f = testing::random_spanning_family(rng, 3, kind, 3, 2);
    const auto p = perturb_family(f, 0.1, 5);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(rho0(f.members[i].subspace, p.members[i].subspace, f.space) <= 0.1);
  }
}

TEST_CASE("stability of eps* under perturbation") {
  Rng rng(606);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = testing::uniform_int(rng, 2, 3);
    const auto family = testing::random_spanning_family(rng, n, NormKind::L2, testing::uniform_int(rng, 2, 4), n);
    const double eps = epsilon_star(family);
    for (double frac : {0.1, 0.5}) {
      const double r = frac * eps;
      const auto perturbed = perturb_family(family, r, static_cast<std::uint64_t>(trial));
      CHECK(epsilon_star(perturbed) >= stability_floor(eps, r) - 2e-4);
    }
  }
}

TEST_CASE("subadditive functionals") {
  const auto ax = axes(2, NormKind::L2);
  const auto r = subadditive_bound_check(ax, SubadditiveFunctional::seminorm(vec({1, 0})));
  CHECK(r.pass);
  CHECK(r.witness["norm"].get<double>() == doctest::Approx(1.0));
  CHECK(r.witness["sup"].get<double>() == doctest::Approx(1.0));

  const auto d = subadditive_bound_check(ax, SubadditiveFunctional::distance_to(Subspace::whole(2)));
  CHECK(d.pass);
  CHECK(d.witness["norm"].get<double>() == 0.0);

  // distance to {0} is the norm itself
  const auto self = subadditive_bound_check(ax, SubadditiveFunctional::distance_to(Subspace::zero(2)));
  CHECK(self.pass);
  CHECK(self.witness["norm"].get<double>() == doctest::Approx(1.0));

  const SubspaceFamily flat(NormedSpace(2, NormKind::L2), {{"a", line({1, 0})}});
  CHECK(kind_of([&] { subadditive_bound_check(flat, SubadditiveFunctional::seminorm(vec({1, 0}))); }) ==
        ErrorKind::NotAnARFS);

  Rng rng(88);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = testing::uniform_int(rng, 2, 3);
    const auto family =
        testing::random_spanning_family(rng, n, static_cast<NormKind>(trial % 3), testing::uniform_int(rng, 2, 4), 2);
    CHECK(subadditive_bound_check(family, SubadditiveFunctional::seminorm(testing::gaussian_vector(rng, n))).pass);
    const Subspace w = testing::random_subspace(rng, n, testing::uniform_int(rng, 1, n - 1));
    CHECK(subadditive_bound_check(family, SubadditiveFunctional::distance_to(w)).pass);
  }
}

TEST_CASE("pushforward") {
  Rng rng(12);
  const auto family = testing::random_spanning_family(rng, 3, NormKind::L2, 3, 2);
  const auto same = pushforward_family(family, Matrix::Identity(3, 3), family.space);
  CHECK(epsilon_star(same) == doctest::Approx(epsilon_star(family)).epsilon(1e-9));

  const Matrix proj = (Matrix(2, 3) << 1, 0, 0, 0, 1, 0).finished();
  const auto image = pushforward_family(axes(3, NormKind::L2), proj, NormedSpace(2, NormKind::L2));
  CHECK(image.members[2].subspace.is_zero());
  CHECK(epsilon_star(image) > 0.5);

  const Matrix flat = (Matrix(2, 3) << 1, 0, 0, 2, 0, 0).finished();
  CHECK(kind_of([&] { pushforward_family(family, flat, NormedSpace(2, NormKind::L2)); }) == ErrorKind::NotSurjective);

  for (int trial = 0; trial < 10; ++trial) {
    const auto f = testing::random_spanning_family(rng, 3, static_cast<NormKind>(trial % 3), 3, 2);
    const Matrix a = testing::gaussian_matrix(rng, 2, 3);
    CHECK(epsilon_star(pushforward_family(f, a, NormedSpace(2, f.space.kind))) > 0);
  }
}

TEST_CASE("subfamily deletion") {
  SubspaceFamily three = axes(2, NormKind::L2);
  three.members.push_back({"diag", line({1, 1})});
  const auto none = subfamily_delete_check(three, {});
  CHECK(none.pass);
  CHECK(none.witness["epsilon_star_after"].get<double>() ==
        doctest::Approx(none.witness["epsilon_star_before"].get<double>()));

  const auto minus_e2 = subfamily_delete_check(three, {"e2"});
  CHECK(minus_e2.pass);
  CHECK(minus_e2.witness["spanning"].get<bool>());
  CHECK(minus_e2.witness["epsilon_star_after"].get<double>() > 0);

  const auto only_e1 = subfamily_delete_check(three, {"e2", "diag"});
  CHECK(only_e1.pass);
  CHECK_FALSE(only_e1.witness["spanning"].get<bool>());
  CHECK_FALSE(only_e1.witness["arfs"].get<bool>());

  CHECK(kind_of([&] { subfamily_delete_check(three, {"nope"}); }) == ErrorKind::PreconditionViolated);
}

TEST_CASE("families from vectors") {
  const NormedSpace plane(2, NormKind::L2);
  const auto f = family_from_vectors({vec({1, 0}), vec({0, 1})}, plane);
  CHECK(f.members[0].label == "v0");
  CHECK(f.members[1].subspace.contains(vec({0, 3})));
  const auto twice = family_from_vectors({vec({1, 2}), vec({-2, -4})}, plane);
  CHECK(twice.members[0].subspace.basis().isApprox(twice.members[1].subspace.basis()));
  CHECK(kind_of([&] { family_from_vectors({vec({1, 0}), vec({0, 0})}, plane); }) == ErrorKind::ZeroVector);

  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Vector> v;
    std::vector<Vector> scaled;
    for (int i = 0; i < 4; ++i) {
      v.push_back(testing::gaussian_vector(rng, 3));
      scaled.push_back(v.back() * testing::uniform(rng, -5, 5));
    }
    const NormedSpace s(3, static_cast<NormKind>(trial % 3));
    CHECK(epsilon_star(family_from_vectors(scaled, s)) ==
          doctest::Approx(epsilon_star(family_from_vectors(v, s))).epsilon(1e-9));
  }
}
