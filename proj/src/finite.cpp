#include "arfs/finite.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>
#include <random>

#include "arfs/ball_vertices.hpp"
#include "arfs/nelder_mead.hpp"

namespace arfs {

namespace {

void require_dim(const Vector& v, const NormedSpace& space, const char* what) {
  if (v.size() != space.dim) throw Error(ErrorKind::PreconditionViolated, std::string(what) + " has wrong dimension");
}

void require_dim(const Subspace& s, const NormedSpace& space, const char* what) {
  if (s.ambient_dim() != space.dim)
    throw Error(ErrorKind::PreconditionViolated, std::string(what) + " lives in the wrong dimension");
}

// Unit directions covering the sphere modulo +-; columns.
Matrix sphere_grid(int n, std::size_t points, std::uint64_t seed) {
  if (n == 2) {
    Matrix out(2, static_cast<Eigen::Index>(points));
    for (std::size_t i = 0; i < points; ++i) {
      const double th = std::numbers::pi * static_cast<double>(i) / static_cast<double>(points);
      out.col(static_cast<Eigen::Index>(i)) << std::cos(th), std::sin(th);
    }
    return out;
  }
  if (n == 3) {
    // Fibonacci lattice on the upper hemisphere.
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    Matrix out(3, static_cast<Eigen::Index>(points));
    for (std::size_t i = 0; i < points; ++i) {
      const double z = (static_cast<double>(i) + 0.5) / static_cast<double>(points);
      const double rho = std::sqrt(1.0 - z * z);
      const double ang = golden * static_cast<double>(i);
      out.col(static_cast<Eigen::Index>(i)) << rho * std::cos(ang), rho * std::sin(ang), z;
    }
    return out;
  }
  const std::size_t count = points * static_cast<std::size_t>(n - 2);
  Matrix out(n, static_cast<Eigen::Index>(count));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (std::size_t i = 0; i < count; ++i) {
    Vector v(n);
    for (int k = 0; k < n; ++k) v(k) = gauss(rng);
    out.col(static_cast<Eigen::Index>(i)) = v.normalized();
  }
  return out;
}

// Local descent of the ratio on the sphere, in tangent coordinates at u0.
NelderMeadResult refine(const FamilyEvaluator& ev, Vector u0, double step) {
  const auto n = u0.size();
  NelderMeadResult best{u0, ev.ratio(u0), 0};
  for (int round = 0; round < 3; ++round) {
    const Vector center = best.x.normalized();
    const Matrix tangent = Subspace(Matrix(center)).complement();
    auto lifted = [&](const Vector& w) { return Vector(center + tangent * w); };
    auto fn = [&](const Vector& w) { return ev.ratio(lifted(w)); };
    const NelderMeadResult r = nelder_mead(fn, Vector::Zero(n - 1), step, 1e-12, 1e-14, 4000);
    if (r.value < best.value) best = {lifted(r.x).normalized(), r.value, best.iterations + r.iterations};
    step *= 0.1;
  }
  return best;
}

Vector dual_unit(Vector u, const NormedSpace& space) {
  const double d = space.dual_norm(u);
  return d > 0 ? Vector(u / d) : u;
}

}  // namespace

double restriction_norm(const DualFunctional& phi, const Subspace& Y, const NormedSpace& space, double /*tol*/) {
  require_dim(phi.coeffs, space, "functional");
  require_dim(Y, space, "subspace");
  if (Y.is_zero()) return 0;
  if (space.kind == NormKind::L2) return (Y.orthonormal().transpose() * phi.coeffs).norm();
  return max_abs_pairing(phi.coeffs, ball_vertices(Y, space.kind));
}

double rho0(const Subspace& Y, const Subspace& Z, const NormedSpace& space, double /*tol*/) {
  require_dim(Y, space, "Y");
  require_dim(Z, space, "Z");
  if (Y.is_zero()) return 0;
  const Matrix annihilator = Z.complement();
  if (annihilator.cols() == 0) return 0;
  if (space.kind == NormKind::L2) {
    const Matrix m = annihilator.transpose() * Y.orthonormal();
    return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
  }
  // d(y, Z) is the largest pairing with a dual-unit functional vanishing on Z.
  const Matrix v = ball_vertices(Y, space.kind);
  const Matrix w = ball_vertices(Subspace(annihilator), conjugate(space.kind));
  return (w.transpose() * v).cwiseAbs().maxCoeff();
}

FamilyEvaluator::FamilyEvaluator(const SubspaceFamily& family) : family_(family) {
  if (family.space.kind == NormKind::L2) return;
  for (const auto& m : family.members) vertices_.push_back(ball_vertices(m.subspace, family.space.kind));
}

double FamilyEvaluator::restriction(std::size_t member, const Vector& phi) const {
  const Subspace& s = family_.members[member].subspace;
  if (s.is_zero()) return 0;
  if (family_.space.kind == NormKind::L2) return (s.orthonormal().transpose() * phi).norm();
  return max_abs_pairing(phi, vertices_[member]);
}

double FamilyEvaluator::max_restriction(const Vector& phi, std::size_t* argmax) const {
  double best = -1;
  std::size_t at = 0;
  for (std::size_t i = 0; i < family_.size(); ++i) {
    const double v = restriction(i, phi);
    if (v > best) {
      best = v;
      at = i;
    }
  }
  if (argmax) *argmax = at;
  return std::max(best, 0.0);
}

double FamilyEvaluator::ratio(const Vector& u) const {
  const double d = family_.space.dual_norm(u);
  if (!(d > 0)) return std::numeric_limits<double>::infinity();
  return max_restriction(u) / d;
}

EpsilonStar epsilon_star_detail(const SubspaceFamily& family, const EpsilonOptions& options) {
  const int n = family.space.dim;
  if (n > options.dimension_cap) throw Error(ErrorKind::DimensionCap, "ambient dimension exceeds the cap");
  if (family.members.empty()) throw Error(ErrorKind::PreconditionViolated, "family has no members");
  for (const auto& m : family.members) require_dim(m.subspace, family.space, "member");

  EpsilonStar out;
  out.spanning = family.spans();
  if (!out.spanning) {
    const Matrix normal = Subspace::span_of(family.stacked_basis()).complement();
    out.phi = dual_unit(normal.col(0), family.space);
    return out;
  }
  const FamilyEvaluator ev(family);
  if (n == 1) {
    out.phi = Vector::Ones(1);
    out.value = ev.ratio(out.phi);
    return out;
  }

  const Matrix grid = sphere_grid(n, options.grid_points, options.seed);
  const auto count = static_cast<std::size_t>(grid.cols());
  std::vector<double> values(count);
  for_each_index(options.execution, count,
                 [&](std::size_t i) { values[i] = ev.ratio(grid.col(static_cast<Eigen::Index>(i))); });

  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  const std::size_t starts = std::min(options.refine_starts, count);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(starts), order.end(),
                    [&](std::size_t a, std::size_t b) { return values[a] < values[b] || (values[a] == values[b] && a < b); });

  const double spacing = n == 2 ? std::numbers::pi / static_cast<double>(options.grid_points)
                                : std::pow(4.0 * std::numbers::pi / static_cast<double>(count), 1.0 / (n - 1));
  std::vector<NelderMeadResult> runs(starts);
  for_each_index(options.execution, starts, [&](std::size_t i) {
    runs[i] = refine(ev, grid.col(static_cast<Eigen::Index>(order[i])), 2.0 * spacing);
  });
  const ArgBest best = arg_min(Execution::Serial, runs.size(), [&](std::size_t i) { return runs[i].value; });
  const Vector u = runs[best.index].value <= values[order[0]] ? runs[best.index].x
                                                              : Vector(grid.col(static_cast<Eigen::Index>(order[0])));
  out.phi = dual_unit(u, family.space);
  out.value = ev.max_restriction(out.phi);
  return out;
}

double epsilon_star(const SubspaceFamily& family, double tol) {
  EpsilonOptions options;
  options.tol = tol;
  return epsilon_star_detail(family, options).value;
}

double stability_floor(double eps, double r) {
  if (!(r >= 0)) throw Error(ErrorKind::PreconditionViolated, "r must be nonnegative");
  if (r >= eps) throw Error(ErrorKind::RTooLarge, "perturbation radius must be below eps");
  return (eps - r) / (1 + r);
}

SubspaceFamily perturb_family(const SubspaceFamily& family, double r, std::uint64_t seed) {
  if (!(r >= 0)) throw Error(ErrorKind::PreconditionViolated, "r must be nonnegative");
  if (r == 0) return family;
  SubspaceFamily out = family;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Subspace& x = family.members[i].subspace;
    if (x.is_zero()) continue;
    std::seed_seq seq{seed, static_cast<std::uint64_t>(i)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss;
    Matrix g(x.ambient_dim(), x.dim());
    for (Eigen::Index c = 0; c < g.cols(); ++c)
      for (Eigen::Index k = 0; k < g.rows(); ++k) g(k, c) = gauss(rng);

    const Matrix& q = x.orthonormal();
    auto distance = [&](double s) {
      const Matrix tilted = q + s * g;
      if (numerical_rank(tilted) < x.dim()) return std::numeric_limits<double>::infinity();
      return rho0(x, Subspace(tilted), family.space);
    };
    double lo = 0;
    double hi = 1;
    while (distance(hi) <= r && hi < 1e6) {
      lo = hi;
      hi *= 2;
    }
    for (int it = 0; it < 60 && hi - lo > 1e-14 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (distance(mid) <= r ? lo : hi) = mid;
    }
    out.members[i].subspace = Subspace(Matrix(q + lo * g));
  }
  return out;
}

SubadditiveFunctional SubadditiveFunctional::seminorm(Vector u) {
  SubadditiveFunctional f;
  f.kind = Kind::Seminorm;
  f.u = std::move(u);
  return f;
}

SubadditiveFunctional SubadditiveFunctional::distance_to(Subspace w) {
  SubadditiveFunctional f;
  f.kind = Kind::DistanceToSubspace;
  f.w = std::move(w);
  return f;
}

std::string SubadditiveFunctional::describe() const {
  return kind == Kind::Seminorm ? "seminorm" : "distance_to_subspace";
}

Report subadditive_bound_check(const SubspaceFamily& family, const SubadditiveFunctional& f, double tol) {
  const EpsilonStar eps = epsilon_star_detail(family);
  if (eps.value <= tol) throw Error(ErrorKind::NotAnARFS, "family is not an ARFS (eps* <= tol)");

  double f_norm = 0;
  std::vector<double> restricted;
  if (f.kind == SubadditiveFunctional::Kind::Seminorm) {
    require_dim(f.u, family.space, "seminorm vector");
    const DualFunctional phi{f.u};
    f_norm = dual_norm(phi, family.space);
    for (const auto& m : family.members) restricted.push_back(restriction_norm(phi, m.subspace, family.space));
  } else {
    require_dim(f.w, family.space, "W");
    f_norm = rho0(Subspace::whole(family.space.dim), f.w, family.space);
    for (const auto& m : family.members) restricted.push_back(rho0(m.subspace, f.w, family.space));
  }
  const auto top = std::max_element(restricted.begin(), restricted.end());
  const double sup = *top;
  const double eps_hat = eps.value / (1 + tol);

  Report r;
  r.check = "subadditive_bound";
  r.margin = sup - eps_hat * f_norm;
  r.pass = r.margin >= -1e-12 * std::max(1.0, f_norm);
  r.witness = {{"functional", f.describe()},
               {"norm", f_norm},
               {"restricted", restricted},
               {"sup", sup},
               {"argmax", family.members[static_cast<std::size_t>(top - restricted.begin())].label},
               {"epsilon_star", eps.value},
               {"epsilon_hat", eps_hat}};
  return r;
}

SubspaceFamily pushforward_family(const SubspaceFamily& family, const Matrix& A, const NormedSpace& target,
                                  double tol) {
  if (A.cols() != family.space.dim || A.rows() != target.dim)
    throw Error(ErrorKind::PreconditionViolated, "map has the wrong shape");
  if (numerical_rank(A, tol) < target.dim) throw Error(ErrorKind::NotSurjective, "map is not onto the target");
  std::vector<Member> members;
  for (const auto& m : family.members)
    members.push_back({m.label, m.subspace.is_zero() ? Subspace::zero(target.dim)
                                                     : Subspace::span_of(A * m.subspace.basis(), tol)});
  return SubspaceFamily(target, std::move(members));
}

Report subfamily_delete_check(const SubspaceFamily& family, const std::set<std::string>& deleted, double tol) {
  for (const auto& label : deleted)
    if (std::none_of(family.members.begin(), family.members.end(), [&](const Member& m) { return m.label == label; }))
      throw Error(ErrorKind::PreconditionViolated, "no member labelled '" + label + "'");
  const double before = epsilon_star(family);
  if (before <= tol) throw Error(ErrorKind::NotAnARFS, "family is not an ARFS (eps* <= tol)");

  std::vector<Member> kept;
  std::vector<std::string> labels;
  for (const auto& m : family.members) {
    if (deleted.count(m.label)) continue;
    kept.push_back(m);
    labels.push_back(m.label);
  }
  const SubspaceFamily rest(family.space, kept);
  const bool spanning = !kept.empty() && rest.spans();
  const double after = spanning ? epsilon_star(rest) : 0.0;
  const bool arfs = after > tol;

  Report r;
  r.check = "subfamily_delete";
  r.pass = arfs == spanning;
  r.margin = spanning ? after - tol : tol - after;
  r.witness = {{"remaining", labels},
               {"spanning", spanning},
               {"arfs", arfs},
               {"epsilon_star_before", before},
               {"epsilon_star_after", after}};
  return r;
}

SubspaceFamily family_from_vectors(const std::vector<Vector>& vectors, const NormedSpace& space) {
  std::vector<Member> members;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    require_dim(vectors[i], space, "vector");
    const double size = space.norm(vectors[i]);
    if (!(size > 0)) throw Error(ErrorKind::ZeroVector, "vector v" + std::to_string(i) + " is zero");
    Vector v = vectors[i] / size;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      if (v(k) != 0) {
        if (v(k) < 0) v = -v;
        break;
      }
    }
    members.push_back({"v" + std::to_string(i), Subspace(Matrix(v))});
  }
  return SubspaceFamily(space, std::move(members));
}

}  // namespace arfs
