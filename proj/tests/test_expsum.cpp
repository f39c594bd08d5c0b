#include "doctest.h"

#include <cmath>
#include <numbers>

#include "arfs/decay.hpp"
#include "arfs/expsum.hpp"
#include "arfs/point_eval.hpp"
#include "arfs/sup_norm.hpp"
#include "generators.hpp"

using namespace arfs;
using arfs::testing::Rng;

namespace {

ExpSum hump() { return ExpSum({{1.0, 1.0}, {-1.0, 2.0}}); }

// Dense-grid maximum; a lower bound for the true sup norm.
double brute_force_sup(const ExpSum& f, double horizon, int points) {
  double best = 0;
  for (int i = 0; i <= points; ++i) best = std::max(best, std::abs(f(horizon * i / points)));
  return best;
}

}  // namespace

TEST_CASE("exponent sets sort, reject duplicates and report beta and gap") {
  const ExponentSet e({3.0, 1.0, 2.0});
  CHECK(e[0] == 1.0);
  CHECK(e.max() == 3.0);
  CHECK(beta(ExponentSet({1.0})) == 1.0);
  CHECK(beta(ExponentSet({2.0, 4.0})) == 0.75);
  CHECK(beta(e) == doctest::Approx(11.0 / 6.0).epsilon(1e-15));
  CHECK(std::isinf(ExponentSet({5.0}).gap()));
  CHECK(gap_check(ExponentSet({1.0, 2.0, 3.0}), 1.0));
  CHECK_FALSE(gap_check(ExponentSet({1.0, 1.5}), 1.0));
  CHECK(gap_check(ExponentSet({5.0}), 100.0));
  CHECK_THROWS_AS(ExponentSet({1.0, 1.0}), Error);
  CHECK_THROWS_AS(ExponentSet({-1.0}), Error);
  CHECK_THROWS_AS(beta(ExponentSet{}), Error);
}

TEST_CASE("exponential sums canonicalize") {
  const ExpSum f({{1.0, 2.0}, {0.5, 1.0}, {0.25, 2.0 * (1 + 1e-14)}, {0.0, 7.0}});
  REQUIRE(f.size() == 2);
  CHECK(f.terms()[0].alpha == 1.0);
  CHECK(f.terms()[1].coef == 1.25);
  CHECK(ExpSum(std::vector<ExpSum::Term>(f.terms().begin(), f.terms().end())) == f);
  CHECK((f - f).empty());
  CHECK_THROWS_AS(ExpSum({{1.0, 0.0}}), Error);

  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const ExpSum g = testing::random_expsum(rng, 6);
    const ExpSum again(std::vector<ExpSum::Term>(g.terms().begin(), g.terms().end()));
    CHECK(again == g);
  }
}

TEST_CASE("eval") {
  CHECK(eval(ExpSum::single(1.0, 1.0), 0.0) == 1.0);
  // f' = -e^{-t} + 2e^{-2t} vanishes at t = ln 2 where f = 1/2 - 1/4.
  CHECK(eval(hump(), std::numbers::ln2) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(eval(ExpSum{}, 3.0) == 0.0);
  CHECK_THROWS_AS(eval(hump(), -1.0), Error);
}

TEST_CASE("sup_norm brackets the anchors") {
  const double tol = 1e-8;
  const auto e1 = sup_norm(ExpSum::single(1.0, 1.0), tol);
  CHECK(e1.lower <= 1.0);
  CHECK(e1.upper >= 1.0);
  CHECK(e1.width() <= tol);
  CHECK(e1.witness_t == doctest::Approx(0.0));

  const auto e2 = sup_norm(hump(), tol);
  CHECK(e2.lower <= 0.25);
  CHECK(e2.upper >= 0.25);
  CHECK(e2.width() <= tol);
  CHECK(e2.witness_t == doctest::Approx(std::numbers::ln2).epsilon(1e-3));

  const auto e3 = sup_norm(ExpSum::single(3.0, 1.0), tol);
  CHECK(e3.lower <= 3.0);
  CHECK(e3.upper >= 3.0);

  const auto empty = sup_norm(ExpSum{}, tol);
  CHECK(empty.upper == 0.0);
  CHECK_THROWS_AS(sup_norm(hump(), 0.0), Error);
}

TEST_CASE("sup_norm budget exhaustion raises TolTooSmall") {
  try {
    sup_norm(hump(), 1e-12, 50);
    FAIL("expected TolTooSmall");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TolTooSmall);
  }
}

TEST_CASE("sup_norm agrees with a dense-grid oracle") {
  Rng rng(7);
  for (int i = 0; i < 40; ++i) {
    const ExpSum f = testing::random_expsum(rng, 5);
    const auto est = sup_norm(f, 1e-9);
    const double grid = brute_force_sup(f, est.horizon, 200000);
    CHECK(grid <= est.upper + 1e-12);
    // Grid spacing h bounds the grid defect by L h with L = sum |a_k| alpha_k.
    double lipschitz = 0;
    for (const auto& term : f.terms()) lipschitz += std::abs(term.coef) * term.alpha;
    CHECK(est.lower <= grid + lipschitz * est.horizon / 200000 + 1e-12);
  }
}

TEST_CASE("sup_norm properties on random sums") {
  Rng rng(2024);
  const double tol = 1e-8;
  for (int i = 0; i < 60; ++i) {
    const ExpSum f = testing::random_expsum(rng, 5);
    const ExpSum g = testing::random_expsum(rng, 5);
    const double s = testing::uniform(rng, -4.0, 4.0);
    const auto ef = sup_norm(f, tol);
    const auto eg = sup_norm(g, tol);

    // witness consistency
    const double at_witness = std::abs(f(ef.witness_t));
    CHECK(ef.lower <= at_witness + 1e-15);
    CHECK(at_witness <= ef.upper + 1e-15);

    // homogeneity
    const auto es = sup_norm(f.scaled(s), tol);
    CHECK(es.upper >= std::abs(s) * ef.lower - 1e-12);
    CHECK(es.lower <= std::abs(s) * ef.upper + 1e-12);

    // triangle inequality
    const auto sum = sup_norm(f + g, tol);
    CHECK(sum.upper <= ef.upper + eg.upper + 2 * tol);
  }
}

TEST_CASE("sup_norm in extended precision handles cancelling coefficients") {
  // (e^{-t} - e^{-1.01 t}) * 1e15 has coefficients 1e15 but norm ~ 1e15 * 0.0037.
  const PreciseExpSum f({{Precise(1e15), Precise(1)}, {Precise(-1e15), Precise(1.01)}});
  const auto est = sup_norm(f, 1.0);
  // max of e^{-t} - e^{-1.01t} is at t = ln(1.01)/0.01.
  const double t_star = std::log(1.01) / 0.01;
  const double expected = 1e15 * (std::exp(-t_star) - std::exp(-1.01 * t_star));
  CHECK(est.lower <= expected * (1 + 1e-12));
  CHECK(est.upper >= expected * (1 - 1e-12));
  CHECK(est.width() <= 1.0);
}

TEST_CASE("point evaluation restriction norm") {
  SUBCASE("singleton is exp(-alpha t)") {
    for (double t : {0.0, 0.5, 3.0}) CHECK(point_eval_restriction_norm(ExponentSet({2.0}), t) == doctest::Approx(std::exp(-2.0 * t)));
  }
  SUBCASE("t = 0 gives 1") {
    for (const auto& e : {ExponentSet({1.0, 2.0}), ExponentSet({0.5, 1.7, 3.0})})
      CHECK(point_eval_restriction_norm(e, 0.0) == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("pair bracket at t = 3") {
    const double v = point_eval_restriction_norm(ExponentSet({1.0, 2.0}), 3.0);
    const auto k = decay_constants(1.0, 1.5);
    CHECK(v >= std::exp(-3.0));
    CHECK(v <= k.c * std::exp(-3.0 / 1.5));
  }
  SUBCASE("pair agrees with a direction scan") {
    // Oracle: scan coefficient directions (cos th, sin th) with certified norms.
    const ExponentSet e({1.0, 2.0});
    const double t = 2.0;
    auto ratio = [&](double th) {
      const ExpSum f({{std::cos(th), 1.0}, {std::sin(th), 2.0}});
      return std::abs(f(t)) / sup_norm(f, 1e-9).upper;
    };
    double best = 0;
    double best_th = 0;
    const double step = std::numbers::pi / 2000;
    for (int i = 0; i < 2000; ++i) {
      const double r = ratio(step * i);
      if (r > best) best = r, best_th = step * i;
    }
    // The ratio is sharply peaked near cancellation; zoom in on the coarse winner.
    for (int i = -1000; i <= 1000; ++i) best = std::max(best, ratio(best_th + step * i / 1000.0));
    const double v = point_eval_restriction_norm(e, t);
    CHECK(v >= best * (1 - 1e-3));
    CHECK(v <= best * (1 + 1e-3));
  }
  SUBCASE("dimension cap") {
    CHECK_THROWS_AS(point_eval_restriction_norm(ExponentSet({1, 2, 3, 4}), 1.0, 1e-6, 3), Error);
  }
}
