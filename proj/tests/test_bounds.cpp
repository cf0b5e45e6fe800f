#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gaussdil/bodies.hpp"
#include "gaussdil/bounds.hpp"
#include "gaussdil/gauss1d.hpp"
#include "gaussdil/measure.hpp"
#include "support/oracles.hpp"

using namespace gaussdil;
namespace frozen = oracles::frozen;

namespace {

std::vector<double> linear_grid(double lo, double hi, int count) {
  std::vector<double> g;
  for (int i = 0; i < count; ++i) {
    g.push_back(lo + (hi - lo) * i / (count - 1));
  }
  g.back() = hi;
  return g;
}

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> g;
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < count; ++i) {
    g.push_back(llo + (lhi - llo) * i / (count - 1));
  }
  return g;
}

}  // namespace

TEST_CASE("pass rule arithmetic") {
  const auto exact = make_bound_check("x", {}, "b", 1.0, 1.0, 0.0);
  CHECK(exact.pass);
  CHECK(exact.margin == 0.0);
  const auto ulp = make_bound_check("x", {}, "b", 1.0 + 5e-10, 1.0, 0.0);
  CHECK(ulp.pass);  // inside the deterministic slack
  const auto fail = make_bound_check("x", {}, "b", 1.0 + 1e-6, 1.0, 0.0);
  CHECK_FALSE(fail.pass);
  const auto mc = make_bound_check("x", {}, "b", 1.0 + 2.5e-3, 1.0, 1e-3);
  CHECK(mc.pass);  // within 3 sigma
  const auto mc_fail = make_bound_check("x", {}, "b", 1.0 + 4e-3, 1.0, 1e-3);
  CHECK_FALSE(mc_fail.pass);
  CHECK_THROWS_AS(
      make_bound_check("x", {}, "b", std::nan(""), 1.0, 0.0),
      std::runtime_error);
}

TEST_CASE("s-inequality is tight on slabs and strict on balls") {
  const std::vector<double> grid = linear_grid(0.1, 1.0, 10);
  const auto slab = check_s_inequality(Slab(3, 0.8), grid);
  REQUIRE(slab.size() == grid.size());
  for (const auto& r : slab) {
    CAPTURE(r.params[0].second);
    CHECK(r.pass);
    // Extremal case: numerical equality.
    CHECK(std::fabs(r.margin) < 1e-10);
    CHECK(r.uncertainty == 0.0);
  }
  const auto ball = check_s_inequality(Ball(4, 1.2), grid);
  for (std::size_t i = 0; i + 1 < ball.size(); ++i) {
    CHECK(ball[i].pass);
    CHECK(ball[i].margin > 1e-6);  // strictly slack for t < 1
  }
  // t = 1 is equality by construction of a.
  CHECK(std::fabs(ball.back().margin) < 1e-10);
}

TEST_CASE("theorem2 passes on closed-form bodies and tightens as s -> 1") {
  const std::vector<double> grid = linear_grid(0.05, 1.0, 20);
  const std::vector<Body> bodies = {Ball(5, 1.0), Slab(5, 0.6),
                                    Cylinder(2, 3, 1.0),
                                    FlyingSaucer(5, 0.6, 0.3)};
  for (const Body& body : bodies) {
    const auto results = check_theorem2(body, grid);
    REQUIRE(results.size() == grid.size());
    for (const auto& r : results) {
      CAPTURE(r.body);
      CAPTURE(r.params[0].second);
      CHECK(r.pass);
      CHECK(r.margin >= -kDeterministicSlack);
    }
  }
}

TEST_CASE("theorem2 rejects bodies with measure above one half") {
  CHECK_THROWS_AS(check_theorem2(Ball(2, 10.0), linear_grid(0.1, 1.0, 4)),
                  std::domain_error);
  CHECK_THROWS_AS(check_theorem1(Slab(2, 3.0), linear_grid(0.1, 0.4, 4)),
                  std::domain_error);
}

TEST_CASE("theorem1 passes and cross-checks against theorem2") {
  const std::vector<double> grid = linear_grid(0.05, 0.5, 10);
  const Body body = Ball(5, 1.0);
  const auto t1 = check_theorem1(body, grid);
  const auto t2 = check_theorem2(body, grid);
  REQUIRE(t1.size() == t2.size());
  const double w = inradius(body);
  for (std::size_t i = 0; i < t1.size(); ++i) {
    CHECK(t1[i].pass);
    CHECK(t1[i].lhs == t2[i].lhs);  // same measure under both bounds
    // When (2t)^{w^2/4} <= t^{(ln2/8) w^2}, theorem2's rhs is the smaller,
    // so its pass implies theorem1's.
    const double t = grid[i];
    const double rhs2 = std::pow(2.0 * t, w * w / 4.0);
    const double rhs1 = std::pow(t, std::log(2.0) / 8.0 * w * w);
    if (rhs2 <= rhs1) {
      CHECK(t1[i].rhs >= t2[i].rhs - 1e-15);
    }
  }
}

TEST_CASE("theorem1 domain is (0, 1/2]") {
  CHECK_THROWS_AS(check_theorem1(Ball(3, 1.0), linear_grid(0.2, 0.8, 4)),
                  std::invalid_argument);
}

TEST_CASE("b-inequality second differences are nonpositive") {
  const std::vector<double> grid = log_grid(0.5, 2.0, 41);
  const std::vector<Body> bodies = {Ball(4, 1.1), Slab(3, 0.8),
                                    Cylinder(3, 2, 1.2),
                                    FlyingSaucer(4, 1.0, 0.5)};
  for (const Body& body : bodies) {
    const BInequalityReport rep = check_b_inequality(body, grid);
    CHECK(rep.excluded_points.empty());
    REQUIRE(rep.results.size() == grid.size() - 2);
    for (const auto& r : rep.results) {
      CAPTURE(r.body);
      CHECK(r.pass);
      CHECK(r.lhs <= 1e-6);
    }
  }
}

TEST_CASE("b-inequality excludes underflowed points instead of failing") {
  // Ball(2, 1e-3) dilated to e^{-6} of itself has measure ~ 5e-19, fine, but
  // push far enough and the log-measure is -inf.
  const std::vector<double> grid = log_grid(1e-160, 1.0, 5);
  const BInequalityReport rep = check_b_inequality(Ball(2, 1.0), grid);
  CHECK((rep.excluded_points.size() > 0 || rep.results.size() == 3));
}

TEST_CASE("b-inequality requires an equally spaced grid") {
  std::vector<double> bad = {0.0, 0.1, 0.3};
  CHECK_THROWS_AS(check_b_inequality(Ball(2, 1.0), bad),
                  std::invalid_argument);
}

TEST_CASE("lemma2 holds for balls on both sides") {
  for (double r : {0.5, 1.0, 2.0}) {
    const auto pair = check_lemma2(Ball(5, r), 100000, 2);
    for (const auto& side : pair) {
      CAPTURE(r);
      CAPTURE(side.params.back().second);
      CHECK(side.pass);
      CHECK(side.rhs >= side.lhs - 3.0 * side.uncertainty - 1e-9);
    }
  }
}

TEST_CASE("lemma2 gaussian side uses sqrt(n) dilation") {
  // For Ball(n, 1), sigma = 1 exactly (unit sphere inside the closure is a
  // measure-zero boundary case; strict membership gives 0). Use r = 1.01.
  const auto pair = check_lemma2(Ball(7, 1.01), 50000, 3);
  const double expected = chi_square_cdf(7, 7.0 * 1.01 * 1.01).value();
  CHECK(pair[0].rhs == doctest::Approx(expected).epsilon(1e-12));
  CHECK(pair[0].lhs == doctest::Approx(1.0 / 60.0).epsilon(1e-12));
}

TEST_CASE("theorem3 trivial regime and hypothesis check") {
  // sqrt(n) w - 6 < 0 forces rhs = 1, which cannot fail.
  const std::vector<double> grid = {0.05, 0.5};
  const Theorem3Report rep = check_theorem3(Cylinder(2, 2, 0.4), grid, 50000, 4);
  for (const auto& r : rep.results) {
    CHECK(r.pass);
    CHECK(r.rhs == 1.0);
  }
  CHECK(rep.notes.find("statement") != std::string::npos);
  // A body covering most of the sphere violates sigma <= 1/2.
  const std::vector<double> one = {0.5};
  CHECK_THROWS_AS(check_theorem3(Ball(4, 2.0), one, 20000, 4),
                  std::domain_error);
}

TEST_CASE("theorem3 nontrivial exponent on a fat cylinder") {
  // k = 40 of n = 64: sqrt(64) * 0.78 - 6 = 0.24 > 0, so the exponent is
  // 0.24^2/4 and the rhs dips below 1, while sigma = I_{0.6084}(20, 12)
  // stays near 0.42 < 1/2.
  const int k = 40, l = 24;
  const double w = 0.78;
  const std::vector<double> grid = {0.05, 0.08};
  const Theorem3Report rep =
      check_theorem3(Cylinder(k, l, w), grid, 200000, 7);
  const double exponent = std::pow(8.0 * w - 6.0, 2) / 4.0;
  REQUIRE(rep.results.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& r = rep.results[i];
    CHECK(r.pass);
    CHECK(r.rhs < 1.0);
    CHECK(r.rhs ==
          doctest::Approx(std::pow(12.0 * grid[i], exponent)).epsilon(1e-12));
  }
  // sigma estimate agrees with the Beta closed form.
  const double exact = oracles::sphere_cylinder_cap(k, k + l, w);
  CHECK(std::fabs(rep.sigma - exact) <= 4.0 * rep.sigma_se);
}

TEST_CASE("conjecture probe stays above the theorem2 exponent floor") {
  // theorem2 gives gamma(tK) <= (2t)^{w^2/4} gamma(K), i.e. empirical kappa
  // >= (1 + log_t 2) / 4 whenever gamma(K) <= 1/2 and t < 1.
  const Body body = Ball(4, 1.0);
  const double w = 1.0;
  const std::vector<double> grid = {0.1, 0.3, 0.45};
  const auto probes = probe_conjecture1(body, grid);
  REQUIRE(probes.size() == 3);
  for (const auto& p : probes) {
    CAPTURE(p.t);
    REQUIRE_FALSE(p.excluded);
    const double floor = 0.25 * (1.0 + std::log(2.0) / std::log(p.t));
    CHECK(p.empirical_kappa * w * w >= floor * w * w - 1e-9);
  }
  CHECK_THROWS_AS(probe_conjecture1(body, std::vector<double>{1.0}),
                  std::invalid_argument);
}

TEST_CASE("theorem2 margin matches a direct recomputation") {
  const Body body = Slab(2, frozen::kSlabW045);
  const double gamma = gaussian_measure(body).value.value();
  CHECK(gamma == doctest::Approx(0.45).epsilon(1e-12));
  const auto results = check_theorem2(body, std::vector<double>{0.25});
  const double w = frozen::kSlabW045;
  const double expected_rhs = std::pow(0.5, w * w / 4.0) * gamma;
  CHECK(results[0].rhs == doctest::Approx(expected_rhs).epsilon(1e-13));
  const double expected_lhs = gaussian_interval(0.25 * w).value();
  CHECK(results[0].lhs == doctest::Approx(expected_lhs).epsilon(1e-13));
}
