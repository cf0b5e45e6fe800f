#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "gaussdil/bodies.hpp"
#include "gaussdil/smallball.hpp"
#include "support/oracles.hpp"

using namespace gaussdil;
namespace frozen = oracles::frozen;

namespace {

GaussianVectorModel iid_model(int m, NormTag norm) {
  std::vector<std::vector<double>> vecs(m, std::vector<double>(m, 0.0));
  for (int i = 0; i < m; ++i) vecs[i][i] = 1.0;
  return {std::move(vecs), norm};
}

}  // namespace

TEST_CASE("model json round trip and validation") {
  const auto m = GaussianVectorModel::from_json_text(
      R"({"vectors":[[1,0],[0,1],[0.5,0.5]],"norm":"linf"})");
  CHECK(m.vector_count() == 3);
  CHECK(m.space_dim() == 2);
  CHECK(m.norm() == NormTag::linf);
  const auto back = GaussianVectorModel::from_json_text(m.to_json().dump());
  CHECK(back.to_json().dump() == m.to_json().dump());
  CHECK_THROWS(GaussianVectorModel::from_json_text(
      R"({"vectors":[[1,0],[1]],"norm":"l2"})"));  // ragged
  CHECK_THROWS(GaussianVectorModel::from_json_text(
      R"({"vectors":[],"norm":"l2"})"));
  CHECK_THROWS(GaussianVectorModel::from_json_text(
      R"({"vectors":[[1]],"norm":"l7"})"));
}

TEST_CASE("covariance is the sum of outer products") {
  const auto m = GaussianVectorModel::from_json_text(
      R"({"vectors":[[1,0],[0,1],[0.5,0.5]],"norm":"linf"})");
  const auto& c = m.covariance();
  REQUIRE(c.size() == 4);
  CHECK(c[0] == doctest::Approx(1.25));
  CHECK(c[1] == doctest::Approx(0.25));
  CHECK(c[2] == doctest::Approx(0.25));
  CHECK(c[3] == doctest::Approx(1.25));
}

TEST_CASE("weak variance per norm") {
  // linf: max_j sqrt(C_jj).
  const auto linf = GaussianVectorModel::from_json_text(
      R"({"vectors":[[1,0],[0,1],[0.5,0.5]],"norm":"linf"})");
  CHECK(weak_variance(linf) == doctest::Approx(std::sqrt(1.25)).epsilon(1e-12));
  // l2: sqrt(lambda_max(C)); here C = [[1.25,0.25],[0.25,1.25]],
  // eigenvalues 1.5 and 1.
  const auto l2 = GaussianVectorModel(
      {{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}}, NormTag::l2);
  CHECK(weak_variance(l2) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
  // l1: dual is linf, functionals are sign vectors: max over eps of
  // sqrt(eps^T C eps) = sqrt(1.25 + 1.25 + 2*0.25) = sqrt(3).
  const auto l1 = GaussianVectorModel(
      {{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}}, NormTag::l1);
  CHECK(weak_variance(l1) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  // iid m-dim: sigma = 1 for linf and l2, sqrt(m) for l1.
  CHECK(weak_variance(iid_model(5, NormTag::linf)) == doctest::Approx(1.0));
  CHECK(weak_variance(iid_model(5, NormTag::l2)) == doctest::Approx(1.0));
  CHECK(weak_variance(iid_model(5, NormTag::l1)) ==
        doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("draws are deterministic and scale linearly") {
  const auto m = GaussianVectorModel(
      {{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}}, NormTag::l2);
  std::vector<double> g(3), out1(2), out2(2), out3(2);
  m.draw(11, RngStream::smallball_draw, 5, g, out1);
  m.draw(11, RngStream::smallball_draw, 5, g, out2);
  CHECK(out1 == out2);
  m.scaled(2.0).draw(11, RngStream::smallball_draw, 5, g, out3);
  CHECK(out3[0] == doctest::Approx(2.0 * out1[0]).epsilon(1e-15));
  CHECK(out3[1] == doctest::Approx(2.0 * out1[1]).epsilon(1e-15));
}

TEST_CASE("median of the iid linf model matches the folded-max oracle") {
  const auto model = iid_model(20, NormTag::linf);
  const double med = median_norm(model, 400000, 0, 1);
  CHECK(oracles::linf_iid_median(20) ==
        doctest::Approx(frozen::kLinf20Median).epsilon(1e-10));
  // 4e5 samples put the median estimate within ~5e-3 of truth whp.
  CHECK(std::fabs(med - frozen::kLinf20Median) < 2e-2);
  // Determinism across thread counts.
  CHECK(median_norm(model, 50000, 3, 1) == median_norm(model, 50000, 3, 4));
  CHECK_THROWS_AS(median_norm(model, 100, 0, 1), std::invalid_argument);
}

TEST_CASE("moment identities") {
  const auto model = GaussianVectorModel(
      {{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}}, NormTag::l2);
  // E ||X||_2^2 = trace C.
  const MomentResult second = moment(model, 2.0, 400000, 1, 1);
  const double trace = 2.5;
  CHECK(std::fabs(second.raw.mean - trace) <= 4.0 * second.raw.std_error);
  CHECK(second.value == doctest::Approx(std::sqrt(second.raw.mean)));
  // Homogeneity: scaling the model scales every p-moment linearly.
  const MomentResult scaled = moment(model.scaled(3.0), 2.0, 400000, 1, 1);
  CHECK(scaled.value == doctest::Approx(3.0 * second.value).epsilon(1e-12));
  // Jensen: the p = 1 mean dominates the geometric mean (p = 0).
  const MomentResult first = moment(model, 1.0, 200000, 2, 1);
  const MomentResult zeroth = moment(model, 0.0, 200000, 2, 1);
  CHECK(first.value >= zeroth.value);
  // Integrability precheck: p far below -M^2/(4 sigma^2) must throw.
  CHECK_THROWS_AS(moment(model, -50.0, 10000, 0, 1), std::domain_error);
}

TEST_CASE("theorem4 bound holds for the iid linf model") {
  const auto model = iid_model(20, NormTag::linf);
  std::vector<double> grid;
  for (int i = 1; i <= 10; ++i) grid.push_back(0.1 * i);
  const SmallBallReport rep = check_theorem4(model, grid, 200000, 0, 2);
  REQUIRE(rep.checks.size() == grid.size());
  CHECK(rep.sigma == doctest::Approx(1.0));
  CHECK(std::fabs(rep.median - frozen::kLinf20Median) < 2e-2);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CAPTURE(grid[i]);
    CHECK(rep.checks[i].pass);
    CHECK(rep.bound[i] ==
          doctest::Approx(0.5 * std::pow(2.0 * grid[i],
                                         rep.median * rep.median / 4.0))
              .epsilon(1e-12));
    // mc_probs are produced from one shared norms array, so they are
    // monotone in t by construction.
    if (i > 0) CHECK(rep.mc_probs[i].mean >= rep.mc_probs[i - 1].mean);
  }
  // t = 1: P(||X|| <= M) should be close to 1/2 by the definition of M.
  CHECK(std::fabs(rep.mc_probs.back().mean - 0.5) < 5e-3);
}

TEST_CASE("theorem4 report is bit-deterministic across threads") {
  const auto model = GaussianVectorModel(
      {{1.0, 0.2}, {0.0, 0.9}, {0.4, 0.4}}, NormTag::l1);
  const std::vector<double> grid = {0.2, 0.6, 1.0};
  const SmallBallReport a = check_theorem4(model, grid, 60000, 9, 1);
  const SmallBallReport b = check_theorem4(model, grid, 60000, 9, 3);
  CHECK(a.median == b.median);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(a.mc_probs[i].mean == b.mc_probs[i].mean);
    CHECK(a.mc_probs[i].std_error == b.mc_probs[i].std_error);
  }
}

TEST_CASE("corollary ratio is scale-invariant") {
  const auto model = GaussianVectorModel(
      {{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}}, NormTag::linf);
  const BoundCheckResult r = check_corollary(model, 2.0, 1.0, 100000, 0, 1);
  CHECK(r.pass);
  CHECK(std::fabs(r.lhs - r.rhs) <= 1e-10);
  CHECK(r.lhs >= 1.0);  // moment ratios with p > q are at least 1
  const BoundCheckResult neg = check_corollary(model, 1.0, -0.5, 100000, 0, 1);
  CHECK(neg.pass);
  CHECK_THROWS_AS(check_corollary(model, 1.0, 1.0, 10000, 0, 1),
                  std::domain_error);
}

TEST_CASE("induced bodies certify the inradius identity") {
  const std::vector<NormTag> norms = {NormTag::linf, NormTag::l2, NormTag::l1};
  for (NormTag norm : norms) {
    const auto model = GaussianVectorModel(
        {{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}}, norm);
    const double level = 1.3;
    const InducedBody ib = induced_body(model, level);
    CAPTURE(norm_tag_name(norm));
    CHECK(ib.sigma == doctest::Approx(weak_variance(model)).epsilon(1e-14));
    // Exact identity: the inradius of the induced body is level / sigma.
    CHECK(inradius(ib.body) ==
          doctest::Approx(level / ib.sigma).epsilon(1e-12));
    CHECK(ib.inradius_lower ==
          doctest::Approx(level / ib.sigma).epsilon(1e-12));
    CHECK(ambient_dim(ib.body) == model.vector_count());
    // Membership probe: g inside the body iff ||sum g_i x_i|| < level.
    std::vector<double> g(3), out(2);
    int checked = 0;
    for (std::uint64_t i = 0; i < 10000; ++i) {
      model.draw(31, RngStream::smallball_draw, i, g, out);
      const bool in_body = contains(ib.body, g);
      const bool small_norm = model.norm_of(out) < level;
      if (in_body != small_norm) {
        // Only boundary-grazing points may disagree.
        CHECK(std::fabs(model.norm_of(out) - level) < 1e-9);
      } else {
        ++checked;
      }
    }
    CHECK(checked > 9990);
  }
}

TEST_CASE("induced body scaled probe point lies inside") {
  // A ball of radius M/sigma sits inside the induced body; probe just short
  // of the boundary along several directions.
  const auto model = iid_model(4, NormTag::l2);
  const double level = 1.7;
  const InducedBody ib = induced_body(model, level);
  const double r = ib.inradius_lower * (1.0 - 1e-6);
  for (int axis = 0; axis < 4; ++axis) {
    std::vector<double> p(4, 0.0);
    p[axis] = r;
    CHECK(contains(ib.body, p));
    p[axis] = -r;
    CHECK(contains(ib.body, p));
  }
  std::vector<double> diag(4, r / 2.0);
  CHECK(contains(ib.body, diag));
}
