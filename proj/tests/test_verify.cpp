#include <doctest.h>

#include "pho/io.hpp"
#include "pho/transforms.hpp"
#include "pho/verify.hpp"

using namespace pho;

namespace {

PHOProblem one_var_instance() {
  // min x + |x| s.t. x + |x| >= 2; omega(v) = 2v for v <= 1, else -inf.
  PHOProblem prob;
  prob.n = 1;
  prob.m = 1;
  prob.l = 1;
  prob.c = {1.0};
  prob.d = {1.0};
  prob.A = Mat(0, 1);
  prob.B = Mat(0, 1);
  prob.H = Mat(1, 1);
  prob.H(0, 0) = 1.0;
  prob.K = Mat(1, 1);
  prob.K(0, 0) = 1.0;
  prob.p = {2.0};
  Block blk;
  blk.indices = {0};
  blk.fn = ScalarPH{PHKind::PNorm, Exponent::finite(1.0), 1};
  prob.psi.blocks = {blk};
  return prob;
}

}  // namespace

TEST_CASE("prop1 suite passes at small scale") {
  auto res = verify::prop1_suite_default(2000, 5);
  CHECK(res.pass);
  CHECK(res.report["violations"] == 0);
}

TEST_CASE("weak duality suite passes at small scale") {
  auto res = verify::weak_duality_suite(15, 5, 7);
  CHECK(res.pass);
}

TEST_CASE("suite reports are deterministic in the seed") {
  auto a = verify::weak_duality_suite(5, 4, 123);
  auto b = verify::weak_duality_suite(5, 4, 123);
  CHECK(dump_json(a.report) == dump_json(b.report));
  auto c = verify::weak_duality_suite(5, 4, 124);
  CHECK(dump_json(a.report) != dump_json(c.report));

  auto t1 = verify::theorem2_suite(3, 5, 500, 9);
  auto t2 = verify::theorem2_suite(3, 5, 500, 9);
  CHECK(dump_json(t1.report) == dump_json(t2.report));
}

TEST_CASE("divergence witness check on the worked instance") {
  PHOProblem prob = one_var_instance();

  SUBCASE("v = 2 yields a passing witness") {
    auto rep = verify::lemma1_witness_check(prob, {}, {2.0});
    REQUIRE(rep.applicable);
    CHECK(rep.strictly_decreasing);
    CHECK(rep.final_low_enough);
    CHECK(rep.norms_grow);
    CHECK(rep.pass);
    // L(lambda) = 4 - 2 lambda along the ray.
    CHECK(rep.lagrangian_values.front() == doctest::Approx(2.0));
    CHECK(rep.lagrangian_values.back() == doctest::Approx(4.0 - 2e6));
  }
  SUBCASE("a finite point fails the precondition") {
    auto rep = verify::lemma1_witness_check(prob, {}, {0.5});
    CHECK_FALSE(rep.applicable);
    CHECK_FALSE(rep.pass);
  }
}

TEST_CASE("omega dichotomy check on hand-picked multipliers") {
  PHOProblem prob = one_var_instance();
  std::vector<std::pair<Vec, Vec>> points = {
      {{}, Vec{1.0}}, {{}, Vec{0.5}}, {{}, Vec{2.0}}};
  auto rep = verify::theorem2_check(prob, points, 2000, 3);
  CHECK(rep.points_checked == 3);
  CHECK(rep.finite_points == 2);
  CHECK(rep.neg_inf_points == 1);
  CHECK(rep.pass);
}

TEST_CASE("cone example cross-check agrees on membership and value") {
  auto rep = verify::example_crosscheck(1, 99);
  CHECK(rep.membership_samples >= 1000);
  CHECK(rep.membership_agreements == rep.membership_samples);
  CHECK(rep.values_compared);
  CHECK(rep.value_ok);
  CHECK(rep.pass);
}

TEST_CASE("unsupported example ids are rejected") {
  CHECK_THROWS_AS(verify::example_crosscheck(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(verify::example_crosscheck(6, 1), std::invalid_argument);
}

TEST_CASE("zero second weight reduces the norm-constrained dual") {
  Mat a(2, 3);
  a(0, 0) = 1.0;
  a(1, 1) = 1.0;
  GaugeResult res = constrained_lasso_to_pho(a, {1.0, 1.0}, 0.5, 0.3, 0.0,
                                             Exponent::finite(2.0),
                                             Exponent::finite(2.0));
  // lambda2 = 0 pins the second term's multiplier to zero via an equality.
  bool block2_eliminated = false;
  for (int r : res.dual.equality_rows)
    if (r == 2) block2_eliminated = true;
  CHECK(block2_eliminated);
  CHECK_FALSE(res.dual.infeasible);
}
