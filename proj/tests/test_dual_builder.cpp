#include <doctest.h>

#include <cmath>
#include <random>

#include "pho/dual_builder.hpp"
#include "pho/ph_calculus.hpp"
#include "pho/solvers.hpp"

using namespace pho;

namespace {

/// min x + |x| s.t. x + |x| >= 2, a single 1-norm block. The Lagrangian is
/// x + |x| + v(2 - x - |x|) = (1 - v)(x + |x|) + 2v, so omega(v) = 2v for
/// v <= 1 and -inf beyond.
PHOProblem one_var_instance() {
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

TEST_CASE("build_dual conjugates every block exponent") {
  std::vector<BlockSpec> specs = {{2, Exponent::finite(0.5)},
                                  {1, Exponent::finite(2.0)},
                                  {2, Exponent::inf()}};
  PHOProblem prob = plant_feasible_instance(specs, 1, 1, 3).problem;
  DualProblem dual = build_dual(prob);
  REQUIRE(dual.psi_star.num_blocks() == 3);
  CHECK(dual.psi_star.blocks[0].fn.exponent.is_inf());
  CHECK(dual.psi_star.blocks[1].fn.exponent.value() == doctest::Approx(2.0));
  CHECK(dual.psi_star.blocks[2].fn.exponent.value() == doctest::Approx(1.0));
  for (int i = 0; i < 3; ++i)
    CHECK(dual.psi_star.blocks[i].indices == prob.psi.blocks[i].indices);
}

TEST_CASE("build_dual rejects invalid problems with the violation list") {
  PHOProblem prob = one_var_instance();
  prob.c.push_back(0.0);
  CHECK_THROWS_AS(build_dual(prob), BuildError);
  try {
    build_dual(prob);
  } catch (const BuildError& e) {
    CHECK_FALSE(e.report.violations.empty());
  }
}

TEST_CASE("both Lagrangian forms agree on random data") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss(0.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<BlockSpec> specs = {{1, Exponent::finite(1.0)},
                                    {2, Exponent::finite(2.0)}};
    PHOProblem prob = plant_feasible_instance(specs, 1, 2, 100 + trial).problem;
    Vec x(prob.n), u(prob.k), v(prob.l);
    for (double& xi : x) xi = gauss(rng);
    for (double& ui : u) ui = gauss(rng);
    for (double& vi : v) vi = gauss(rng);
    double l1 = lagrangian(prob, x, u, v);
    double l2 = lagrangian_alpha_beta(prob, x, u, v);
    CHECK(l1 == doctest::Approx(l2).epsilon(1e-9));
  }
}

TEST_CASE("omega on the worked one-variable instance") {
  PHOProblem prob = one_var_instance();

  SUBCASE("v = 1 sits on the boundary and stays finite") {
    OmegaResult om = omega(prob, {}, {1.0});
    REQUIRE(om.value.is_finite());
    CHECK(om.value.value() == doctest::Approx(2.0));
  }
  SUBCASE("v = 0.5 is interior") {
    OmegaResult om = omega(prob, {}, {0.5});
    REQUIRE(om.value.is_finite());
    CHECK(om.value.value() == doctest::Approx(1.0));
  }
  SUBCASE("v = 2 violates strictly and diverges") {
    OmegaResult om = omega(prob, {}, {2.0});
    REQUIRE(om.value.is_neg_inf());
    REQUIRE(om.witness.has_value());
    const DivergenceWitness& w = *om.witness;
    CHECK(w.block == 0);
    CHECK(w.slope_bound < 0.0);
    // L along the ray: alpha = v - c = 1, beta = d - v = -1, xhat = sign(1),
    // so L(lambda) = 2v - lambda alpha xhat + beta lambda = 4 - 2 lambda.
    for (double lam : {1.0, 10.0, 100.0}) {
      Vec x = w.ray(lam);
      CHECK(lagrangian(prob, x, {}, {2.0}) == doctest::Approx(4.0 - 2.0 * lam));
    }
  }
  SUBCASE("negative v is rejected") {
    CHECK_THROWS_AS(omega(prob, {}, {-0.1}), std::invalid_argument);
  }
}

TEST_CASE("only the violating block grows along the witness ray") {
  std::vector<BlockSpec> specs = {{1, Exponent::finite(1.0)},
                                  {2, Exponent::finite(2.0)}};
  PHOProblem prob = plant_feasible_instance(specs, 0, 1, 9).problem;
  // Drive v up until some block violates.
  for (double vmag = 1.0; vmag < 1e6; vmag *= 2.0) {
    OmegaResult om = omega(prob, {}, {vmag});
    if (!om.value.is_neg_inf()) continue;
    const DivergenceWitness& w = *om.witness;
    Vec r1 = w.ray(1.0), r2 = w.ray(1000.0);
    for (int j = 0; j < prob.n; ++j) {
      bool in_block = std::find(w.block_indices.begin(), w.block_indices.end(), j) !=
                      w.block_indices.end();
      if (in_block)
        CHECK(std::fabs(r2[j]) >= std::fabs(r1[j]));
      else
        CHECK(r2[j] == r1[j]);
    }
    return;
  }
  FAIL("no divergent multiplier found");
}

TEST_CASE("primal and dual residuals flag feasibility correctly") {
  PHOProblem prob = one_var_instance();
  CHECK(primal_residuals(prob, {3.0}, 1e-9).feasible);   // 3 + 3 >= 2
  CHECK_FALSE(primal_residuals(prob, {0.5}, 1e-9).feasible);  // 1 < 2
  CHECK(primal_residuals(prob, {3.0}, 1e-9).objective == doctest::Approx(6.0));

  DualProblem dual = build_dual(prob);
  CHECK(dual_residuals(dual, {}, {1.0}, 1e-9).feasible);
  CHECK(dual_residuals(dual, {}, {1.0}, 1e-9).objective == doctest::Approx(2.0));
  CHECK_FALSE(dual_residuals(dual, {}, {2.0}, 1e-9).feasible);
  CHECK(dual_residuals(dual, {}, {-1.0}, 1e-9).v_violation == doctest::Approx(1.0));
}

TEST_CASE("omega finite value matches the dual objective on feasible points") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> gauss(0.0, 0.5);
  std::vector<BlockSpec> specs = {{2, Exponent::finite(2.0)},
                                  {1, Exponent::inf()}};
  PHOProblem prob = plant_feasible_instance(specs, 1, 1, 21).problem;
  DualProblem dual = build_dual(prob);
  int finite_seen = 0;
  for (int trial = 0; trial < 500; ++trial) {
    Vec u(prob.k), v(prob.l);
    for (double& ui : u) ui = gauss(rng);
    for (double& vi : v) vi = std::fabs(gauss(rng));
    DualResiduals dr = dual_residuals(dual, u, v, 0.0);
    OmegaResult om = omega(prob, u, v);
    if (dr.feasible) {
      REQUIRE(om.value.is_finite());
      CHECK(om.value.value() == dr.objective);
      ++finite_seen;
    }
  }
  CHECK(finite_seen > 0);
}
