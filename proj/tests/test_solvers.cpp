#include <doctest.h>

#include <cmath>

#include "pho/dual_builder.hpp"
#include "pho/ph_calculus.hpp"
#include "pho/solvers.hpp"
#include "pho/transforms.hpp"

using namespace pho;

namespace {

LPProblem small_lp() {
  // min -x - 2y s.t. x + y <= 4, x <= 2, x,y >= 0. Optimum -8 at (0,4)?
  // No: -x - 2y at (0,4) is -8; at (2,2) it is -6. Optimal -8.
  LPProblem lp;
  lp.objective = {-1.0, -2.0};
  lp.constraints = Mat(2, 2);
  lp.constraints(0, 0) = 1.0;
  lp.constraints(0, 1) = 1.0;
  lp.constraints(1, 0) = 1.0;
  lp.rhs = {4.0, 2.0};
  lp.senses = {RowSense::LE, RowSense::LE};
  lp.nonneg = {true, true};
  return lp;
}

}  // namespace

TEST_CASE("simplex solves a small LP and certifies it with duals") {
  SolveResult res = simplex_lp(small_lp());
  REQUIRE(res.status == SolveStatus::Optimal);
  CHECK(res.value == doctest::Approx(-8.0));
  CHECK(res.point[0] == doctest::Approx(0.0));
  CHECK(res.point[1] == doctest::Approx(4.0));
  REQUIRE(res.duals.has_value());
  // Strong duality: y^T rhs equals the optimum for the row duals.
  const Vec& y = *res.duals;
  CHECK(y[0] * 4.0 + y[1] * 2.0 == doctest::Approx(-8.0));
  // Dual feasibility for min form with <= rows: y <= 0, A^T y <= objective.
  CHECK(y[0] <= 1e-9);
  CHECK(y[0] + y[1] <= -1.0 + 1e-9);
  CHECK(y[0] <= -2.0 + 1e-9);
}

TEST_CASE("simplex detects infeasibility") {
  LPProblem lp = small_lp();
  lp.constraints = Mat(2, 2);
  lp.constraints(0, 0) = 1.0;
  lp.constraints(1, 0) = 1.0;
  lp.rhs = {1.0, 3.0};
  lp.senses = {RowSense::LE, RowSense::GE};  // x <= 1 and x >= 3
  CHECK(simplex_lp(lp).status == SolveStatus::Infeasible);
}

TEST_CASE("simplex detects unboundedness") {
  LPProblem lp;
  lp.objective = {-1.0};
  lp.constraints = Mat(1, 1);
  lp.constraints(0, 0) = -1.0;
  lp.rhs = {0.0};
  lp.senses = {RowSense::LE};
  lp.nonneg = {true};
  CHECK(simplex_lp(lp).status == SolveStatus::Unbounded);
}

TEST_CASE("simplex handles free variables and equality rows") {
  // min x s.t. x + y = 3, y <= 1, y >= 0, x free: optimum 2.
  LPProblem lp;
  lp.objective = {1.0, 0.0};
  lp.constraints = Mat(2, 2);
  lp.constraints(0, 0) = 1.0;
  lp.constraints(0, 1) = 1.0;
  lp.constraints(1, 1) = 1.0;
  lp.rhs = {3.0, 1.0};
  lp.senses = {RowSense::EQ, RowSense::LE};
  lp.nonneg = {false, true};
  SolveResult res = simplex_lp(lp);
  REQUIRE(res.status == SolveStatus::Optimal);
  CHECK(res.value == doctest::Approx(2.0));
}

TEST_CASE("subgradient ascent solves the one-variable dual to 1e-6") {
  // min |x| s.t. x >= 1 has value 1; its dual max v s.t. |v| <= 1, v >= 0.
  PHOProblem prob;
  prob.n = 1;
  prob.m = 1;
  prob.l = 1;
  prob.c = {0.0};
  prob.d = {1.0};
  prob.A = Mat(0, 1);
  prob.B = Mat(0, 1);
  prob.H = Mat(1, 1);
  prob.H(0, 0) = 1.0;
  prob.K = Mat(1, 1);
  prob.p = {1.0};
  Block blk;
  blk.indices = {0};
  blk.fn = ScalarPH{PHKind::PNorm, Exponent::finite(1.0), 1};
  prob.psi.blocks = {blk};

  SolveResult res = solve_dual_subgradient(build_dual(prob), {}, {0.0});
  REQUIRE(res.status == SolveStatus::Optimal);
  CHECK(std::fabs(res.value - 1.0) <= 1e-6);
  REQUIRE(res.violation_history.has_value());
  CHECK_FALSE(res.violation_history->empty());
}

TEST_CASE("subgradient reports the infeasible flag immediately") {
  PHOProblem prob;
  prob.n = 1;
  prob.m = 1;
  prob.c = {0.0};
  prob.d = {-1.0};
  prob.A = Mat(0, 1);
  prob.B = Mat(0, 1);
  prob.H = Mat(0, 1);
  prob.K = Mat(0, 1);
  Block blk;
  blk.indices = {0};
  blk.fn = ScalarPH{PHKind::PNorm, Exponent::finite(2.0), 1};
  prob.psi.blocks = {blk};
  DualProblem dual = simplify_dual(build_dual(prob));
  REQUIRE(dual.infeasible);
  CHECK(solve_dual_subgradient(dual, {}, {}).status == SolveStatus::Infeasible);
}

TEST_CASE("grid brute force finds the planted optimum region") {
  // min |x1| + |x2| s.t. x1 + x2 >= 1: optimum 1 on the segment.
  std::vector<BlockSpec> specs = {{1, Exponent::finite(1.0)},
                                  {1, Exponent::finite(1.0)}};
  PHOProblem prob = plant_feasible_instance(specs, 0, 1, 1).problem;
  prob.c = {0.0, 0.0};
  prob.d = {1.0, 1.0};
  prob.H = Mat(1, 2);
  prob.H(0, 0) = 1.0;
  prob.H(0, 1) = 1.0;
  prob.K = Mat(1, 2);
  prob.p = {1.0};
  Box box{Vec{-2.0}, Vec{2.0}};
  SolveResult res = brute_force_primal(prob, box, 0.01);
  REQUIRE(res.status == SolveStatus::Optimal);
  CHECK(res.value == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("sign-pattern brute force agrees with the grid on AVO shapes") {
  AVOProblem avo = make_inequality_avo(Mat::identity(2), Mat(2, 2), {0.5, -1.0},
                                       {1.0, 1.0});
  PHOProblem prob = avo_to_pho(avo);
  SolveResult signs = brute_force_avo_signs(prob);
  REQUIRE(signs.status == SolveStatus::Optimal);
  Box box{Vec{-3.0}, Vec{3.0}};
  SolveResult grid = brute_force_primal(prob, box, 0.01);
  REQUIRE(grid.status == SolveStatus::Optimal);
  CHECK(signs.value == doctest::Approx(grid.value).epsilon(0.02));
  // x >= (0.5, -1): minimizing x1 + x2 gives 0.5 - 1 = -0.5 at (0.5, -1).
  CHECK(signs.value == doctest::Approx(-0.5));
}

TEST_CASE("planted instances are deterministic and feasible at x0") {
  std::vector<BlockSpec> specs = {{2, Exponent::finite(2.0)},
                                  {1, Exponent::finite(0.5)}};
  PlantedInstance a = plant_feasible_instance(specs, 1, 2, 77);
  PlantedInstance b = plant_feasible_instance(specs, 1, 2, 77);
  CHECK(a.x0 == b.x0);
  CHECK(a.problem.c == b.problem.c);
  CHECK(a.problem.b == b.problem.b);
  CHECK(primal_residuals(a.problem, a.x0, 1e-9).feasible);
  PlantedInstance c = plant_feasible_instance(specs, 1, 2, 78);
  CHECK(a.x0 != c.x0);
}
