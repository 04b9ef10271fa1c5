#include <doctest.h>

#include <random>

#include "pho/core.hpp"
#include "pho/io.hpp"
#include "pho/solvers.hpp"

using namespace pho;

namespace {

PHOProblem two_block_problem() {
  PHOProblem prob;
  prob.n = 3;
  prob.m = 2;
  prob.k = 1;
  prob.l = 1;
  prob.c = {1.0, 0.0, -2.0};
  prob.d = {0.5, 1.0};
  Block b0, b1;
  b0.indices = {0};
  b0.fn = ScalarPH{PHKind::PNorm, Exponent::finite(1.0), 1};
  b1.indices = {1, 2};
  b1.fn = ScalarPH{PHKind::PNorm, Exponent::finite(2.0), 2};
  prob.psi.blocks = {b0, b1};
  prob.A = Mat(1, 3);
  prob.A(0, 0) = 1.0;
  prob.B = Mat(1, 2);
  prob.b = {1.0};
  prob.H = Mat(1, 3);
  prob.H(0, 1) = 1.0;
  prob.K = Mat(1, 2);
  prob.K(0, 1) = -1.0;
  prob.p = {0.0};
  return prob;
}

}  // namespace

TEST_CASE("valid problem passes validation") {
  CHECK(validate_problem(two_block_problem()).ok());
}

TEST_CASE("overlapping blocks are reported") {
  PHOProblem prob = two_block_problem();
  prob.psi.blocks[1].indices = {0, 2};  // index 0 already in block 0
  ValidationReport rep = validate_problem(prob);
  REQUIRE_FALSE(rep.ok());
  bool mentions_overlap = false;
  for (const auto& v : rep.violations)
    if (v.find("overlap") != std::string::npos) mentions_overlap = true;
  CHECK(mentions_overlap);
}

TEST_CASE("uncovered variable is reported") {
  PHOProblem prob = two_block_problem();
  prob.psi.blocks[1].indices = {1};
  prob.psi.blocks[1].fn.dim = 1;
  CHECK_FALSE(validate_problem(prob).ok());
}

TEST_CASE("block index out of range is reported") {
  PHOProblem prob = two_block_problem();
  prob.psi.blocks[1].indices = {1, 7};
  CHECK_FALSE(validate_problem(prob).ok());
}

TEST_CASE("matrix shape mismatches are reported") {
  PHOProblem prob = two_block_problem();
  prob.A = Mat(1, 2);
  CHECK_FALSE(validate_problem(prob).ok());

  prob = two_block_problem();
  prob.d.pop_back();
  CHECK_FALSE(validate_problem(prob).ok());

  prob = two_block_problem();
  prob.b.push_back(0.0);
  CHECK_FALSE(validate_problem(prob).ok());
}

TEST_CASE("block dimension must match its atom") {
  PHOProblem prob = two_block_problem();
  prob.psi.blocks[1].fn.dim = 3;
  CHECK_FALSE(validate_problem(prob).ok());
}

// --- serialization ---------------------------------------------------------

namespace {

bool mat_equal(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

bool problems_identical(const PHOProblem& a, const PHOProblem& b) {
  if (a.n != b.n || a.m != b.m || a.k != b.k || a.l != b.l) return false;
  if (a.c != b.c || a.d != b.d || a.b != b.b || a.p != b.p) return false;
  if (!mat_equal(a.A, b.A) || !mat_equal(a.B, b.B) || !mat_equal(a.H, b.H) ||
      !mat_equal(a.K, b.K))
    return false;
  if (a.psi.num_blocks() != b.psi.num_blocks()) return false;
  for (int i = 0; i < a.psi.num_blocks(); ++i) {
    if (a.psi.blocks[i].indices != b.psi.blocks[i].indices) return false;
    if (!(a.psi.blocks[i].fn.exponent == b.psi.blocks[i].fn.exponent)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("problem JSON round trip is bit exact") {
  PHOProblem prob = two_block_problem();
  prob.c[0] = 0.1 + 0.2;  // not representable exactly; must still round-trip
  PHOProblem back = problem_from_json(problem_to_json(prob));
  CHECK(problems_identical(prob, back));
}

TEST_CASE("random planted problems round trip") {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(seed);
    std::vector<BlockSpec> specs;
    int left = 1 + static_cast<int>(rng() % 5);
    while (left > 0) {
      BlockSpec bs;
      bs.dim = 1 + static_cast<int>(rng() % static_cast<uint64_t>(left));
      switch (rng() % 4) {
        case 0: bs.p = Exponent::finite(0.5); break;
        case 1: bs.p = Exponent::finite(1.0); break;
        case 2: bs.p = Exponent::finite(2.0); break;
        default: bs.p = Exponent::inf(); break;
      }
      specs.push_back(bs);
      left -= bs.dim;
    }
    PHOProblem prob = plant_feasible_instance(specs, 1, 1, seed).problem;
    CHECK(problems_identical(prob, problem_from_json(problem_to_json(prob))));
  }
}

TEST_CASE("dual JSON round trip preserves conjugate exponents and flags") {
  DualProblem dual;
  dual.base = two_block_problem();
  dual.psi_star = dual.base.psi;
  dual.psi_star.blocks[0].fn.exponent = Exponent::inf();
  dual.equality_rows = {0};
  dual.infeasible = false;
  DualProblem back = dual_from_json(dual_to_json(dual));
  CHECK(problems_identical(dual.base, back.base));
  CHECK(back.psi_star.blocks[0].fn.exponent.is_inf());
  CHECK(back.equality_rows == dual.equality_rows);
  CHECK(back.infeasible == dual.infeasible);
}

TEST_CASE("exponent serialization uses the inf tag") {
  CHECK(exponent_to_json(Exponent::inf()) == nlohmann::json("inf"));
  CHECK(exponent_from_json(nlohmann::json("inf")).is_inf());
  CHECK(exponent_from_json(nlohmann::json(1.5)).value() == 1.5);
  CHECK_THROWS_AS(exponent_from_json(nlohmann::json(0.0)), ParseError);
  CHECK_THROWS_AS(exponent_from_json(nlohmann::json(-2.0)), ParseError);
  CHECK_THROWS_AS(exponent_from_json(nlohmann::json("infinity")), ParseError);
}

TEST_CASE("malformed problem files raise ParseError") {
  nlohmann::json good = problem_to_json(two_block_problem());

  nlohmann::json j = good;
  j.erase("c");
  CHECK_THROWS_AS(problem_from_json(j), ParseError);

  j = good;
  j["blocks"][0]["p"] = 0.0;
  CHECK_THROWS_AS(problem_from_json(j), ParseError);

  j = good;
  j["blocks"][0]["indices"] = nlohmann::json::array({-1});
  CHECK_THROWS_AS(problem_from_json(j), ParseError);

  j = good;
  j["eq"]["A"] = "not a matrix";
  CHECK_THROWS_AS(problem_from_json(j), ParseError);
}

TEST_CASE("eq and ineq groups are optional") {
  nlohmann::json j = problem_to_json(two_block_problem());
  j.erase("eq");
  j.erase("ineq");
  PHOProblem prob = problem_from_json(j);
  CHECK(prob.k == 0);
  CHECK(prob.l == 0);
  CHECK(validate_problem(prob).ok());
}
