#include <doctest.h>

#include <cmath>
#include <random>

#include "pho/ph_calculus.hpp"

using namespace pho;

namespace {

ScalarPH pnorm(double p, int dim) {
  return ScalarPH{PHKind::PNorm, Exponent::finite(p), dim};
}
ScalarPH inf_norm(int dim) { return ScalarPH{PHKind::PNorm, Exponent::inf(), dim}; }

}  // namespace

TEST_CASE("frozen p-norm values") {
  CHECK(eval_ph(pnorm(2.0, 2), {3.0, 4.0}) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(eval_ph(pnorm(1.0, 3), {1.0, -2.0, 3.0}) == doctest::Approx(6.0));
  CHECK(eval_ph(inf_norm(3), {1.0, -7.0, 3.0}) == doctest::Approx(7.0));
  // p = 1/2: (sum sqrt|x_i|)^2
  CHECK(eval_ph(pnorm(0.5, 2), {1.0, 1.0}) == doctest::Approx(4.0));
  CHECK(eval_ph(pnorm(0.5, 2), {4.0, 1.0}) == doctest::Approx(9.0));
  CHECK(eval_ph(pnorm(3.0, 1), {-2.0}) == doctest::Approx(2.0));
  CHECK(eval_ph(pnorm(0.5, 3), {0.0, 0.0, 0.0}) == 0.0);
}

TEST_CASE("huge inputs do not overflow for small p") {
  // Without rescaling, |x|^(1/p) of 1e300 at p=0.5 would overflow after
  // squaring the sum.
  double v = eval_ph(pnorm(0.5, 2), {1e300, 1e300});
  CHECK(std::isfinite(v));
  CHECK(v == doctest::Approx(4e300));
}

TEST_CASE("conjugate exponent rule") {
  CHECK(dual_exponent(Exponent::finite(2.0)).value() == doctest::Approx(2.0));
  CHECK(dual_exponent(Exponent::finite(1.5)).value() == doctest::Approx(3.0));
  CHECK(dual_exponent(Exponent::finite(3.0)).value() == doctest::Approx(1.5));
  CHECK(dual_exponent(Exponent::finite(1.0)).is_inf());
  CHECK(dual_exponent(Exponent::finite(0.5)).is_inf());
  CHECK(dual_exponent(Exponent::finite(0.1)).is_inf());
  CHECK(dual_exponent(Exponent::inf()).value() == doctest::Approx(1.0));
}

TEST_CASE("dual of a sub-one exponent is exactly the max norm") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss(0.0, 10.0);
  for (double p : {0.3, 0.5, 0.9, 1.0}) {
    for (int trial = 0; trial < 100; ++trial) {
      Vec y(3);
      for (double& yi : y) yi = gauss(rng);
      CHECK(eval_dual_ph(pnorm(p, 3), y) == norm_inf(y));
    }
  }
}

TEST_CASE("positive homogeneity and positivity hold on samples") {
  for (double p : {0.5, 1.0, 1.7, 2.0, 4.0}) {
    PHCheckReport rep = check_ph_properties(pnorm(p, 3), 2000, 11);
    CHECK(rep.max_homogeneity_violation < 1e-9);
    CHECK(rep.nonnegativity_ok);
    CHECK(rep.positivity_ok);
  }
  PHCheckReport rep = check_ph_properties(inf_norm(2), 2000, 11);
  CHECK(rep.max_homogeneity_violation < 1e-9);
  CHECK(rep.positivity_ok);
}

TEST_CASE("closed-form dual matches the sampling oracle") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> gauss(0.0, 2.0);
  for (double p : {0.5, 1.0, 1.5, 2.0, 3.0, 0.0}) {  // 0 stands for inf
    ScalarPH fn = p == 0.0 ? inf_norm(3) : pnorm(p, 3);
    for (int trial = 0; trial < 20; ++trial) {
      Vec y(3);
      for (double& yi : y) yi = gauss(rng);
      double closed = eval_dual_ph(fn, y);
      double oracle = oracle_dual_ph(fn, y, 20000, 1000 + trial);
      // The oracle maximizes over feasible points, so it can only fall short.
      CHECK(closed >= oracle - 1e-9 * (1.0 + std::fabs(oracle)));
      CHECK(closed <= oracle * 1.02 + 1e-12);
    }
  }
}

TEST_CASE("dual argmax attains the supremum on the unit ball") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> gauss(0.0, 3.0);
  for (double p : {0.5, 1.0, 1.5, 2.0, 3.0, 0.0}) {
    ScalarPH fn = p == 0.0 ? inf_norm(4) : pnorm(p, 4);
    for (int trial = 0; trial < 50; ++trial) {
      Vec y(4);
      for (double& yi : y) yi = gauss(rng);
      Vec x = dual_argmax(fn, y);
      double psi = eval_ph(fn, x);
      CHECK(psi <= 1.0 + 1e-9);
      double star = eval_dual_ph(fn, y);
      CHECK(dot(x, y) == doctest::Approx(star).epsilon(1e-9));
    }
  }
}

TEST_CASE("dual argmax of zero is zero") {
  Vec x = dual_argmax(pnorm(2.0, 3), {0.0, 0.0, 0.0});
  CHECK(norm_inf(x) == 0.0);
}

TEST_CASE("dual values are nonnegative and vanish only at zero") {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    Vec y(3);
    for (double& yi : y) yi = gauss(rng);
    double v = eval_dual_ph(pnorm(1.3, 3), y);
    CHECK(v >= 0.0);
    if (norm_inf(y) > 1e-12) CHECK(v > 0.0);
  }
}
