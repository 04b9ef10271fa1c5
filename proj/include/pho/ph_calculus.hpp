#ifndef PHO_PH_CALCULUS_HPP
#define PHO_PH_CALCULUS_HPP

#include <cstdint>

#include "pho/core.hpp"

namespace pho {

/// Sampled check of positive homogeneity and the nonnegativity/positivity
/// conditions for one atom.
struct PHCheckReport {
  int trials = 0;
  double max_homogeneity_violation = 0.0;  // relative
  bool nonnegativity_ok = true;
  bool positivity_ok = true;  // psi(x) > 0 for sampled x != 0
  Vec worst_case_input;
};

/// ||x||_p = (sum |x_i|^p)^(1/p), or max_i |x_i| for p = inf.
/// Rescales by ||x||_inf before powering so small p cannot overflow.
double eval_ph(const ScalarPH& fn, const Vec& x);

/// Componentwise blockwise evaluation; result i is fn_i on x restricted to
/// block i's indices.
Vec eval_vector_ph(const VectorPH& psi, const Vec& x);

/// Conjugate exponent: q = p/(p-1) for p > 1, q = inf for p in (0,1],
/// q = 1 for p = inf.
Exponent dual_exponent(const Exponent& p);

/// psi*(y) = sup { x^T y : psi(x) <= 1 }, in closed form as the
/// dual_exponent norm of y. Always finite.
double eval_dual_ph(const ScalarPH& fn, const Vec& y);

/// A maximizer of sup { x^T y : psi(x) <= 1 }. For y = 0 returns 0.
/// p in (0,1]: signed unit coordinate at the lowest index attaining
/// max |y_i|; p in (1,inf): the Holder-equality point; p = inf: sign(y).
Vec dual_argmax(const ScalarPH& fn, const Vec& y);

/// Monte-Carlo lower-bound estimate of psi*(y): max of x^T y over `budget`
/// random directions rescaled onto the unit psi-sphere, plus all signed
/// coordinate vectors. Independent of the closed form; used as the
/// acceptance-test oracle. Requires fn.dim <= 6.
double oracle_dual_ph(const ScalarPH& fn, const Vec& y, int budget, uint64_t seed);

PHCheckReport check_ph_properties(const ScalarPH& fn, int trials, uint64_t seed);

}  // namespace pho

#endif  // PHO_PH_CALCULUS_HPP
