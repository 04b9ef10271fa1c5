#ifndef PHO_DUAL_BUILDER_HPP
#define PHO_DUAL_BUILDER_HPP

#include <optional>

#include "pho/core.hpp"
#include "pho/extended.hpp"

namespace pho {

struct BuildError : std::runtime_error {
  explicit BuildError(const ValidationReport& rep);
  ValidationReport report;
};

/// Certificate that inf_x L(x,u,v) = -inf: along ray(lambda), which equals
/// alpha with block `block` replaced by lambda * xhat, the Lagrangian is
/// bounded above by gamma + lambda * psi(xhat) * slope_bound with
/// slope_bound < 0.
struct DivergenceWitness {
  int block = -1;                  // i0
  std::vector<int> block_indices;  // I_{i0}, for placing xhat in the ray
  Vec xhat;                        // dual-ball maximizer for alpha on block i0
  Vec alpha;                       // full alpha vector, the ray's frozen part
  double slope_bound = 0.0;  // beta_i0 - psi*_i0(alpha_i0), strictly negative
  double gamma = 0.0;        // lambda-independent part of the ray bound

  /// The ray point at parameter lambda > 0.
  Vec ray(double lambda) const;
};

/// Exact value of omega(u,v) = inf_x L(x,u,v) via the blockwise dichotomy:
/// finite (= b^T u + p^T v) iff psi*_i(alpha_Ii) <= beta_i for every block,
/// otherwise -inf with a constructive witness.
struct OmegaResult {
  ExtendedValue value = ExtendedValue::finite(0.0);
  Vec alpha;  // A^T u + H^T v - c
  Vec beta;   // d - B^T u - K^T v
  std::optional<int> violating_block;
  std::optional<DivergenceWitness> witness;
};

struct PrimalResiduals {
  double objective = 0.0;
  double eq_residual = 0.0;     // max |Ax + B Psi(x) - b|
  double ineq_violation = 0.0;  // max (p - Hx - K Psi(x))_+
  bool feasible = false;
};

struct DualResiduals {
  double objective = 0.0;            // b^T u + p^T v
  double constraint_violation = 0.0; // max_i (psi*_i(alpha_Ii) + (B^T u + K^T v)_i - d_i)_+
  double v_violation = 0.0;          // max (-v)_+
  bool feasible = false;
};

/// Mechanical dualization: max b^T u + p^T v subject to
/// Psi*(A^T u + H^T v - c) + B^T u + K^T v <= d, v >= 0. Pure structure,
/// no numerical work. Throws BuildError on invalid problem data.
DualProblem build_dual(const PHOProblem& prob);

/// L(x,u,v) = c^T x + d^T Psi(x) + u^T(b - Ax - B Psi(x)) + v^T(p - Hx - K Psi(x)).
double lagrangian(const PHOProblem& prob, const Vec& x, const Vec& u, const Vec& v);

/// Equivalent expansion b^T u + p^T v - alpha^T x + beta^T Psi(x); agrees
/// with lagrangian() to rounding and is the form the divergence analysis uses.
double lagrangian_alpha_beta(const PHOProblem& prob, const Vec& x, const Vec& u,
                             const Vec& v);

OmegaResult omega(const PHOProblem& prob, const Vec& u, const Vec& v);

PrimalResiduals primal_residuals(const PHOProblem& prob, const Vec& x, double tol);

DualResiduals dual_residuals(const DualProblem& dual, const Vec& u, const Vec& v,
                             double tol);

}  // namespace pho

#endif  // PHO_DUAL_BUILDER_HPP
