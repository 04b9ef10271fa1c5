#ifndef PHO_TRANSFORMS_HPP
#define PHO_TRANSFORMS_HPP

#include "pho/core.hpp"
#include "pho/dual_builder.hpp"
#include "pho/lp.hpp"

namespace pho {

/// Absolute value optimization data: the specialization Psi(x) = |x| with n
/// singleton blocks in index order.
///   min  c^T x + d^T |x|
///   s.t. A x + B |x| = b        (k rows)
///        H x + K |x| >= p       (l rows)
struct AVOProblem {
  int n = 0, k = 0, l = 0;
  Vec c, d;  // n each
  Mat A, B;  // k x n
  Vec b;     // k
  Mat H, K;  // l x n
  Vec p;     // l
};

/// The inequality-only linear-objective shape min c^T x s.t. Ax + B|x| >= b,
/// stored in the H/K/p slots with k = 0 and d = 0.
AVOProblem make_inequality_avo(const Mat& a, const Mat& b_mat, const Vec& b,
                               const Vec& c);

PHOProblem avo_to_pho(const AVOProblem& avo);

/// Closed-form AVO dual of the inequality-only shape:
///   max b^T u  s.t.  |A^T u - c| + B^T u <= 0,  u >= 0.
struct AVODual {
  Mat A, B;  // the primal's inequality matrices
  Vec b, c;
};

/// Sign-splitting LP relaxation of the inequality-only shape:
///   min [c | -c] y  s.t.  [A+B | -A+B] y >= b,  y >= 0.
/// Throws on any other shape.
LPProblem avo_split_lp(const AVOProblem& avo);

AVODual avo_dual(const AVOProblem& avo);

/// The AVO dual re-split into LP form (min -b^T u s.t.
/// [A^T + B^T; -A^T + B^T] u <= [c; -c], u >= 0); exactly the LP dual of
/// avo_split_lp as matrix data.
LPProblem avo_dual_lp(const AVODual& d);

/// The PHO dual of an all-singleton-block problem written as an LP by
/// splitting each |alpha_i| row into two linear rows. u free, v >= 0,
/// objective min -(b^T u + p^T v).
LPProblem singleton_dual_as_lp(const DualProblem& dual);

// --- Example problem classes -----------------------------------------------

/// Second-order cone program min c^T x s.t. Ax = b, x_1 - ||x_2|| >= 0,
/// encoded with blocks {0}: p=1 and {1..n-1}: p=2, H = e_1^T, K = (0, -1).
PHOProblem socp_to_pho(const Vec& c, const Mat& a, const Vec& b);

/// The v-eliminated dual: max b^T u s.t. ||(A^T u)_2 - c_2|| <= c_1 - (A^T u)_1.
struct SOCPDual {
  Mat A;
  Vec b, c;
  bool feasible(const Vec& u, double tol = 0.0) const;
  double objective(const Vec& u) const;
};

SOCPDual socp_dual_simplify(const DualProblem& dual);

/// One gauge atom alpha * f(A x - a) or constraint g(B x - b) <= beta.
struct GaugeTerm {
  double weight = 1.0;  // alpha_i (objective) or beta_j (constraint rhs)
  Mat a;                // A_i or B_j
  Vec shift;            // a_i or b_j
  ScalarPH fn;          // f_i or g_j
};

/// Where each piece of a stacked problem landed: variable offsets for
/// (x, y_1..y_s, z_1..z_t) and block ids.
struct StackLayout {
  int n = 0;                      // original x dimension
  std::vector<int> y_offset;      // start of y_i in the stacked variable
  std::vector<int> z_offset;      // start of z_j
  int dummy_block = 0;            // always block 0
  std::vector<int> f_block;       // block id of f_i
  std::vector<int> g_block;       // block id of g_j
};

struct GaugeResult {
  PHOProblem problem;
  DualProblem dual;  // mechanical dual, simplified
  StackLayout layout;
};

/// min sum alpha_i f_i(A_i x - a_i) s.t. g_j(B_j x - b_j) <= beta_j,
/// stacked with a zero-weight dummy block on x so the blocks partition the
/// variables. The dummy row simplifies to the linear equality
/// sum A_i^T u_1i + sum B_j^T u_2j = 0.
GaugeResult gauge_to_pho(int n, const std::vector<GaugeTerm>& objective_terms,
                         const std::vector<GaugeTerm>& constraint_terms);

/// min ||Ax - b|| + lambda1 sum_{i<=m'} ||x_Ii||_p1 + lambda2 sum_{i>m'} ||x_Ii||_p2
GaugeResult group_lasso_to_pho(const Mat& a, const Vec& b, double lambda1,
                               double lambda2,
                               const std::vector<std::vector<int>>& groups,
                               int m_prime, const Exponent& p1, const Exponent& p2);

/// min lambda1 ||x||_p1 + lambda2 ||x||_p2 s.t. ||Ax - b|| <= beta
GaugeResult constrained_lasso_to_pho(const Mat& a, const Vec& b, double beta,
                                     double lambda1, double lambda2,
                                     const Exponent& p1, const Exponent& p2);

struct SumNormTerm {
  double lambda = 1.0;  // any sign
  Mat a;                // A_i
  Vec shift;            // a_i
  ScalarPH fn;          // f_i
  // Safeguard row c f(y) <= d bounding the term; nonpositive values request
  // the defaults c = 1, d = 1000 * (1 + ||a_i||).
  double safeguard_c = 0.0;
  double safeguard_d = 0.0;
};

/// min sum lambda_i f_i(A_i x - a_i) s.t. Bx <= b, with per-term safeguard
/// rows c_i f_i(y_i) <= d_i keeping negatively weighted terms bounded.
GaugeResult sum_norms_to_pho(int n, std::vector<SumNormTerm> terms, const Mat& b_mat,
                             const Vec& b);

/// Linear program over binary variables, rows G x {sense} h.
struct BinaryLP {
  Vec objective;
  Mat g;
  Vec h;
  std::vector<RowSense> senses;
  int num_vars() const { return static_cast<int>(objective.size()); }
};

/// The substituted AVO encoding: x = (x' + 1) / 2 with |x'_i| = 1 equality
/// rows forcing x' in {-1, 1}^n.
struct BinaryReduction {
  AVOProblem avo;
  double objective_offset = 0.0;  // original = avo objective + offset
  Vec recover(const Vec& x_prime) const;  // maps x' back to binary x
};

BinaryReduction binary_to_avo(const BinaryLP& lp);

/// Rewrites each block row whose right-hand side is structurally constant
/// (zero B and K columns) and <= 0: rhs exactly 0 becomes the linear
/// equality (A^T u + H^T v - c)_{I_i} = 0; strictly negative rhs marks the
/// dual infeasible (psi* >= 0 can never go below it).
DualProblem simplify_dual(const DualProblem& dual);

}  // namespace pho

#endif  // PHO_TRANSFORMS_HPP
