#ifndef PHO_SOLVERS_HPP
#define PHO_SOLVERS_HPP

#include <cstdint>
#include <optional>

#include "pho/core.hpp"
#include "pho/dual_builder.hpp"
#include "pho/lp.hpp"

namespace pho {

enum class SolveStatus { Optimal, Infeasible, Unbounded, IterLimit, Failed };

struct SolveResult {
  SolveStatus status = SolveStatus::Failed;
  Vec point;
  double value = 0.0;
  int iterations = 0;
  // Simplex certificate: final basis column indices and row duals.
  std::optional<std::vector<int>> basis;
  std::optional<Vec> duals;
  // Subgradient certificate: per-iteration most-violated constraint values.
  std::optional<Vec> violation_history;
};

/// Two-phase dense tableau simplex with Bland's anti-cycling rule.
/// Optimal results carry the basis and the row duals; primal feasibility,
/// dual feasibility of reduced costs, and complementary slackness all hold
/// within tol.
SolveResult simplex_lp(const LPProblem& lp, double tol = 1e-9);

struct SubgradientOptions {
  int max_iter = 100000;
  double feas_tol = 1e-9;  // constraint slack for classifying iterates feasible
  double step_scale = 0.0;  // sigma; 0 means the default 1/(1+||(b,p)||)
  uint64_t seed = 0;        // reserved for randomized variants; unused by default
};

/// Projected subgradient ascent on max b^T u + p^T v over the dual feasible
/// set. If the most violated block row exceeds feas_tol, steps against its
/// subgradient; otherwise steps along (b, p). v is clamped to >= 0 and
/// equality_rows are enforced by projection onto their affine set each step.
/// Returns the best feasible iterate seen; step size sigma/sqrt(t).
SolveResult solve_dual_subgradient(const DualProblem& dual, const Vec& start_u,
                                   const Vec& start_v,
                                   const SubgradientOptions& opts = {});

struct Box {
  Vec lo, hi;  // per-variable bounds, or a single pair broadcast to all
};

/// Exhaustive search for a best feasible primal point.
/// Grid mode (any block structure, n <= 4): scans the box at the given
/// resolution. Sign-pattern mode (all singleton p=1 blocks, n <= 12): solves
/// one LP per orthant with |x| resolved to a nonnegative variable.
SolveResult brute_force_primal(const PHOProblem& prob, const Box& box,
                               double resolution, double feas_tol = 1e-6);

/// Sign-pattern search only; requires the all-singleton-|x| block structure.
SolveResult brute_force_avo_signs(const PHOProblem& prob, double tol = 1e-9);

struct BlockSpec {
  int dim = 1;
  Exponent p = Exponent::finite(1.0);
};

struct PlantedInstance {
  PHOProblem problem;
  Vec x0;  // feasible by construction
};

/// Random instance with b and p back-computed from a drawn point x0 so that
/// x0 is feasible: b = A x0 + B Psi(x0), p = H x0 + K Psi(x0) - slack with
/// slack >= 0. d is drawn >= 0. Deterministic in the seed.
PlantedInstance plant_feasible_instance(const std::vector<BlockSpec>& blocks, int k,
                                        int l, uint64_t seed, double scale = 1.0,
                                        double slack = -1.0);

}  // namespace pho

#endif  // PHO_SOLVERS_HPP
