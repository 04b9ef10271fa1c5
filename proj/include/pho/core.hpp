#ifndef PHO_CORE_HPP
#define PHO_CORE_HPP

#include <string>
#include <vector>

#include "pho/extended.hpp"
#include "pho/linalg.hpp"

namespace pho {

enum class PHKind { PNorm };

/// One positively homogeneous atom: the p-norm on R^dim with p in (0, inf].
struct ScalarPH {
  PHKind kind = PHKind::PNorm;
  Exponent exponent = Exponent::finite(2.0);
  int dim = 1;
};

/// One block of a vector positively homogeneous function: the variable
/// indices the atom reads, plus the atom itself.
struct Block {
  std::vector<int> indices;  // 0-based, |indices| == fn.dim
  ScalarPH fn;
};

/// Blockwise stack of p-norm atoms over disjoint index sets that partition
/// all variables. Component i of the stacked map is fn_i applied to the
/// subvector picked out by indices_i.
struct VectorPH {
  std::vector<Block> blocks;

  int num_blocks() const { return static_cast<int>(blocks.size()); }
  int num_vars() const {
    int n = 0;
    for (const auto& b : blocks) n += static_cast<int>(b.indices.size());
    return n;
  }
};

/// Problem data for
///   min  c^T x + d^T Psi(x)
///   s.t. A x + B Psi(x) = b
///        H x + K Psi(x) >= p
/// with n variables, m blocks, k equality rows and l inequality rows.
/// k = 0 and/or l = 0 mean the constraint class is absent.
struct PHOProblem {
  int n = 0, m = 0, k = 0, l = 0;
  Vec c;    // n
  Vec d;    // m
  Mat A;    // k x n
  Mat B;    // k x m
  Vec b;    // k
  Mat H;    // l x n
  Mat K;    // l x m
  Vec p;    // l
  VectorPH psi;
};

/// Dual problem data for
///   max  b^T u + p^T v
///   s.t. Psi*(A^T u + H^T v - c) + B^T u + K^T v <= d,  v >= 0.
/// psi_star shares the block index structure of base.psi; its exponents are
/// the conjugates. equality_rows lists block rows that simplification turned
/// into the linear equality (A^T u + H^T v - c)_{I_i} = 0.
struct DualProblem {
  PHOProblem base;
  VectorPH psi_star;
  std::vector<int> equality_rows;
  bool infeasible = false;  // simplification found a forced-negative rhs
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks every structural invariant of the problem data: block disjointness,
/// partition coverage, per-block dimension agreement, and matrix/vector
/// dimension consistency. Violations are data, not errors.
ValidationReport validate_problem(const PHOProblem& prob);

}  // namespace pho

#endif  // PHO_CORE_HPP
