#ifndef PHO_LP_HPP
#define PHO_LP_HPP

#include "pho/linalg.hpp"

namespace pho {

enum class RowSense { LE, EQ, GE };

/// Dense LP in the form
///   min  objective^T y
///   s.t. rows(i): constraints * y  {<=, =, >=}  rhs_i
///        y_j >= 0 where nonneg[j], otherwise free.
struct LPProblem {
  Vec objective;
  Mat constraints;
  Vec rhs;
  std::vector<RowSense> senses;
  std::vector<bool> nonneg;  // one flag per variable

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rhs.size()); }
};

}  // namespace pho

#endif  // PHO_LP_HPP
