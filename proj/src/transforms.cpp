#include "pho/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pho/ph_calculus.hpp"

namespace pho {

namespace {

VectorPH singleton_blocks(int n) {
  VectorPH psi;
  for (int j = 0; j < n; ++j) {
    Block blk;
    blk.indices = {j};
    blk.fn = ScalarPH{PHKind::PNorm, Exponent::finite(1.0), 1};
    psi.blocks.push_back(std::move(blk));
  }
  return psi;
}

void require_pa_shape(const AVOProblem& avo) {
  if (avo.k != 0) throw std::invalid_argument("(P_a) shape has no equality rows");
  for (double dj : avo.d)
    if (dj != 0.0)
      throw std::invalid_argument("(P_a) shape has a linear objective (d = 0)");
}

Mat selector_rows(int n, const std::vector<int>& indices) {
  Mat e(static_cast<int>(indices.size()), n);
  for (size_t r = 0; r < indices.size(); ++r) e(static_cast<int>(r), indices[r]) = 1.0;
  return e;
}

}  // namespace

AVOProblem make_inequality_avo(const Mat& a, const Mat& b_mat, const Vec& b,
                               const Vec& c) {
  AVOProblem avo;
  avo.n = static_cast<int>(c.size());
  avo.k = 0;
  avo.l = static_cast<int>(b.size());
  if (a.rows() != avo.l || a.cols() != avo.n || b_mat.rows() != avo.l ||
      b_mat.cols() != avo.n)
    throw std::invalid_argument("inconsistent (P_a) dimensions");
  avo.c = c;
  avo.d.assign(avo.n, 0.0);
  avo.A = Mat(0, avo.n);
  avo.B = Mat(0, avo.n);
  avo.H = a;
  avo.K = b_mat;
  avo.p = b;
  return avo;
}

PHOProblem avo_to_pho(const AVOProblem& avo) {
  PHOProblem prob;
  prob.n = avo.n;
  prob.m = avo.n;
  prob.k = avo.k;
  prob.l = avo.l;
  prob.c = avo.c;
  prob.d = avo.d;
  prob.A = avo.A;
  prob.B = avo.B;
  prob.b = avo.b;
  prob.H = avo.H;
  prob.K = avo.K;
  prob.p = avo.p;
  prob.psi = singleton_blocks(avo.n);
  return prob;
}

LPProblem avo_split_lp(const AVOProblem& avo) {
  require_pa_shape(avo);
  const int n = avo.n, l = avo.l;
  LPProblem lp;
  lp.objective.resize(2 * n);
  for (int j = 0; j < n; ++j) {
    lp.objective[j] = avo.c[j];
    lp.objective[n + j] = -avo.c[j];
  }
  lp.constraints = Mat(l, 2 * n);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < n; ++j) {
      lp.constraints(i, j) = avo.H(i, j) + avo.K(i, j);
      lp.constraints(i, n + j) = -avo.H(i, j) + avo.K(i, j);
    }
  lp.rhs = avo.p;
  lp.senses.assign(l, RowSense::GE);
  lp.nonneg.assign(2 * n, true);
  return lp;
}

AVODual avo_dual(const AVOProblem& avo) {
  require_pa_shape(avo);
  return AVODual{avo.H, avo.K, avo.p, avo.c};
}

LPProblem avo_dual_lp(const AVODual& d) {
  const int n = d.A.cols(), l = d.A.rows();
  LPProblem lp;
  lp.objective.resize(l);
  for (int i = 0; i < l; ++i) lp.objective[i] = -d.b[i];  // max b^T u
  lp.constraints = Mat(2 * n, l);
  lp.rhs.resize(2 * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < l; ++i) {
      lp.constraints(j, i) = d.A(i, j) + d.B(i, j);
      lp.constraints(n + j, i) = -d.A(i, j) + d.B(i, j);
    }
    lp.rhs[j] = d.c[j];
    lp.rhs[n + j] = -d.c[j];
  }
  lp.senses.assign(2 * n, RowSense::LE);
  lp.nonneg.assign(l, true);
  return lp;
}

LPProblem singleton_dual_as_lp(const DualProblem& dual) {
  const PHOProblem& prob = dual.base;
  for (const auto& blk : prob.psi.blocks)
    if (blk.indices.size() != 1)
      throw std::invalid_argument("dual-as-LP needs all-singleton blocks");
  if (dual.infeasible) throw std::invalid_argument("dual marked infeasible");

  std::vector<bool> is_eq(prob.m, false);
  for (int i : dual.equality_rows) is_eq[i] = true;

  const int k = prob.k, l = prob.l;
  LPProblem lp;
  lp.objective.resize(k + l);
  for (int i = 0; i < k; ++i) lp.objective[i] = -prob.b[i];
  for (int i = 0; i < l; ++i) lp.objective[k + i] = -prob.p[i];
  lp.nonneg.assign(k + l, false);
  for (int i = 0; i < l; ++i) lp.nonneg[k + i] = true;  // v >= 0

  std::vector<Vec> rows;
  Vec rhs;
  std::vector<RowSense> senses;
  for (int i = 0; i < prob.m; ++i) {
    int j = prob.psi.blocks[i].indices[0];
    Vec a_row(k + l, 0.0);  // coefficients of alpha_j = (A^T u + H^T v)_j - c_j
    for (int r = 0; r < k; ++r) a_row[r] = prob.A(r, j);
    for (int r = 0; r < l; ++r) a_row[k + r] = prob.H(r, j);
    if (is_eq[i]) {
      rows.push_back(a_row);
      rhs.push_back(prob.c[j]);
      senses.push_back(RowSense::EQ);
      continue;
    }
    Vec lin(k + l, 0.0);  // (B^T u + K^T v)_i
    for (int r = 0; r < k; ++r) lin[r] = prob.B(r, i);
    for (int r = 0; r < l; ++r) lin[k + r] = prob.K(r, i);
    // |alpha_j| + lin <= d_i split into two linear rows.
    Vec row1(k + l), row2(k + l);
    for (int r = 0; r < k + l; ++r) {
      row1[r] = a_row[r] + lin[r];
      row2[r] = -a_row[r] + lin[r];
    }
    rows.push_back(row1);
    rhs.push_back(prob.d[i] + prob.c[j]);
    senses.push_back(RowSense::LE);
    rows.push_back(row2);
    rhs.push_back(prob.d[i] - prob.c[j]);
    senses.push_back(RowSense::LE);
  }
  lp.constraints = Mat(static_cast<int>(rows.size()), k + l);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < k + l; ++j)
      lp.constraints(static_cast<int>(i), j) = rows[i][j];
  lp.rhs = rhs;
  lp.senses = senses;
  return lp;
}

// ---------------------------------------------------------------------------
// Example 1: second-order cone programs
// ---------------------------------------------------------------------------

PHOProblem socp_to_pho(const Vec& c, const Mat& a, const Vec& b) {
  const int n = static_cast<int>(c.size());
  if (n < 2) throw std::invalid_argument("cone block needs n >= 2");
  if (a.cols() != n || a.rows() != static_cast<int>(b.size()))
    throw std::invalid_argument("inconsistent SOCP dimensions");
  PHOProblem prob;
  prob.n = n;
  prob.m = 2;
  prob.k = a.rows();
  prob.l = 1;
  prob.c = c;
  prob.d.assign(2, 0.0);
  prob.A = a;
  prob.B = Mat(prob.k, 2);
  prob.b = b;
  prob.H = Mat(1, n);
  prob.H(0, 0) = 1.0;
  prob.K = Mat(1, 2);
  prob.K(0, 1) = -1.0;
  prob.p.assign(1, 0.0);
  Block head;
  head.indices = {0};
  head.fn = ScalarPH{PHKind::PNorm, Exponent::finite(1.0), 1};
  Block tail;
  for (int j = 1; j < n; ++j) tail.indices.push_back(j);
  tail.fn = ScalarPH{PHKind::PNorm, Exponent::finite(2.0), n - 1};
  prob.psi.blocks = {head, tail};
  return prob;
}

bool SOCPDual::feasible(const Vec& u, double tol) const {
  Vec w = tmatvec(A, u);
  double tail = 0.0;
  for (size_t j = 1; j < w.size(); ++j) {
    double t = w[j] - c[j];
    tail += t * t;
  }
  return std::sqrt(tail) <= c[0] - w[0] + tol;
}

double SOCPDual::objective(const Vec& u) const { return dot(b, u); }

SOCPDual socp_dual_simplify(const DualProblem& dual) {
  const PHOProblem& prob = dual.base;
  bool shape_ok = prob.m == 2 && prob.l == 1 && prob.H.rows() == 1 &&
                  prob.H(0, 0) == 1.0 && prob.K(0, 0) == 0.0 && prob.K(0, 1) == -1.0 &&
                  prob.psi.blocks[0].indices == std::vector<int>{0};
  if (!shape_ok)
    throw std::invalid_argument("dual was not produced from socp_to_pho");
  // Row 0 reads |(A^T u)_1 + v - c_1| <= 0, i.e. v = c_1 - (A^T u)_1; v >= 0
  // then follows from row 1, so v drops out entirely.
  return SOCPDual{prob.A, prob.b, prob.c};
}

// ---------------------------------------------------------------------------
// Example 2: gauge optimization stacking
// ---------------------------------------------------------------------------

GaugeResult gauge_to_pho(int n, const std::vector<GaugeTerm>& objective_terms,
                         const std::vector<GaugeTerm>& constraint_terms) {
  const int s = static_cast<int>(objective_terms.size());
  const int t = static_cast<int>(constraint_terms.size());
  auto check_term = [&](const GaugeTerm& term, const char* what) {
    if (term.a.cols() != n)
      throw std::invalid_argument(std::string(what) + " matrix must have n columns");
    if (term.a.rows() != static_cast<int>(term.shift.size()) ||
        term.a.rows() != term.fn.dim)
      throw std::invalid_argument(std::string(what) +
                                  " matrix rows, shift and fn dim must agree");
    if (term.weight < 0.0)
      throw std::invalid_argument(std::string(what) + " weight must be >= 0");
  };
  for (const auto& term : objective_terms) check_term(term, "objective term");
  for (const auto& term : constraint_terms) check_term(term, "constraint term");

  GaugeResult res;
  StackLayout& lay = res.layout;
  lay.n = n;
  int nn = n;
  for (const auto& term : objective_terms) {
    lay.y_offset.push_back(nn);
    nn += term.fn.dim;
  }
  for (const auto& term : constraint_terms) {
    lay.z_offset.push_back(nn);
    nn += term.fn.dim;
  }

  PHOProblem& prob = res.problem;
  prob.n = nn;
  prob.m = 1 + s + t;
  prob.c.assign(nn, 0.0);
  prob.d.assign(prob.m, 0.0);

  // Block 0: the dummy atom on x (2-norm, zero objective weight).
  Block dummy;
  for (int j = 0; j < n; ++j) dummy.indices.push_back(j);
  dummy.fn = ScalarPH{PHKind::PNorm, Exponent::finite(2.0), n};
  prob.psi.blocks.push_back(dummy);
  lay.dummy_block = 0;
  for (int i = 0; i < s; ++i) {
    Block blk;
    for (int j = 0; j < objective_terms[i].fn.dim; ++j)
      blk.indices.push_back(lay.y_offset[i] + j);
    blk.fn = objective_terms[i].fn;
    prob.psi.blocks.push_back(std::move(blk));
    lay.f_block.push_back(1 + i);
    prob.d[1 + i] = objective_terms[i].weight;
  }
  for (int j = 0; j < t; ++j) {
    Block blk;
    for (int r = 0; r < constraint_terms[j].fn.dim; ++r)
      blk.indices.push_back(lay.z_offset[j] + r);
    blk.fn = constraint_terms[j].fn;
    prob.psi.blocks.push_back(std::move(blk));
    lay.g_block.push_back(1 + s + j);
  }

  // Equality rows: A_i x - y_i = a_i and B_j x - z_j = b_j.
  int k = 0;
  for (const auto& term : objective_terms) k += term.fn.dim;
  for (const auto& term : constraint_terms) k += term.fn.dim;
  prob.k = k;
  prob.A = Mat(k, nn);
  prob.B = Mat(k, prob.m);
  prob.b.resize(k);
  int row = 0;
  for (int i = 0; i < s; ++i) {
    const GaugeTerm& term = objective_terms[i];
    for (int r = 0; r < term.fn.dim; ++r, ++row) {
      for (int j = 0; j < n; ++j) prob.A(row, j) = term.a(r, j);
      prob.A(row, lay.y_offset[i] + r) = -1.0;
      prob.b[row] = term.shift[r];
    }
  }
  for (int j = 0; j < t; ++j) {
    const GaugeTerm& term = constraint_terms[j];
    for (int r = 0; r < term.fn.dim; ++r, ++row) {
      for (int jj = 0; jj < n; ++jj) prob.A(row, jj) = term.a(r, jj);
      prob.A(row, lay.z_offset[j] + r) = -1.0;
      prob.b[row] = term.shift[r];
    }
  }

  // Inequality rows, one per block, matching the stacked display: vacuous
  // 0 >= 0 rows for the dummy and f blocks, -g_j(z_j) >= -beta_j for the rest.
  prob.l = prob.m;
  prob.H = Mat(prob.l, nn);
  prob.K = Mat(prob.l, prob.m);
  prob.p.assign(prob.l, 0.0);
  for (int j = 0; j < t; ++j) {
    prob.K(1 + s + j, 1 + s + j) = -1.0;
    prob.p[1 + s + j] = -constraint_terms[j].weight;
  }

  res.dual = simplify_dual(build_dual(prob));
  return res;
}

// ---------------------------------------------------------------------------
// Examples 3 and 4: Lasso-type problems via the gauge stack
// ---------------------------------------------------------------------------

GaugeResult group_lasso_to_pho(const Mat& a, const Vec& b, double lambda1,
                               double lambda2,
                               const std::vector<std::vector<int>>& groups,
                               int m_prime, const Exponent& p1, const Exponent& p2) {
  const int n = a.cols();
  const int m = static_cast<int>(groups.size());
  if (m_prime <= 0 || m_prime >= m)
    throw std::invalid_argument("need 0 < m' < number of groups");
  if (lambda1 < 0.0 || lambda2 < 0.0)
    throw std::invalid_argument("regularization weights must be >= 0");
  std::vector<bool> seen(n, false);
  for (const auto& g : groups)
    for (int j : g) {
      if (j < 0 || j >= n || seen[j])
        throw std::invalid_argument("groups must partition the variables");
      seen[j] = true;
    }
  for (bool sjj : seen)
    if (!sjj) throw std::invalid_argument("groups must partition the variables");

  std::vector<GaugeTerm> obj;
  for (int i = 0; i < m; ++i) {
    GaugeTerm term;
    term.weight = i < m_prime ? lambda1 : lambda2;
    term.a = selector_rows(n, groups[i]);
    term.shift.assign(groups[i].size(), 0.0);
    term.fn = ScalarPH{PHKind::PNorm, i < m_prime ? p1 : p2,
                       static_cast<int>(groups[i].size())};
    obj.push_back(std::move(term));
  }
  GaugeTerm loss;
  loss.weight = 1.0;
  loss.a = a;
  loss.shift = b;
  loss.fn = ScalarPH{PHKind::PNorm, Exponent::finite(2.0), a.rows()};
  obj.push_back(std::move(loss));
  return gauge_to_pho(n, obj, {});
}

GaugeResult constrained_lasso_to_pho(const Mat& a, const Vec& b, double beta,
                                     double lambda1, double lambda2,
                                     const Exponent& p1, const Exponent& p2) {
  if (beta < 0.0) throw std::invalid_argument("residual bound must be >= 0");
  if (lambda1 < 0.0 || lambda2 < 0.0)
    throw std::invalid_argument("regularization weights must be >= 0");
  const int n = a.cols();
  std::vector<GaugeTerm> obj(2);
  obj[0].weight = lambda1;
  obj[0].a = Mat::identity(n);
  obj[0].shift.assign(n, 0.0);
  obj[0].fn = ScalarPH{PHKind::PNorm, p1, n};
  obj[1].weight = lambda2;
  obj[1].a = Mat::identity(n);
  obj[1].shift.assign(n, 0.0);
  obj[1].fn = ScalarPH{PHKind::PNorm, p2, n};
  std::vector<GaugeTerm> con(1);
  con[0].weight = beta;
  con[0].a = a;
  con[0].shift = b;
  con[0].fn = ScalarPH{PHKind::PNorm, Exponent::finite(2.0), a.rows()};
  return gauge_to_pho(n, obj, con);
}

// ---------------------------------------------------------------------------
// Example 5: sum of norms with safeguard rows
// ---------------------------------------------------------------------------

GaugeResult sum_norms_to_pho(int n, std::vector<SumNormTerm> terms, const Mat& b_mat,
                             const Vec& b) {
  const int s = static_cast<int>(terms.size());
  if (s == 0) throw std::invalid_argument("need at least one norm term");
  const int kk = b_mat.rows();
  if (kk != static_cast<int>(b.size()) || (kk > 0 && b_mat.cols() != n))
    throw std::invalid_argument("inconsistent linear constraint dimensions");
  for (auto& term : terms) {
    if (term.a.cols() != n || term.a.rows() != static_cast<int>(term.shift.size()) ||
        term.a.rows() != term.fn.dim)
      throw std::invalid_argument("norm term dimensions disagree");
    if (term.safeguard_c <= 0.0) term.safeguard_c = 1.0;
    if (term.safeguard_d <= 0.0)
      term.safeguard_d = 1e3 * (1.0 + norm2(term.shift));
  }

  GaugeResult res;
  StackLayout& lay = res.layout;
  lay.n = n;
  int nn = n;
  for (const auto& term : terms) {
    lay.y_offset.push_back(nn);
    nn += term.fn.dim;
  }

  PHOProblem& prob = res.problem;
  prob.n = nn;
  prob.m = 1 + s;
  prob.c.assign(nn, 0.0);
  prob.d.assign(prob.m, 0.0);
  Block dummy;
  for (int j = 0; j < n; ++j) dummy.indices.push_back(j);
  dummy.fn = ScalarPH{PHKind::PNorm, Exponent::finite(2.0), n};
  prob.psi.blocks.push_back(dummy);
  lay.dummy_block = 0;
  for (int i = 0; i < s; ++i) {
    Block blk;
    for (int j = 0; j < terms[i].fn.dim; ++j)
      blk.indices.push_back(lay.y_offset[i] + j);
    blk.fn = terms[i].fn;
    prob.psi.blocks.push_back(std::move(blk));
    lay.f_block.push_back(1 + i);
    prob.d[1 + i] = terms[i].lambda;
  }

  int k = 0;
  for (const auto& term : terms) k += term.fn.dim;
  prob.k = k;
  prob.A = Mat(k, nn);
  prob.B = Mat(k, prob.m);
  prob.b.resize(k);
  int row = 0;
  for (int i = 0; i < s; ++i) {
    for (int r = 0; r < terms[i].fn.dim; ++r, ++row) {
      for (int j = 0; j < n; ++j) prob.A(row, j) = terms[i].a(r, j);
      prob.A(row, lay.y_offset[i] + r) = -1.0;
      prob.b[row] = terms[i].shift[r];
    }
  }

  // Bx <= b rows, then the safeguard rows -c_i f_i(y_i) >= -d_i.
  prob.l = kk + s;
  prob.H = Mat(prob.l, nn);
  prob.K = Mat(prob.l, prob.m);
  prob.p.resize(prob.l);
  for (int i = 0; i < kk; ++i) {
    for (int j = 0; j < n; ++j) prob.H(i, j) = -b_mat(i, j);
    prob.p[i] = -b[i];
  }
  for (int i = 0; i < s; ++i) {
    prob.K(kk + i, 1 + i) = -terms[i].safeguard_c;
    prob.p[kk + i] = -terms[i].safeguard_d;
  }

  res.dual = simplify_dual(build_dual(prob));
  return res;
}

// ---------------------------------------------------------------------------
// 0-1 integer reduction
// ---------------------------------------------------------------------------

Vec BinaryReduction::recover(const Vec& x_prime) const {
  Vec x(x_prime.size());
  for (size_t j = 0; j < x.size(); ++j) x[j] = (x_prime[j] + 1.0) / 2.0;
  return x;
}

BinaryReduction binary_to_avo(const BinaryLP& lp) {
  const int n = lp.num_vars();
  const int rows = static_cast<int>(lp.h.size());
  if (lp.g.rows() != rows || (rows > 0 && lp.g.cols() != n) ||
      static_cast<int>(lp.senses.size()) != rows)
    throw std::invalid_argument("inconsistent binary LP dimensions");

  // Substitute x = (x' + 1)/2: every linear row G x {sense} h becomes
  // G x' {sense} 2h - G 1, and x in {0,1} becomes |x'| = 1.
  BinaryReduction red;
  AVOProblem& avo = red.avo;
  avo.n = n;
  avo.c = scale(lp.objective, 0.5);
  avo.d.assign(n, 0.0);
  for (double wj : lp.objective) red.objective_offset += 0.5 * wj;

  std::vector<Vec> eq_a, ge_h;
  std::vector<Vec> eq_b_rows, ge_k;
  Vec eq_rhs, ge_rhs;
  for (int j = 0; j < n; ++j) {
    Vec a_row(n, 0.0), b_row(n, 0.0);
    b_row[j] = 1.0;
    eq_a.push_back(a_row);
    eq_b_rows.push_back(b_row);
    eq_rhs.push_back(1.0);  // |x'_j| = 1
  }
  for (int i = 0; i < rows; ++i) {
    Vec g_row(n), zero(n, 0.0);
    double shifted = 2.0 * lp.h[i];
    for (int j = 0; j < n; ++j) {
      g_row[j] = lp.g(i, j);
      shifted -= lp.g(i, j);
    }
    switch (lp.senses[i]) {
      case RowSense::EQ:
        eq_a.push_back(g_row);
        eq_b_rows.push_back(zero);
        eq_rhs.push_back(shifted);
        break;
      case RowSense::GE:
        ge_h.push_back(g_row);
        ge_k.push_back(zero);
        ge_rhs.push_back(shifted);
        break;
      case RowSense::LE:
        ge_h.push_back(scale(g_row, -1.0));
        ge_k.push_back(zero);
        ge_rhs.push_back(-shifted);
        break;
    }
  }
  avo.k = static_cast<int>(eq_rhs.size());
  avo.l = static_cast<int>(ge_rhs.size());
  avo.A = Mat(avo.k, n);
  avo.B = Mat(avo.k, n);
  avo.b = eq_rhs;
  for (int i = 0; i < avo.k; ++i)
    for (int j = 0; j < n; ++j) {
      avo.A(i, j) = eq_a[i][j];
      avo.B(i, j) = eq_b_rows[i][j];
    }
  avo.H = Mat(avo.l, n);
  avo.K = Mat(avo.l, n);
  avo.p = ge_rhs;
  for (int i = 0; i < avo.l; ++i)
    for (int j = 0; j < n; ++j) {
      avo.H(i, j) = ge_h[i][j];
      avo.K(i, j) = ge_k[i][j];
    }
  return red;
}

// ---------------------------------------------------------------------------
// Dual simplification
// ---------------------------------------------------------------------------

DualProblem simplify_dual(const DualProblem& dual) {
  DualProblem out = dual;
  const PHOProblem& prob = out.base;
  for (int i = 0; i < prob.m; ++i) {
    bool constant_rhs = true;
    for (int r = 0; r < prob.k && constant_rhs; ++r)
      if (prob.B(r, i) != 0.0) constant_rhs = false;
    for (int r = 0; r < prob.l && constant_rhs; ++r)
      if (prob.K(r, i) != 0.0) constant_rhs = false;
    if (!constant_rhs) continue;
    if (prob.d[i] < 0.0) {
      // psi* >= 0 can never fit under a negative constant rhs.
      out.infeasible = true;
    } else if (prob.d[i] == 0.0) {
      if (std::find(out.equality_rows.begin(), out.equality_rows.end(), i) ==
          out.equality_rows.end())
        out.equality_rows.push_back(i);
    }
  }
  std::sort(out.equality_rows.begin(), out.equality_rows.end());
  return out;
}

}  // namespace pho
