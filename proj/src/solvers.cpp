#include "pho/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "pho/ph_calculus.hpp"

namespace pho {

// ---------------------------------------------------------------------------
// Simplex
// ---------------------------------------------------------------------------

namespace {

struct Tableau {
  int m = 0;            // active rows
  int ncols = 0;        // all columns, rhs excluded
  std::vector<Vec> t;   // m x (ncols + 1), last column is rhs
  std::vector<int> basis;
  std::vector<bool> active_row;

  double& at(int i, int j) { return t[i][j]; }
  double rhs(int i) const { return t[i][ncols]; }

  void pivot(int pr, int pc) {
    double pv = t[pr][pc];
    for (int j = 0; j <= ncols; ++j) t[pr][j] /= pv;
    for (int i = 0; i < static_cast<int>(t.size()); ++i) {
      if (i == pr || !active_row[i]) continue;
      double f = t[i][pc];
      if (f == 0.0) continue;
      for (int j = 0; j <= ncols; ++j) t[i][j] -= f * t[pr][j];
    }
    basis[pr] = pc;
  }
};

// Reduced costs c_j - c_B^T T[:,j] for every column.
Vec reduced_costs(const Tableau& tb, const Vec& cost) {
  Vec red = cost;
  for (size_t i = 0; i < tb.t.size(); ++i) {
    if (!tb.active_row[i]) continue;
    double cb = cost[tb.basis[i]];
    if (cb == 0.0) continue;
    for (int j = 0; j < tb.ncols; ++j) red[j] -= cb * tb.t[i][j];
  }
  return red;
}

// Bland: entering = lowest admissible column with negative reduced cost;
// leaving = lowest basic index among minimum-ratio rows.
// Returns Optimal, Unbounded, or Failed (iteration cap hit).
SolveStatus run_simplex_phase(Tableau& tb, const Vec& cost,
                              const std::vector<bool>& allowed, double tol,
                              int& iterations) {
  const int cap = 200000;
  for (;; ++iterations) {
    if (iterations > cap) return SolveStatus::Failed;
    Vec red = reduced_costs(tb, cost);
    int enter = -1;
    for (int j = 0; j < tb.ncols; ++j) {
      if (!allowed[j]) continue;
      if (red[j] < -tol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return SolveStatus::Optimal;

    int leave = -1;
    double best_ratio = 0.0;
    for (size_t i = 0; i < tb.t.size(); ++i) {
      if (!tb.active_row[i]) continue;
      double a = tb.t[i][enter];
      if (a <= tol) continue;
      double ratio = tb.rhs(static_cast<int>(i)) / a;
      if (leave < 0 || ratio < best_ratio - 1e-12 ||
          (std::fabs(ratio - best_ratio) <= 1e-12 &&
           tb.basis[i] < tb.basis[leave])) {
        leave = static_cast<int>(i);
        best_ratio = ratio;
      }
    }
    if (leave < 0) return SolveStatus::Unbounded;
    tb.pivot(leave, enter);
  }
}

}  // namespace

SolveResult simplex_lp(const LPProblem& lp, double tol) {
  const int n0 = lp.num_vars();
  const int m = lp.num_rows();
  if (static_cast<int>(lp.senses.size()) != m ||
      static_cast<int>(lp.nonneg.size()) != n0 ||
      lp.constraints.rows() != m || lp.constraints.cols() != n0)
    throw std::invalid_argument("inconsistent LP dimensions");

  SolveResult res;

  // Column layout: structural columns (free variables split into +/- parts),
  // then one slack/surplus per inequality row, then one artificial per GE/EQ
  // row. Rows are normalized to rhs >= 0 up front.
  struct Col {
    int var;
    int sign;
  };
  std::vector<Col> cols;
  for (int j = 0; j < n0; ++j) {
    cols.push_back({j, +1});
    if (!lp.nonneg[j]) cols.push_back({j, -1});
  }
  const int ns = static_cast<int>(cols.size());

  std::vector<double> rowsign(m, 1.0);
  std::vector<RowSense> sense = lp.senses;
  for (int i = 0; i < m; ++i) {
    if (lp.rhs[i] < 0.0) {
      rowsign[i] = -1.0;
      if (sense[i] == RowSense::LE)
        sense[i] = RowSense::GE;
      else if (sense[i] == RowSense::GE)
        sense[i] = RowSense::LE;
    }
  }

  int nslack = 0, nart = 0;
  std::vector<int> slack_col(m, -1), art_col(m, -1);
  for (int i = 0; i < m; ++i)
    if (sense[i] != RowSense::EQ) slack_col[i] = ns + nslack++;
  for (int i = 0; i < m; ++i)
    if (sense[i] != RowSense::LE) art_col[i] = ns + nslack + nart++;

  Tableau tb;
  tb.m = m;
  tb.ncols = ns + nslack + nart;
  tb.t.assign(m, Vec(tb.ncols + 1, 0.0));
  tb.basis.assign(m, -1);
  tb.active_row.assign(m, true);

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < ns; ++j)
      tb.t[i][j] = rowsign[i] * cols[j].sign * lp.constraints(i, cols[j].var);
    if (slack_col[i] >= 0)
      tb.t[i][slack_col[i]] = (sense[i] == RowSense::LE) ? 1.0 : -1.0;
    if (art_col[i] >= 0) tb.t[i][art_col[i]] = 1.0;
    tb.t[i][tb.ncols] = rowsign[i] * lp.rhs[i];
    tb.basis[i] = (sense[i] == RowSense::LE) ? slack_col[i] : art_col[i];
  }

  std::vector<bool> is_art(tb.ncols, false);
  for (int i = 0; i < m; ++i)
    if (art_col[i] >= 0) is_art[art_col[i]] = true;

  // Phase 1: minimize the sum of artificials.
  if (nart > 0) {
    Vec cost1(tb.ncols, 0.0);
    for (int j = 0; j < tb.ncols; ++j)
      if (is_art[j]) cost1[j] = 1.0;
    std::vector<bool> allowed(tb.ncols, true);
    SolveStatus st = run_simplex_phase(tb, cost1, allowed, tol, res.iterations);
    if (st == SolveStatus::Failed) {
      res.status = SolveStatus::Failed;
      return res;
    }
    double art_sum = 0.0;
    for (int i = 0; i < m; ++i)
      if (tb.active_row[i] && is_art[tb.basis[i]]) art_sum += tb.rhs(i);
    if (art_sum > 1e3 * tol * (1.0 + norm_inf(lp.rhs))) {
      res.status = SolveStatus::Infeasible;
      return res;
    }
    // Drive remaining artificials out; a row with no eligible pivot is
    // redundant (0 = 0) and is dropped.
    for (int i = 0; i < m; ++i) {
      if (!tb.active_row[i] || !is_art[tb.basis[i]]) continue;
      int pc = -1;
      for (int j = 0; j < tb.ncols; ++j) {
        if (is_art[j]) continue;
        if (std::fabs(tb.t[i][j]) > 1e3 * tol) {
          pc = j;
          break;
        }
      }
      if (pc >= 0)
        tb.pivot(i, pc);
      else
        tb.active_row[i] = false;
    }
  }

  // Phase 2.
  Vec cost2(tb.ncols, 0.0);
  for (int j = 0; j < ns; ++j) cost2[j] = cols[j].sign * lp.objective[cols[j].var];
  std::vector<bool> allowed(tb.ncols, true);
  for (int j = 0; j < tb.ncols; ++j)
    if (is_art[j]) allowed[j] = false;
  SolveStatus st = run_simplex_phase(tb, cost2, allowed, tol, res.iterations);
  if (st != SolveStatus::Optimal) {
    res.status = st;
    return res;
  }

  Vec x(n0, 0.0);
  for (int i = 0; i < m; ++i) {
    if (!tb.active_row[i]) continue;
    int bc = tb.basis[i];
    if (bc < ns) x[cols[bc].var] += cols[bc].sign * tb.rhs(i);
  }
  res.point = x;
  res.value = dot(lp.objective, x);
  res.status = SolveStatus::Optimal;
  res.basis = tb.basis;

  // Row duals from the reduced costs of the logical columns:
  //   LE slack (+e_i):   y_i = -rc;  GE surplus (-e_i): y_i = +rc;
  //   EQ artificial (+e_i): y_i = -rc.
  // rowsign undoes the rhs normalization so duals match the caller's rows.
  Vec red = reduced_costs(tb, cost2);
  Vec y(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double yi;
    if (sense[i] == RowSense::LE)
      yi = -red[slack_col[i]];
    else if (sense[i] == RowSense::GE)
      yi = red[slack_col[i]];
    else
      yi = tb.active_row[i] ? -red[art_col[i]] : 0.0;
    y[i] = rowsign[i] * yi;
  }
  res.duals = y;
  return res;
}

// ---------------------------------------------------------------------------
// Projected subgradient on the dual
// ---------------------------------------------------------------------------

namespace {

// Subgradient of the q-norm at z; lowest-index tie-break for q = inf,
// zero at z = 0.
Vec qnorm_subgradient(const Exponent& q, const Vec& z) {
  Vec g(z.size(), 0.0);
  double zmax = norm_inf(z);
  if (zmax == 0.0) return g;
  if (q.is_inf()) {
    for (size_t i = 0; i < z.size(); ++i)
      if (std::fabs(z[i]) == zmax) {
        g[i] = z[i] > 0 ? 1.0 : -1.0;
        break;
      }
    return g;
  }
  double qv = q.value();
  if (qv == 1.0) {
    for (size_t i = 0; i < z.size(); ++i)
      g[i] = z[i] > 0 ? 1.0 : (z[i] < 0 ? -1.0 : 0.0);
    return g;
  }
  // d/dz_i ||z||_q = sign(z_i) (|z_i| / ||z||_q)^(q-1)
  ScalarPH fn{PHKind::PNorm, q, static_cast<int>(z.size())};
  double nrm = eval_ph(fn, z);
  for (size_t i = 0; i < z.size(); ++i) {
    double s = z[i] > 0 ? 1.0 : (z[i] < 0 ? -1.0 : 0.0);
    g[i] = s * std::pow(std::fabs(z[i]) / nrm, qv - 1.0);
  }
  return g;
}

// Solve (S + ridge I) x = r in place by Gaussian elimination; S symmetric
// positive semidefinite, desk-scale.
Vec solve_spd(Mat s, Vec r) {
  int n = s.rows();
  double ridge = 1e-12;
  double diag_max = 0.0;
  for (int i = 0; i < n; ++i) diag_max = std::max(diag_max, s(i, i));
  ridge *= (1.0 + diag_max);
  for (int i = 0; i < n; ++i) s(i, i) += ridge;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int i = col + 1; i < n; ++i)
      if (std::fabs(s(i, col)) > std::fabs(s(piv, col))) piv = i;
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(s(col, j), s(piv, j));
      std::swap(r[col], r[piv]);
    }
    double pv = s(col, col);
    for (int i = col + 1; i < n; ++i) {
      double f = s(i, col) / pv;
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j) s(i, j) -= f * s(col, j);
      r[i] -= f * r[col];
    }
  }
  Vec x(n, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double acc = r[i];
    for (int j = i + 1; j < n; ++j) acc -= s(i, j) * x[j];
    x[i] = acc / s(i, i);
  }
  return x;
}

// Affine constraint M w = r assembled from the equality rows of a simplified
// dual: one scalar row per variable index in each equality block.
struct AffineProjector {
  Mat m;  // rows x (k + l)
  Vec r;
  Mat gram;  // M M^T

  bool empty() const { return m.rows() == 0; }

  void project(Vec& w) const {
    if (empty()) return;
    Vec resid = matvec(m, w);
    for (int i = 0; i < m.rows(); ++i) resid[i] -= r[i];
    Vec z = solve_spd(gram, resid);
    Vec corr = tmatvec(m, z);
    for (size_t i = 0; i < w.size(); ++i) w[i] -= corr[i];
  }
};

AffineProjector make_projector(const DualProblem& dual) {
  const PHOProblem& prob = dual.base;
  std::vector<int> var_rows;
  for (int bi : dual.equality_rows)
    for (int j : prob.psi.blocks[bi].indices) var_rows.push_back(j);
  AffineProjector proj;
  proj.m = Mat(static_cast<int>(var_rows.size()), prob.k + prob.l);
  proj.r = Vec(var_rows.size());
  for (size_t rr = 0; rr < var_rows.size(); ++rr) {
    int j = var_rows[rr];
    for (int i = 0; i < prob.k; ++i) proj.m(static_cast<int>(rr), i) = prob.A(i, j);
    for (int i = 0; i < prob.l; ++i)
      proj.m(static_cast<int>(rr), prob.k + i) = prob.H(i, j);
    proj.r[rr] = prob.c[j];
  }
  if (!proj.empty()) {
    proj.gram = Mat(proj.m.rows(), proj.m.rows());
    for (int i = 0; i < proj.m.rows(); ++i)
      for (int j = 0; j < proj.m.rows(); ++j) {
        double s = 0.0;
        for (int t = 0; t < proj.m.cols(); ++t) s += proj.m(i, t) * proj.m(j, t);
        proj.gram(i, j) = s;
      }
  }
  return proj;
}

}  // namespace

SolveResult solve_dual_subgradient(const DualProblem& dual, const Vec& start_u,
                                   const Vec& start_v,
                                   const SubgradientOptions& opts) {
  const PHOProblem& prob = dual.base;
  const int k = prob.k, l = prob.l, nv = k + l;
  if (static_cast<int>(start_u.size()) != k ||
      static_cast<int>(start_v.size()) != l)
    throw std::invalid_argument("start point dimension mismatch");

  SolveResult res;
  res.violation_history = Vec();
  if (dual.infeasible) {
    res.status = SolveStatus::Infeasible;
    return res;
  }

  std::vector<bool> is_equality(prob.m, false);
  for (int bi : dual.equality_rows) is_equality[bi] = true;
  AffineProjector proj = make_projector(dual);

  Vec bp(nv);
  for (int i = 0; i < k; ++i) bp[i] = prob.b[i];
  for (int i = 0; i < l; ++i) bp[k + i] = prob.p[i];
  double sigma = opts.step_scale > 0.0 ? opts.step_scale : 1.0 / (1.0 + norm2(bp));

  Vec w(nv);
  for (int i = 0; i < k; ++i) w[i] = start_u[i];
  for (int i = 0; i < l; ++i) w[k + i] = start_v[i];
  proj.project(w);
  for (int i = 0; i < l; ++i) w[k + i] = std::max(w[k + i], 0.0);

  bool have_best = false;
  Vec best = w;
  double best_val = 0.0;

  auto constraint_state = [&](const Vec& ww, int& worst_out) {
    Vec u(ww.begin(), ww.begin() + k), v(ww.begin() + k, ww.end());
    Vec alpha = sub(add(tmatvec(prob.A, u), tmatvec(prob.H, v)), prob.c);
    Vec lin = add(tmatvec(prob.B, u), tmatvec(prob.K, v));
    int worst = -1;
    double worst_g = 0.0;
    for (int i = 0; i < prob.m; ++i) {
      if (is_equality[i]) continue;  // enforced by projection
      const Block& blk = dual.psi_star.blocks[i];
      double g = eval_ph(blk.fn, gather(alpha, blk.indices)) + lin[i] - prob.d[i];
      if (worst < 0 || g > worst_g) {
        worst = i;
        worst_g = g;
      }
    }
    worst_out = worst;
    return worst < 0 ? 0.0 : worst_g;
  };
  auto record_feasible = [&](const Vec& ww) {
    double val = dot(bp, ww);
    if (!have_best || val > best_val) {
      have_best = true;
      best_val = val;
      best = ww;
    }
  };
  // Both endpoints satisfy the projected (affine + v >= 0) constraints, so
  // every convex combination does too; bisect for the feasibility boundary
  // and record its feasible side.
  auto refine_crossing = [&](const Vec& feas, const Vec& infeas) {
    Vec lo = feas, hi = infeas;
    for (int it = 0; it < 50; ++it) {
      Vec mid(nv);
      for (int i = 0; i < nv; ++i) mid[i] = 0.5 * (lo[i] + hi[i]);
      int wi;
      if (constraint_state(mid, wi) <= opts.feas_tol)
        lo = mid;
      else
        hi = mid;
    }
    record_feasible(lo);
  };

  Vec prev_w;
  bool prev_feasible = false, have_prev = false;

  for (int t = 1; t <= opts.max_iter; ++t) {
    Vec u(w.begin(), w.begin() + k), v(w.begin() + k, w.end());
    Vec alpha = sub(add(tmatvec(prob.A, u), tmatvec(prob.H, v)), prob.c);
    Vec lin = add(tmatvec(prob.B, u), tmatvec(prob.K, v));

    int worst = -1;
    double worst_g = 0.0;
    for (int i = 0; i < prob.m; ++i) {
      if (is_equality[i]) continue;  // enforced by projection
      const Block& blk = dual.psi_star.blocks[i];
      double g = eval_ph(blk.fn, gather(alpha, blk.indices)) + lin[i] - prob.d[i];
      if (worst < 0 || g > worst_g) {
        worst = i;
        worst_g = g;
      }
    }
    if (worst < 0) worst_g = 0.0;
    res.violation_history->push_back(std::max(worst_g, 0.0));

    bool feasible_now = worst_g <= opts.feas_tol;
    if (have_prev && feasible_now != prev_feasible && t % 50 == 0) {
      if (feasible_now)
        refine_crossing(w, prev_w);
      else
        refine_crossing(prev_w, w);
    }
    prev_w = w;
    prev_feasible = feasible_now;
    have_prev = true;

    double step = sigma / std::sqrt(static_cast<double>(t));
    if (worst >= 0 && worst_g > opts.feas_tol) {
      // Step against the subgradient of the most violated row.
      const Block& blk = dual.psi_star.blocks[worst];
      Vec gz = qnorm_subgradient(blk.fn.exponent, gather(alpha, blk.indices));
      Vec dir(nv, 0.0);
      for (size_t jj = 0; jj < blk.indices.size(); ++jj) {
        int j = blk.indices[jj];
        for (int i = 0; i < k; ++i) dir[i] += prob.A(i, j) * gz[jj];
        for (int i = 0; i < l; ++i) dir[k + i] += prob.H(i, j) * gz[jj];
      }
      for (int i = 0; i < k; ++i) dir[i] += prob.B(i, worst);
      for (int i = 0; i < l; ++i) dir[k + i] += prob.K(i, worst);
      double nrm = norm2(dir);
      if (nrm > 0.0)
        for (int i = 0; i < nv; ++i) w[i] -= step * dir[i] / nrm;
    } else {
      double val = dot(bp, w);
      if (!have_best || val > best_val) {
        have_best = true;
        best_val = val;
        best = w;
      }
      for (int i = 0; i < nv; ++i) w[i] += step * bp[i];
    }
    proj.project(w);
    for (int i = 0; i < l; ++i) w[k + i] = std::max(w[k + i], 0.0);
    res.iterations = t;
  }

  if (!have_best) {
    res.status = SolveStatus::IterLimit;
    return res;
  }

  // Polish: push the best iterate along the objective direction (projected
  // back onto the affine set and v >= 0) until it leaves the feasible set,
  // then bisect onto the boundary.
  {
    const Vec anchor = best;
    auto candidate = [&](double s) {
      Vec ww(nv);
      for (int i = 0; i < nv; ++i) ww[i] = anchor[i] + s * bp[i];
      proj.project(ww);
      for (int i = 0; i < l; ++i) ww[k + i] = std::max(ww[k + i], 0.0);
      return ww;
    };
    int wi;
    double s_lo = 0.0, s_hi = sigma;
    for (int it = 0; it < 80; ++it) {
      Vec ww = candidate(s_hi);
      if (constraint_state(ww, wi) <= opts.feas_tol) {
        record_feasible(ww);
        s_lo = s_hi;
        s_hi *= 2.0;
      } else {
        break;
      }
    }
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (s_lo + s_hi);
      Vec ww = candidate(mid);
      if (constraint_state(ww, wi) <= opts.feas_tol) {
        record_feasible(ww);
        s_lo = mid;
      } else {
        s_hi = mid;
      }
    }
  }

  res.status = SolveStatus::Optimal;
  res.point = best;
  res.value = best_val;
  return res;
}

// ---------------------------------------------------------------------------
// Brute force
// ---------------------------------------------------------------------------

namespace {

bool is_avo_shape(const PHOProblem& prob) {
  if (prob.m != prob.n) return false;
  std::vector<bool> hit(prob.n, false);
  for (const auto& blk : prob.psi.blocks) {
    if (blk.indices.size() != 1) return false;
    hit[blk.indices[0]] = true;
  }
  for (bool h : hit)
    if (!h) return false;
  return true;
}

}  // namespace

SolveResult brute_force_avo_signs(const PHOProblem& prob, double tol) {
  if (!is_avo_shape(prob))
    throw std::invalid_argument("sign-pattern search needs all-singleton blocks");
  if (prob.n > 12)
    throw std::invalid_argument("sign-pattern search is desk-scale only (n <= 12)");

  // block_of[j]: the block whose index set is {j}
  std::vector<int> block_of(prob.n, -1);
  for (int i = 0; i < prob.m; ++i) block_of[prob.psi.blocks[i].indices[0]] = i;

  SolveResult best;
  best.status = SolveStatus::Infeasible;
  int patterns = 1 << prob.n;
  for (int mask = 0; mask < patterns; ++mask) {
    // x_j = s_j t_j with t_j >= 0 turns |x_j| into t_j: one LP per orthant.
    LPProblem lp;
    lp.objective.assign(prob.n, 0.0);
    lp.nonneg.assign(prob.n, true);
    for (int j = 0; j < prob.n; ++j) {
      double s = (mask >> j) & 1 ? -1.0 : 1.0;
      lp.objective[j] = s * prob.c[j] + prob.d[block_of[j]];
    }
    lp.constraints = Mat(prob.k + prob.l, prob.n);
    for (int i = 0; i < prob.k; ++i) {
      for (int j = 0; j < prob.n; ++j) {
        double s = (mask >> j) & 1 ? -1.0 : 1.0;
        lp.constraints(i, j) = s * prob.A(i, j) + prob.B(i, block_of[j]);
      }
      lp.rhs.push_back(prob.b[i]);
      lp.senses.push_back(RowSense::EQ);
    }
    for (int i = 0; i < prob.l; ++i) {
      for (int j = 0; j < prob.n; ++j) {
        double s = (mask >> j) & 1 ? -1.0 : 1.0;
        lp.constraints(prob.k + i, j) = s * prob.H(i, j) + prob.K(i, block_of[j]);
      }
      lp.rhs.push_back(prob.p[i]);
      lp.senses.push_back(RowSense::GE);
    }
    SolveResult r = simplex_lp(lp, tol);
    ++best.iterations;
    if (r.status != SolveStatus::Optimal) {
      if (r.status == SolveStatus::Unbounded) {
        best.status = SolveStatus::Unbounded;
        return best;
      }
      continue;
    }
    if (best.status != SolveStatus::Optimal || r.value < best.value) {
      best.status = SolveStatus::Optimal;
      best.value = r.value;
      best.point.assign(prob.n, 0.0);
      for (int j = 0; j < prob.n; ++j) {
        double s = (mask >> j) & 1 ? -1.0 : 1.0;
        best.point[j] = s * r.point[j];
      }
    }
  }
  return best;
}

SolveResult brute_force_primal(const PHOProblem& prob, const Box& box,
                               double resolution, double feas_tol) {
  if (is_avo_shape(prob) && prob.n <= 12 && prob.n > 4)
    return brute_force_avo_signs(prob);
  if (prob.n > 4)
    throw std::invalid_argument("grid search is desk-scale only (n <= 4)");
  if (resolution <= 0.0) throw std::invalid_argument("resolution must be positive");

  Vec lo = box.lo, hi = box.hi;
  if (static_cast<int>(lo.size()) == 1 && prob.n > 1) lo.assign(prob.n, box.lo[0]);
  if (static_cast<int>(hi.size()) == 1 && prob.n > 1) hi.assign(prob.n, box.hi[0]);
  if (static_cast<int>(lo.size()) != prob.n || static_cast<int>(hi.size()) != prob.n)
    throw std::invalid_argument("box bounds dimension mismatch");

  std::vector<long> steps(prob.n);
  double total = 1.0;
  for (int j = 0; j < prob.n; ++j) {
    steps[j] = static_cast<long>(std::floor((hi[j] - lo[j]) / resolution + 1e-9)) + 1;
    total *= static_cast<double>(steps[j]);
  }
  if (total > 5e7) throw std::invalid_argument("grid too fine for desk scale");

  SolveResult best;
  best.status = SolveStatus::Infeasible;
  Vec x(prob.n);
  std::vector<long> idx(prob.n, 0);
  for (;;) {
    for (int j = 0; j < prob.n; ++j) x[j] = lo[j] + idx[j] * resolution;
    PrimalResiduals r = primal_residuals(prob, x, feas_tol);
    ++best.iterations;
    if (r.feasible &&
        (best.status != SolveStatus::Optimal || r.objective < best.value)) {
      best.status = SolveStatus::Optimal;
      best.value = r.objective;
      best.point = x;
    }
    int j = 0;
    for (; j < prob.n; ++j) {
      if (++idx[j] < steps[j]) break;
      idx[j] = 0;
    }
    if (j == prob.n) break;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Planted instances
// ---------------------------------------------------------------------------

PlantedInstance plant_feasible_instance(const std::vector<BlockSpec>& blocks, int k,
                                        int l, uint64_t seed, double scale,
                                        double slack) {
  if (blocks.empty()) throw std::invalid_argument("need at least one block");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto draw = [&]() { return scale * gauss(rng); };

  PlantedInstance inst;
  PHOProblem& prob = inst.problem;
  int n = 0;
  for (const auto& bs : blocks) {
    Block blk;
    blk.fn.exponent = bs.p;
    blk.fn.dim = bs.dim;
    for (int j = 0; j < bs.dim; ++j) blk.indices.push_back(n + j);
    n += bs.dim;
    prob.psi.blocks.push_back(std::move(blk));
  }
  prob.n = n;
  prob.m = prob.psi.num_blocks();
  prob.k = k;
  prob.l = l;

  prob.c.resize(n);
  for (double& x : prob.c) x = draw();
  prob.d.resize(prob.m);
  for (double& x : prob.d) x = std::fabs(draw());  // d >= 0
  prob.A = Mat(k, n);
  prob.B = Mat(k, prob.m);
  prob.H = Mat(l, n);
  prob.K = Mat(l, prob.m);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < n; ++j) prob.A(i, j) = draw();
    for (int j = 0; j < prob.m; ++j) prob.B(i, j) = draw();
  }
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < n; ++j) prob.H(i, j) = draw();
    for (int j = 0; j < prob.m; ++j) prob.K(i, j) = draw();
  }

  inst.x0.resize(n);
  for (double& x : inst.x0) x = draw();
  Vec psi0 = eval_vector_ph(prob.psi, inst.x0);
  prob.b = add(matvec(prob.A, inst.x0), matvec(prob.B, psi0));
  prob.p = add(matvec(prob.H, inst.x0), matvec(prob.K, psi0));
  for (int i = 0; i < l; ++i) {
    double s = slack >= 0.0 ? slack : std::fabs(draw());
    prob.p[i] -= s;
  }
  return inst;
}

}  // namespace pho
