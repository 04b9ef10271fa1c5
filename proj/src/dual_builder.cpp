#include "pho/dual_builder.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pho/ph_calculus.hpp"

namespace pho {

namespace {

std::string join_violations(const ValidationReport& rep) {
  std::ostringstream os;
  os << "invalid problem:";
  for (const auto& v : rep.violations) os << " [" << v << "]";
  return os.str();
}

void require_len(const Vec& v, int want, const char* what) {
  if (static_cast<int>(v.size()) != want)
    throw std::invalid_argument(std::string(what) + " has length " +
                                std::to_string(v.size()) + ", expected " +
                                std::to_string(want));
}

}  // namespace

BuildError::BuildError(const ValidationReport& rep)
    : std::runtime_error(join_violations(rep)), report(rep) {}

Vec DivergenceWitness::ray(double lambda) const {
  // Block i0's coordinates grow as lambda * xhat; the rest stay frozen at alpha.
  Vec x = alpha;
  scatter(x, block_indices, scale(xhat, lambda));
  return x;
}

DualProblem build_dual(const PHOProblem& prob) {
  ValidationReport rep = validate_problem(prob);
  if (!rep.ok()) throw BuildError(rep);
  DualProblem dual;
  dual.base = prob;
  dual.psi_star = prob.psi;
  for (auto& blk : dual.psi_star.blocks)
    blk.fn.exponent = dual_exponent(blk.fn.exponent);
  return dual;
}

double lagrangian(const PHOProblem& prob, const Vec& x, const Vec& u, const Vec& v) {
  require_len(x, prob.n, "x");
  require_len(u, prob.k, "u");
  require_len(v, prob.l, "v");
  Vec psi_x = eval_vector_ph(prob.psi, x);
  double val = dot(prob.c, x) + dot(prob.d, psi_x);
  // Partial sums per multiplier class so that at x = 0 the result reduces
  // bit-for-bit to dot(b, u) + dot(p, v), the dual objective.
  Vec ax = matvec(prob.A, x), bpsi = matvec(prob.B, psi_x);
  double eq_part = 0.0;
  for (int i = 0; i < prob.k; ++i) eq_part += u[i] * (prob.b[i] - ax[i] - bpsi[i]);
  Vec hx = matvec(prob.H, x), kpsi = matvec(prob.K, psi_x);
  double ineq_part = 0.0;
  for (int i = 0; i < prob.l; ++i)
    ineq_part += v[i] * (prob.p[i] - hx[i] - kpsi[i]);
  return val + eq_part + ineq_part;
}

double lagrangian_alpha_beta(const PHOProblem& prob, const Vec& x, const Vec& u,
                             const Vec& v) {
  require_len(x, prob.n, "x");
  require_len(u, prob.k, "u");
  require_len(v, prob.l, "v");
  Vec alpha = sub(add(tmatvec(prob.A, u), tmatvec(prob.H, v)), prob.c);
  Vec beta = sub(prob.d, add(tmatvec(prob.B, u), tmatvec(prob.K, v)));
  Vec psi_x = eval_vector_ph(prob.psi, x);
  return dot(prob.b, u) + dot(prob.p, v) - dot(alpha, x) + dot(beta, psi_x);
}

OmegaResult omega(const PHOProblem& prob, const Vec& u, const Vec& v) {
  require_len(u, prob.k, "u");
  require_len(v, prob.l, "v");
  for (double vi : v)
    if (vi < 0.0) throw std::invalid_argument("omega requires v >= 0");

  OmegaResult res;
  res.alpha = sub(add(tmatvec(prob.A, u), tmatvec(prob.H, v)), prob.c);
  res.beta = sub(prob.d, add(tmatvec(prob.B, u), tmatvec(prob.K, v)));

  for (int i = 0; i < prob.m; ++i) {
    const Block& blk = prob.psi.blocks[i];
    Vec ai = gather(res.alpha, blk.indices);
    double psi_star = eval_dual_ph(blk.fn, ai);
    double slack = 1e-9 * (1.0 + std::fabs(res.beta[i]));
    if (psi_star > res.beta[i] + slack) {
      // Strict violation: the Lagrangian is unbounded below along a ray
      // that grows block i while freezing the others at alpha.
      res.value = ExtendedValue::neg_inf();
      res.violating_block = i;
      DivergenceWitness w;
      w.block = i;
      w.block_indices = blk.indices;
      w.alpha = res.alpha;
      w.xhat = dual_argmax(blk.fn, ai);
      if (norm_inf(w.xhat) == 0.0) {
        // alpha vanishes on the block, so the violation is beta_i < 0 and
        // any unit-psi point drives the block term to -inf.
        w.xhat.assign(blk.fn.dim, 0.0);
        w.xhat[0] = 1.0;
        double nrm = eval_ph(blk.fn, w.xhat);
        w.xhat[0] /= nrm;
      }
      w.slope_bound = res.beta[i] - psi_star;
      double gamma = dot(prob.b, u) + dot(prob.p, v);
      for (int j = 0; j < prob.m; ++j) {
        if (j == i) continue;
        Vec aj = gather(res.alpha, prob.psi.blocks[j].indices);
        gamma -= dot(aj, aj);
        gamma += res.beta[j] * eval_ph(prob.psi.blocks[j].fn, aj);
      }
      w.gamma = gamma;
      res.witness = w;
      return res;
    }
  }
  res.value = ExtendedValue::finite(dot(prob.b, u) + dot(prob.p, v));
  return res;
}

PrimalResiduals primal_residuals(const PHOProblem& prob, const Vec& x, double tol) {
  require_len(x, prob.n, "x");
  PrimalResiduals r;
  Vec psi_x = eval_vector_ph(prob.psi, x);
  r.objective = dot(prob.c, x) + dot(prob.d, psi_x);
  Vec eq = add(matvec(prob.A, x), matvec(prob.B, psi_x));
  for (int i = 0; i < prob.k; ++i)
    r.eq_residual = std::max(r.eq_residual, std::fabs(eq[i] - prob.b[i]));
  Vec ineq = add(matvec(prob.H, x), matvec(prob.K, psi_x));
  for (int i = 0; i < prob.l; ++i)
    r.ineq_violation = std::max(r.ineq_violation, prob.p[i] - ineq[i]);
  r.ineq_violation = std::max(r.ineq_violation, 0.0);
  r.feasible = r.eq_residual <= tol && r.ineq_violation <= tol;
  return r;
}

DualResiduals dual_residuals(const DualProblem& dual, const Vec& u, const Vec& v,
                             double tol) {
  const PHOProblem& prob = dual.base;
  require_len(u, prob.k, "u");
  require_len(v, prob.l, "v");
  DualResiduals r;
  r.objective = dot(prob.b, u) + dot(prob.p, v);
  Vec alpha = sub(add(tmatvec(prob.A, u), tmatvec(prob.H, v)), prob.c);
  Vec lin = add(tmatvec(prob.B, u), tmatvec(prob.K, v));
  for (int i = 0; i < prob.m; ++i) {
    const Block& blk = prob.psi.blocks[i];
    double lhs = eval_dual_ph(blk.fn, gather(alpha, blk.indices)) + lin[i];
    r.constraint_violation = std::max(r.constraint_violation, lhs - prob.d[i]);
  }
  r.constraint_violation = std::max(r.constraint_violation, 0.0);
  for (double vi : v) r.v_violation = std::max(r.v_violation, -vi);
  r.v_violation = std::max(r.v_violation, 0.0);
  r.feasible = r.constraint_violation <= tol && r.v_violation <= tol;
  return r;
}

}  // namespace pho
