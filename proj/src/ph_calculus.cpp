#include "pho/ph_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace pho {

namespace {

void require_dim(const ScalarPH& fn, const Vec& x) {
  if (static_cast<int>(x.size()) != fn.dim)
    throw std::invalid_argument("vector length " + std::to_string(x.size()) +
                                " does not match function dim " +
                                std::to_string(fn.dim));
}

int sign_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace

double eval_ph(const ScalarPH& fn, const Vec& x) {
  require_dim(fn, x);
  double s = norm_inf(x);
  if (fn.exponent.is_inf() || s == 0.0) return s;
  double p = fn.exponent.value();
  // ||x||_p = s * ||x/s||_p; the rescaled entries lie in [0,1] so powering
  // with small p cannot overflow.
  double acc = 0.0;
  for (double xi : x) acc += std::pow(std::fabs(xi) / s, p);
  return s * std::pow(acc, 1.0 / p);
}

Vec eval_vector_ph(const VectorPH& psi, const Vec& x) {
  if (static_cast<int>(x.size()) != psi.num_vars())
    throw std::invalid_argument("vector length does not match psi variable count");
  Vec out(psi.num_blocks());
  for (int i = 0; i < psi.num_blocks(); ++i)
    out[i] = eval_ph(psi.blocks[i].fn, gather(x, psi.blocks[i].indices));
  return out;
}

Exponent dual_exponent(const Exponent& p) {
  if (p.is_inf()) return Exponent::finite(1.0);
  double pv = p.value();
  if (pv > 1.0) return Exponent::finite(pv / (pv - 1.0));
  return Exponent::inf();  // p in (0, 1]
}

double eval_dual_ph(const ScalarPH& fn, const Vec& y) {
  require_dim(fn, y);
  ScalarPH conj{fn.kind, dual_exponent(fn.exponent), fn.dim};
  return eval_ph(conj, y);
}

Vec dual_argmax(const ScalarPH& fn, const Vec& y) {
  require_dim(fn, y);
  Vec xhat(fn.dim, 0.0);
  double ymax = norm_inf(y);
  if (ymax == 0.0) return xhat;

  if (fn.exponent.is_inf()) {
    for (int i = 0; i < fn.dim; ++i) xhat[i] = sign_of(y[i]);
    return xhat;
  }
  double p = fn.exponent.value();
  if (p <= 1.0) {
    // Single signed coordinate at the lowest index attaining max |y_i|.
    int i0 = 0;
    for (int i = 0; i < fn.dim; ++i)
      if (std::fabs(y[i]) == ymax) {
        i0 = i;
        break;
      }
    xhat[i0] = sign_of(y[i0]);
    return xhat;
  }
  // Holder-equality direction |y|^(q-1), normalized onto the unit p-sphere.
  double q = p / (p - 1.0);
  for (int i = 0; i < fn.dim; ++i)
    xhat[i] = sign_of(y[i]) * std::pow(std::fabs(y[i]) / ymax, q - 1.0);
  double nrm = eval_ph(fn, xhat);
  for (double& v : xhat) v /= nrm;
  return xhat;
}

double oracle_dual_ph(const ScalarPH& fn, const Vec& y, int budget, uint64_t seed) {
  require_dim(fn, y);
  if (fn.dim > 6)
    throw std::invalid_argument("oracle_dual_ph is desk-scale only (dim <= 6)");
  if (norm_inf(y) == 0.0) return 0.0;

  double best = 0.0;  // x = 0 is always admissible
  Vec best_x(fn.dim, 0.0);
  // All signed coordinate vectors.
  for (int i = 0; i < fn.dim; ++i) {
    for (int s : {-1, 1}) {
      Vec e(fn.dim, 0.0);
      e[i] = s;
      double scale = eval_ph(fn, e);
      if (s * y[i] / scale > best) {
        best = s * y[i] / scale;
        best_x = e;
      }
    }
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec x(fn.dim);
  const int polish_budget = std::min(budget / 5, 4000);
  for (int t = 0; t < budget - polish_budget; ++t) {
    for (int i = 0; i < fn.dim; ++i) x[i] = gauss(rng);
    double nrm = eval_ph(fn, x);
    if (nrm == 0.0) continue;
    if (dot(x, y) / nrm > best) {
      best = dot(x, y) / nrm;
      best_x = x;
    }
  }
  // Coordinate polish around the incumbent; every candidate is admissible so
  // the result stays a lower bound on the supremum.
  double step = 0.5 * std::max(norm_inf(best_x), 1e-3);
  int used = 0;
  while (used < polish_budget && step > 1e-10 * (1.0 + norm_inf(best_x))) {
    bool improved = false;
    for (int i = 0; i < fn.dim && used < polish_budget; ++i) {
      for (int s : {-1, 1}) {
        Vec cand = best_x;
        cand[i] += s * step;
        ++used;
        double nrm = eval_ph(fn, cand);
        if (nrm == 0.0) continue;
        double ratio = dot(cand, y) / nrm;
        if (ratio > best) {
          best = ratio;
          best_x = cand;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

PHCheckReport check_ph_properties(const ScalarPH& fn, int trials, uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  PHCheckReport rep;
  rep.trials = trials;
  rep.worst_case_input.assign(fn.dim, 0.0);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> loglam(-3.0, 3.0);
  Vec x(fn.dim), lx(fn.dim);
  for (int t = 0; t < trials; ++t) {
    for (int i = 0; i < fn.dim; ++i) x[i] = gauss(rng);
    double lam = std::pow(10.0, loglam(rng));  // (0, 10^3]
    for (int i = 0; i < fn.dim; ++i) lx[i] = lam * x[i];
    double fx = eval_ph(fn, x);
    double flx = eval_ph(fn, lx);
    if (fx < 0.0 || flx < 0.0) rep.nonnegativity_ok = false;
    if (norm_inf(x) > 0.0 && fx <= 0.0) rep.positivity_ok = false;
    double viol = std::fabs(flx - lam * fx) / (1.0 + lam * fx);
    if (viol > rep.max_homogeneity_violation) {
      rep.max_homogeneity_violation = viol;
      rep.worst_case_input = x;
    }
  }
  return rep;
}

}  // namespace pho
