#include "pho/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pho/ph_calculus.hpp"
#include "pho/transforms.hpp"

namespace pho::verify {

using nlohmann::json;

double heavy_tailed(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-0.499, 0.499);
  double x = std::tan(3.14159265358979323846 * unif(rng));
  return std::clamp(x, -1e6, 1e6);
}

namespace {

Vec heavy_vec(int n, std::mt19937_64& rng) {
  Vec x(n);
  for (double& xi : x) xi = heavy_tailed(rng);
  return x;
}

Vec gauss_vec(int n, double sigma, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, sigma);
  Vec x(n);
  for (double& xi : x) xi = gauss(rng);
  return x;
}

uint64_t sub_seed(std::mt19937_64& master) { return master(); }

double primal_objective(const PHOProblem& prob, const Vec& x) {
  return dot(prob.c, x) + dot(prob.d, eval_vector_ph(prob.psi, x));
}

/// Raises d blockwise until the origin is dual-feasible (psi*_i(-c) plus a
/// margin), so planted instances have a nonempty dual side to sample.
void open_dual_at_origin(PHOProblem& prob, double margin) {
  for (int i = 0; i < prob.m; ++i) {
    const Block& blk = prob.psi.blocks[i];
    Vec neg_c = scale(gather(prob.c, blk.indices), -1.0);
    prob.d[i] = std::max(prob.d[i], eval_dual_ph(blk.fn, neg_c) + margin);
  }
}

/// Random block partition of a small dimension with mixed exponents.
std::vector<BlockSpec> random_blocks(int n, std::mt19937_64& rng) {
  static const double kExps[] = {0.5, 1.0, 2.0, 0.0};  // 0 stands for inf
  std::vector<BlockSpec> specs;
  int left = n;
  while (left > 0) {
    int dim = 1 + static_cast<int>(rng() % static_cast<uint64_t>(std::min(left, 3)));
    double pv = kExps[rng() % 4];
    BlockSpec bs;
    bs.dim = dim;
    bs.p = pv == 0.0 ? Exponent::inf() : Exponent::finite(pv);
    specs.push_back(bs);
    left -= dim;
  }
  return specs;
}

json vec_to_json(const Vec& x) { return json(x); }

}  // namespace

// ---------------------------------------------------------------------------
// Weak duality
// ---------------------------------------------------------------------------

json DualityReport::to_json() const {
  json j;
  j["instance_id"] = instance_id;
  j["seed"] = seed;
  j["primal_best"] = primal_best;
  j["dual_found"] = dual_found;
  if (dual_found) j["dual_best"] = dual_best;
  j["gap"] = gap;
  j["primal_points"] = primal_points;
  j["dual_points"] = dual_points;
  j["weak_duality_ok"] = weak_duality_ok;
  return j;
}

std::vector<DualityReport> weak_duality_reports(int num_instances, int max_n,
                                                uint64_t seed) {
  std::mt19937_64 master(seed);
  std::vector<DualityReport> out;
  for (int inst = 0; inst < num_instances; ++inst) {
    uint64_t s = sub_seed(master);
    std::mt19937_64 rng(s);
    int n = 2 + static_cast<int>(rng() % static_cast<uint64_t>(max_n - 1));
    int l = 1 + static_cast<int>(rng() % 2);
    // Inequality-only instances so perturbed primal points can stay feasible.
    PlantedInstance planted =
        plant_feasible_instance(random_blocks(n, rng), 0, l, sub_seed(master), 1.0);
    PHOProblem& prob = planted.problem;
    open_dual_at_origin(prob, 0.1);
    DualProblem dual = build_dual(prob);

    DualityReport rep;
    rep.instance_id = inst;
    rep.seed = s;

    // Primal side: the planted point plus feasible perturbations of it.
    double primal_best = primal_objective(prob, planted.x0);
    rep.primal_points = 1;
    for (int trial = 0; trial < 50; ++trial) {
      Vec x = add(planted.x0, gauss_vec(prob.n, 0.3, rng));
      PrimalResiduals pr = primal_residuals(prob, x, 1e-12);
      if (!pr.feasible) continue;
      ++rep.primal_points;
      primal_best = std::min(primal_best, pr.objective);
    }
    rep.primal_best = primal_best;

    // Dual side: subgradient best plus random feasible multipliers.
    SubgradientOptions opts;
    opts.max_iter = 20000;
    SolveResult sres = solve_dual_subgradient(dual, Vec(prob.k, 0.0),
                                              Vec(prob.l, 0.0), opts);
    double dual_best = 0.0;
    bool found = false;
    if (sres.status == SolveStatus::Optimal) {
      found = true;
      dual_best = sres.value;
      ++rep.dual_points;
    }
    for (int trial = 0; trial < 200; ++trial) {
      Vec u = gauss_vec(prob.k, 0.5, rng);
      Vec v = gauss_vec(prob.l, 0.5, rng);
      for (double& vi : v) vi = std::fabs(vi);
      DualResiduals dr = dual_residuals(dual, u, v, 1e-12);
      if (!dr.feasible) continue;
      ++rep.dual_points;
      if (!found || dr.objective > dual_best) {
        found = true;
        dual_best = dr.objective;
      }
    }
    rep.dual_found = found;
    rep.dual_best = dual_best;
    if (found) {
      double scale = 1.0 + std::max(std::fabs(primal_best), std::fabs(dual_best));
      rep.gap = primal_best - dual_best;
      rep.weak_duality_ok = rep.gap >= -1e-9 * scale;
    }
    out.push_back(rep);
  }
  return out;
}

SuiteResult weak_duality_suite(int num_instances, int max_n, uint64_t seed) {
  auto reps = weak_duality_reports(num_instances, max_n, seed);
  SuiteResult res;
  res.pass = true;
  json items = json::array();
  int with_dual = 0;
  for (const auto& r : reps) {
    if (!r.weak_duality_ok) res.pass = false;
    if (r.dual_found) ++with_dual;
    items.push_back(r.to_json());
  }
  // The theorem is vacuous on instances with no dual-feasible point found;
  // require a healthy majority to actually exercise it.
  if (with_dual < num_instances / 2) res.pass = false;
  res.report = {{"suite", "weak-duality"},
                {"seed", seed},
                {"instances", items},
                {"instances_with_dual_point", with_dual},
                {"pass", res.pass}};
  return res;
}

// ---------------------------------------------------------------------------
// Nonnegativity / pairing inequality of the dual function
// ---------------------------------------------------------------------------

SuiteResult prop1_suite(const VectorPH& psi, int trials, uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = psi.num_vars();
  int violations = 0;
  double worst_margin = 1e300;
  json worst_case;
  for (int t = 0; t < trials; ++t) {
    Vec x = heavy_vec(n, rng);
    Vec y = heavy_vec(n, rng);
    Vec psi_x = eval_vector_ph(psi, x);
    Vec psi_star_y(psi.num_blocks());
    bool bad = false;
    for (int i = 0; i < psi.num_blocks(); ++i) {
      const Block& blk = psi.blocks[i];
      psi_star_y[i] = eval_dual_ph(blk.fn, gather(y, blk.indices));
      if (psi_star_y[i] < 0.0) bad = true;
    }
    double lhs = dot(psi_x, psi_star_y);
    double rhs = dot(x, y);
    double scale = 1.0 + std::max(std::fabs(lhs), std::fabs(rhs));
    double margin = lhs - rhs;
    if (margin < -1e-9 * scale) bad = true;
    if (margin / scale < worst_margin) {
      worst_margin = margin / scale;
      worst_case = {{"x", vec_to_json(x)}, {"y", vec_to_json(y)}, {"margin", margin}};
    }
    if (bad) ++violations;
  }
  SuiteResult res;
  res.pass = violations == 0;
  res.report = {{"suite", "prop1"},
                {"seed", seed},
                {"trials", trials},
                {"violations", violations},
                {"worst_relative_margin", worst_margin},
                {"worst_case", worst_case},
                {"pass", res.pass}};
  return res;
}

SuiteResult prop1_suite_default(int trials, uint64_t seed) {
  VectorPH psi;
  int off = 0;
  auto push = [&](double p, bool inf_p, int dim) {
    Block blk;
    for (int j = 0; j < dim; ++j) blk.indices.push_back(off + j);
    off += dim;
    blk.fn =
        ScalarPH{PHKind::PNorm, inf_p ? Exponent::inf() : Exponent::finite(p), dim};
    psi.blocks.push_back(std::move(blk));
  };
  push(0.5, false, 2);
  push(1.0, false, 1);
  push(2.0, false, 3);
  push(0.0, true, 2);
  return prop1_suite(psi, trials, seed);
}

// ---------------------------------------------------------------------------
// Divergence witness
// ---------------------------------------------------------------------------

json Lemma1Report::to_json() const {
  json j;
  j["applicable"] = applicable;
  j["lambdas"] = vec_to_json(lambdas);
  j["lagrangian_values"] = vec_to_json(lagrangian_values);
  j["ray_norms"] = vec_to_json(ray_norms);
  j["strictly_decreasing"] = strictly_decreasing;
  j["final_low_enough"] = final_low_enough;
  j["norms_grow"] = norms_grow;
  j["pass"] = pass;
  return j;
}

Lemma1Report lemma1_witness_check(const PHOProblem& prob, const Vec& u, const Vec& v) {
  Lemma1Report rep;
  OmegaResult om = omega(prob, u, v);
  if (!om.value.is_neg_inf() || !om.witness.has_value()) return rep;
  rep.applicable = true;
  const DivergenceWitness& w = *om.witness;
  const Block& blk = prob.psi.blocks[w.block];
  double psi_hat = eval_ph(blk.fn, w.xhat);

  for (int e = 0; e <= 6; ++e) {
    double lam = std::pow(10.0, e);
    Vec x = w.ray(lam);
    rep.lambdas.push_back(lam);
    rep.lagrangian_values.push_back(lagrangian(prob, x, u, v));
    rep.ray_norms.push_back(norm_inf(x));
  }
  for (size_t i = 2; i < rep.lagrangian_values.size(); ++i)
    if (!(rep.lagrangian_values[i] < rep.lagrangian_values[i - 1]))
      rep.strictly_decreasing = false;

  // Along the ray the Lagrangian is bounded by gamma + lambda * psi(xhat) *
  // slope_bound; check the final point against that line, with slack for the
  // large intermediate products.
  double bound = w.gamma + 1e6 * psi_hat * w.slope_bound;
  // Two slack sources: the bound constants themselves, and the lambda-scaled
  // rounding of the block products alpha^T xhat vs psi*(alpha) along the ray.
  double psi_star_i = eval_dual_ph(blk.fn, gather(w.alpha, blk.indices));
  double slack = 1e-9 * (1.0 + std::fabs(w.gamma) + 1e6 * std::fabs(w.slope_bound)) +
                 1e6 * 1e-12 * (1.0 + 2.0 * psi_star_i + std::fabs(w.slope_bound));
  rep.final_low_enough = rep.lagrangian_values.back() <= bound + slack;
  rep.norms_grow =
      rep.ray_norms.back() >= 1e3 * std::max(1.0, rep.ray_norms.front());
  rep.pass = rep.strictly_decreasing && rep.final_low_enough && rep.norms_grow;
  return rep;
}

SuiteResult lemma1_suite(int num_instances, uint64_t seed) {
  std::mt19937_64 master(seed);
  SuiteResult res;
  res.pass = true;
  json items = json::array();
  int applicable = 0;
  for (int inst = 0; inst < num_instances; ++inst) {
    std::mt19937_64 rng(sub_seed(master));
    int n = 2 + static_cast<int>(rng() % 4);
    int k = static_cast<int>(rng() % 2);
    int l = 1 + static_cast<int>(rng() % 2);
    PlantedInstance planted =
        plant_feasible_instance(random_blocks(n, rng), k, l, sub_seed(master), 1.0);
    const PHOProblem& prob = planted.problem;
    // Large multipliers almost surely violate some dual row strictly.
    for (int attempt = 0; attempt < 20 && applicable <= inst; ++attempt) {
      Vec u = gauss_vec(prob.k, 5.0, rng);
      Vec v = gauss_vec(prob.l, 5.0, rng);
      for (double& vi : v) vi = std::fabs(vi);
      Lemma1Report rep = lemma1_witness_check(prob, u, v);
      if (!rep.applicable) continue;
      ++applicable;
      if (!rep.pass) res.pass = false;
      json item = rep.to_json();
      item["instance_id"] = inst;
      items.push_back(std::move(item));
    }
  }
  if (applicable < num_instances / 2) res.pass = false;
  res.report = {{"suite", "lemma1"},
                {"seed", seed},
                {"witnesses_checked", applicable},
                {"witnesses", items},
                {"pass", res.pass}};
  return res;
}

// ---------------------------------------------------------------------------
// Omega dichotomy
// ---------------------------------------------------------------------------

json Theorem2Report::to_json() const {
  json j;
  j["points_checked"] = points_checked;
  j["finite_points"] = finite_points;
  j["neg_inf_points"] = neg_inf_points;
  j["skipped_boundary"] = skipped_boundary;
  j["failures"] = failures;
  j["pass"] = pass;
  return j;
}

Theorem2Report theorem2_check(const PHOProblem& prob,
                              const std::vector<std::pair<Vec, Vec>>& dual_points,
                              int x_samples, uint64_t seed) {
  Theorem2Report rep;
  std::mt19937_64 rng(seed);
  for (const auto& [u, v] : dual_points) {
    ++rep.points_checked;
    OmegaResult om = omega(prob, u, v);
    double target = dot(prob.b, u) + dot(prob.p, v);

    // Slack classification band around each row boundary: points inside it
    // are Finite by convention but skipped for the sampled-minimum check.
    bool near_boundary = false;
    for (int i = 0; i < prob.m; ++i) {
      const Block& blk = prob.psi.blocks[i];
      double lhs = eval_dual_ph(blk.fn, gather(om.alpha, blk.indices));
      double band = 1e-9 * (1.0 + std::fabs(om.beta[i]));
      if (std::fabs(lhs - om.beta[i]) <= 2.0 * band) near_boundary = true;
    }

    if (om.value.is_finite()) {
      ++rep.finite_points;
      if (om.value.value() != target) {
        rep.failures.push_back("finite omega value does not equal b^T u + p^T v");
        continue;
      }
      Vec zero(prob.n, 0.0);
      if (lagrangian(prob, zero, u, v) != target) {
        rep.failures.push_back("L(0,u,v) is not exactly b^T u + p^T v");
        continue;
      }
      if (near_boundary) {
        ++rep.skipped_boundary;
        continue;
      }
      for (int t = 0; t < x_samples; ++t) {
        Vec x = heavy_vec(prob.n, rng);
        // Rounding allowance grows with the sampled point's magnitude: the
        // Lagrangian sums products alpha_i x_i and beta_i Psi_i(x).
        Vec psi_x = eval_vector_ph(prob.psi, x);
        double mag = std::fabs(target);
        for (int j = 0; j < prob.n; ++j) mag += std::fabs(om.alpha[j] * x[j]);
        for (int i = 0; i < prob.m; ++i) mag += std::fabs(om.beta[i] * psi_x[i]);
        double tol = 1e-9 * (1.0 + std::fabs(target)) + 1e-12 * mag;
        double lx = lagrangian_alpha_beta(prob, x, u, v);
        if (lx < target - tol) {
          std::ostringstream oss;
          oss << "sampled Lagrangian " << lx << " below omega " << target;
          rep.failures.push_back(oss.str());
          break;
        }
      }
    } else {
      ++rep.neg_inf_points;
      Lemma1Report wrep = lemma1_witness_check(prob, u, v);
      if (!wrep.applicable || !wrep.pass)
        rep.failures.push_back("divergence witness failed on a NegInf point");
    }
  }
  rep.pass = rep.failures.empty();
  return rep;
}

SuiteResult theorem2_suite(int num_instances, int points_per_instance, int x_samples,
                           uint64_t seed) {
  std::mt19937_64 master(seed);
  SuiteResult res;
  res.pass = true;
  json items = json::array();
  int finite_total = 0, neg_inf_total = 0;
  for (int inst = 0; inst < num_instances; ++inst) {
    std::mt19937_64 rng(sub_seed(master));
    int n = 2 + static_cast<int>(rng() % 4);
    int k = static_cast<int>(rng() % 2);
    int l = 1 + static_cast<int>(rng() % 2);
    PlantedInstance planted =
        plant_feasible_instance(random_blocks(n, rng), k, l, sub_seed(master), 1.0);
    PHOProblem& prob = planted.problem;
    open_dual_at_origin(prob, 0.5);
    DualProblem dual = build_dual(prob);

    std::vector<std::pair<Vec, Vec>> points;
    SubgradientOptions opts;
    opts.max_iter = 5000;
    SolveResult sres =
        solve_dual_subgradient(dual, Vec(prob.k, 0.0), Vec(prob.l, 0.0), opts);
    Vec base_u(prob.k, 0.0), base_v(prob.l, 0.0);
    if (sres.status == SolveStatus::Optimal) {
      base_u.assign(sres.point.begin(), sres.point.begin() + prob.k);
      base_v.assign(sres.point.begin() + prob.k, sres.point.end());
    }
    points.emplace_back(Vec(prob.k, 0.0), Vec(prob.l, 0.0));  // origin, feasible
    if (sres.status == SolveStatus::Optimal) points.emplace_back(base_u, base_v);
    while (static_cast<int>(points.size()) < points_per_instance) {
      double sigma = points.size() % 2 == 0 ? 0.1 : 5.0;  // near/far mix
      Vec u = add(base_u, gauss_vec(prob.k, sigma, rng));
      Vec v = add(base_v, gauss_vec(prob.l, sigma, rng));
      for (double& vi : v) vi = std::fabs(vi);
      points.emplace_back(std::move(u), std::move(v));
    }
    Theorem2Report rep = theorem2_check(prob, points, x_samples, sub_seed(master));
    finite_total += rep.finite_points;
    neg_inf_total += rep.neg_inf_points;
    if (!rep.pass) res.pass = false;
    json item = rep.to_json();
    item["instance_id"] = inst;
    items.push_back(std::move(item));
  }
  // Both branches of the dichotomy must actually be exercised.
  if (finite_total == 0 || neg_inf_total == 0) res.pass = false;
  res.report = {{"suite", "theorem2"},
                {"seed", seed},
                {"finite_points", finite_total},
                {"neg_inf_points", neg_inf_total},
                {"instances", items},
                {"pass", res.pass}};
  return res;
}

// ---------------------------------------------------------------------------
// Example cross-checks
// ---------------------------------------------------------------------------

json ExampleReport::to_json() const {
  json j;
  j["example_id"] = example_id;
  j["membership_samples"] = membership_samples;
  j["membership_agreements"] = membership_agreements;
  j["values_compared"] = values_compared;
  if (values_compared) {
    j["mechanical_value"] = mechanical_value;
    j["display_value"] = display_value;
  }
  j["value_ok"] = value_ok;
  j["pass"] = pass;
  return j;
}

namespace {

constexpr int kMembershipSamples = 1000;

void finish_example(ExampleReport& rep) {
  rep.pass = rep.membership_agreements == rep.membership_samples && rep.value_ok &&
             rep.membership_samples >= kMembershipSamples;
}

double value_scale(double a, double b) {
  return 1.0 + std::max(std::fabs(a), std::fabs(b));
}

/// Cone-constrained instance: min c^T x s.t. Ax = b, x_1 >= ||x_2..n||.
ExampleReport crosscheck_socp(uint64_t seed) {
  ExampleReport rep;
  rep.example_id = 1;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  const int n = 3;
  Mat a(1, n);
  a(0, 0) = 1.0;
  Vec b = {1.0};
  Vec c = {1.0, 0.45 * unif(rng), 0.45 * unif(rng)};

  PHOProblem prob = socp_to_pho(c, a, b);
  DualProblem mech = build_dual(prob);
  DualProblem mech_simpl = simplify_dual(mech);

  // Literal transcription of the eliminated dual:
  // max b^T u  s.t.  ||(A^T u)_{2..n} - c_{2..n}|| <= c_1 - (A^T u)_1.
  auto display_slack = [&](double u) {
    Vec atu = tmatvec(a, Vec{u});
    double lhs = 0.0;
    for (int j = 1; j < n; ++j) lhs += (atu[j] - c[j]) * (atu[j] - c[j]);
    return (c[0] - atu[0]) - std::sqrt(lhs);
  };

  // Membership: lift u to (u, v) through the eliminated row v = c_1 - (A^T u)_1
  // and test the mechanical constraints.
  int attempts = 0;
  while (rep.membership_samples < kMembershipSamples && attempts < 20000) {
    ++attempts;
    double u = 3.0 * heavy_tailed(rng) / (1.0 + std::fabs(heavy_tailed(rng)));
    double slack = display_slack(u);
    if (std::fabs(slack) < 1e-7) continue;  // boundary band
    double v = c[0] - tmatvec(a, Vec{u})[0];
    bool display_ok = slack >= 0.0;
    bool mech_ok = dual_residuals(mech, Vec{u}, Vec{v}, 1e-9).feasible;
    ++rep.membership_samples;
    if (display_ok == mech_ok) ++rep.membership_agreements;
  }

  // Values: subgradient on the simplified mechanical dual vs a bisection on
  // the one-dimensional display dual (b > 0, so the objective is increasing).
  SolveResult sres =
      solve_dual_subgradient(mech_simpl, Vec(prob.k, 0.0), Vec(prob.l, 0.0));
  if (sres.status == SolveStatus::Optimal) {
    double lo = 0.0, hi = 1.0;
    while (display_slack(hi) >= 0.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      (display_slack(mid) >= 0.0 ? lo : hi) = mid;
    }
    rep.values_compared = true;
    rep.mechanical_value = sres.value;
    rep.display_value = b[0] * lo;
    rep.value_ok =
        std::fabs(rep.mechanical_value - rep.display_value) <=
        1e-3 * value_scale(rep.mechanical_value, rep.display_value);
  }
  finish_example(rep);
  return rep;
}

/// Grouped-regularizer instance: min ||Ax-b|| + l1 sum ||x_Ii||_p1 + l2 ...
ExampleReport crosscheck_group_lasso(uint64_t seed) {
  ExampleReport rep;
  rep.example_id = 3;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  const int n = 4, mrows = 3;
  std::vector<std::vector<int>> groups = {{0, 1}, {2, 3}};
  const int m_prime = 1;
  Exponent p1 = rng() % 2 == 0 ? Exponent::finite(0.5) : Exponent::finite(1.5);
  Exponent p2 = Exponent::finite(2.0);
  double lambda1 = 0.5 + 0.5 * std::fabs(unif(rng));
  double lambda2 = 0.5 + 0.5 * std::fabs(unif(rng));
  Mat a(mrows, n);
  for (int i = 0; i < mrows; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = unif(rng);
  Vec b(mrows);
  for (double& bi : b) bi = unif(rng);

  GaugeResult gl = group_lasso_to_pho(a, b, lambda1, lambda2, groups, m_prime, p1, p2);
  DualProblem mech_full = build_dual(gl.problem);

  // Display dual after eliminating the per-group multipliers:
  //   max b^T u  s.t.  ||(A^T)_{I_i} u||_{q_i} <= lambda_i,  ||u||_2 <= 1.
  Exponent q1 = dual_exponent(p1), q2 = dual_exponent(p2);
  auto display_min_slack = [&](const Vec& u) {
    Vec atu = tmatvec(a, u);
    double slack = 1e300;
    for (size_t g = 0; g < groups.size(); ++g) {
      ScalarPH qn{PHKind::PNorm, g < static_cast<size_t>(m_prime) ? q1 : q2,
                  static_cast<int>(groups[g].size())};
      double lim = g < static_cast<size_t>(m_prime) ? lambda1 : lambda2;
      slack = std::min(slack, lim - eval_ph(qn, gather(atu, groups[g])));
    }
    slack = std::min(slack, 1.0 - norm2(u));
    return slack;
  };
  // Lift the eliminated multipliers back: u_i = -(A^T)_{I_i} u per group, the
  // loss term keeps u itself.
  auto lift = [&](const Vec& u) {
    Vec atu = tmatvec(a, u);
    Vec full(gl.problem.k, 0.0);
    int row = 0;
    for (const auto& g : groups)
      for (int j : g) full[row++] = -atu[j];
    for (int i = 0; i < mrows; ++i) full[row++] = u[i];
    return full;
  };

  int attempts = 0;
  while (rep.membership_samples < kMembershipSamples && attempts < 20000) {
    ++attempts;
    double scale = std::pow(10.0, -1.5 + 3.0 * (rng() % 1000) / 999.0);
    Vec u = gauss_vec(mrows, scale, rng);
    double slack = display_min_slack(u);
    if (std::fabs(slack) < 1e-7) continue;
    bool display_ok = slack >= 0.0;
    bool mech_ok =
        dual_residuals(mech_full, lift(u), Vec(gl.problem.l, 0.0), 1e-9).feasible;
    ++rep.membership_samples;
    if (display_ok == mech_ok) ++rep.membership_agreements;
  }

  // Independent value: encode the display dual as the mechanical dual of a
  // second, hand-stacked problem min sum lambda_i ||x_Ii||_pi + ||w||_2 s.t.
  // A x - w = b, and solve both encodings with the same method.
  PHOProblem disp;
  disp.n = n + mrows;
  disp.m = static_cast<int>(groups.size()) + 1;
  disp.c.assign(disp.n, 0.0);
  disp.d = {lambda1, lambda2, 1.0};
  for (size_t g = 0; g < groups.size(); ++g) {
    Block blk;
    blk.indices = groups[g];
    blk.fn = ScalarPH{PHKind::PNorm, g < static_cast<size_t>(m_prime) ? p1 : p2,
                      static_cast<int>(groups[g].size())};
    disp.psi.blocks.push_back(std::move(blk));
  }
  Block wblk;
  for (int i = 0; i < mrows; ++i) wblk.indices.push_back(n + i);
  wblk.fn = ScalarPH{PHKind::PNorm, Exponent::finite(2.0), mrows};
  disp.psi.blocks.push_back(std::move(wblk));
  disp.k = mrows;
  disp.A = Mat(mrows, disp.n);
  for (int i = 0; i < mrows; ++i) {
    for (int j = 0; j < n; ++j) disp.A(i, j) = a(i, j);
    disp.A(i, n + i) = -1.0;
  }
  disp.B = Mat(mrows, disp.m);
  disp.b = b;
  disp.l = 0;
  disp.H = Mat(0, disp.n);
  disp.K = Mat(0, disp.m);
  disp.p = {};

  SolveResult mech_res = solve_dual_subgradient(gl.dual, Vec(gl.problem.k, 0.0),
                                                Vec(gl.problem.l, 0.0));
  SolveResult disp_res = solve_dual_subgradient(build_dual(disp), Vec(disp.k, 0.0),
                                                Vec(disp.l, 0.0));
  if (mech_res.status == SolveStatus::Optimal &&
      disp_res.status == SolveStatus::Optimal) {
    rep.values_compared = true;
    rep.mechanical_value = mech_res.value;
    rep.display_value = disp_res.value;
    rep.value_ok = std::fabs(mech_res.value - disp_res.value) <=
                   1e-3 * value_scale(mech_res.value, disp_res.value);
  }
  finish_example(rep);
  return rep;
}

/// Norm-constrained regression: min l1||x||_p1 + l2||x||_p2 s.t. ||Ax-b|| <= beta.
ExampleReport crosscheck_constrained_lasso(uint64_t seed) {
  ExampleReport rep;
  rep.example_id = 4;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  const int n = 3, mrows = 2;
  Exponent p1 = rng() % 2 == 0 ? Exponent::finite(1.5) : Exponent::finite(0.5);
  Exponent p2 = Exponent::finite(2.0);
  double lambda1 = 0.5 + 0.5 * std::fabs(unif(rng));
  double lambda2 = 0.5 + 0.5 * std::fabs(unif(rng));
  Mat a(mrows, n);
  for (int i = 0; i < mrows; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = unif(rng);
  Vec b(mrows);
  for (double& bi : b) bi = 1.0 + std::fabs(unif(rng));
  // Keep the residual bound below ||b|| so x = 0 is infeasible and the
  // optimal value is strictly positive.
  double beta = (0.2 + 0.3 * std::fabs(unif(rng))) * norm2(b);

  GaugeResult cl = constrained_lasso_to_pho(a, b, beta, lambda1, lambda2, p1, p2);
  DualProblem mech_full = build_dual(cl.problem);

  // Display dual on (u1, u2, v):
  //   max b^T u2 - beta v
  //   s.t. ||u1 + A^T u2||_{q1} <= lambda1, ||-u1||_{q2} <= lambda2,
  //        ||-u2||_2 <= v.
  Exponent q1 = dual_exponent(p1), q2 = dual_exponent(p2);
  ScalarPH q1n{PHKind::PNorm, q1, n}, q2n{PHKind::PNorm, q2, n};
  auto display_min_slack = [&](const Vec& u1, const Vec& u2, double v) {
    Vec atu2 = tmatvec(a, u2);
    double slack = lambda1 - eval_ph(q1n, add(u1, atu2));
    slack = std::min(slack, lambda2 - eval_ph(q2n, u1));
    slack = std::min(slack, v - norm2(u2));
    return std::min(slack, v);
  };
  // Lifting to the stacked dual: u11 = -u1 - A^T u2, u12 = u1, u21 = u2, and
  // only the residual block's multiplier is nonzero.
  auto lift_u = [&](const Vec& u1, const Vec& u2) {
    Vec atu2 = tmatvec(a, u2);
    Vec full(cl.problem.k, 0.0);
    int row = 0;
    for (int j = 0; j < n; ++j) full[row++] = -u1[j] - atu2[j];
    for (int j = 0; j < n; ++j) full[row++] = u1[j];
    for (int i = 0; i < mrows; ++i) full[row++] = u2[i];
    return full;
  };

  int attempts = 0;
  while (rep.membership_samples < kMembershipSamples && attempts < 40000) {
    ++attempts;
    double scale = std::pow(10.0, -1.5 + 3.0 * (rng() % 1000) / 999.0);
    Vec u1 = gauss_vec(n, scale, rng);
    Vec u2 = gauss_vec(mrows, scale, rng);
    double v = std::fabs(gauss_vec(1, 2.0 * scale, rng)[0]);
    double slack = display_min_slack(u1, u2, v);
    if (std::fabs(slack) < 1e-7) continue;
    bool display_ok = slack >= 0.0;
    Vec vm(cl.problem.l, 0.0);
    vm[3] = v;  // dummy, f1, f2, then the residual block's row
    bool mech_ok = dual_residuals(mech_full, lift_u(u1, u2), vm, 1e-9).feasible;
    ++rep.membership_samples;
    if (display_ok == mech_ok) ++rep.membership_agreements;
  }

  // Independent value: a hand-built problem whose mechanical dual is exactly
  // the display, with dual variables (u1, u2) and the single multiplier v.
  PHOProblem disp;
  disp.n = n + n + mrows;
  disp.m = 3;
  disp.c.assign(disp.n, 0.0);
  disp.d = {lambda1, lambda2, 0.0};
  for (int blkid = 0; blkid < 2; ++blkid) {
    Block blk;
    for (int j = 0; j < n; ++j) blk.indices.push_back(blkid * n + j);
    blk.fn = ScalarPH{PHKind::PNorm, blkid == 0 ? p1 : p2, n};
    disp.psi.blocks.push_back(std::move(blk));
  }
  Block rblk;
  for (int i = 0; i < mrows; ++i) rblk.indices.push_back(2 * n + i);
  rblk.fn = ScalarPH{PHKind::PNorm, Exponent::finite(2.0), mrows};
  disp.psi.blocks.push_back(std::move(rblk));
  disp.k = n + mrows;
  disp.A = Mat(disp.k, disp.n);
  for (int j = 0; j < n; ++j) {
    disp.A(j, j) = 1.0;
    disp.A(j, n + j) = -1.0;
  }
  for (int i = 0; i < mrows; ++i) {
    for (int j = 0; j < n; ++j) disp.A(n + i, j) = a(i, j);
    disp.A(n + i, 2 * n + i) = -1.0;
  }
  disp.B = Mat(disp.k, disp.m);
  disp.b.assign(disp.k, 0.0);
  for (int i = 0; i < mrows; ++i) disp.b[n + i] = b[i];
  disp.l = 1;
  disp.H = Mat(1, disp.n);
  disp.K = Mat(1, disp.m);
  disp.K(0, 2) = -1.0;
  disp.p = {-beta};

  SolveResult mech_res = solve_dual_subgradient(cl.dual, Vec(cl.problem.k, 0.0),
                                                Vec(cl.problem.l, 0.0));
  SolveResult disp_res = solve_dual_subgradient(build_dual(disp), Vec(disp.k, 0.0),
                                                Vec(disp.l, 0.0));
  if (mech_res.status == SolveStatus::Optimal &&
      disp_res.status == SolveStatus::Optimal) {
    rep.values_compared = true;
    rep.mechanical_value = mech_res.value;
    rep.display_value = disp_res.value;
    rep.value_ok = std::fabs(mech_res.value - disp_res.value) <=
                   1e-3 * value_scale(mech_res.value, disp_res.value);
  }
  finish_example(rep);
  return rep;
}

}  // namespace

ExampleReport example_crosscheck(int example_id, uint64_t seed) {
  switch (example_id) {
    case 1:
      return crosscheck_socp(seed);
    case 3:
      return crosscheck_group_lasso(seed);
    case 4:
      return crosscheck_constrained_lasso(seed);
    default:
      throw std::invalid_argument("cross-check supports example ids 1, 3 and 4");
  }
}

SuiteResult examples_suite(uint64_t seed) {
  std::mt19937_64 master(seed);
  SuiteResult res;
  res.pass = true;
  json items = json::array();
  for (int id : {1, 3, 4}) {
    ExampleReport rep = example_crosscheck(id, sub_seed(master));
    if (!rep.pass) res.pass = false;
    items.push_back(rep.to_json());
  }
  res.report = {
      {"suite", "examples"}, {"seed", seed}, {"examples", items}, {"pass", res.pass}};
  return res;
}

}  // namespace pho::verify
