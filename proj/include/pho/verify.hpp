#ifndef PHO_VERIFY_HPP
#define PHO_VERIFY_HPP

#include <cstdint>
#include <random>
#include <utility>

#include <json.hpp>

#include "pho/core.hpp"
#include "pho/dual_builder.hpp"
#include "pho/solvers.hpp"

namespace pho::verify {

/// One weak-duality measurement: best known primal value (upper bound) vs
/// best found dual-feasible value (lower bound).
struct DualityReport {
  int instance_id = 0;
  uint64_t seed = 0;
  double primal_best = 0.0;
  bool dual_found = false;
  double dual_best = 0.0;  // meaningful only when dual_found
  double gap = 0.0;        // primal_best - dual_best
  int primal_points = 0;
  int dual_points = 0;
  bool weak_duality_ok = true;  // every sampled pair respected Theorem 1

  nlohmann::json to_json() const;
};

struct SuiteResult {
  bool pass = false;
  nlohmann::json report;  // serialized under a top-level "report" key
};

/// Planted instances with mixed p in {0.5, 1, 2, inf} blocks; every
/// (primal-feasible, dual-feasible) pair sampled must have
/// primal >= dual - 1e-9 * scale.
std::vector<DualityReport> weak_duality_reports(int num_instances, int max_n,
                                                uint64_t seed);
SuiteResult weak_duality_suite(int num_instances, int max_n, uint64_t seed);

/// Sampled check of psi* >= 0 and Psi(x)^T Psi*(y) >= x^T y.
SuiteResult prop1_suite(const VectorPH& psi, int trials, uint64_t seed);
SuiteResult prop1_suite_default(int trials, uint64_t seed);

/// Divergence-witness validation for a point where omega is -inf: the
/// Lagrangian along the witness ray must decrease strictly past lambda = 10,
/// end below -1e6 adjusted by the ray constant, and the ray must blow up.
struct Lemma1Report {
  bool applicable = false;  // omega actually returned -inf
  Vec lambdas;
  Vec lagrangian_values;
  Vec ray_norms;
  bool strictly_decreasing = true;
  bool final_low_enough = false;
  bool norms_grow = false;
  bool pass = false;

  nlohmann::json to_json() const;
};

Lemma1Report lemma1_witness_check(const PHOProblem& prob, const Vec& u, const Vec& v);
SuiteResult lemma1_suite(int num_instances, uint64_t seed);

/// Omega dichotomy at sampled multiplier points: Finite iff dual-feasible,
/// no sampled x below b^T u + p^T v when Finite, L(0,u,v) exact, witness ray
/// divergence when NegInf.
struct Theorem2Report {
  int points_checked = 0;
  int finite_points = 0;
  int neg_inf_points = 0;
  int skipped_boundary = 0;  // within the classification tolerance band
  bool pass = true;
  std::vector<std::string> failures;

  nlohmann::json to_json() const;
};

Theorem2Report theorem2_check(const PHOProblem& prob,
                              const std::vector<std::pair<Vec, Vec>>& dual_points,
                              int x_samples, uint64_t seed);
SuiteResult theorem2_suite(int num_instances, int points_per_instance, int x_samples,
                           uint64_t seed);

/// Mechanical dual of an example class vs a literal transcription of its
/// closed-form dual: membership agreement on sampled points, and value
/// agreement where the subgradient solver converges on both encodings.
struct ExampleReport {
  int example_id = 0;
  int membership_samples = 0;
  int membership_agreements = 0;
  bool values_compared = false;
  double mechanical_value = 0.0;
  double display_value = 0.0;
  bool value_ok = true;
  bool pass = false;

  nlohmann::json to_json() const;
};

ExampleReport example_crosscheck(int example_id, uint64_t seed);
SuiteResult examples_suite(uint64_t seed);

/// Heavy-tailed scalar draw truncated to |x| <= 1e6; used by every suite so
/// large-|x| behavior is exercised.
double heavy_tailed(std::mt19937_64& rng);

}  // namespace pho::verify

#endif  // PHO_VERIFY_HPP
