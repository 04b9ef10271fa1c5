// Command-line front end: validate/dualize/transform problem files, evaluate
// block norms and the Lagrangian infimum, run the solvers and the
// verification suites. All output is deterministic JSON on stdout.
//
// Exit codes: 0 success, 1 semantic/assertion failure, 2 malformed input.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pho/dual_builder.hpp"
#include "pho/io.hpp"
#include "pho/ph_calculus.hpp"
#include "pho/solvers.hpp"
#include "pho/transforms.hpp"
#include "pho/verify.hpp"

using nlohmann::json;
using namespace pho;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitParse = 2;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string derived_path(const std::string& input, const std::string& suffix) {
  const std::string ext = ".json";
  if (input.size() > ext.size() &&
      input.compare(input.size() - ext.size(), ext.size(), ext) == 0)
    return input.substr(0, input.size() - ext.size()) + suffix;
  return input + suffix;
}

const char* status_str(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::IterLimit: return "iter-limit";
    default: return "failed";
  }
}

RowSense sense_from_string(const std::string& s) {
  if (s == "le" || s == "<=") return RowSense::LE;
  if (s == "eq" || s == "=") return RowSense::EQ;
  if (s == "ge" || s == ">=") return RowSense::GE;
  throw ParseError("unknown row sense '" + s + "' (want le, eq or ge)");
}

Vec vec_field(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ParseError("missing field '" + key + "'");
  return vec_from_json(j.at(key), key);
}

Mat mat_field(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ParseError("missing field '" + key + "'");
  return mat_from_json(j.at(key), key);
}

double num_field(const json& j, const std::string& key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw ParseError("missing numeric field '" + key + "'");
  return j.at(key).get<double>();
}

// ---------------------------------------------------------------------------
// transform parameter parsing, one schema per kind
// ---------------------------------------------------------------------------

AVOProblem parse_avo_params(const json& j) {
  AVOProblem avo;
  avo.c = vec_field(j, "c");
  avo.n = static_cast<int>(avo.c.size());
  avo.d = j.contains("d") ? vec_from_json(j.at("d"), "d") : Vec(avo.n, 0.0);
  if (static_cast<int>(avo.d.size()) != avo.n)
    throw ParseError("d must have the same length as c");
  if (j.contains("eq")) {
    const json& eq = j.at("eq");
    avo.A = mat_field(eq, "A");
    avo.B = mat_field(eq, "B");
    avo.b = vec_field(eq, "b");
    avo.k = avo.A.rows();
  } else {
    avo.A = Mat(0, avo.n);
    avo.B = Mat(0, avo.n);
  }
  if (j.contains("ineq")) {
    const json& iq = j.at("ineq");
    avo.H = mat_field(iq, "H");
    avo.K = mat_field(iq, "K");
    avo.p = vec_field(iq, "p");
    avo.l = avo.H.rows();
  } else {
    avo.H = Mat(0, avo.n);
    avo.K = Mat(0, avo.n);
  }
  return avo;
}

GaugeTerm parse_gauge_term(const json& j) {
  GaugeTerm term;
  term.weight = num_field(j, "weight");
  term.a = mat_field(j, "a");
  term.shift = vec_field(j, "shift");
  if (!j.contains("p")) throw ParseError("gauge term needs an exponent field 'p'");
  term.fn = ScalarPH{PHKind::PNorm, exponent_from_json(j.at("p")), term.a.rows()};
  return term;
}

struct TransformOutput {
  PHOProblem problem;
  DualProblem dual;
  json extras;  // kind-specific companions (offsets, layouts)
};

TransformOutput run_transform(const std::string& kind, const json& params) {
  TransformOutput out;
  if (kind == "avo") {
    out.problem = avo_to_pho(parse_avo_params(params));
    out.dual = simplify_dual(build_dual(out.problem));
  } else if (kind == "socp") {
    out.problem = socp_to_pho(vec_field(params, "c"), mat_field(params, "A"),
                              vec_field(params, "b"));
    out.dual = simplify_dual(build_dual(out.problem));
  } else if (kind == "gauge") {
    int n = static_cast<int>(num_field(params, "n"));
    std::vector<GaugeTerm> obj, con;
    for (const json& t : params.value("objective", json::array()))
      obj.push_back(parse_gauge_term(t));
    for (const json& t : params.value("constraints", json::array()))
      con.push_back(parse_gauge_term(t));
    GaugeResult res = gauge_to_pho(n, obj, con);
    out.problem = res.problem;
    out.dual = res.dual;
  } else if (kind == "group-lasso") {
    std::vector<std::vector<int>> groups;
    for (const json& g : params.at("groups"))
      groups.push_back(g.get<std::vector<int>>());
    GaugeResult res = group_lasso_to_pho(
        mat_field(params, "A"), vec_field(params, "b"),
        num_field(params, "lambda1"), num_field(params, "lambda2"), groups,
        static_cast<int>(num_field(params, "m_prime")),
        exponent_from_json(params.at("p1")), exponent_from_json(params.at("p2")));
    out.problem = res.problem;
    out.dual = res.dual;
  } else if (kind == "lasso") {
    GaugeResult res = constrained_lasso_to_pho(
        mat_field(params, "A"), vec_field(params, "b"), num_field(params, "beta"),
        num_field(params, "lambda1"), num_field(params, "lambda2"),
        exponent_from_json(params.at("p1")), exponent_from_json(params.at("p2")));
    out.problem = res.problem;
    out.dual = res.dual;
  } else if (kind == "sum-norms") {
    int n = static_cast<int>(num_field(params, "n"));
    std::vector<SumNormTerm> terms;
    for (const json& t : params.at("terms")) {
      SumNormTerm term;
      term.lambda = num_field(t, "lambda");
      term.a = mat_field(t, "a");
      term.shift = vec_field(t, "shift");
      term.fn = ScalarPH{PHKind::PNorm, exponent_from_json(t.at("p")), term.a.rows()};
      term.safeguard_c = t.value("safeguard_c", 0.0);
      term.safeguard_d = t.value("safeguard_d", 0.0);
      terms.push_back(std::move(term));
    }
    GaugeResult res = sum_norms_to_pho(n, std::move(terms), mat_field(params, "B"),
                                       vec_field(params, "b"));
    out.problem = res.problem;
    out.dual = res.dual;
  } else if (kind == "binary") {
    BinaryLP lp;
    lp.objective = vec_field(params, "objective");
    lp.g = mat_field(params, "G");
    lp.h = vec_field(params, "h");
    for (const json& s : params.at("senses"))
      lp.senses.push_back(sense_from_string(s.get<std::string>()));
    BinaryReduction red = binary_to_avo(lp);
    out.problem = avo_to_pho(red.avo);
    out.dual = simplify_dual(build_dual(out.problem));
    out.extras["objective_offset"] = red.objective_offset;
  } else {
    throw ParseError("unknown transform kind '" + kind + "'");
  }
  return out;
}

// ---------------------------------------------------------------------------
// solve inputs
// ---------------------------------------------------------------------------

LPProblem parse_lp(const json& j) {
  LPProblem lp;
  lp.objective = vec_field(j, "objective");
  lp.constraints = mat_field(j, "constraints");
  lp.rhs = vec_field(j, "rhs");
  for (const json& s : j.at("senses"))
    lp.senses.push_back(sense_from_string(s.get<std::string>()));
  if (j.contains("nonneg")) {
    for (const json& f : j.at("nonneg")) lp.nonneg.push_back(f.get<bool>());
  } else {
    lp.nonneg.assign(lp.objective.size(), true);
  }
  return lp;
}

json solve_result_to_json(const SolveResult& res) {
  json j;
  j["status"] = status_str(res.status);
  j["value"] = res.value;
  j["point"] = vec_to_json(res.point);
  j["iterations"] = res.iterations;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Positively homogeneous optimization toolkit.\n"
      "Problem files are JSON: {n, c[n], d[m], blocks: [{indices, p}], "
      "eq: {A, B, b}, ineq: {H, K, p}} with 0-based indices, p a positive "
      "number or \"inf\", eq/ineq optional. Dual files wrap a problem under "
      "{dual: {problem, q, equality_rows, infeasible}}."};
  app.require_subcommand(1);

  std::string in_path, at_path, out_path, kind, suite, box_spec;
  bool simplify = false;
  double resolution = 0.05;
  double box_lo = -10.0, box_hi = 10.0;
  int max_iter = 100000;
  uint64_t seed = 0;
  int instances = 100, trials = 10000, points = 20, samples = 10000;

  auto* validate_cmd = app.add_subcommand(
      "validate", "Check the structural invariants of a problem file.");
  validate_cmd->add_option("file", in_path, "problem JSON file")->required();

  auto* dualize_cmd =
      app.add_subcommand("dualize", "Write the mechanical dual of a problem.");
  dualize_cmd->add_option("file", in_path, "problem JSON file")->required();
  dualize_cmd->add_flag("--simplify", simplify,
                        "rewrite constant-bound rows into linear equalities");
  dualize_cmd->add_option("-o,--output", out_path,
                          "output path (default: <file>.dual.json)");

  auto* transform_cmd = app.add_subcommand(
      "transform",
      "Rewrite a modeled problem class into block-norm form and dualize.\n"
      "Parameter schemas by kind:\n"
      "  avo:         {c, d?, eq?: {A,B,b}, ineq?: {H,K,p}}\n"
      "  socp:        {c, A, b}\n"
      "  gauge:       {n, objective: [{weight,a,shift,p}], constraints: [...]}\n"
      "  group-lasso: {A, b, lambda1, lambda2, groups, m_prime, p1, p2}\n"
      "  lasso:       {A, b, beta, lambda1, lambda2, p1, p2}\n"
      "  sum-norms:   {n, terms: [{lambda,a,shift,p,safeguard_c?,safeguard_d?}], "
      "B, b}\n"
      "  binary:      {objective, G, h, senses}");
  transform_cmd
      ->add_option("--kind", kind,
                   "one of avo|socp|gauge|group-lasso|lasso|sum-norms|binary")
      ->required();
  transform_cmd->add_option("params", in_path, "parameter JSON file")->required();
  transform_cmd->add_option("-o,--output", out_path,
                            "output prefix (default: params path without .json)");

  auto* eval_cmd = app.add_subcommand(
      "eval", "Evaluate block norms (--ph) or the Lagrangian infimum (--omega).");
  std::string ph_path, omega_path;
  auto* ph_opt = eval_cmd->add_option("--ph", ph_path, "problem file; --at is {x}");
  eval_cmd->add_option("--omega", omega_path, "problem file; --at is {u, v}")
      ->excludes(ph_opt);
  eval_cmd->add_option("--at", at_path, "point JSON file")->required();

  auto* solve_cmd = app.add_subcommand("solve", "Run a solver on a file.");
  std::string dual_path, lp_path, brute_path;
  auto* sd = solve_cmd->add_option("--dual", dual_path,
                                   "dual file, projected subgradient ascent");
  auto* sl = solve_cmd->add_option("--lp", lp_path,
                                   "LP file {objective,constraints,rhs,senses,"
                                   "nonneg?}, two-phase simplex");
  auto* sb = solve_cmd->add_option("--brute", brute_path,
                                   "problem file, exhaustive primal search");
  sd->excludes(sl)->excludes(sb);
  sl->excludes(sb);
  solve_cmd->add_option("--box", box_spec, "brute-force box as lo,hi");
  solve_cmd->add_option("--resolution", resolution, "brute-force grid step");
  solve_cmd->add_option("--max-iter", max_iter, "subgradient iteration budget");

  auto* check_cmd = app.add_subcommand(
      "check", "Run a verification suite; exit 0 iff every assertion holds.");
  check_cmd
      ->add_option("--suite", suite,
                   "one of weak-duality|prop1|lemma1|theorem2|examples")
      ->required();
  check_cmd->add_option("--seed", seed, "deterministic seed")->required();
  check_cmd->add_option("--instances", instances, "instance count");
  check_cmd->add_option("--trials", trials, "sample pairs (prop1)");
  check_cmd->add_option("--points", points, "multiplier points per instance");
  check_cmd->add_option("--samples", samples, "Lagrangian samples per point");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate_cmd) {
      PHOProblem prob = problem_from_json(read_json_file(in_path));
      ValidationReport rep = validate_problem(prob);
      json j = {{"ok", rep.ok()}, {"violations", rep.violations}};
      std::cout << dump_json(j) << "\n";
      return rep.ok() ? kExitOk : kExitFail;
    }

    if (*dualize_cmd) {
      PHOProblem prob = problem_from_json(read_json_file(in_path));
      DualProblem dual = build_dual(prob);
      if (simplify) dual = simplify_dual(dual);
      if (out_path.empty()) out_path = derived_path(in_path, ".dual.json");
      write_text_file(out_path, dump_json(dual_to_json(dual)) + "\n");
      std::cout << dump_json(json{{"written", out_path}}) << "\n";
      return kExitOk;
    }

    if (*transform_cmd) {
      TransformOutput out = run_transform(kind, read_json_file(in_path));
      std::string prefix = out_path.empty() ? derived_path(in_path, "") : out_path;
      std::string prob_path = prefix + ".pho.json";
      std::string dual_out = prefix + ".dual.json";
      write_text_file(prob_path, dump_json(problem_to_json(out.problem)) + "\n");
      write_text_file(dual_out, dump_json(dual_to_json(out.dual)) + "\n");
      json j = {{"written", json::array({prob_path, dual_out})}};
      for (auto& [key, val] : out.extras.items()) j[key] = val;
      std::cout << dump_json(j) << "\n";
      return kExitOk;
    }

    if (*eval_cmd) {
      bool eval_omega = !omega_path.empty();
      if (ph_path.empty() && omega_path.empty())
        throw ParseError("eval needs --ph or --omega");
      PHOProblem prob =
          problem_from_json(read_json_file(eval_omega ? omega_path : ph_path));
      json at = read_json_file(at_path);
      if (eval_omega) {
        Vec u = vec_field(at, "u"), v = vec_field(at, "v");
        OmegaResult om = omega(prob, u, v);
        json j;
        if (om.value.is_finite()) {
          j["omega"] = om.value.value();
        } else {
          j["omega"] = "-inf";
          j["violating_block"] = *om.violating_block;
          j["slope_bound"] = om.witness->slope_bound;
        }
        j["alpha"] = vec_to_json(om.alpha);
        j["beta"] = vec_to_json(om.beta);
        std::cout << dump_json(j) << "\n";
      } else {
        Vec x = vec_field(at, "x");
        Vec psi = eval_vector_ph(prob.psi, x);
        json j = {{"psi", vec_to_json(psi)},
                  {"objective", dot(prob.c, x) + dot(prob.d, psi)}};
        std::cout << dump_json(j) << "\n";
      }
      return kExitOk;
    }

    if (*solve_cmd) {
      SolveResult res;
      if (!dual_path.empty()) {
        DualProblem dual = dual_from_json(read_json_file(dual_path));
        SubgradientOptions opts;
        opts.max_iter = max_iter;
        res = solve_dual_subgradient(dual, Vec(dual.base.k, 0.0),
                                     Vec(dual.base.l, 0.0), opts);
      } else if (!lp_path.empty()) {
        res = simplex_lp(parse_lp(read_json_file(lp_path)));
      } else if (!brute_path.empty()) {
        PHOProblem prob = problem_from_json(read_json_file(brute_path));
        if (!box_spec.empty()) {
          size_t comma = box_spec.find(',');
          if (comma == std::string::npos)
            throw ParseError("--box wants lo,hi");
          box_lo = std::stod(box_spec.substr(0, comma));
          box_hi = std::stod(box_spec.substr(comma + 1));
        }
        Box box{Vec{box_lo}, Vec{box_hi}};
        res = brute_force_primal(prob, box, resolution);
      } else {
        throw ParseError("solve needs one of --dual, --lp or --brute");
      }
      std::cout << dump_json(solve_result_to_json(res)) << "\n";
      bool determined = res.status == SolveStatus::Optimal ||
                        res.status == SolveStatus::Infeasible ||
                        res.status == SolveStatus::Unbounded;
      return determined ? kExitOk : kExitFail;
    }

    if (*check_cmd) {
      verify::SuiteResult res;
      if (suite == "weak-duality") {
        res = verify::weak_duality_suite(instances, 6, seed);
      } else if (suite == "prop1") {
        res = verify::prop1_suite_default(trials, seed);
      } else if (suite == "lemma1") {
        res = verify::lemma1_suite(instances, seed);
      } else if (suite == "theorem2") {
        res = verify::theorem2_suite(instances, points, samples, seed);
      } else if (suite == "examples") {
        res = verify::examples_suite(seed);
      } else {
        throw ParseError("unknown suite '" + suite + "'");
      }
      std::cout << dump_json(json{{"report", res.report}}) << "\n";
      return res.pass ? kExitOk : kExitFail;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const BuildError& e) {
    std::cerr << "invalid problem: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::invalid_argument& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitOk;
}
