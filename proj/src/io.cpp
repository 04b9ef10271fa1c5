#include "pho/io.hpp"

#include <fstream>
#include <sstream>

namespace pho {

using nlohmann::json;

nlohmann::json exponent_to_json(const Exponent& e) {
  if (e.is_inf()) return json("inf");
  return json(e.value());
}

Exponent exponent_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return Exponent::inf();
    throw ParseError("exponent string must be \"inf\", got \"" +
                     j.get<std::string>() + "\"");
  }
  if (!j.is_number()) throw ParseError("exponent must be a number or \"inf\"");
  double p = j.get<double>();
  try {
    return Exponent::finite(p);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

json vec_to_json(const Vec& v) {
  json j = json::array();
  for (double x : v) j.push_back(x);
  return j;
}

Vec vec_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + " must be an array of numbers");
  Vec v;
  v.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number()) throw ParseError(what + " must contain only numbers");
    v.push_back(e.get<double>());
  }
  return v;
}

json mat_to_json(const Mat& m) {
  json j = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    j.push_back(row);
  }
  return j;
}

Mat mat_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + " must be a list of rows");
  int rows = static_cast<int>(j.size());
  if (rows == 0) return Mat();
  if (!j[0].is_array()) throw ParseError(what + " rows must be arrays");
  int cols = static_cast<int>(j[0].size());
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols) {
      std::ostringstream os;
      os << what << " row " << i << " has ragged length";
      throw ParseError(os.str());
    }
    for (int c = 0; c < cols; ++c) {
      if (!j[i][c].is_number()) throw ParseError(what + " must contain only numbers");
      m(i, c) = j[i][c].get<double>();
    }
  }
  return m;
}

json problem_to_json(const PHOProblem& prob) {
  json j;
  j["n"] = prob.n;
  j["c"] = vec_to_json(prob.c);
  j["d"] = vec_to_json(prob.d);
  json blocks = json::array();
  for (const auto& blk : prob.psi.blocks) {
    json jb;
    jb["indices"] = blk.indices;
    jb["p"] = exponent_to_json(blk.fn.exponent);
    blocks.push_back(jb);
  }
  j["blocks"] = blocks;
  if (prob.k > 0) {
    j["eq"] = {{"A", mat_to_json(prob.A)},
               {"B", mat_to_json(prob.B)},
               {"b", vec_to_json(prob.b)}};
  }
  if (prob.l > 0) {
    j["ineq"] = {{"H", mat_to_json(prob.H)},
                 {"K", mat_to_json(prob.K)},
                 {"p", vec_to_json(prob.p)}};
  }
  return j;
}

PHOProblem problem_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("problem file must be a JSON object");
  for (const char* key : {"n", "c", "d", "blocks"})
    if (!j.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");

  PHOProblem prob;
  if (!j["n"].is_number_integer()) throw ParseError("n must be an integer");
  prob.n = j["n"].get<int>();
  prob.c = vec_from_json(j["c"], "c");
  prob.d = vec_from_json(j["d"], "d");

  if (!j["blocks"].is_array()) throw ParseError("blocks must be a list");
  for (size_t i = 0; i < j["blocks"].size(); ++i) {
    const auto& jb = j["blocks"][i];
    std::ostringstream loc;
    loc << "blocks[" << i << "]";
    if (!jb.is_object() || !jb.contains("indices") || !jb.contains("p"))
      throw ParseError(loc.str() + " must be {indices: [...], p: ...}");
    Block blk;
    if (!jb["indices"].is_array()) throw ParseError(loc.str() + ".indices must be a list");
    for (const auto& e : jb["indices"]) {
      if (!e.is_number_integer())
        throw ParseError(loc.str() + ".indices must contain integers");
      const int idx = e.get<int>();
      if (idx < 0) throw ParseError(loc.str() + ".indices must be nonnegative");
      blk.indices.push_back(idx);
    }
    blk.fn.exponent = exponent_from_json(jb["p"]);
    blk.fn.dim = static_cast<int>(blk.indices.size());
    prob.psi.blocks.push_back(std::move(blk));
  }
  prob.m = prob.psi.num_blocks();

  if (j.contains("eq")) {
    const auto& e = j["eq"];
    for (const char* key : {"A", "B", "b"})
      if (!e.contains(key)) throw ParseError(std::string("eq missing \"") + key + "\"");
    prob.A = mat_from_json(e["A"], "eq.A");
    prob.B = mat_from_json(e["B"], "eq.B");
    prob.b = vec_from_json(e["b"], "eq.b");
    prob.k = static_cast<int>(prob.b.size());
    // Zero-column matrices parse as empty arrays; give them their shape.
    if (prob.A.empty()) prob.A = Mat(prob.k, prob.n);
    if (prob.B.empty()) prob.B = Mat(prob.k, prob.m);
  } else {
    prob.A = Mat(0, prob.n);
    prob.B = Mat(0, prob.m);
  }

  if (j.contains("ineq")) {
    const auto& e = j["ineq"];
    for (const char* key : {"H", "K", "p"})
      if (!e.contains(key)) throw ParseError(std::string("ineq missing \"") + key + "\"");
    prob.H = mat_from_json(e["H"], "ineq.H");
    prob.K = mat_from_json(e["K"], "ineq.K");
    prob.p = vec_from_json(e["p"], "ineq.p");
    prob.l = static_cast<int>(prob.p.size());
    if (prob.H.empty()) prob.H = Mat(prob.l, prob.n);
    if (prob.K.empty()) prob.K = Mat(prob.l, prob.m);
  } else {
    prob.H = Mat(0, prob.n);
    prob.K = Mat(0, prob.m);
  }

  return prob;
}

json dual_to_json(const DualProblem& dual) {
  json q = json::array();
  for (const auto& blk : dual.psi_star.blocks)
    q.push_back(exponent_to_json(blk.fn.exponent));
  json j;
  j["dual"] = {{"problem", problem_to_json(dual.base)},
               {"q", q},
               {"equality_rows", dual.equality_rows},
               {"infeasible", dual.infeasible}};
  return j;
}

DualProblem dual_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dual"))
    throw ParseError("dual file must have a top-level \"dual\" key");
  const auto& jd = j["dual"];
  for (const char* key : {"problem", "q", "equality_rows", "infeasible"})
    if (!jd.contains(key)) throw ParseError(std::string("dual missing \"") + key + "\"");

  DualProblem dual;
  dual.base = problem_from_json(jd["problem"]);
  if (!jd["q"].is_array() ||
      static_cast<int>(jd["q"].size()) != dual.base.psi.num_blocks())
    throw ParseError("dual.q must list one exponent per block");
  dual.psi_star = dual.base.psi;
  for (int i = 0; i < dual.psi_star.num_blocks(); ++i)
    dual.psi_star.blocks[i].fn.exponent = exponent_from_json(jd["q"][i]);
  for (const auto& e : jd["equality_rows"]) {
    if (!e.is_number_integer())
      throw ParseError("dual.equality_rows must contain integers");
    dual.equality_rows.push_back(e.get<int>());
  }
  if (!jd["infeasible"].is_boolean()) throw ParseError("dual.infeasible must be a bool");
  dual.infeasible = jd["infeasible"].get<bool>();
  return dual;
}

namespace {

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

void save_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << dump_json(j) << "\n";
}

}  // namespace

std::string dump_json(const json& j) { return j.dump(2); }

PHOProblem load_problem(const std::string& path) {
  return problem_from_json(load_json(path));
}

void save_problem(const PHOProblem& prob, const std::string& path) {
  save_json(problem_to_json(prob), path);
}

DualProblem load_dual(const std::string& path) {
  return dual_from_json(load_json(path));
}

void save_dual(const DualProblem& dual, const std::string& path) {
  save_json(dual_to_json(dual), path);
}

}  // namespace pho
