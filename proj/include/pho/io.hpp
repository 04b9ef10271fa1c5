#ifndef PHO_IO_HPP
#define PHO_IO_HPP

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "pho/core.hpp"

namespace pho {

/// Malformed problem/dual file. what() carries the JSON location or the
/// offending field.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Problem file schema (JSON):
//   {
//     "n": int,
//     "c": [..n..], "d": [..m..],
//     "blocks": [{"indices": [int], "p": number | "inf"}, ...],
//     "eq":   {"A": [[..]], "B": [[..]], "b": [..]},   // optional
//     "ineq": {"H": [[..]], "K": [[..]], "p": [..]}    // optional
//   }
// Matrices are row-major lists of rows. Indices are 0-based.

nlohmann::json problem_to_json(const PHOProblem& prob);
PHOProblem problem_from_json(const nlohmann::json& j);

// Dual file: {"dual": {"problem": <problem>, "q": [number|"inf", ...],
//                      "equality_rows": [int], "infeasible": bool}}
nlohmann::json dual_to_json(const DualProblem& dual);
DualProblem dual_from_json(const nlohmann::json& j);

nlohmann::json exponent_to_json(const Exponent& e);
Exponent exponent_from_json(const nlohmann::json& j);

nlohmann::json vec_to_json(const Vec& v);
Vec vec_from_json(const nlohmann::json& j, const std::string& what);

nlohmann::json mat_to_json(const Mat& m);
Mat mat_from_json(const nlohmann::json& j, const std::string& what);

PHOProblem load_problem(const std::string& path);
void save_problem(const PHOProblem& prob, const std::string& path);
DualProblem load_dual(const std::string& path);
void save_dual(const DualProblem& dual, const std::string& path);

/// Deterministic text rendering used by every CLI output path.
std::string dump_json(const nlohmann::json& j);

}  // namespace pho

#endif  // PHO_IO_HPP
