#pragma once

// Batch problem files and report generation.  A problem file is a JSON
// document describing projective data on a base chart:
//
//   {
//     "name":       optional string echoed in reports,
//     "dim":        base dimension n >= 2,
//     "connection": { "A,C,B": "poly", ... }   Christoffel symbols, 1-based,
//                   symmetric closure in (A, B) is applied automatically,
//     "phi":        { "A,B": "poly", ... }     symmetric modification,
//     "upsilon":    { "A": "poly", ... }       optional projective change,
//                   applied to the connection before any computation,
//     "alpha":      "poly"                     optional extra modification
//                   (dim 2 only; used by the ambient and logt tasks),
//     "c":          "rational"                 optional deformation constant
//                   for the extra modification (default 0),
//     "caps":       { "x_degree": int }        ansatz degree cap (default 4),
//     "task":       default task name
//   }
//
// Polynomial strings use the ring grammar over the chart variables
// x1..xn.  Schema or parse errors raise ProblemError with a location.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pwforge/projective.hpp"
#include "pwforge/tensor.hpp"

namespace pwf {

struct ProblemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Problem {
  std::string name;
  int dim = 2;
  AffineConnection connection;  // with upsilon already applied
  TensorField phi;
  bool has_upsilon = false;
  TensorField upsilon;
  bool has_alpha = false;
  Poly alpha;
  Rational c = Rational(0);
  int x_degree = 4;
  std::string task;
};

Problem parse_problem(const std::string& json_text);
Problem load_problem(const std::string& path);

// Global ansatz-degree ceiling: the environment variable PWFORGE_MAX_DEGREE
// if set (and a valid positive integer), otherwise 8.  Requested caps are
// clamped to this value.
int max_degree_ceiling();

// A finished report.  The JSON rendering is canonical (sorted maps, fixed
// key order) and therefore byte-identical across runs; the text rendering
// is a deterministic flattening of the same data.
struct Report {
  std::string json_text;
  std::string text;
};

inline const std::vector<std::string>& task_names() {
  static const std::vector<std::string> names = {
      "curvature", "flatness",      "einstein",   "killing",
      "affine-sym", "proj-sym",     "killing-forms", "bgg-verify",
      "ambient",    "logt",         "relations"};
  return names;
}

// Dispatches one task on a problem.  Throws ProblemError for an unknown
// task or a task/problem mismatch (e.g. extra-modified ambient with n > 2);
// mathematical verdicts are part of the report, never an error.
Report run(const std::string& task, const Problem& problem);

}  // namespace pwf
