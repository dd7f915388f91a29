#pragma once

#include <optional>
#include <string>
#include <vector>

#include "renormalist/rational.hpp"

namespace renormalist {

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Labelled directed multigraph for the power-counting criterion. Vertex 0 is
// always the distinguished base point; `vstar` lists the further
// distinguished vertices (test-function slots).
struct LabelledGraph {
  int vertex_count = 0;
  std::vector<int> vstar;  // excluding the base point 0
  struct Edge {
    int from = 0, to = 0;
    Rational a;
    int r = 0;  // 0 or 1
  };
  std::vector<Edge> edges;
  Rational s_norm;  // |s|

  bool in_vstar(int v) const;
  void validate() const;
};

struct GraphViolation {
  int condition = 0;             // 1, 2 or 3
  std::vector<int> subset;       // offending vertex subset
  Rational lhs, rhs;             // evaluated sides of the failed inequality
};

struct GraphCheckResult {
  bool pass = true;
  std::optional<GraphViolation> violation;
};

// Exhaustive check of the three inequality families over all vertex subsets
// of the merged fully-connected graph; first violation reported.
GraphCheckResult check_assumptions(const LabelledGraph& g);

// alpha~ = |s| |V \ Vstar| - sum_e a_e over the original edges.
Rational bound_exponent(const LabelledGraph& g);

}  // namespace renormalist
